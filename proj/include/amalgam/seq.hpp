#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace amalgam {

/// A finite real sequence indexed 1..n (stored 0-based). Entries beyond n
/// are zero by convention. All entries must be finite and n >= 1.
class Seq {
public:
    Seq() : values_{0.0} {}
    explicit Seq(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::span<const double> span() const { return values_; }

    bool is_zero() const;

private:
    std::vector<double> values_;
};

/// Coefficients indexed by dyadic block index j = 0..J-1.
struct BlockSeq {
    std::vector<double> coeffs;

    std::size_t blocks() const { return coeffs.size(); }
};

/// Dyadic block layout for logical length n: blocks Delta_j = {2^j, ..,
/// 2^{j+1}-1} (1-based coordinates) for j = 0..J-1, J the smallest value
/// with 2^J - 1 >= n. Sequences are zero-padded to 2^J - 1 before any
/// block operation.
struct DyadicBlocks {
    std::size_t n = 1;
    std::size_t block_count = 1;

    explicit DyadicBlocks(std::size_t length);

    std::size_t padded_size() const { return (std::size_t{1} << block_count) - 1; }
    /// First 1-based coordinate of block j.
    std::size_t block_begin(std::size_t j) const { return std::size_t{1} << j; }
    std::size_t block_size(std::size_t j) const { return std::size_t{1} << j; }
    /// Block index of 1-based coordinate k.
    static std::size_t block_of(std::size_t k);
};

enum class AggMode { sum, sup };

Seq rearrange(const Seq& x);
Seq majorant(const Seq& x);
Seq hardy(const Seq& x);
Seq copson(const Seq& x);
Seq dilate_up(const Seq& x, std::size_t m);
Seq dilate_up(const Seq& x, std::size_t m, std::size_t out_len);
Seq dilate_down(const Seq& x, std::size_t m);
BlockSeq block_agg(const Seq& x, AggMode mode);
Seq expand_blocks(const BlockSeq& b);
Seq average_blocks(const Seq& x);
BlockSeq shift_sup(const BlockSeq& b);
Seq maximal(const Seq& x);

/// x** evaluated at the points 2^j, j = 0..J-1 for the layout of x.
BlockSeq maximal_at_dyadic(const Seq& x);

std::string to_string(const Seq& x);

}  // namespace amalgam
