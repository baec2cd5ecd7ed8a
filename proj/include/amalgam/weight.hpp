#pragma once

#include <memory>
#include <string>
#include <vector>

#include "amalgam/young.hpp"

namespace amalgam {

/// Strictly positive weight attached to a space. Weights are functions of
/// the raw 0-based storage index i: coordinate weights read n = i + 1,
/// block weights read j = i. Closed under product and real powers, which
/// the rewrite engine relies on.
class Weight {
public:
    enum class Kind { coordpow, blockpow, literal, yratio, qratio, qdratio, blockconst, product, power };

    static Weight coordpow(double a);
    static Weight blockpow(double a);
    static Weight literal(std::vector<double> values);
    /// w(n) = M^{-1}(1/n) / N^{-1}(1/n), n = i + 1.
    static Weight young_ratio(YoungFn m, YoungFn n);
    /// w(n) = phi(n) / psi(n).
    static Weight q_ratio(QuasiConcaveFn phi, QuasiConcaveFn psi);
    /// w(n) = (phi(n+1) - phi(n)) / psi(n).
    static Weight q_delta_ratio(QuasiConcaveFn phi, QuasiConcaveFn psi);
    /// w(n) = inner(floor(log2 n)): a block weight spread over coordinates.
    static Weight blockconst(Weight inner);

    Weight times(const Weight& other) const;
    Weight pow(double e) const;
    Weight reciprocal() const { return pow(-1.0); }

    double at(std::size_t i) const;
    Kind kind() const { return kind_; }
    double exponent() const { return a_; }

    bool equals(const Weight& other) const;
    /// True when w(i) == 1 for every index.
    bool is_trivial() const;

    std::string print() const;

private:
    Kind kind_ = Kind::coordpow;
    double a_ = 0.0;
    std::vector<double> values_;
    std::shared_ptr<const YoungFn> yf1_, yf2_;
    std::shared_ptr<const QuasiConcaveFn> qf1_, qf2_;
    std::shared_ptr<const Weight> w1_, w2_;
};

}  // namespace amalgam
