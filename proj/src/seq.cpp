#include "amalgam/seq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace amalgam {

Seq::Seq(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty())
        throw std::invalid_argument("Seq: length must be at least 1");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("Seq: entries must be finite");
}

bool Seq::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

DyadicBlocks::DyadicBlocks(std::size_t length) : n(length) {
    if (length == 0)
        throw std::invalid_argument("DyadicBlocks: length must be positive");
    block_count = 1;
    while ((std::size_t{1} << block_count) - 1 < length)
        ++block_count;
}

std::size_t DyadicBlocks::block_of(std::size_t k) {
    if (k == 0)
        throw std::invalid_argument("block_of: coordinates are 1-based");
    std::size_t j = 0;
    while (k >>= 1)
        ++j;
    return j;
}

Seq rearrange(const Seq& x) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = std::fabs(x[i]);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Seq(std::move(v));
}

Seq majorant(const Seq& x) {
    std::vector<double> v(x.size());
    double running = 0.0;
    for (std::size_t i = x.size(); i-- > 0;) {
        running = std::max(running, std::fabs(x[i]));
        v[i] = running;
    }
    return Seq(std::move(v));
}

Seq hardy(const Seq& x) {
    std::vector<double> v(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::fabs(x[i]);
        v[i] = acc / static_cast<double>(i + 1);
    }
    return Seq(std::move(v));
}

Seq copson(const Seq& x) {
    // Finite truncation of the Copson sum: tails run only to n_max.
    std::vector<double> v(x.size());
    double acc = 0.0;
    for (std::size_t i = x.size(); i-- > 0;) {
        acc += std::fabs(x[i]) / static_cast<double>(i + 1);
        v[i] = acc;
    }
    return Seq(std::move(v));
}

Seq dilate_up(const Seq& x, std::size_t m) { return dilate_up(x, m, m * x.size()); }

Seq dilate_up(const Seq& x, std::size_t m, std::size_t out_len) {
    if (m == 0)
        throw std::invalid_argument("dilate_up: m must be >= 1");
    if (out_len == 0)
        throw std::invalid_argument("dilate_up: output length must be >= 1");
    std::vector<double> v(out_len, 0.0);
    for (std::size_t i = 0; i < out_len; ++i) {
        std::size_t src = i / m;
        v[i] = src < x.size() ? x[src] : 0.0;
    }
    return Seq(std::move(v));
}

Seq dilate_down(const Seq& x, std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("dilate_down: m must be >= 1");
    std::size_t groups = (x.size() + m - 1) / m;
    std::vector<double> v(groups, 0.0);
    for (std::size_t g = 0; g < groups; ++g) {
        double s = 0.0;
        for (std::size_t k = g * m; k < (g + 1) * m && k < x.size(); ++k)
            s += x[k];
        v[g] = s / static_cast<double>(m);
    }
    return Seq(std::move(v));
}

BlockSeq block_agg(const Seq& x, AggMode mode) {
    DyadicBlocks layout(x.size());
    BlockSeq b;
    b.coeffs.assign(layout.block_count, 0.0);
    for (std::size_t j = 0; j < layout.block_count; ++j) {
        double acc = 0.0;
        std::size_t lo = layout.block_begin(j);
        for (std::size_t k = lo; k < lo + layout.block_size(j); ++k) {
            double v = k <= x.size() ? std::fabs(x[k - 1]) : 0.0;
            acc = mode == AggMode::sum ? acc + v : std::max(acc, v);
        }
        b.coeffs[j] = acc;
    }
    return b;
}

Seq expand_blocks(const BlockSeq& b) {
    if (b.coeffs.empty())
        throw std::invalid_argument("expand_blocks: empty block sequence");
    std::size_t len = (std::size_t{1} << b.blocks()) - 1;
    std::vector<double> v(len);
    for (std::size_t j = 0; j < b.blocks(); ++j) {
        std::size_t lo = (std::size_t{1} << j) - 1;
        std::size_t sz = std::size_t{1} << j;
        std::fill(v.begin() + lo, v.begin() + lo + sz, b.coeffs[j]);
    }
    return Seq(std::move(v));
}

Seq average_blocks(const Seq& x) {
    DyadicBlocks layout(x.size());
    std::vector<double> v(layout.padded_size(), 0.0);
    for (std::size_t j = 0; j < layout.block_count; ++j) {
        std::size_t lo = layout.block_begin(j);
        std::size_t sz = layout.block_size(j);
        double s = 0.0;
        for (std::size_t k = lo; k < lo + sz; ++k)
            s += k <= x.size() ? x[k - 1] : 0.0;
        double mean = s / static_cast<double>(sz);
        std::fill(v.begin() + lo - 1, v.begin() + lo - 1 + sz, mean);
    }
    return Seq(std::move(v));
}

BlockSeq shift_sup(const BlockSeq& b) {
    BlockSeq out;
    out.coeffs.assign(b.blocks(), 0.0);
    double running = 0.0;
    for (std::size_t j = b.blocks(); j-- > 0;) {
        running = std::max(running, std::fabs(b.coeffs[j]));
        out.coeffs[j] = running;
    }
    return out;
}

Seq maximal(const Seq& x) { return hardy(rearrange(x)); }

BlockSeq maximal_at_dyadic(const Seq& x) {
    DyadicBlocks layout(x.size());
    Seq xx = maximal(x);
    BlockSeq b;
    b.coeffs.assign(layout.block_count, 0.0);
    for (std::size_t j = 0; j < layout.block_count; ++j) {
        std::size_t k = std::size_t{1} << j;  // 1-based coordinate 2^j
        b.coeffs[j] = k <= xx.size() ? xx[k - 1] : xx[xx.size() - 1] * static_cast<double>(xx.size()) / static_cast<double>(k);
    }
    return b;
}

std::string to_string(const Seq& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << x[i];
    }
    os << ")";
    return os.str();
}

}  // namespace amalgam
