#include "amalgam/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace amalgam {

void InterpParams::validate() const {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("InterpParams: theta must lie in (0,1)");
    if (!(q >= 1.0))
        throw std::invalid_argument("InterpParams: q must be >= 1");
    if (grid_half_width < 1)
        throw std::invalid_argument("InterpParams: grid too small");
}

RealMethodResult real_method_norm(const ExprPtr& x0, const ExprPtr& x1, const InterpParams& params,
                                  const Seq& x, const OracleConfig& cfg) {
    params.validate();
    if (x.is_zero()) return {0.0, 0.0};
    const double ln2 = std::log(2.0);
    const int M = params.grid_half_width;
    RealMethodResult out;
    if (params.q == kPInf) {
        double best = 0.0, bndry = 0.0;
        for (int m = -M; m <= M; ++m) {
            double t = std::exp2(static_cast<double>(m));
            double v = std::exp2(-params.theta * m) * kfunctional(x, t, x0, x1, cfg);
            best = std::max(best, v);
            if (m == -M || m == M) bndry = std::max(bndry, v);
        }
        out.value = best;
        out.boundary_fraction = best > 0.0 && bndry >= best ? 1.0 : 0.0;
        return out;
    }
    double sum = 0.0, boundary = 0.0;
    for (int m = -M; m <= M; ++m) {
        double t = std::exp2(static_cast<double>(m));
        double v = std::exp2(-params.theta * m) * kfunctional(x, t, x0, x1, cfg);
        double term = std::pow(v, params.q) * ln2;
        sum += term;
        if (m == -M || m == M) boundary += term;
    }
    out.value = std::pow(sum, 1.0 / params.q);
    out.boundary_fraction = sum > 0.0 ? boundary / sum : 0.0;
    if (out.boundary_fraction > 0.01)
        throw eval_error("real_method_norm: grid too small, boundary carries " +
                         std::to_string(100.0 * out.boundary_fraction) + "% of the sum");
    return out;
}

double check_E_commutes(const ExprPtr& x0, const ExprPtr& x1, const InterpParams& params, const BlockSeq& b,
                        const OracleConfig& cfg) {
    bool zero = true;
    for (double c : b.coeffs)
        if (c != 0.0) zero = false;
    if (zero)
        throw std::invalid_argument("check_E_commutes: zero block sequence");
    Seq coeffs{std::vector<double>(b.coeffs)};
    Seq expanded = expand_blocks(b);
    double lhs = real_method_norm(make_discretize(x0), make_discretize(x1), params, coeffs, cfg).value;
    double rhs = real_method_norm(x0, x1, params, expanded, cfg).value;
    if (rhs == 0.0)
        throw eval_error("check_E_commutes: degenerate denominator");
    return lhs / rhs;
}

double check_amalgam_interp(const AmalgamInner& inner, const ExprPtr& e, const ExprPtr& f,
                            const InterpParams& params, const Seq& x, const OracleConfig& cfg) {
    if (x.is_zero())
        throw std::invalid_argument("check_amalgam_interp: zero input");
    ExprPtr amal_e = make_amalgam(inner, e);
    ExprPtr amal_f = make_amalgam(inner, f);
    double lhs = real_method_norm(amal_e, amal_f, params, x, cfg).value;

    // outer interpolation applied to the vector of inner block norms
    BlockSeq inner_norms = block_agg(x, inner.exponent() == kPInf ? AggMode::sup : AggMode::sum);
    if (inner.kind == AmalgamInner::Kind::lp) {
        DyadicBlocks layout(x.size());
        inner_norms.coeffs.assign(layout.block_count, 0.0);
        std::vector<double> padded(layout.padded_size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            padded[i] = std::fabs(x[i]);
        for (std::size_t j = 0; j < layout.block_count; ++j) {
            double s = 0.0;
            for (std::size_t k = layout.block_begin(j); k < layout.block_begin(j) + layout.block_size(j); ++k)
                s += std::pow(padded[k - 1], inner.p);
            inner_norms.coeffs[j] = std::pow(s, 1.0 / inner.p);
        }
    }
    Seq coeffs{std::vector<double>(inner_norms.coeffs)};
    double rhs = real_method_norm(e, f, params, coeffs, cfg).value;
    if (rhs == 0.0)
        throw eval_error("check_amalgam_interp: degenerate denominator");
    return lhs / rhs;
}

}  // namespace amalgam
