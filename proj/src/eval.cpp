#include "amalgam/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "amalgam/rewrite.hpp"

namespace amalgam {

namespace {

std::vector<double> abs_values(const Seq& x) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = std::fabs(x[i]);
    return v;
}

// per-block inner norm and subgradient over a span
double inner_block_norm(const AmalgamInner& inner, std::span<const double> v, std::vector<double>* grad) {
    double p = inner.exponent();
    if (grad) grad->assign(v.size(), 0.0);
    if (p == kPInf) {
        double m = 0.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] > m) {
                m = v[i];
                arg = i;
            }
        if (grad && m > 0.0) (*grad)[arg] = 1.0;
        return m;
    }
    double m = 0.0;
    for (double t : v) m = std::max(m, t);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double t : v) s += std::pow(t / m, p);
    double val = m * std::pow(s, 1.0 / p);
    if (grad)
        for (std::size_t i = 0; i < v.size(); ++i)
            (*grad)[i] = std::pow(v[i] / val, p - 1.0);
    return val;
}

}  // namespace

double norm_value_grad(const ExprPtr& expr, std::span<const double> absx, std::vector<double>* grad,
                       const OracleConfig& cfg, int* warnings) {
    if (!expr) throw eval_error("norm: null space expression");
    const std::size_t n = absx.size();
    if (n == 0) throw eval_error("norm: empty input");
    if (grad) grad->assign(n, 0.0);

    switch (expr->kind) {
        case SpaceExpr::Kind::base:
            try {
                return base_norm_grad(expr->space, absx, grad);
            } catch (const std::out_of_range& e) {
                throw eval_error(std::string("invalid composite: ") + e.what());
            }

        case SpaceExpr::Kind::weighted: {
            std::vector<double> scaled(n);
            try {
                for (std::size_t i = 0; i < n; ++i)
                    scaled[i] = expr->w.at(i) * absx[i];
            } catch (const std::out_of_range& e) {
                throw eval_error(std::string("invalid composite: ") + e.what());
            }
            double v = norm_value_grad(expr->a, scaled, grad, cfg, warnings);
            if (grad)
                for (std::size_t i = 0; i < n; ++i)
                    (*grad)[i] *= expr->w.at(i);
            return v;
        }

        case SpaceExpr::Kind::cesaro: {
            std::vector<double> y(n);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += absx[i];
                y[i] = acc / static_cast<double>(i + 1);
            }
            std::vector<double> gy;
            double v = norm_value_grad(expr->a, y, grad ? &gy : nullptr, cfg, warnings);
            if (grad) {
                double suffix = 0.0;
                for (std::size_t i = n; i-- > 0;) {
                    suffix += gy[i] / static_cast<double>(i + 1);
                    (*grad)[i] = suffix;
                }
            }
            return v;
        }

        case SpaceExpr::Kind::tandori: {
            std::vector<double> y(n);
            std::vector<std::size_t> arg(n);
            double running = 0.0;
            std::size_t runarg = n - 1;
            for (std::size_t i = n; i-- > 0;) {
                if (absx[i] >= running) {
                    running = absx[i];
                    runarg = i;
                }
                y[i] = running;
                arg[i] = runarg;
            }
            std::vector<double> gy;
            double v = norm_value_grad(expr->a, y, grad ? &gy : nullptr, cfg, warnings);
            if (grad)
                for (std::size_t i = 0; i < n; ++i)
                    (*grad)[arg[i]] += gy[i];
            return v;
        }

        case SpaceExpr::Kind::symmetrize: {
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return absx[a] > absx[b]; });
            std::vector<double> y(n);
            for (std::size_t r = 0; r < n; ++r)
                y[r] = absx[idx[r]];
            std::vector<double> gy;
            double v = norm_value_grad(expr->a, y, grad ? &gy : nullptr, cfg, warnings);
            if (grad)
                for (std::size_t r = 0; r < n; ++r)
                    (*grad)[idx[r]] = gy[r];
            return v;
        }

        case SpaceExpr::Kind::convexify: {
            double p = expr->param;
            std::vector<double> y(n);
            for (std::size_t i = 0; i < n; ++i)
                y[i] = std::pow(absx[i], p);
            std::vector<double> gy;
            double inner = norm_value_grad(expr->a, y, grad ? &gy : nullptr, cfg, warnings);
            double v = std::pow(inner, 1.0 / p);
            if (grad && inner > 0.0)
                for (std::size_t i = 0; i < n; ++i)
                    (*grad)[i] = std::pow(inner, 1.0 / p - 1.0) * gy[i] * std::pow(absx[i], p - 1.0);
            return v;
        }

        case SpaceExpr::Kind::discretize: {
            BlockSeq b;
            b.coeffs.assign(absx.begin(), absx.end());
            Seq y = expand_blocks(b);
            std::vector<double> gy;
            double v = norm_value_grad(expr->a, y.span(), grad ? &gy : nullptr, cfg, warnings);
            if (grad) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::size_t lo = (std::size_t{1} << j) - 1;
                    std::size_t sz = std::size_t{1} << j;
                    double s = 0.0;
                    for (std::size_t k = lo; k < lo + sz; ++k)
                        s += gy[k];
                    (*grad)[j] = s;
                }
            }
            return v;
        }

        case SpaceExpr::Kind::amalgam: {
            std::vector<std::pair<std::size_t, std::size_t>> spans;  // 0-based [begin, end)
            if (expr->layout.kind == BlockLayout::Kind::dyadic) {
                DyadicBlocks layout(n);
                for (std::size_t j = 0; j < layout.block_count; ++j)
                    spans.emplace_back(layout.block_begin(j) - 1,
                                       layout.block_begin(j) - 1 + layout.block_size(j));
            } else {
                std::size_t d = expr->layout.d;
                for (std::size_t lo = 0; lo < n; lo += d)
                    spans.emplace_back(lo, lo + d);
            }
            std::size_t J = spans.size();
            std::size_t padded = spans.back().second;
            std::vector<double> xp(absx.begin(), absx.end());
            xp.resize(padded, 0.0);

            std::vector<double> coeffs(J);
            std::vector<std::vector<double>> inner_grads(grad ? J : 0);
            for (std::size_t j = 0; j < J; ++j) {
                std::span<const double> blk(xp.data() + spans[j].first, spans[j].second - spans[j].first);
                coeffs[j] = inner_block_norm(expr->inner, blk, grad ? &inner_grads[j] : nullptr);
            }
            std::vector<double> gout;
            double v = norm_value_grad(expr->a, coeffs, grad ? &gout : nullptr, cfg, warnings);
            if (grad) {
                for (std::size_t j = 0; j < J; ++j)
                    for (std::size_t k = spans[j].first; k < spans[j].second && k < n; ++k)
                        (*grad)[k] = gout[j] * inner_grads[j][k - spans[j].first];
            }
            return v;
        }

        case SpaceExpr::Kind::cesaro_r: {
            double r = expr->param;
            std::vector<double> z(n), y(n);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = std::pow(absx[i], r);
                acc += z[i];
                y[i] = std::pow(acc / static_cast<double>(i + 1), 1.0 / r);
            }
            std::vector<double> gy;
            double v = norm_value_grad(expr->a, y, grad ? &gy : nullptr, cfg, warnings);
            if (grad) {
                // back through y_k = (u_k)^{1/r}, u_k = prefix mean of z
                double suffix = 0.0;
                std::vector<double> gz(n, 0.0);
                for (std::size_t k = n; k-- > 0;) {
                    double u = std::pow(y[k], r);
                    double dy_du = u > 0.0 ? (1.0 / r) * std::pow(u, 1.0 / r - 1.0) : 0.0;
                    suffix += gy[k] * dy_du / static_cast<double>(k + 1);
                    gz[k] = suffix;
                }
                for (std::size_t i = 0; i < n; ++i)
                    (*grad)[i] = gz[i] * r * std::pow(absx[i], r - 1.0);
            }
            return v;
        }

        case SpaceExpr::Kind::kothe_dual: {
            Seq xs{std::vector<double>(absx.begin(), absx.end())};
            std::vector<double> g;
            OracleValue val = dual_norm_with_argmax(expr->a, xs, cfg, grad ? &g : nullptr);
            if (!val.converged && warnings) ++*warnings;
            if (grad) *grad = std::move(g);
            return val.value;
        }

        case SpaceExpr::Kind::down: {
            Seq xs{std::vector<double>(absx.begin(), absx.end())};
            std::vector<double> g;
            OracleValue val = down_norm_with_argmax(expr->a, xs, cfg, grad ? &g : nullptr);
            if (!val.converged && warnings) ++*warnings;
            if (grad) *grad = std::move(g);
            return val.value;
        }

        case SpaceExpr::Kind::mult: {
            Seq xs{std::vector<double>(absx.begin(), absx.end())};
            std::vector<double> g;
            OracleValue val = multiplier_norm_with_grad(expr->a, expr->b, xs, cfg, grad ? &g : nullptr);
            if (!val.converged && warnings) ++*warnings;
            if (grad) *grad = std::move(g);
            return val.value;
        }

        case SpaceExpr::Kind::prod: {
            Seq xs{std::vector<double>(absx.begin(), absx.end())};
            std::vector<double> g;
            FactorWitness wit = product_norm_with_grad(expr->a, expr->b, xs, cfg, grad ? &g : nullptr);
            if (!wit.converged && warnings) ++*warnings;
            if (grad) *grad = std::move(g);
            return wit.norm_product;
        }

        case SpaceExpr::Kind::calderon: {
            Seq xs{std::vector<double>(absx.begin(), absx.end())};
            std::vector<double> g;
            OracleValue val = calderon_norm_with_grad(expr->a, expr->b, expr->param, xs, cfg, grad ? &g : nullptr);
            if (!val.converged && warnings) ++*warnings;
            if (grad) *grad = std::move(g);
            return val.value;
        }
    }
    throw eval_error("norm: unhandled node");
}

EvalOutcome eval_norm(const ExprPtr& expr, const Seq& x, Strategy strategy, const EvalOptions& opts) {
    EvalOutcome out;
    int warnings = 0;
    switch (strategy) {
        case Strategy::definitional:
        case Strategy::oracle: {
            std::vector<double> absx = abs_values(x);
            out.value = norm_value_grad(expr, absx, nullptr, opts.oracle, &warnings);
            bool used_oracle = contains_oracle_node(expr);
            out.method = strategy == Strategy::oracle || used_oracle ? "oracle" : "definitional";
            if (strategy == Strategy::definitional && !used_oracle) out.method = "definitional";
            break;
        }
        case Strategy::rewritten: {
            SimplifyResult s = simplify(expr, opts.assumptions);
            if (contains_oracle_node(s.expr))
                throw eval_error("no closed form: normal form still contains an oracle-only node: " +
                                 print_expr(s.expr));
            std::vector<double> absx = abs_values(x);
            out.value = norm_value_grad(s.expr, absx, nullptr, opts.oracle, &warnings);
            out.method = "rewritten[" + s.trace.summary() + "]";
            break;
        }
    }
    out.oracle_warnings = warnings;
    return out;
}

double equivalence_ratio(const ExprPtr& a, const ExprPtr& b, const Seq& x, const EvalOptions& opts) {
    if (x.is_zero())
        throw eval_error("equivalence_ratio: x = 0 gives 0/0");
    double denom = eval_norm(b, x, Strategy::definitional, opts).value;
    if (denom == 0.0)
        throw eval_error("equivalence_ratio: denominator norm is zero");
    return eval_norm(a, x, Strategy::definitional, opts).value / denom;
}

}  // namespace amalgam
