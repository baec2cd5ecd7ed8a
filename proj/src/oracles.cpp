#include "amalgam/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "amalgam/eval.hpp"
#include "amalgam/rewrite.hpp"

namespace amalgam {

namespace {

constexpr double kTiny = 1e-300;

// objective with gradient; y strictly positive on its working support
using RatioFn = std::function<double(std::span<const double>, std::vector<double>&)>;

struct AscentResult {
    double value = 0.0;
    std::vector<double> y;
};

// Exponentiated-gradient ascent with backtracking on a scale-invariant
// ratio objective. Returns the best point reached.
AscentResult ascend_from(const RatioFn& f, std::vector<double> y, int max_iter, double tol) {
    const std::size_t n = y.size();
    std::vector<double> grad(n), trial(n);
    double val = f(y, grad);
    double step = 0.25;
    int stalled = 0;
    for (int it = 0; it < max_iter && stalled < 30 && step > 1e-13; ++it) {
        // scale so the largest log-coordinate move equals `step`
        double gmax = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            gmax = std::max(gmax, std::fabs(grad[i] * y[i]));
        if (gmax <= 0.0) break;
        double scale = step / gmax;
        for (std::size_t i = 0; i < n; ++i)
            trial[i] = std::max(y[i] * std::exp(scale * grad[i] * y[i]), kTiny);
        double tmax = *std::max_element(trial.begin(), trial.end());
        for (auto& v : trial) v /= tmax;
        std::vector<double> tgrad(n);
        double tval = f(trial, tgrad);
        if (tval > val) {
            double gain = (tval - val) / std::max(tval, kTiny);
            y.swap(trial);
            grad.swap(tgrad);
            val = tval;
            step = std::min(step * 1.3, 1.0);
            stalled = gain < 0.01 * tol ? stalled + 1 : 0;
        } else {
            step *= 0.5;
        }
    }
    return {val, std::move(y)};
}

AscentResult multi_start_ascend(const RatioFn& f, const std::vector<std::vector<double>>& inits,
                                const OracleConfig& cfg, bool* agree) {
    AscentResult best;
    double worst = std::numeric_limits<double>::infinity();
    int iter_budget = std::max(200, cfg.max_iterations / std::max<int>(1, static_cast<int>(inits.size())));
    for (const auto& y0 : inits) {
        AscentResult r = ascend_from(f, y0, iter_budget, cfg.tolerance);
        worst = std::min(worst, r.value);
        if (r.value > best.value) best = std::move(r);
    }
    // polish the winner with a fresh budget
    best = ascend_from(f, best.y, iter_budget, cfg.tolerance * 0.1);
    if (agree)
        *agree = best.value <= 0.0 || (best.value - worst) <= 10.0 * cfg.tolerance * best.value;
    return best;
}

std::vector<std::vector<double>> standard_inits(std::span<const double> profile, int restarts,
                                                std::uint64_t seed) {
    const std::size_t n = profile.size();
    std::vector<std::vector<double>> inits;
    std::vector<double> base(profile.begin(), profile.end());
    double m = *std::max_element(base.begin(), base.end());
    if (m <= 0.0) base.assign(n, 1.0);
    for (auto& v : base) v = std::max(v / std::max(m, kTiny), 1e-8);

    inits.push_back(std::vector<double>(n, 1.0));  // uniform
    inits.push_back(base);                         // the data profile itself
    {
        std::vector<double> sq(base);
        for (auto& v : sq) v = std::sqrt(v);
        inits.push_back(std::move(sq));
    }
    {
        // spike at the largest profile entry
        std::vector<double> sp(n, 1e-6);
        sp[static_cast<std::size_t>(std::max_element(base.begin(), base.end()) - base.begin())] = 1.0;
        inits.push_back(std::move(sp));
    }
    {
        // decreasing tail
        std::vector<double> dec(n);
        for (std::size_t i = 0; i < n; ++i)
            dec[i] = 1.0 / static_cast<double>(i + 1);
        inits.push_back(std::move(dec));
    }
    {
        // head indicators of a few geometric lengths
        for (std::size_t len = 1; len < n && inits.size() < 8; len *= 4) {
            std::vector<double> head(n, 1e-8);
            std::fill(head.begin(), head.begin() + len, 1.0);
            inits.push_back(std::move(head));
        }
    }
    std::mt19937_64 rng(seed);
    std::lognormal_distribution<double> ln(0.0, 1.0);
    while (static_cast<int>(inits.size()) < restarts) {
        std::vector<double> r(n);
        for (auto& v : r) v = ln(rng);
        inits.push_back(std::move(r));
    }
    if (static_cast<int>(inits.size()) > restarts && restarts >= 1)
        inits.resize(std::max<std::size_t>(restarts, 5));
    return inits;
}

std::vector<double> abs_of(const Seq& x) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = std::fabs(x[i]);
    return v;
}

std::vector<std::size_t> support_of(std::span<const double> a) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0.0) idx.push_back(i);
    return idx;
}

}  // namespace

ExprPtr dual_space_closed_form(const ExprPtr& space) {
    SimplifyResult s = simplify(make_kothe_dual(space));
    return contains_oracle_node(s.expr) ? nullptr : s.expr;
}

// ---------------------------------------------------------------- dual norm

OracleValue dual_norm_with_argmax(const ExprPtr& space, const Seq& x, const OracleConfig& cfg,
                                  std::vector<double>* grad) {
    std::vector<double> a = abs_of(x);
    const std::size_t n = a.size();
    if (grad) grad->assign(n, 0.0);
    auto supp = support_of(a);
    if (supp.empty()) return {0.0, true};

    std::vector<double> as(supp.size());
    for (std::size_t k = 0; k < supp.size(); ++k)
        as[k] = a[supp[k]];

    OracleConfig inner_cfg = cfg.nested();
    RatioFn f = [&](std::span<const double> y, std::vector<double>& g) -> double {
        std::vector<double> full(n, 0.0);
        for (std::size_t k = 0; k < supp.size(); ++k)
            full[supp[k]] = y[k];
        std::vector<double> gn;
        double nv = norm_value_grad(space, full, &gn, inner_cfg);
        double num = 0.0;
        for (std::size_t k = 0; k < supp.size(); ++k)
            num += as[k] * y[k];
        g.assign(supp.size(), 0.0);
        if (nv <= 0.0) return 0.0;
        for (std::size_t k = 0; k < supp.size(); ++k)
            g[k] = as[k] / nv - num * gn[supp[k]] / (nv * nv);
        return num / nv;
    };

    bool agree = true;
    AscentResult best = multi_start_ascend(f, standard_inits(as, cfg.restarts, cfg.seed), cfg, &agree);
    if (grad) {
        // normalized maximizer: value = <a, y*> with ||y*|| = 1
        std::vector<double> full(n, 0.0);
        for (std::size_t k = 0; k < supp.size(); ++k)
            full[supp[k]] = best.y[k];
        double nv = norm_value_grad(space, full, nullptr, inner_cfg);
        if (nv > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                (*grad)[i] = full[i] / nv;
    }
    return {best.value, agree};
}

OracleValue dual_norm(const ExprPtr& space, const Seq& x, const OracleConfig& cfg) {
    return dual_norm_with_argmax(space, x, cfg, nullptr);
}

// ---------------------------------------------------------- multiplier norm

OracleValue multiplier_norm_with_grad(const ExprPtr& from, const ExprPtr& to, const Seq& x,
                                      const OracleConfig& cfg, std::vector<double>* grad) {
    std::vector<double> a = abs_of(x);
    const std::size_t n = a.size();
    if (grad) grad->assign(n, 0.0);
    auto supp = support_of(a);
    if (supp.empty()) return {0.0, true};
    std::vector<double> as(supp.size());
    for (std::size_t k = 0; k < supp.size(); ++k)
        as[k] = a[supp[k]];

    OracleConfig inner_cfg = cfg.nested();
    RatioFn f = [&](std::span<const double> y, std::vector<double>& g) -> double {
        std::vector<double> full(n, 0.0), xy(n, 0.0);
        for (std::size_t k = 0; k < supp.size(); ++k) {
            full[supp[k]] = y[k];
            xy[supp[k]] = as[k] * y[k];
        }
        std::vector<double> gden, gnum;
        double den = norm_value_grad(from, full, &gden, inner_cfg);
        double num = norm_value_grad(to, xy, &gnum, inner_cfg);
        g.assign(supp.size(), 0.0);
        if (den <= 0.0) return 0.0;
        for (std::size_t k = 0; k < supp.size(); ++k)
            g[k] = as[k] * gnum[supp[k]] / den - num * gden[supp[k]] / (den * den);
        return num / den;
    };

    bool agree = true;
    AscentResult best = multi_start_ascend(f, standard_inits(as, cfg.restarts, cfg.seed), cfg, &agree);
    if (grad) {
        std::vector<double> full(n, 0.0), xy(n, 0.0);
        for (std::size_t k = 0; k < supp.size(); ++k) {
            full[supp[k]] = best.y[k];
            xy[supp[k]] = as[k] * best.y[k];
        }
        std::vector<double> gnum;
        double den = norm_value_grad(from, full, nullptr, inner_cfg);
        norm_value_grad(to, xy, &gnum, inner_cfg);
        if (den > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                (*grad)[i] = gnum[i] * full[i] / den;
    }
    return {best.value, agree};
}

OracleValue multiplier_norm(const ExprPtr& from, const ExprPtr& to, const Seq& x, const OracleConfig& cfg) {
    return multiplier_norm_with_grad(from, to, x, cfg, nullptr);
}

// ------------------------------------------------------------- product norm

namespace {

// minimize F(s) = log Na(|z| e^s) + log Nb(e^{-s}) over the support of z;
// convex in s. Gradient descent with backtracking plus a stall criterion.
struct ProductSolve {
    double log_value = 0.0;
    std::vector<double> s;
    std::vector<double> grad_a;  // gradient of Na at the optimal g (support space)
    double na = 0.0, nb = 0.0;
    bool converged = true;
};

ProductSolve solve_product(const ExprPtr& ea, const ExprPtr& eb, std::span<const double> zs,
                           const std::vector<std::size_t>& supp, std::size_t n, const OracleConfig& cfg) {
    OracleConfig inner_cfg = cfg.nested();
    const std::size_t m = supp.size();
    auto embed = [&](std::span<const double> vals) {
        std::vector<double> full(n, 0.0);
        for (std::size_t k = 0; k < m; ++k)
            full[supp[k]] = vals[k];
        return full;
    };
    struct Eval {
        double F;
        std::vector<double> grad;
        double na, nb;
        std::vector<double> ga;
    };
    auto eval = [&](const std::vector<double>& s) -> Eval {
        std::vector<double> g(m), h(m);
        for (std::size_t k = 0; k < m; ++k) {
            g[k] = zs[k] * std::exp(s[k]);
            h[k] = std::exp(-s[k]);
        }
        std::vector<double> ga, gb;
        double na = norm_value_grad(ea, embed(g), &ga, inner_cfg);
        double nb = norm_value_grad(eb, embed(h), &gb, inner_cfg);
        Eval ev;
        ev.na = na;
        ev.nb = nb;
        ev.F = std::log(std::max(na, kTiny)) + std::log(std::max(nb, kTiny));
        ev.grad.assign(m, 0.0);
        ev.ga.assign(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            ev.ga[k] = ga[supp[k]];
            ev.grad[k] = ga[supp[k]] * g[k] / std::max(na, kTiny) - gb[supp[k]] * h[k] / std::max(nb, kTiny);
        }
        return ev;
    };

    std::vector<double> s(m, 0.0);
    Eval cur = eval(s);
    double step = 0.5;
    int stalled = 0;
    int max_iter = std::max(400, cfg.max_iterations);
    for (int it = 0; it < max_iter && stalled < 40 && step > 1e-14; ++it) {
        double gmax = 0.0;
        for (double gv : cur.grad) gmax = std::max(gmax, std::fabs(gv));
        if (gmax < 1e-15) break;
        std::vector<double> trial(m);
        for (std::size_t k = 0; k < m; ++k)
            trial[k] = s[k] - step / gmax * cur.grad[k];
        Eval tev = eval(trial);
        if (tev.F < cur.F) {
            double gain = cur.F - tev.F;
            s.swap(trial);
            cur = std::move(tev);
            step = std::min(step * 1.25, 2.0);
            stalled = gain < 0.01 * cfg.tolerance ? stalled + 1 : 0;
        } else {
            step *= 0.5;
        }
    }
    // stationarity check on the balanced subgradient
    double gmax = 0.0;
    for (double gv : cur.grad) gmax = std::max(gmax, std::fabs(gv));
    ProductSolve out;
    out.log_value = cur.F;
    out.s = std::move(s);
    out.grad_a = std::move(cur.ga);
    out.na = cur.na;
    out.nb = cur.nb;
    out.converged = gmax <= std::max(1e3 * cfg.tolerance, 1e-3);
    return out;
}

}  // namespace

FactorWitness product_norm_with_grad(const ExprPtr& a, const ExprPtr& b, const Seq& z,
                                     const OracleConfig& cfg, std::vector<double>* grad) {
    std::vector<double> zabs = abs_of(z);
    const std::size_t n = zabs.size();
    if (grad) grad->assign(n, 0.0);
    auto supp = support_of(zabs);
    FactorWitness wit;
    wit.g = Seq(std::vector<double>(n, 0.0));
    wit.h = Seq(std::vector<double>(n, 0.0));
    if (supp.empty()) {
        wit.target_norm = 0.0;
        return wit;
    }
    std::vector<double> zs(supp.size());
    for (std::size_t k = 0; k < supp.size(); ++k)
        zs[k] = zabs[supp[k]];

    ProductSolve sol = solve_product(a, b, zs, supp, n, cfg);
    std::vector<double> gv(n, 0.0), hv(n, 0.0);
    for (std::size_t k = 0; k < supp.size(); ++k) {
        gv[supp[k]] = zs[k] * std::exp(sol.s[k]);
        hv[supp[k]] = std::exp(-sol.s[k]);
    }
    wit.g = Seq(std::move(gv));
    wit.h = Seq(std::move(hv));
    wit.norm_product = sol.na * sol.nb;
    wit.converged = sol.converged;
    if (grad) {
        for (std::size_t k = 0; k < supp.size(); ++k)
            (*grad)[supp[k]] = sol.grad_a[k] * std::exp(sol.s[k]) * sol.nb;
    }
    return wit;
}

FactorWitness product_norm(const ExprPtr& a, const ExprPtr& b, const Seq& z, const OracleConfig& cfg) {
    return product_norm_with_grad(a, b, z, cfg, nullptr);
}

// ------------------------------------------------------------ Calderon norm

OracleValue calderon_norm_with_grad(const ExprPtr& a, const ExprPtr& b, double theta, const Seq& z,
                                    const OracleConfig& cfg, std::vector<double>* grad) {
    std::vector<double> zabs = abs_of(z);
    const std::size_t n = zabs.size();
    if (grad) grad->assign(n, 0.0);
    auto supp = support_of(zabs);
    if (supp.empty()) return {0.0, true};
    const std::size_t m = supp.size();
    std::vector<double> zs(m);
    for (std::size_t k = 0; k < m; ++k)
        zs[k] = zabs[supp[k]];

    OracleConfig inner_cfg = cfg.nested();
    auto embed = [&](std::span<const double> vals) {
        std::vector<double> full(n, 0.0);
        for (std::size_t k = 0; k < m; ++k)
            full[supp[k]] = vals[k];
        return full;
    };
    struct Eval {
        double F, na, nb;
        std::vector<double> grad;
    };
    auto eval = [&](const std::vector<double>& t) -> Eval {
        std::vector<double> g(m), h(m);
        for (std::size_t k = 0; k < m; ++k) {
            g[k] = zs[k] * std::exp(theta * t[k]);
            h[k] = zs[k] * std::exp(-(1.0 - theta) * t[k]);
        }
        std::vector<double> ga, gb;
        double na = norm_value_grad(a, embed(g), &ga, inner_cfg);
        double nb = norm_value_grad(b, embed(h), &gb, inner_cfg);
        Eval ev;
        ev.na = na;
        ev.nb = nb;
        ev.F = std::max(std::log(std::max(na, kTiny)), std::log(std::max(nb, kTiny)));
        ev.grad.assign(m, 0.0);
        // subgradient of the max; both sides blended near the crease
        double la = std::log(std::max(na, kTiny)), lb = std::log(std::max(nb, kTiny));
        double wgtA = la > lb + 1e-12 ? 1.0 : la < lb - 1e-12 ? 0.0 : 0.5;
        for (std::size_t k = 0; k < m; ++k) {
            double da = theta * ga[supp[k]] * g[k] / std::max(na, kTiny);
            double db = -(1.0 - theta) * gb[supp[k]] * h[k] / std::max(nb, kTiny);
            ev.grad[k] = wgtA * da + (1.0 - wgtA) * db;
        }
        return ev;
    };

    std::vector<double> t(m, 0.0);
    Eval cur = eval(t);
    double step = 0.5;
    int stalled = 0;
    for (int it = 0; it < std::max(400, cfg.max_iterations) && stalled < 40 && step > 1e-13; ++it) {
        double gmax = 0.0;
        for (double gvv : cur.grad) gmax = std::max(gmax, std::fabs(gvv));
        if (gmax < 1e-15) break;
        std::vector<double> trial(m);
        for (std::size_t k = 0; k < m; ++k)
            trial[k] = t[k] - step / gmax * cur.grad[k];
        Eval tev = eval(trial);
        if (tev.F < cur.F) {
            double gain = cur.F - tev.F;
            t.swap(trial);
            cur = std::move(tev);
            step = std::min(step * 1.25, 2.0);
            stalled = gain < 0.01 * cfg.tolerance ? stalled + 1 : 0;
        } else {
            step *= 0.5;
        }
    }
    double value = std::exp(cur.F);
    if (grad) {
        std::vector<double> g(m);
        for (std::size_t k = 0; k < m; ++k)
            g[k] = zs[k] * std::exp(theta * t[k]);
        std::vector<double> ga;
        norm_value_grad(a, embed(g), &ga, inner_cfg);
        for (std::size_t k = 0; k < m; ++k)
            (*grad)[supp[k]] = ga[supp[k]] * std::exp(theta * t[k]);
    }
    return {value, true};
}

OracleValue calderon_norm(const ExprPtr& a, const ExprPtr& b, double theta, const Seq& z,
                          const OracleConfig& cfg) {
    return calderon_norm_with_grad(a, b, theta, z, cfg, nullptr);
}

// ------------------------------------------------------------ Lozanovskii

FactorWitness lozanovskii_factorize(const ExprPtr& space, const Seq& f, const OracleConfig& cfg) {
    if (f.is_zero())
        throw std::invalid_argument("lozanovskii_factorize: f must be non-zero");
    ExprPtr dual = dual_space_closed_form(space);
    if (!dual) dual = make_kothe_dual(space);
    FactorWitness wit = product_norm(space, dual, f, cfg);
    double l1 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        l1 += std::fabs(f[i]);
    wit.target_norm = l1;
    wit.ratio = wit.norm_product / l1;
    return wit;
}

// --------------------------------------------------------------- down norm

OracleValue down_norm_with_argmax(const ExprPtr& space, const Seq& x, const OracleConfig& cfg,
                                  std::vector<double>* grad) {
    std::vector<double> a = abs_of(x);
    const std::size_t n = a.size();
    if (grad) grad->assign(n, 0.0);
    bool all_zero = std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
    if (all_zero) return {0.0, true};

    // pairing against decreasing y: y = suffix sums of t >= 0, so the
    // objective is <P, t> with P the prefix sums of |x|
    std::vector<double> prefix(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i];
        prefix[i] = acc;
    }
    ExprPtr dual = dual_space_closed_form(space);
    OracleConfig inner_cfg = cfg.nested();
    auto dual_norm_of = [&](std::span<const double> y, std::vector<double>& gy) -> double {
        if (dual) return norm_value_grad(dual, y, &gy, inner_cfg);
        Seq ys{std::vector<double>(y.begin(), y.end())};
        OracleValue v = dual_norm_with_argmax(space, ys, inner_cfg, &gy);
        return v.value;
    };

    RatioFn f = [&](std::span<const double> t, std::vector<double>& g) -> double {
        std::vector<double> y(n);
        double s = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            s += t[i];
            y[i] = s;
        }
        std::vector<double> gy;
        double nv = dual_norm_of(y, gy);
        double num = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            num += prefix[i] * t[i];
        g.assign(n, 0.0);
        if (nv <= 0.0) return 0.0;
        // d||y||/dt_m = sum_{i <= m} gy_i (prefix sums of gy)
        double ps = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ps += gy[i];
            g[i] = prefix[i] / nv - num * ps / (nv * nv);
        }
        return num / nv;
    };

    bool agree = true;
    AscentResult best = multi_start_ascend(f, standard_inits(prefix, cfg.restarts, cfg.seed), cfg, &agree);
    if (grad) {
        std::vector<double> y(n);
        double s = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            s += best.y[i];
            y[i] = s;
        }
        std::vector<double> gy;
        double nv = dual_norm_of(y, gy);
        if (nv > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                (*grad)[i] = y[i] / nv;
    }
    return {best.value, agree};
}

OracleValue down_norm(const ExprPtr& space, const Seq& x, const OracleConfig& cfg) {
    return down_norm_with_argmax(space, x, cfg, nullptr);
}

// --------------------------------------------------------------- Bennett

FactorWitness bennett_factorize(double p, const Seq& x, const OracleConfig& cfg) {
    if (!(p > 1.0) || p == kPInf)
        throw std::invalid_argument("bennett_factorize: need 1 < p < inf");
    if (x.is_zero())
        throw std::invalid_argument("bennett_factorize: x must be non-zero");
    double q = p / (p - 1.0);
    FactorWitness wit = product_norm(make_lp(p), make_base(BaseSpace::gq(q)), x, cfg);
    wit.target_norm = eval_norm(make_cesaro(make_lp(p)), x).value;
    wit.ratio = wit.norm_product / wit.target_norm;
    return wit;
}

// ------------------------------------------------------------ K-functional

namespace {

bool is_sup_norm(const ExprPtr& e) {
    SimplifyResult s = simplify(e);
    return s.expr->kind == SpaceExpr::Kind::base && s.expr->space.kind() == BaseSpace::Kind::lp &&
           s.expr->space.p() == kPInf;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return std::min(f(0.5 * (a + b)), std::min(fc, fd));
}

}  // namespace

double kfunctional(const Seq& x, double t, const ExprPtr& x0, const ExprPtr& x1, const OracleConfig& cfg) {
    if (!(t > 0.0))
        throw std::invalid_argument("kfunctional: t must be positive");
    std::vector<double> a = abs_of(x);
    const std::size_t n = a.size();

    bool plain_l1 = x0->kind == SpaceExpr::Kind::base && x0->space.kind() == BaseSpace::Kind::lp &&
                    x0->space.p() == 1.0;
    if (plain_l1 && is_sup_norm(x1)) {
        // exact path for (l1, linf): sum of the floor(t) largest values
        // plus the fractional next one
        std::vector<double> sorted(a);
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        double tt = std::min(t, static_cast<double>(n));
        std::size_t whole = static_cast<std::size_t>(std::floor(tt));
        double s = 0.0;
        for (std::size_t i = 0; i < whole; ++i)
            s += sorted[i];
        if (whole < n) s += (tt - static_cast<double>(whole)) * sorted[whole];
        return s;
    }

    OracleConfig inner_cfg = cfg.nested();
    auto norm0 = [&](std::span<const double> v) { return norm_value_grad(x0, v, nullptr, inner_cfg); };
    auto norm1 = [&](std::span<const double> v) { return norm_value_grad(x1, v, nullptr, inner_cfg); };

    if (is_sup_norm(x1)) {
        // X1 carries the sup norm: given c = ||x1||_inf, the cheapest
        // remainder is (|x| - c)_+, so minimize a 1-D convex function
        double amax = *std::max_element(a.begin(), a.end());
        auto cost = [&](double c) {
            std::vector<double> rem(n);
            for (std::size_t i = 0; i < n; ++i)
                rem[i] = std::max(a[i] - c, 0.0);
            return norm0(rem) + t * c;
        };
        return golden_min(cost, 0.0, amax, 120);
    }
    if (is_sup_norm(x0)) {
        double amax = *std::max_element(a.begin(), a.end());
        auto cost = [&](double c) {
            std::vector<double> rem(n);
            for (std::size_t i = 0; i < n; ++i)
                rem[i] = std::max(a[i] - c, 0.0);
            return c + t * norm1(rem);
        };
        return golden_min(cost, 0.0, amax, 120);
    }

    // generic path: coordinate shrinkage u in [0,1]^n, projected descent
    auto objective = [&](const std::vector<double>& u, std::vector<double>* grad) {
        std::vector<double> v0(n), v1(n);
        for (std::size_t i = 0; i < n; ++i) {
            v0[i] = u[i] * a[i];
            v1[i] = (1.0 - u[i]) * a[i];
        }
        std::vector<double> g0, g1;
        double n0 = norm_value_grad(x0, v0, grad ? &g0 : nullptr, inner_cfg);
        double n1 = norm_value_grad(x1, v1, grad ? &g1 : nullptr, inner_cfg);
        if (grad) {
            grad->assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                (*grad)[i] = a[i] * (g0[i] - t * g1[i]);
        }
        return n0 + t * n1;
    };
    double best = std::numeric_limits<double>::infinity();
    for (double u0 : {0.0, 1.0, 0.5}) {
        std::vector<double> u(n, u0);
        double val = objective(u, nullptr);
        std::vector<double> g(n);
        double step = 0.25;
        for (int it = 0; it < 400 && step > 1e-12; ++it) {
            objective(u, &g);
            std::vector<double> trial(n);
            for (std::size_t i = 0; i < n; ++i)
                trial[i] = std::clamp(u[i] - step * g[i], 0.0, 1.0);
            double tv = objective(trial, nullptr);
            if (tv < val) {
                u.swap(trial);
                val = tv;
                step = std::min(step * 1.25, 1.0);
            } else {
                step *= 0.5;
            }
        }
        best = std::min(best, val);
    }
    return best;
}

}  // namespace amalgam
