#include "amalgam/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace amalgam {

namespace {

double checked_p(double p) {
    if (std::isnan(p) || p < 1.0)
        throw std::invalid_argument("space exponent must satisfy p >= 1");
    return p;
}

// indices sorting absx decreasingly; deterministic tie-break by index
std::vector<std::size_t> decreasing_order(std::span<const double> absx) {
    std::vector<std::size_t> idx(absx.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return absx[a] > absx[b]; });
    return idx;
}

double lp_norm(std::span<const double> v, double p, std::span<const double>* = nullptr) {
    if (p == kPInf) {
        double m = 0.0;
        for (double x : v) m = std::max(m, x);
        return m;
    }
    // scale for overflow safety
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) s += std::pow(x / m, p);
    return m * std::pow(s, 1.0 / p);
}

}  // namespace

BaseSpace BaseSpace::lp(double p) {
    BaseSpace s;
    s.kind_ = Kind::lp;
    s.p_ = checked_p(p);
    return s;
}

BaseSpace BaseSpace::lpw(double p, Weight w) {
    BaseSpace s;
    s.kind_ = p == kPInf ? Kind::linf_weighted : Kind::lp_weighted;
    s.p_ = checked_p(p);
    s.w_ = std::move(w);
    return s;
}

BaseSpace BaseSpace::linfw(Weight w) {
    BaseSpace s;
    s.kind_ = Kind::linf_weighted;
    s.p_ = kPInf;
    s.w_ = std::move(w);
    return s;
}

BaseSpace BaseSpace::lorentz_pq(double p, double q) {
    BaseSpace s;
    s.kind_ = Kind::lorentz_pq;
    s.p_ = checked_p(p);
    s.q_ = checked_p(q);
    if (p == kPInf)
        throw std::invalid_argument("lorentz_pq: p must be finite");
    return s;
}

BaseSpace BaseSpace::lorentz_lambda(QuasiConcaveFn phi) {
    BaseSpace s;
    s.kind_ = Kind::lorentz_lambda;
    s.qf_ = std::move(phi);
    return s;
}

BaseSpace BaseSpace::marcinkiewicz(QuasiConcaveFn phi) {
    BaseSpace s;
    s.kind_ = Kind::marcinkiewicz;
    s.qf_ = std::move(phi);
    return s;
}

BaseSpace BaseSpace::orlicz(YoungFn m) {
    BaseSpace s;
    s.kind_ = Kind::orlicz;
    s.yf_ = std::move(m);
    return s;
}

BaseSpace BaseSpace::musielak(YoungFn m) {
    BaseSpace s;
    s.kind_ = Kind::musielak;
    s.yf_ = std::move(m);
    return s;
}

BaseSpace BaseSpace::gq(double q) {
    BaseSpace s;
    s.kind_ = Kind::gq;
    s.q_ = checked_p(q);
    if (q == kPInf)
        throw std::invalid_argument("gq: q must be finite");
    return s;
}

bool BaseSpace::rearrangement_invariant() const {
    switch (kind_) {
        case Kind::lp:
        case Kind::lorentz_pq:
        case Kind::lorentz_lambda:
        case Kind::marcinkiewicz:
        case Kind::orlicz:
            return true;
        default:
            return false;
    }
}

std::string BaseSpace::print() const {
    auto fmt = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (kind_) {
        case Kind::lp:
            return p_ == kPInf ? "linf" : "lp(" + fmt(p_) + ")";
        case Kind::lp_weighted:
            return "lpw(" + fmt(p_) + "," + w_.print() + ")";
        case Kind::linf_weighted:
            return "linfw(" + w_.print() + ")";
        case Kind::lorentz_pq:
            return "lorpq(" + fmt(p_) + "," + fmt(q_) + ")";
        case Kind::lorentz_lambda:
            return "lorlam(" + qf_.print() + ")";
        case Kind::marcinkiewicz:
            return "marc(" + qf_.print() + ")";
        case Kind::orlicz:
            return "orlicz(" + yf_.print() + ")";
        case Kind::musielak:
            return "musielak(" + yf_.print() + ")";
        case Kind::gq:
            return "gq(" + fmt(q_) + ")";
    }
    return "";
}

double orlicz_modular(const BaseSpace& space, std::span<const double> absx, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("orlicz_modular: lambda must be positive");
    const YoungFn& m = space.young();
    bool weighted = space.kind() == BaseSpace::Kind::musielak;
    double s = 0.0;
    for (std::size_t i = 0; i < absx.size(); ++i) {
        double v = m(absx[i] / lambda);
        if (std::isinf(v)) return v;
        s += weighted ? std::exp2(static_cast<double>(i)) * v : v;
        if (std::isinf(s)) return s;
    }
    return s;
}

namespace {

double luxemburg_norm(const BaseSpace& space, std::span<const double> absx, std::vector<double>* grad) {
    double xmax = 0.0;
    for (double v : absx) xmax = std::max(xmax, v);
    if (xmax == 0.0) {
        if (grad) grad->assign(absx.size(), 0.0);
        return 0.0;
    }
    auto mod = [&](double lam) { return orlicz_modular(space, absx, lam); };

    // bracket: modular is non-increasing in lambda
    double b = space.young().finite_end();
    double hi = std::isfinite(b) && b > 0.0 ? xmax / b : xmax;
    if (hi <= 0.0) hi = xmax;
    while (mod(hi) > 1.0) {
        hi *= 2.0;
        if (hi > 1e300) throw std::domain_error("luxemburg_norm: modular never drops below 1");
    }
    double lo = hi;
    while (mod(lo) <= 1.0) {
        lo *= 0.5;
        if (lo < 1e-300) {
            lo = 0.0;
            break;
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mod(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    double lam = hi;
    if (grad) {
        // implicit differentiation of sum_i c_i M(x_i / lam) = 1 with
        // difference-quotient slopes, usable at kinks of M
        grad->assign(absx.size(), 0.0);
        bool weighted = space.kind() == BaseSpace::Kind::musielak;
        const YoungFn& m = space.young();
        double denom = 0.0;
        double h = 1e-7;
        std::vector<double> mp(absx.size(), 0.0);
        for (std::size_t i = 0; i < absx.size(); ++i) {
            double u = absx[i] / lam;
            double m1 = m(u * (1.0 + h)), m0 = m(u <= 0.0 ? 0.0 : u * (1.0 - h));
            double slope = std::isfinite(m1) && std::isfinite(m0) && u > 0.0 ? (m1 - m0) / (2.0 * h * u) : 0.0;
            double c = weighted ? std::exp2(static_cast<double>(i)) : 1.0;
            mp[i] = c * slope;
            denom += c * slope * u;
        }
        if (denom > 0.0)
            for (std::size_t i = 0; i < absx.size(); ++i)
                (*grad)[i] = mp[i] / denom;
    }
    return lam;
}

}  // namespace

double base_norm_grad(const BaseSpace& space, std::span<const double> absx, std::vector<double>* grad) {
    const std::size_t n = absx.size();
    if (grad) grad->assign(n, 0.0);
    switch (space.kind()) {
        case BaseSpace::Kind::lp: {
            double p = space.p();
            double v = lp_norm(absx, p);
            if (grad && v > 0.0) {
                if (p == kPInf) {
                    std::size_t arg = 0;
                    for (std::size_t i = 1; i < n; ++i)
                        if (absx[i] > absx[arg]) arg = i;
                    (*grad)[arg] = 1.0;
                } else {
                    for (std::size_t i = 0; i < n; ++i)
                        (*grad)[i] = std::pow(absx[i] / v, p - 1.0);
                }
            }
            return v;
        }
        case BaseSpace::Kind::lp_weighted:
        case BaseSpace::Kind::linf_weighted: {
            std::vector<double> scaled(n);
            for (std::size_t i = 0; i < n; ++i)
                scaled[i] = space.weight().at(i) * absx[i];
            BaseSpace plain = BaseSpace::lp(space.p());
            double v = base_norm_grad(plain, scaled, grad);
            if (grad)
                for (std::size_t i = 0; i < n; ++i)
                    (*grad)[i] *= space.weight().at(i);
            return v;
        }
        case BaseSpace::Kind::lorentz_pq: {
            double p = space.p(), q = space.q();
            auto idx = decreasing_order(absx);
            if (q == kPInf) {
                double best = 0.0;
                std::size_t argi = 0;
                for (std::size_t r = 0; r < n; ++r) {
                    double v = std::pow(static_cast<double>(r + 1), 1.0 / p) * absx[idx[r]];
                    if (v > best) {
                        best = v;
                        argi = idx[r];
                    }
                }
                if (grad && best > 0.0) {
                    std::size_t r = 0;
                    while (idx[r] != argi) ++r;
                    (*grad)[argi] = std::pow(static_cast<double>(r + 1), 1.0 / p);
                }
                return best;
            }
            double s = 0.0;
            std::vector<double> wts(n);
            for (std::size_t r = 0; r < n; ++r) {
                double nn = static_cast<double>(r + 1);
                wts[r] = std::pow(nn + 1.0, q / p) - std::pow(nn, q / p);
                s += wts[r] * std::pow(absx[idx[r]], q);
            }
            double v = std::pow(s, 1.0 / q);
            if (grad && v > 0.0)
                for (std::size_t r = 0; r < n; ++r)
                    (*grad)[idx[r]] = wts[r] * std::pow(absx[idx[r]], q - 1.0) * std::pow(v, 1.0 - q);
            return v;
        }
        case BaseSpace::Kind::lorentz_lambda: {
            auto idx = decreasing_order(absx);
            const QuasiConcaveFn& phi = space.quasiconcave();
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                double w = phi(static_cast<double>(r + 2)) - phi(static_cast<double>(r + 1));
                s += w * absx[idx[r]];
                if (grad) (*grad)[idx[r]] = w;
            }
            return s;
        }
        case BaseSpace::Kind::marcinkiewicz: {
            auto idx = decreasing_order(absx);
            const QuasiConcaveFn& phi = space.quasiconcave();
            double best = 0.0, acc = 0.0;
            std::size_t best_r = 0;
            for (std::size_t r = 0; r < n; ++r) {
                acc += absx[idx[r]];
                double v = phi(static_cast<double>(r + 1)) / static_cast<double>(r + 1) * acc;
                if (v > best) {
                    best = v;
                    best_r = r;
                }
            }
            if (grad && best > 0.0) {
                double c = phi(static_cast<double>(best_r + 1)) / static_cast<double>(best_r + 1);
                for (std::size_t r = 0; r <= best_r; ++r)
                    (*grad)[idx[r]] = c;
            }
            return best;
        }
        case BaseSpace::Kind::orlicz:
        case BaseSpace::Kind::musielak:
            return luxemburg_norm(space, absx, grad);
        case BaseSpace::Kind::gq: {
            double q = space.q();
            double best = 0.0, acc = 0.0;
            std::size_t best_r = 0;
            for (std::size_t r = 0; r < n; ++r) {
                acc += std::pow(absx[r], q);
                double v = std::pow(acc / static_cast<double>(r + 1), 1.0 / q);
                if (v > best) {
                    best = v;
                    best_r = r;
                }
            }
            if (grad && best > 0.0) {
                double m = static_cast<double>(best_r + 1);
                for (std::size_t i = 0; i <= best_r; ++i)
                    (*grad)[i] = std::pow(absx[i], q - 1.0) * std::pow(best, 1.0 - q) / m;
            }
            return best;
        }
    }
    return 0.0;
}

double base_norm(const BaseSpace& space, const Seq& x) {
    std::vector<double> absx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        absx[i] = std::fabs(x[i]);
    return base_norm_grad(space, absx, nullptr);
}

double boyd_probe(const BaseSpace& space, std::size_t m, std::size_t n, bool up, std::uint64_t seed) {
    if (m == 0)
        throw std::invalid_argument("boyd_probe: m must be >= 1");
    if (m == 1) return 1.0;
    auto ratio = [&](const Seq& x) -> double {
        double nx = base_norm(space, x);
        if (nx <= 0.0) return 0.0;
        Seq dx = up ? dilate_up(x, m) : dilate_down(x, m);
        return base_norm(space, dx) / nx;
    };
    double best = 0.0;
    // constant blocks of geometric lengths
    for (std::size_t len = 1; len <= n; len = std::max<std::size_t>(len + 1, 2 * len)) {
        std::vector<double> v(len, 1.0);
        best = std::max(best, ratio(Seq(std::move(v))));
    }
    // decreasing power tails
    for (double a : {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0}) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = std::pow(static_cast<double>(i + 1), -a);
        best = std::max(best, ratio(Seq(std::move(v))));
    }
    {
        std::vector<double> v(n, 0.0);
        v[0] = 1.0;
        best = std::max(best, ratio(Seq(std::move(v))));
    }
    // rearranged random probes
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<double> v(n);
        for (auto& e : v) e = uni(rng);
        std::sort(v.begin(), v.end(), std::greater<double>());
        best = std::max(best, ratio(Seq(std::move(v))));
    }
    return best;
}

}  // namespace amalgam
