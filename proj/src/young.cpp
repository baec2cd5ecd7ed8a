#include "amalgam/young.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace amalgam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

YoungFn YoungFn::power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("YoungFn::power: need p >= 1");
    YoungFn f;
    f.kind_ = Kind::power;
    f.p1_ = p;
    return f;
}

YoungFn YoungFn::maxpow(double p1, double p2) {
    if (!(p1 >= 1.0) || !(p2 >= 1.0))
        throw std::invalid_argument("YoungFn::maxpow: need exponents >= 1");
    YoungFn f;
    f.kind_ = Kind::maxpow;
    f.p1_ = p1;
    f.p2_ = p2;
    return f;
}

YoungFn YoungFn::table(std::vector<double> us, std::vector<double> vs) {
    if (us.size() != vs.size() || us.size() < 2)
        throw std::invalid_argument("YoungFn::table: need at least two breakpoints");
    for (std::size_t i = 1; i < us.size(); ++i)
        if (!(us[i] > us[i - 1]))
            throw std::invalid_argument("YoungFn::table: abscissae must increase");
    if (us.front() < 0.0 || vs.front() < 0.0)
        throw std::invalid_argument("YoungFn::table: negative breakpoint");
    YoungFn f;
    f.kind_ = Kind::table;
    f.us_ = std::move(us);
    f.vs_ = std::move(vs);
    return f;
}

YoungFn YoungFn::capped(double a, double b) {
    if (!(0.0 <= a) || !(a < b))
        throw std::invalid_argument("YoungFn::capped: need 0 <= a < b");
    YoungFn f;
    f.kind_ = Kind::capped;
    f.p1_ = a;
    f.p2_ = b;
    return f;
}

double YoungFn::operator()(double u) const {
    if (u < 0.0)
        throw std::invalid_argument("YoungFn: negative argument");
    switch (kind_) {
        case Kind::power:
            return std::pow(u, p1_);
        case Kind::maxpow:
            return std::max(std::pow(u, p1_), std::pow(u, p2_));
        case Kind::capped:
            if (u <= p1_) return 0.0;
            if (u > p2_) return kInf;
            return (u - p1_) / (p2_ - p1_);
        case Kind::table: {
            if (u <= us_.front()) {
                // convexity forces M = 0 left of the first breakpoint when v0 = 0
                if (vs_.front() == 0.0) return 0.0;
                double slope = us_.front() > 0.0 ? vs_.front() / us_.front() : 0.0;
                return slope * u;
            }
            auto it = std::upper_bound(us_.begin(), us_.end(), u);
            if (it == us_.end()) {
                std::size_t k = us_.size() - 1;
                if (std::isinf(vs_[k])) return kInf;
                double slope = (vs_[k] - vs_[k - 1]) / (us_[k] - us_[k - 1]);
                return vs_[k] + slope * (u - us_[k]);
            }
            std::size_t k = static_cast<std::size_t>(it - us_.begin());
            if (std::isinf(vs_[k])) {
                // linear up to the last finite breakpoint, then +inf beyond it
                return u <= us_[k - 1] ? vs_[k - 1] : kInf;
            }
            double t = (u - us_[k - 1]) / (us_[k] - us_[k - 1]);
            return vs_[k - 1] + t * (vs_[k] - vs_[k - 1]);
        }
    }
    return 0.0;
}

double YoungFn::inverse(double y) const {
    if (y < 0.0)
        throw std::invalid_argument("YoungFn::inverse: negative argument");
    switch (kind_) {
        case Kind::power:
            return std::pow(y, 1.0 / p1_);
        case Kind::maxpow:
            return std::min(std::pow(y, 1.0 / p1_), std::pow(y, 1.0 / p2_));
        case Kind::capped:
            if (y == 0.0) return p1_;
            return y >= 1.0 ? p2_ : p1_ + y * (p2_ - p1_);
        case Kind::table: {
            // bisection against the evaluator; domain grows until M(u) >= y
            double lo = 0.0, hi = std::max(us_.back(), 1.0);
            double cap = finite_end();
            if (std::isfinite(cap)) hi = cap;
            while ((*this)(hi) < y) {
                hi *= 2.0;
                if (hi > 1e300) return kInf;
            }
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                if ((*this)(mid) < y)
                    lo = mid;
                else
                    hi = mid;
            }
            return y == 0.0 ? zero_end() : hi;
        }
    }
    return 0.0;
}

double YoungFn::zero_end() const {
    switch (kind_) {
        case Kind::power:
        case Kind::maxpow:
            return 0.0;
        case Kind::capped:
            return p1_;
        case Kind::table: {
            double a = 0.0;
            for (std::size_t i = 0; i < us_.size(); ++i)
                if (vs_[i] == 0.0) a = us_[i];
            return a;
        }
    }
    return 0.0;
}

double YoungFn::finite_end() const {
    switch (kind_) {
        case Kind::power:
        case Kind::maxpow:
            return kInf;
        case Kind::capped:
            return p2_;
        case Kind::table: {
            for (std::size_t i = 0; i < us_.size(); ++i)
                if (std::isinf(vs_[i])) return i > 0 ? us_[i - 1] : 0.0;
            return kInf;
        }
    }
    return kInf;
}

std::string YoungFn::print() const {
    switch (kind_) {
        case Kind::power:
            return "pow(" + fmt(p1_) + ")";
        case Kind::maxpow:
            return "maxpow(" + fmt(p1_) + "," + fmt(p2_) + ")";
        case Kind::capped:
            return "capped(" + fmt(p1_) + "," + fmt(p2_) + ")";
        case Kind::table: {
            std::string s = "table([";
            for (std::size_t i = 0; i < us_.size(); ++i) {
                if (i) s += ",";
                s += fmt(us_[i]) + "," + (std::isinf(vs_[i]) ? std::string("inf") : fmt(vs_[i]));
            }
            return s + "])";
        }
    }
    return "";
}

QuasiConcaveFn QuasiConcaveFn::power(double a) {
    if (!(a > 0.0) || !(a <= 1.0))
        throw std::invalid_argument("QuasiConcaveFn::power: need 0 < a <= 1");
    QuasiConcaveFn f;
    f.kind_ = Kind::power;
    f.a_ = a;
    return f;
}

QuasiConcaveFn QuasiConcaveFn::log1p() {
    QuasiConcaveFn f;
    f.kind_ = Kind::log1p;
    return f;
}

QuasiConcaveFn QuasiConcaveFn::table(std::vector<double> ts, std::vector<double> vs) {
    if (ts.size() != vs.size() || ts.size() < 2)
        throw std::invalid_argument("QuasiConcaveFn::table: need at least two breakpoints");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (!(ts[i] > ts[i - 1]) || vs[i] < vs[i - 1])
            throw std::invalid_argument("QuasiConcaveFn::table: breakpoints must increase");
    }
    QuasiConcaveFn f;
    f.kind_ = Kind::table;
    f.ts_ = std::move(ts);
    f.vs_ = std::move(vs);
    return f;
}

double QuasiConcaveFn::operator()(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("QuasiConcaveFn: negative argument");
    if (t == 0.0) return 0.0;
    switch (kind_) {
        case Kind::power:
            return std::pow(t, a_);
        case Kind::log1p:
            return std::log1p(t);
        case Kind::table: {
            if (t <= ts_.front())
                return vs_.front() * t / ts_.front();  // phi(t)/t non-increasing
            auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
            if (it == ts_.end()) return vs_.back();
            std::size_t k = static_cast<std::size_t>(it - ts_.begin());
            double w = (t - ts_[k - 1]) / (ts_[k] - ts_[k - 1]);
            return vs_[k - 1] + w * (vs_[k] - vs_[k - 1]);
        }
    }
    return 0.0;
}

std::string QuasiConcaveFn::print() const {
    switch (kind_) {
        case Kind::power:
            return "pow(" + fmt(a_) + ")";
        case Kind::log1p:
            return "log1p";
        case Kind::table: {
            std::string s = "table([";
            for (std::size_t i = 0; i < ts_.size(); ++i) {
                if (i) s += ",";
                s += fmt(ts_[i]) + "," + fmt(vs_[i]);
            }
            return s + "])";
        }
    }
    return "";
}

double young_conjugate_at(const YoungFn& n, const YoungFn& m, double t, const ConjugateGrid& grid) {
    if (t < 0.0)
        throw std::invalid_argument("young_conjugate_at: negative argument");
    if (t == 0.0) return 0.0;
    const double ln2 = std::log(2.0);
    auto value = [&](double s) -> double {
        double ns = n(t * s);
        if (std::isinf(ns)) return kInf;
        double ms = m(s);
        if (std::isinf(ms)) return -kInf;
        return ns - ms;
    };
    double best = 0.0;  // s -> 0+ always yields N(ts) - M(s) -> 0
    double best_s = 0.0;
    std::size_t pts = std::max<std::size_t>(grid.points, 8);
    double step = (grid.hi_exp - grid.lo_exp) / static_cast<double>(pts - 1);
    for (std::size_t i = 0; i < pts; ++i) {
        double s = std::exp((grid.lo_exp + step * static_cast<double>(i)) * ln2);
        double v = value(s);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    if (std::isinf(best)) return kInf;
    // unbounded detection: still growing at the top of the grid
    double top = std::exp(grid.hi_exp * ln2);
    if (best_s > 0.0 && std::fabs(std::log(best_s / top)) < 2.0 * ln2) {
        double v1 = value(top), v2 = value(4.0 * top);
        if (v2 > v1 && v2 > best) return kInf;
    }
    // one local refinement pass around the argmax
    if (best_s > 0.0) {
        double lo = best_s * std::exp(-step * ln2), hi = best_s * std::exp(step * ln2);
        for (int round = 0; round < 3; ++round) {
            double h = (hi - lo) / 64.0;
            double loc_best = best, loc_s = best_s;
            for (int i = 0; i <= 64; ++i) {
                double s = lo + h * i;
                if (s <= 0.0) continue;
                double v = value(s);
                if (v > loc_best) {
                    loc_best = v;
                    loc_s = s;
                }
            }
            best = loc_best;
            best_s = loc_s;
            lo = std::max(best_s - 2.0 * h, lo);
            hi = std::min(best_s + 2.0 * h, hi);
        }
    }
    return std::max(best, 0.0);
}

YoungFn young_conjugate(const YoungFn& n, const YoungFn& m, const ConjugateGrid& grid) {
    // t-grid for the output table; geometric with the same span as the s-grid
    const double ln2 = std::log(2.0);
    std::size_t pts = 1025;
    std::vector<double> us(pts), vs(pts);
    double lo = -40.0, hi = 40.0;
    double step = (hi - lo) / static_cast<double>(pts - 1);
    double prev = 0.0;
    for (std::size_t i = 0; i < pts; ++i) {
        us[i] = std::exp((lo + step * static_cast<double>(i)) * ln2);
        double v = young_conjugate_at(n, m, us[i], grid);
        if (std::isfinite(v) && v < prev) v = prev;  // enforce monotonicity across grid noise
        vs[i] = v;
        if (std::isfinite(v)) prev = v;
    }
    return YoungFn::table(std::move(us), std::move(vs));
}

}  // namespace amalgam
