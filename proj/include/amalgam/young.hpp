#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace amalgam {

/// A Young function: convex, non-decreasing, M(0) = 0, not identically
/// zero or infinity. Values may be +infinity (capped and table variants).
class YoungFn {
public:
    enum class Kind { power, maxpow, table, capped };

    static YoungFn power(double p);
    static YoungFn maxpow(double p1, double p2);
    /// Breakpoints (u_i, v_i) with convex piecewise-linear interpolation;
    /// extrapolates with the last slope, or jumps to +infinity past the
    /// last breakpoint when the stored value there is +infinity.
    static YoungFn table(std::vector<double> us, std::vector<double> vs);
    static YoungFn capped(double a, double b);

    Kind kind() const { return kind_; }
    double param1() const { return p1_; }
    double param2() const { return p2_; }
    const std::vector<double>& table_us() const { return us_; }
    const std::vector<double>& table_vs() const { return vs_; }

    /// M(u); may return +infinity.
    double operator()(double u) const;
    /// Right-continuous inverse: inf{u : M(u) > y} clipped to sup{u : M(u) <= y}.
    double inverse(double y) const;

    /// a_M = sup{u : M(u) = 0}.
    double zero_end() const;
    /// b_M = inf{u : M(u) = +infinity} (+infinity when M is finite).
    double finite_end() const;

    std::string print() const;

private:
    Kind kind_ = Kind::power;
    double p1_ = 1.0, p2_ = 1.0;
    std::vector<double> us_, vs_;
};

/// Non-decreasing, phi(0) = 0, phi(t)/t non-increasing.
class QuasiConcaveFn {
public:
    enum class Kind { power, log1p, table };

    static QuasiConcaveFn power(double a);
    static QuasiConcaveFn log1p();
    static QuasiConcaveFn table(std::vector<double> ts, std::vector<double> vs);

    Kind kind() const { return kind_; }
    double param() const { return a_; }
    const std::vector<double>& table_ts() const { return ts_; }
    const std::vector<double>& table_vs() const { return vs_; }

    double operator()(double t) const;

    std::string print() const;

private:
    Kind kind_ = Kind::power;
    double a_ = 1.0;
    std::vector<double> ts_, vs_;
};

struct ConjugateGrid {
    double lo_exp = -40.0;  // grid spans 2^lo_exp .. 2^hi_exp
    double hi_exp = 40.0;
    std::size_t points = 4096;
};

/// Generalized Young conjugate (N (-) M)(t) = sup_{s>0} { N(ts) - M(s) },
/// computed on a geometric t-grid with one local refinement of the s-search
/// around the argmax. Entries that grow without bound are recorded as
/// +infinity in the resulting table.
YoungFn young_conjugate(const YoungFn& n, const YoungFn& m, const ConjugateGrid& grid = {});

/// Single point of the conjugate, by the same grid search.
double young_conjugate_at(const YoungFn& n, const YoungFn& m, double t, const ConjugateGrid& grid = {});

}  // namespace amalgam
