#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "amalgam/seq.hpp"
#include "amalgam/weight.hpp"
#include "amalgam/young.hpp"

namespace amalgam {

constexpr double kPInf = std::numeric_limits<double>::infinity();

/// A non-composite sequence space with a directly evaluable norm.
class BaseSpace {
public:
    enum class Kind {
        lp,            // p in [1, inf]
        lp_weighted,   // lp with a strictly positive weight
        linf_weighted,
        lorentz_pq,    // ((n+1)^{q/p} - n^{q/p}) weights on the rearrangement
        lorentz_lambda,
        marcinkiewicz,
        orlicz,        // Luxemburg-Nakano norm
        musielak,      // per-index modular 2^j M(u), block-indexed
        gq,            // running q-means, sup norm
    };

    static BaseSpace lp(double p);
    static BaseSpace lpw(double p, Weight w);
    static BaseSpace linf() { return lp(kPInf); }
    static BaseSpace linfw(Weight w);
    static BaseSpace lorentz_pq(double p, double q);
    static BaseSpace lorentz_lambda(QuasiConcaveFn phi);
    static BaseSpace marcinkiewicz(QuasiConcaveFn phi);
    static BaseSpace orlicz(YoungFn m);
    static BaseSpace musielak(YoungFn m);
    static BaseSpace gq(double q);

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    double q() const { return q_; }
    const Weight& weight() const { return w_; }
    const YoungFn& young() const { return yf_; }
    const QuasiConcaveFn& quasiconcave() const { return qf_; }

    bool rearrangement_invariant() const;
    std::string print() const;

private:
    Kind kind_ = Kind::lp;
    double p_ = 2.0, q_ = 2.0;
    Weight w_ = Weight::coordpow(0.0);
    YoungFn yf_ = YoungFn::power(1.0);
    QuasiConcaveFn qf_ = QuasiConcaveFn::power(1.0);
};

/// Exact norm by the defining formula. Orlicz/Musielak norms are found by
/// bisection on the modular inequality to relative tolerance 1e-12.
double base_norm(const BaseSpace& space, const Seq& x);

/// Same value; optionally fills a subgradient with respect to |x| (valid
/// almost everywhere; at ties an attaining choice is made).
double base_norm_grad(const BaseSpace& space, std::span<const double> absx, std::vector<double>* grad);

/// Orlicz / Musielak modular at scale lambda.
double orlicz_modular(const BaseSpace& space, std::span<const double> absx, double lambda);

/// Lower estimate of ||D_m|| (up = true) or ||D_{1/m}|| (up = false) on the
/// space, from a structured candidate set at length n.
double boyd_probe(const BaseSpace& space, std::size_t m, std::size_t n, bool up = true, std::uint64_t seed = 1);

}  // namespace amalgam
