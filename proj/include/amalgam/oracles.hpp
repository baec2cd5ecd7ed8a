#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "amalgam/expr.hpp"
#include "amalgam/seq.hpp"

namespace amalgam {

struct OracleConfig {
    double tolerance = 1e-6;  // relative
    int restarts = 32;
    int max_iterations = 10000;
    std::uint64_t seed = 20240901;
    int depth = 0;  // nesting level; nested oracles widen tolerance x10 per level

    OracleConfig nested() const {
        OracleConfig c = *this;
        c.tolerance *= 10.0;
        c.depth += 1;
        if (c.depth > 2)
            throw std::domain_error("oracle recursion exceeds depth 2");
        return c;
    }
};

struct OracleValue {
    double value = 0.0;
    bool converged = true;  // restarts agreed within 10x tolerance
};

/// Witness of a pointwise factorization |input| = g . h.
struct FactorWitness {
    Seq g;
    Seq h;
    double norm_product = 0.0;
    double target_norm = 0.0;
    double ratio = 0.0;  // norm_product / target_norm
    bool converged = true;
};

/// sup { sum |x_n| y_n : y >= 0, ||y||_space <= 1 } by normalized
/// multiplicative ascent with multi-start.
OracleValue dual_norm(const ExprPtr& space, const Seq& x, const OracleConfig& cfg = {});

/// sup over y >= 0 of ||x.y||_to / ||y||_from. Heuristic: certified only
/// against closed forms.
OracleValue multiplier_norm(const ExprPtr& from, const ExprPtr& to, const Seq& x, const OracleConfig& cfg = {});

/// inf { ||g||_a ||h||_b : |z| = g.h } over the support of z; convex in
/// log-coordinates.
FactorWitness product_norm(const ExprPtr& a, const ExprPtr& b, const Seq& z, const OracleConfig& cfg = {});

/// inf { max(||g||_a, ||h||_b) : |z| = |g|^{1-theta} |h|^theta }.
OracleValue calderon_norm(const ExprPtr& a, const ExprPtr& b, double theta, const Seq& z, const OracleConfig& cfg = {});

/// Near-optimal Lozanovskii split of f through space and its Koethe dual.
FactorWitness lozanovskii_factorize(const ExprPtr& space, const Seq& f, const OracleConfig& cfg = {});

/// sup { sum |x_n| y_n : y positive and non-increasing, ||y||_{X^x} <= 1 }.
OracleValue down_norm(const ExprPtr& space, const Seq& x, const OracleConfig& cfg = {});

/// Factorization of x through lp x gq against the ces_p norm.
FactorWitness bennett_factorize(double p, const Seq& x, const OracleConfig& cfg = {});

/// Peetre K-functional K(t, x; X0, X1) by convex decomposition; closed fast
/// path for the (l1, linf) couple.
double kfunctional(const Seq& x, double t, const ExprPtr& x0, const ExprPtr& x1, const OracleConfig& cfg = {});

/// Closed-form Koethe dual when one is known (lp family, orlicz), else null.
ExprPtr dual_space_closed_form(const ExprPtr& space);

// Variants that also report a subgradient of the value with respect to
// |x| (Danskin-style: evaluated at the optimizer). Used by the evaluator
// when oracle-only nodes occur inside a differentiated objective.
OracleValue dual_norm_with_argmax(const ExprPtr& space, const Seq& x, const OracleConfig& cfg,
                                  std::vector<double>* grad);
OracleValue down_norm_with_argmax(const ExprPtr& space, const Seq& x, const OracleConfig& cfg,
                                  std::vector<double>* grad);
OracleValue multiplier_norm_with_grad(const ExprPtr& from, const ExprPtr& to, const Seq& x,
                                      const OracleConfig& cfg, std::vector<double>* grad);
FactorWitness product_norm_with_grad(const ExprPtr& a, const ExprPtr& b, const Seq& z,
                                     const OracleConfig& cfg, std::vector<double>* grad);
OracleValue calderon_norm_with_grad(const ExprPtr& a, const ExprPtr& b, double theta, const Seq& z,
                                    const OracleConfig& cfg, std::vector<double>* grad);

}  // namespace amalgam
