#pragma once

#include <string>
#include <vector>

#include "amalgam/expr.hpp"
#include "amalgam/oracles.hpp"
#include "amalgam/seq.hpp"

namespace amalgam {

enum class Strategy { definitional, rewritten, oracle };

struct EvalOutcome {
    double value = 0.0;
    std::string method;
    int oracle_warnings = 0;
};

struct EvalOptions {
    OracleConfig oracle;
    std::vector<std::string> assumptions;  // consumed by the rewritten strategy
};

/// Norm of x in the space denoted by expr under the chosen strategy.
/// 'rewritten' normalizes via simplify first and refuses oracle-only
/// normal forms; 'definitional' routes oracle-only nodes to the solvers.
EvalOutcome eval_norm(const ExprPtr& expr, const Seq& x, Strategy strategy = Strategy::definitional,
                      const EvalOptions& opts = {});

/// eval_norm(a, x) / eval_norm(b, x); both sides definitional.
double equivalence_ratio(const ExprPtr& a, const ExprPtr& b, const Seq& x, const EvalOptions& opts = {});

/// Value and (when grad != null) a subgradient with respect to |x|.
/// Internal workhorse shared with the oracle solvers; absx must be
/// entrywise non-negative.
double norm_value_grad(const ExprPtr& expr, std::span<const double> absx, std::vector<double>* grad,
                       const OracleConfig& cfg, int* warnings = nullptr);

/// Thrown when a strategy cannot produce a value (oracle-only normal form,
/// invalid composite).
class eval_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace amalgam
