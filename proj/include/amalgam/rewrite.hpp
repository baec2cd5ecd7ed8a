#pragma once

#include <string>
#include <vector>

#include "amalgam/expr.hpp"

namespace amalgam {

/// Side conditions a caller may declare. The engine never asserts an
/// analytic hypothesis on its own; it only consumes declared tokens and
/// records them in the trace.
namespace assume {
inline constexpr const char* boyd_nontrivial = "boyd-nontrivial";
inline constexpr const char* hardy_bounded = "hardy-bounded";
inline constexpr const char* embed_orlicz = "embed-orlicz";
inline constexpr const char* e_factorization = "e-factorization";
inline constexpr const char* strongly_separated = "strongly-separated";
}  // namespace assume

bool known_assumption(const std::string& token);

struct RewriteStep {
    std::string rule;
    std::string before;
    std::string after;
    std::vector<std::string> assumptions_used;
};

struct RewriteTrace {
    std::vector<RewriteStep> steps;

    std::string summary() const;  // e.g. "R4,R1"
};

struct SimplifyResult {
    ExprPtr expr;
    RewriteTrace trace;
};

/// Applies the identity catalog (R1..R19 plus their closed-form families)
/// leftmost-innermost until no rule fires. Deterministic; bounded by 10^4
/// steps. Unknown assumption tokens are rejected.
SimplifyResult simplify(const ExprPtr& expr, const std::vector<std::string>& assumptions = {});

}  // namespace amalgam
