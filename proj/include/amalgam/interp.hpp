#pragma once

#include "amalgam/eval.hpp"
#include "amalgam/expr.hpp"
#include "amalgam/oracles.hpp"
#include "amalgam/seq.hpp"

namespace amalgam {

/// Real-method parameters on the geometric grid t = 2^m, m = -M..M, with
/// quadrature weight log 2 per node.
struct InterpParams {
    double theta = 0.5;  // strictly interior
    double q = 2.0;      // in [1, inf]
    int grid_half_width = 24;

    void validate() const;
};

struct RealMethodResult {
    double value = 0.0;
    /// Boundary-node contribution relative to the whole sum; a grid
    /// large enough for the input keeps this below 1%.
    double boundary_fraction = 0.0;
};

RealMethodResult real_method_norm(const ExprPtr& x0, const ExprPtr& x1, const InterpParams& params,
                                  const Seq& x, const OracleConfig& cfg = {});

/// Ratio of the (theta,q) grid norm over the discretized couple applied to
/// b against the same norm over the original couple applied to the
/// expanded step sequence.
double check_E_commutes(const ExprPtr& x0, const ExprPtr& x1, const InterpParams& params, const BlockSeq& b,
                        const OracleConfig& cfg = {});

/// Ratio of the grid norm of the amalgam couple against the amalgam whose
/// outer norm is the grid-interpolated one (evaluated per block vector).
double check_amalgam_interp(const AmalgamInner& inner, const ExprPtr& e, const ExprPtr& f,
                            const InterpParams& params, const Seq& x, const OracleConfig& cfg = {});

}  // namespace amalgam
