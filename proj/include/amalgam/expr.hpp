#pragma once

#include <memory>
#include <string>
#include <vector>

#include "amalgam/spaces.hpp"

namespace amalgam {

struct SpaceExpr;
using ExprPtr = std::shared_ptr<const SpaceExpr>;

/// Inner space of an amalgam: one finite-dimensional space per block.
struct AmalgamInner {
    enum class Kind { l1, linf, lp };
    Kind kind = Kind::l1;
    double p = 1.0;

    double exponent() const { return kind == Kind::l1 ? 1.0 : kind == Kind::linf ? kPInf : p; }
    std::string print() const;
};

/// Block layout of an amalgam: dyadic Delta_j blocks, or uniform blocks of
/// a fixed size d.
struct BlockLayout {
    enum class Kind { dyadic, uniform };
    Kind kind = Kind::dyadic;
    std::size_t d = 1;

    bool operator==(const BlockLayout&) const = default;
};

/// Expression tree denoting a sequence space. Nodes are immutable and
/// shared; every norm, rewrite and oracle is keyed on this type.
struct SpaceExpr {
    enum class Kind {
        base,
        weighted,      // child normed after pointwise multiplication by w
        cesaro,        // ||H|x|||_X
        tandori,       // least decreasing majorant into X
        down,          // pairing against the decreasing part of the dual ball
        symmetrize,    // ||x*||_X
        convexify,     // || |x|^p ||_X^{1/p}
        discretize,    // coefficients of dyadic step functions, normed in X
        amalgam,       // per-block inner norms glued by an outer space
        kothe_dual,
        mult,          // pointwise multipliers M(A, B)
        prod,          // pointwise products A (.) B
        calderon,      // A^{1-theta} B^{theta}
        cesaro_r,      // r-th convexification of the Hardy operator into X
    };

    Kind kind = Kind::base;
    BaseSpace space = BaseSpace::lp(2.0);  // base
    ExprPtr a, b;                          // children
    Weight w = Weight::coordpow(0.0);      // weighted
    double param = 1.0;                    // convexify p / calderon theta / cesaro_r r
    AmalgamInner inner;                    // amalgam
    BlockLayout layout;                    // amalgam
};

ExprPtr make_base(BaseSpace s);
ExprPtr make_lp(double p);
ExprPtr make_weighted(ExprPtr child, Weight w);
ExprPtr make_cesaro(ExprPtr child);
ExprPtr make_tandori(ExprPtr child);
ExprPtr make_down(ExprPtr child);
ExprPtr make_symmetrize(ExprPtr child);
ExprPtr make_convexify(ExprPtr child, double p);
ExprPtr make_discretize(ExprPtr child);
ExprPtr make_amalgam(AmalgamInner inner, ExprPtr outer, BlockLayout layout = {});
ExprPtr make_kothe_dual(ExprPtr child);
ExprPtr make_mult(ExprPtr from, ExprPtr to);
ExprPtr make_prod(ExprPtr a, ExprPtr b);
ExprPtr make_calderon(ExprPtr a, ExprPtr b, double theta);
ExprPtr make_cesaro_r(ExprPtr child, double r);

std::string print_expr(const ExprPtr& e);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
/// Number of non-base nodes.
std::size_t composite_count(const ExprPtr& e);
/// True when the node requires an optimization oracle to evaluate.
bool is_oracle_node(SpaceExpr::Kind k);
/// True when the tree contains any oracle-only node.
bool contains_oracle_node(const ExprPtr& e);

}  // namespace amalgam
