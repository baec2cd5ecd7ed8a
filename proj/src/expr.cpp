#include "amalgam/expr.hpp"

#include <sstream>
#include <stdexcept>

namespace amalgam {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

ExprPtr node(SpaceExpr e) { return std::make_shared<const SpaceExpr>(std::move(e)); }

}  // namespace

std::string AmalgamInner::print() const {
    switch (kind) {
        case Kind::l1:
            return "l1blocks";
        case Kind::linf:
            return "linfblocks";
        case Kind::lp:
            return "lpblocks(" + fmt(p) + ")";
    }
    return "";
}

ExprPtr make_base(BaseSpace s) {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::base;
    e.space = std::move(s);
    return node(std::move(e));
}

ExprPtr make_lp(double p) { return make_base(BaseSpace::lp(p)); }

ExprPtr make_weighted(ExprPtr child, Weight w) {
    if (w.is_trivial()) return child;
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::weighted;
    e.a = std::move(child);
    e.w = std::move(w);
    return node(std::move(e));
}

#define AMALGAM_UNARY(NAME, KIND)                  \
    ExprPtr NAME(ExprPtr child) {                  \
        SpaceExpr e;                               \
        e.kind = SpaceExpr::Kind::KIND;            \
        e.a = std::move(child);                    \
        return node(std::move(e));                 \
    }

AMALGAM_UNARY(make_cesaro, cesaro)
AMALGAM_UNARY(make_tandori, tandori)
AMALGAM_UNARY(make_down, down)
AMALGAM_UNARY(make_symmetrize, symmetrize)
AMALGAM_UNARY(make_discretize, discretize)
AMALGAM_UNARY(make_kothe_dual, kothe_dual)
#undef AMALGAM_UNARY

ExprPtr make_convexify(ExprPtr child, double p) {
    if (!(p > 0.0))
        throw std::invalid_argument("convexify: exponent must be positive");
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::convexify;
    e.a = std::move(child);
    e.param = p;
    return node(std::move(e));
}

ExprPtr make_amalgam(AmalgamInner inner, ExprPtr outer, BlockLayout layout) {
    if (layout.kind == BlockLayout::Kind::uniform && layout.d == 0)
        throw std::invalid_argument("amalgam: uniform block size must be >= 1");
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::amalgam;
    e.inner = inner;
    e.a = std::move(outer);
    e.layout = layout;
    return node(std::move(e));
}

ExprPtr make_mult(ExprPtr from, ExprPtr to) {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::mult;
    e.a = std::move(from);
    e.b = std::move(to);
    return node(std::move(e));
}

ExprPtr make_prod(ExprPtr a, ExprPtr b) {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::prod;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_calderon(ExprPtr a, ExprPtr b, double theta) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("calderon: theta must lie in (0,1)");
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::calderon;
    e.a = std::move(a);
    e.b = std::move(b);
    e.param = theta;
    return node(std::move(e));
}

ExprPtr make_cesaro_r(ExprPtr child, double r) {
    if (!(r >= 1.0))
        throw std::invalid_argument("cesaro_r: need r >= 1");
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::cesaro_r;
    e.a = std::move(child);
    e.param = r;
    return node(std::move(e));
}

std::string print_expr(const ExprPtr& e) {
    if (!e) return "<null>";
    switch (e->kind) {
        case SpaceExpr::Kind::base:
            return e->space.print();
        case SpaceExpr::Kind::weighted:
            return "weight(" + print_expr(e->a) + "," + e->w.print() + ")";
        case SpaceExpr::Kind::cesaro:
            return "ces(" + print_expr(e->a) + ")";
        case SpaceExpr::Kind::tandori:
            return "tand(" + print_expr(e->a) + ")";
        case SpaceExpr::Kind::down:
            return "down(" + print_expr(e->a) + ")";
        case SpaceExpr::Kind::symmetrize:
            return "sym(" + print_expr(e->a) + ")";
        case SpaceExpr::Kind::convexify:
            return "conv(" + print_expr(e->a) + "," + fmt(e->param) + ")";
        case SpaceExpr::Kind::discretize:
            return "E(" + print_expr(e->a) + ")";
        case SpaceExpr::Kind::amalgam:
            if (e->layout.kind == BlockLayout::Kind::uniform)
                return "amalu(" + e->inner.print() + "," + print_expr(e->a) + "," + std::to_string(e->layout.d) + ")";
            return "amal(" + e->inner.print() + "," + print_expr(e->a) + ")";
        case SpaceExpr::Kind::kothe_dual:
            return "dual(" + print_expr(e->a) + ")";
        case SpaceExpr::Kind::mult:
            return "mult(" + print_expr(e->a) + "," + print_expr(e->b) + ")";
        case SpaceExpr::Kind::prod:
            return "prod(" + print_expr(e->a) + "," + print_expr(e->b) + ")";
        case SpaceExpr::Kind::calderon:
            return "cald(" + print_expr(e->a) + "," + print_expr(e->b) + "," + fmt(e->param) + ")";
        case SpaceExpr::Kind::cesaro_r:
            return "cesr(" + print_expr(e->a) + "," + fmt(e->param) + ")";
    }
    return "";
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return print_expr(a) == print_expr(b);
}

std::size_t composite_count(const ExprPtr& e) {
    if (!e || e->kind == SpaceExpr::Kind::base) return 0;
    return 1 + composite_count(e->a) + composite_count(e->b);
}

bool is_oracle_node(SpaceExpr::Kind k) {
    using K = SpaceExpr::Kind;
    return k == K::down || k == K::kothe_dual || k == K::mult || k == K::prod || k == K::calderon;
}

bool contains_oracle_node(const ExprPtr& e) {
    if (!e) return false;
    if (is_oracle_node(e->kind)) return true;
    return contains_oracle_node(e->a) || contains_oracle_node(e->b);
}

}  // namespace amalgam
