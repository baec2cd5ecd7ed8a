#include "amalgam/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "amalgam/young.hpp"

namespace amalgam {

namespace {

using K = SpaceExpr::Kind;
using BK = BaseSpace::Kind;

bool is_base(const ExprPtr& e, BK k) { return e && e->kind == K::base && e->space.kind() == k; }

bool is_plain_lp(const ExprPtr& e, double* p = nullptr) {
    if (!e || e->kind != K::base || e->space.kind() != BK::lp) return false;
    if (p) *p = e->space.p();
    return true;
}

bool is_linf(const ExprPtr& e) {
    double p;
    return is_plain_lp(e, &p) && p == kPInf;
}

bool is_l1(const ExprPtr& e) {
    double p;
    return is_plain_lp(e, &p) && p == 1.0;
}

double conj_exponent(double p) {
    if (p == 1.0) return kPInf;
    if (p == kPInf) return 1.0;
    return p / (p - 1.0);
}

struct RuleHit {
    std::string rule;
    ExprPtr replacement;
    std::vector<std::string> used;
};

bool has(const std::vector<std::string>& tokens, const char* t) {
    return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}

// ---- closed forms used by several rules ----

// Koethe dual of directly dualizable bases; null when unknown.
ExprPtr base_dual(const ExprPtr& e) {
    if (!e || e->kind != K::base) return nullptr;
    const BaseSpace& s = e->space;
    switch (s.kind()) {
        case BK::lp:
            return make_lp(conj_exponent(s.p()));
        case BK::lp_weighted: {
            double q = conj_exponent(s.p());
            if (s.p() == 1.0) return make_base(BaseSpace::linfw(s.weight().reciprocal()));
            return make_base(BaseSpace::lpw(q, s.weight().reciprocal()));
        }
        case BK::linf_weighted:
            return make_base(BaseSpace::lpw(1.0, s.weight().reciprocal()));
        case BK::orlicz: {
            // l_M^x carries the Orlicz (Amemiya) norm of M* = id (-) M; as a
            // space identification the Luxemburg form is within factor 2,
            // which is what the equivalence envelopes measure.
            YoungFn conj = young_conjugate(YoungFn::power(1.0), s.young());
            return make_base(BaseSpace::orlicz(std::move(conj)));
        }
        default:
            return nullptr;
    }
}

// M(lp(p), lp(q)) on sequence spaces.
ExprPtr lp_multiplier(double p, double q) {
    if (q >= p) return make_lp(kPInf);  // lp -> lq embeds, multipliers are linf
    double r = 1.0 / (1.0 / q - 1.0 / p);
    return make_lp(r);
}

std::optional<double> lp_product_exponent(double p, double q) {
    double ip = p == kPInf ? 0.0 : 1.0 / p;
    double iq = q == kPInf ? 0.0 : 1.0 / q;
    double ir = ip + iq;
    if (ir == 0.0) return kPInf;
    return 1.0 / ir;
}

AmalgamInner inner_of_exponent(double r) {
    AmalgamInner in;
    if (r == 1.0)
        in.kind = AmalgamInner::Kind::l1;
    else if (r == kPInf)
        in.kind = AmalgamInner::Kind::linf;
    else {
        in.kind = AmalgamInner::Kind::lp;
        in.p = r;
    }
    return in;
}

// lpw / linfw base -> weighted(lp) so the surrounding functor can extract
// the weight; null when the child is not a weighted base
ExprPtr unfold_weighted_base(const ExprPtr& e) {
    if (!e || e->kind != K::base) return nullptr;
    const BaseSpace& s = e->space;
    if (s.kind() != BK::lp_weighted && s.kind() != BK::linf_weighted) return nullptr;
    return make_weighted(make_lp(s.p()), s.weight());
}

// ---- the ordered rule catalog ----
// Applied to a single node (children already in normal form). Returns the
// first applicable rewrite in catalog order.
std::optional<RuleHit> apply_rules(const ExprPtr& e, const std::vector<std::string>& assume_tokens) {
    // R1: E(lp) -> lp(2^{j/p})
    if (e->kind == K::discretize) {
        double p;
        if (is_plain_lp(e->a, &p)) {
            ExprPtr repl = p == kPInf
                               ? make_lp(kPInf)
                               : make_base(BaseSpace::lpw(p, Weight::blockpow(1.0 / p)));
            return RuleHit{"R1", repl, {}};
        }
    }
    // R2: dual(E(X)) -> E(dual(X))(2^{-j})
    if (e->kind == K::kothe_dual && e->a->kind == K::discretize) {
        ExprPtr repl = make_weighted(make_discretize(make_kothe_dual(e->a->a)), Weight::blockpow(-1.0));
        return RuleHit{"R2", repl, {}};
    }
    // R3: E(sym(X)) -> E(X), needs non-trivial Boyd indices
    if (e->kind == K::discretize && e->a->kind == K::symmetrize) {
        if (has(assume_tokens, assume::boyd_nontrivial))
            return RuleHit{"R3", make_discretize(e->a->a), {assume::boyd_nontrivial}};
    }
    // exact footnote identity: the majorant leaves the sup norm alone
    if (e->kind == K::tandori && is_linf(e->a))
        return RuleHit{"R4c", make_lp(kPInf), {}};
    // R4: tand(X) -> amal(linfblocks, E(X))
    if (e->kind == K::tandori) {
        AmalgamInner in;
        in.kind = AmalgamInner::Kind::linf;
        return RuleHit{"R4", make_amalgam(in, make_discretize(e->a)), {}};
    }
    // R11: ces(ces(X)) -> ces(X) under non-trivial Boyd indices; must be
    // tried before R5 destroys the inner Cesaro node
    if (e->kind == K::cesaro && e->a->kind == K::cesaro) {
        if (has(assume_tokens, assume::boyd_nontrivial))
            return RuleHit{"R11", make_cesaro(e->a->a), {assume::boyd_nontrivial}};
    }
    // R5: ces(X), down(X) -> amal(l1blocks, E(X)(2^{-j}));
    //     down only under a declared Hardy-boundedness assumption
    if (e->kind == K::cesaro || e->kind == K::down) {
        bool down = e->kind == K::down;
        if (!down || has(assume_tokens, assume::hardy_bounded)) {
            AmalgamInner in;
            in.kind = AmalgamInner::Kind::l1;
            ExprPtr outer = make_weighted(make_discretize(e->a), Weight::blockpow(-1.0));
            std::vector<std::string> used;
            if (down) used.push_back(assume::hardy_bounded);
            return RuleHit{"R5", make_amalgam(in, outer), used};
        }
    }

    // R10: cancellation M(E o F, E o G) -> M(F, G)
    if (e->kind == K::mult && e->a->kind == K::prod && e->b->kind == K::prod) {
        if (expr_equal(e->a->a, e->b->a))
            return RuleHit{"R10", make_mult(e->a->b, e->b->b), {}};
        if (expr_equal(e->a->b, e->b->b))
            return RuleHit{"R10", make_mult(e->a->a, e->b->a), {}};
        if (expr_equal(e->a->a, e->b->b))
            return RuleHit{"R10", make_mult(e->a->b, e->b->a), {}};
        if (expr_equal(e->a->b, e->b->a))
            return RuleHit{"R10", make_mult(e->a->a, e->b->b), {}};
    }

    // R15: Bennett, M(ces lp, ces lq)
    if (e->kind == K::mult && e->a->kind == K::cesaro && e->b->kind == K::cesaro) {
        double p, q;
        if (is_plain_lp(e->a->a, &p) && is_plain_lp(e->b->a, &q) && p > 1.0 && q > 1.0 &&
            p != kPInf && q != kPInf) {
            if (p <= q) {
                ExprPtr repl = p == q ? make_lp(kPInf)
                                      : make_base(BaseSpace::linfw(Weight::coordpow(1.0 / q - 1.0 / p)));
                return RuleHit{"R15", repl, {}};
            }
            double r = 1.0 / (1.0 / q - 1.0 / p);
            return RuleHit{"R15", make_tandori(make_lp(r)), {}};
        }
    }
    // R16: M(ces_M, ces_N) -> linf(w_{M->N}) under a declared embedding
    if (e->kind == K::mult && e->a->kind == K::cesaro && e->b->kind == K::cesaro &&
        is_base(e->a->a, BK::orlicz) && is_base(e->b->a, BK::orlicz) &&
        has(assume_tokens, assume::embed_orlicz)) {
        Weight w = Weight::young_ratio(e->a->a->space.young(), e->b->a->space.young());
        return RuleHit{"R16", make_base(BaseSpace::linfw(std::move(w))), {assume::embed_orlicz}};
    }
    // R19: Lorentz/Marcinkiewicz multipliers between Cesaro spaces
    if (e->kind == K::mult && e->a->kind == K::cesaro && e->b->kind == K::cesaro) {
        const ExprPtr& xa = e->a->a;
        const ExprPtr& xb = e->b->a;
        if (is_base(xa, BK::marcinkiewicz) && is_base(xb, BK::marcinkiewicz)) {
            Weight w = Weight::q_ratio(xb->space.quasiconcave(), xa->space.quasiconcave());
            return RuleHit{"R19", make_tandori(make_base(BaseSpace::linfw(std::move(w)))), {}};
        }
        if (is_base(xa, BK::marcinkiewicz) && is_base(xb, BK::lorentz_lambda)) {
            Weight w = Weight::q_delta_ratio(xb->space.quasiconcave(), xa->space.quasiconcave());
            return RuleHit{"R19", make_tandori(make_base(BaseSpace::lpw(1.0, std::move(w)))), {}};
        }
        if (is_base(xa, BK::lorentz_lambda) && is_base(xb, BK::lorentz_lambda)) {
            Weight w = Weight::q_ratio(xb->space.quasiconcave(), xa->space.quasiconcave());
            return RuleHit{"R19", make_tandori(make_base(BaseSpace::linfw(std::move(w)))), {}};
        }
    }
    // R13: M(tand X, tand Y) and M(ces X, ces Y) -> tand(M(X, Y)),
    //      conditional on a declared factorization/separation assumption
    if (e->kind == K::mult &&
        ((e->a->kind == K::tandori && e->b->kind == K::tandori) ||
         (e->a->kind == K::cesaro && e->b->kind == K::cesaro))) {
        const char* token = has(assume_tokens, assume::e_factorization) ? assume::e_factorization
                            : has(assume_tokens, assume::strongly_separated) ? assume::strongly_separated
                                                                             : nullptr;
        if (token)
            return RuleHit{"R13", make_tandori(make_mult(e->a->a, e->b->a)), {token}};
    }
    // R12: prod(tand X, tand Y) -> tand(prod X Y)
    if (e->kind == K::prod && e->a->kind == K::tandori && e->b->kind == K::tandori)
        return RuleHit{"R12", make_tandori(make_prod(e->a->a, e->b->a)), {}};

    // R18: M(lp, ces X) -> cesr(M(lp, X), q) under Hardy boundedness
    if (e->kind == K::mult && e->b->kind == K::cesaro) {
        double p;
        if (is_plain_lp(e->a, &p) && p > 1.0 && p != kPInf && has(assume_tokens, assume::hardy_bounded)) {
            double q = conj_exponent(p);
            return RuleHit{"R18", make_cesaro_r(make_mult(e->a, e->b->a), q), {assume::hardy_bounded}};
        }
    }

    // R6: multipliers between amalgams with the same layout
    if (e->kind == K::mult && e->a->kind == K::amalgam && e->b->kind == K::amalgam &&
        e->a->layout == e->b->layout) {
        double pi = e->a->inner.exponent(), qi = e->b->inner.exponent();
        double r = qi >= pi ? kPInf : 1.0 / (1.0 / qi - 1.0 / pi);
        return RuleHit{"R6", make_amalgam(inner_of_exponent(r), make_mult(e->a->a, e->b->a), e->a->layout), {}};
    }
    // R7: products of amalgams
    if (e->kind == K::prod && e->a->kind == K::amalgam && e->b->kind == K::amalgam &&
        e->a->layout == e->b->layout) {
        auto r = lp_product_exponent(e->a->inner.exponent(), e->b->inner.exponent());
        if (r)
            return RuleHit{"R7", make_amalgam(inner_of_exponent(*r), make_prod(e->a->a, e->b->a), e->a->layout), {}};
    }
    // R8: Calderon products of amalgams
    if (e->kind == K::calderon && e->a->kind == K::amalgam && e->b->kind == K::amalgam &&
        e->a->layout == e->b->layout) {
        double th = e->param;
        double ip = e->a->inner.exponent() == kPInf ? 0.0 : 1.0 / e->a->inner.exponent();
        double iq = e->b->inner.exponent() == kPInf ? 0.0 : 1.0 / e->b->inner.exponent();
        double ir = (1.0 - th) * ip + th * iq;
        double r = ir == 0.0 ? kPInf : 1.0 / ir;
        return RuleHit{"R8", make_amalgam(inner_of_exponent(r), make_calderon(e->a->a, e->b->a, th), e->a->layout), {}};
    }

    // R14: M(l_M, l_N) -> l_{N (-) M}
    if (e->kind == K::mult && is_base(e->a, BK::orlicz) && is_base(e->b, BK::orlicz)) {
        YoungFn conj = young_conjugate(e->b->space.young(), e->a->space.young());
        return RuleHit{"R14", make_base(BaseSpace::orlicz(std::move(conj))), {}};
    }

    // ---- R9 family: closed multiplier/product/dual forms and
    //      weight/convexity commutations ----
    if (e->kind == K::mult) {
        if (expr_equal(e->a, e->b))
            return RuleHit{"R9", make_lp(kPInf), {}};
        // weighted bases unfold so the extraction below can reach them
        if (ExprPtr ua = unfold_weighted_base(e->a))
            return RuleHit{"R9w", make_mult(ua, e->b), {}};
        if (ExprPtr ub = unfold_weighted_base(e->b))
            return RuleHit{"R9w", make_mult(e->a, ub), {}};
        // weight extraction: M(X, Y(w)) = M(X, Y)(w); M(X(w), Y) = M(X, Y)(1/w)
        if (e->b->kind == K::weighted)
            return RuleHit{"R9w", make_weighted(make_mult(e->a, e->b->a), e->b->w), {}};
        if (e->a->kind == K::weighted)
            return RuleHit{"R9w", make_weighted(make_mult(e->a->a, e->b), e->a->w.reciprocal()), {}};
        if (is_l1(e->b))
            return RuleHit{"R9", make_kothe_dual(e->a), {}};
        if (is_linf(e->a))
            return RuleHit{"R9", e->b, {}};  // M(linf, Y) = Y
        double p, q;
        if (is_plain_lp(e->a, &p) && is_plain_lp(e->b, &q))
            return RuleHit{"R9", lp_multiplier(p, q), {}};
    }
    if (e->kind == K::prod) {
        if (ExprPtr ua = unfold_weighted_base(e->a))
            return RuleHit{"R9w", make_prod(ua, e->b), {}};
        if (ExprPtr ub = unfold_weighted_base(e->b))
            return RuleHit{"R9w", make_prod(e->a, ub), {}};
        if (e->a->kind == K::weighted)
            return RuleHit{"R9w", make_weighted(make_prod(e->a->a, e->b), e->a->w), {}};
        if (e->b->kind == K::weighted)
            return RuleHit{"R9w", make_weighted(make_prod(e->a, e->b->a), e->b->w), {}};
        if (is_linf(e->a))
            return RuleHit{"R9", e->b, {}};  // linf (.) Z = Z
        if (is_linf(e->b))
            return RuleHit{"R9", e->a, {}};
        double p, q;
        if (is_plain_lp(e->a, &p) && is_plain_lp(e->b, &q)) {
            auto r = lp_product_exponent(p, q);
            if (r) return RuleHit{"R9", make_lp(*r), {}};
        }
        // X^{(p)} (.) X^{(q)} = X^{(r)}
        if (e->a->kind == K::convexify && e->b->kind == K::convexify && expr_equal(e->a->a, e->b->a)) {
            auto r = lp_product_exponent(e->a->param, e->b->param);
            if (r && *r > 0.0)
                return RuleHit{"R9", make_convexify(e->a->a, *r), {}};
        }
    }
    if (e->kind == K::calderon) {
        if (ExprPtr ua = unfold_weighted_base(e->a))
            return RuleHit{"R9w", make_calderon(ua, e->b, e->param), {}};
        if (ExprPtr ub = unfold_weighted_base(e->b))
            return RuleHit{"R9w", make_calderon(e->a, ub, e->param), {}};
        if (e->a->kind == K::weighted && e->b->kind == K::weighted) {
            Weight w = e->a->w.pow(1.0 - e->param).times(e->b->w.pow(e->param));
            return RuleHit{"R9w", make_weighted(make_calderon(e->a->a, e->b->a, e->param), w), {}};
        }
        if (e->a->kind == K::weighted)
            return RuleHit{"R9w",
                           make_weighted(make_calderon(e->a->a, e->b, e->param), e->a->w.pow(1.0 - e->param)),
                           {}};
        if (e->b->kind == K::weighted)
            return RuleHit{"R9w", make_weighted(make_calderon(e->a, e->b->a, e->param), e->b->w.pow(e->param)), {}};
        if (expr_equal(e->a, e->b))
            return RuleHit{"R9", e->a, {}};
        double p, q;
        if (is_plain_lp(e->a, &p) && is_plain_lp(e->b, &q)) {
            double ip = p == kPInf ? 0.0 : 1.0 / p;
            double iq = q == kPInf ? 0.0 : 1.0 / q;
            double ir = (1.0 - e->param) * ip + e->param * iq;
            return RuleHit{"R9", make_lp(ir == 0.0 ? kPInf : 1.0 / ir), {}};
        }
    }
    if (e->kind == K::kothe_dual) {
        if (e->a->kind == K::weighted)
            return RuleHit{"R9w", make_weighted(make_kothe_dual(e->a->a), e->a->w.reciprocal()), {}};
        if (ExprPtr d = base_dual(e->a))
            return RuleHit{"R9d", d, {}};
    }
    if (e->kind == K::weighted) {
        if (e->w.is_trivial())
            return RuleHit{"R9w", e->a, {}};
        if (e->a->kind == K::weighted)
            return RuleHit{"R9w", make_weighted(e->a->a, e->a->w.times(e->w)), {}};
        // fold weights into weighted bases
        if (e->a->kind == K::base) {
            const BaseSpace& s = e->a->space;
            if (s.kind() == BK::lp)
                return RuleHit{"R9w", make_base(BaseSpace::lpw(s.p(), e->w)), {}};
            if (s.kind() == BK::lp_weighted || s.kind() == BK::linf_weighted)
                return RuleHit{"R9w", make_base(BaseSpace::lpw(s.p(), s.weight().times(e->w))), {}};
        }
    }
    if (e->kind == K::convexify) {
        if (e->param == 1.0)
            return RuleHit{"R9c", e->a, {}};
        if (e->a->kind == K::convexify)
            return RuleHit{"R9c", make_convexify(e->a->a, e->param * e->a->param), {}};
        if (e->a->kind == K::weighted)
            return RuleHit{"R9c", make_weighted(make_convexify(e->a->a, e->param), e->a->w.pow(1.0 / e->param)), {}};
        if (e->a->kind == K::discretize)
            return RuleHit{"R9c", make_discretize(make_convexify(e->a->a, e->param)), {}};
        if (e->a->kind == K::amalgam) {
            double pi = e->a->inner.exponent();
            double r = pi == kPInf ? kPInf : pi * e->param;
            return RuleHit{"R9c", make_amalgam(inner_of_exponent(r), make_convexify(e->a->a, e->param), e->a->layout),
                           {}};
        }
        double q;
        if (is_plain_lp(e->a, &q)) {
            if (q == kPInf) return RuleHit{"R9c", e->a, {}};
            if (q * e->param >= 1.0) return RuleHit{"R9c", make_lp(q * e->param), {}};
        }
        if (is_base(e->a, BK::lp_weighted) || is_base(e->a, BK::linf_weighted)) {
            const BaseSpace& s = e->a->space;
            if (s.p() == kPInf)
                return RuleHit{"R9c", make_base(BaseSpace::linfw(s.weight().pow(1.0 / e->param))), {}};
            if (s.p() * e->param >= 1.0)
                return RuleHit{"R9c", make_base(BaseSpace::lpw(s.p() * e->param, s.weight().pow(1.0 / e->param))), {}};
        }
    }
    // R17: expand cesr; keep the g_q primitive as its own base space
    if (e->kind == K::cesaro_r) {
        if (is_linf(e->a) && e->param > 1.0)
            return RuleHit{"R17g", make_base(BaseSpace::gq(e->param)), {}};
        if (e->param == 1.0)
            return RuleHit{"R17", make_cesaro(e->a), {}};
        return RuleHit{"R17", make_convexify(make_cesaro(make_convexify(e->a, 1.0 / e->param)), e->param), {}};
    }
    // collapse amalgams whose inner blocks match a weighted coordinate space
    if (e->kind == K::amalgam && e->layout.kind == BlockLayout::Kind::dyadic) {
        const ExprPtr& outer = e->a;
        bool inner_linf = e->inner.kind == AmalgamInner::Kind::linf;
        bool inner_l1 = e->inner.kind == AmalgamInner::Kind::l1;
        if (inner_linf && is_linf(outer))
            return RuleHit{"R9a", make_lp(kPInf), {}};
        if (inner_linf && is_base(outer, BK::linf_weighted))
            return RuleHit{"R9a", make_base(BaseSpace::linfw(Weight::blockconst(outer->space.weight()))), {}};
        if (inner_l1 && is_l1(outer))
            return RuleHit{"R9a", make_lp(1.0), {}};
        if (inner_l1 && is_base(outer, BK::lp_weighted) && outer->space.p() == 1.0)
            return RuleHit{"R9a", make_base(BaseSpace::lpw(1.0, Weight::blockconst(outer->space.weight()))), {}};
    }
    return std::nullopt;
}

// Leftmost-outermost, one rewrite per pass: specific multi-node patterns
// (R2, R11, R15, ...) must fire before child rewrites destroy them.
ExprPtr rewrite_once(const ExprPtr& e, const std::vector<std::string>& tokens, RuleHit* hit) {
    if (!e || e->kind == K::base) return nullptr;
    if (auto h = apply_rules(e, tokens)) {
        *hit = *h;
        return h->replacement;
    }
    if (e->a) {
        if (ExprPtr na = rewrite_once(e->a, tokens, hit)) {
            SpaceExpr copy = *e;
            copy.a = na;
            return std::make_shared<const SpaceExpr>(std::move(copy));
        }
    }
    if (e->b) {
        if (ExprPtr nb = rewrite_once(e->b, tokens, hit)) {
            SpaceExpr copy = *e;
            copy.b = nb;
            return std::make_shared<const SpaceExpr>(std::move(copy));
        }
    }
    return nullptr;
}

}  // namespace

bool known_assumption(const std::string& token) {
    return token == assume::boyd_nontrivial || token == assume::hardy_bounded ||
           token == assume::embed_orlicz || token == assume::e_factorization ||
           token == assume::strongly_separated;
}

std::string RewriteTrace::summary() const {
    std::string s;
    for (const auto& st : steps) {
        if (!s.empty()) s += ",";
        s += st.rule;
    }
    return s;
}

SimplifyResult simplify(const ExprPtr& expr, const std::vector<std::string>& assumptions) {
    for (const auto& t : assumptions)
        if (!known_assumption(t))
            throw std::invalid_argument("simplify: unknown assumption token '" + t + "'");
    SimplifyResult res;
    res.expr = expr;
    // Bounded loop; the catalog has no cyclic pair, which the property
    // tests exercise over random trees.
    for (int step = 0; step < 10000; ++step) {
        RuleHit hit;
        ExprPtr next = rewrite_once(res.expr, assumptions, &hit);
        if (!next) return res;
        RewriteStep rs;
        rs.rule = hit.rule;
        rs.before = print_expr(res.expr);
        rs.after = print_expr(next);
        rs.assumptions_used = hit.used;
        res.trace.steps.push_back(std::move(rs));
        res.expr = next;
    }
    throw std::runtime_error("simplify: rewrite did not terminate within 10^4 steps on " + print_expr(expr));
}

}  // namespace amalgam
