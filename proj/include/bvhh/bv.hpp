#pragma once

#include <set>

#include "bvhh/hochschild.hpp"

namespace bvhh {

/* A cocycle m with dual coefficients whose class plays the role of a volume
   form: the unit condition says that a |-> a . m([]) is an isomorphism from
   the algebra onto its dual, which is exactly what makes cupping with [m] a
   candidate duality between the two cohomologies. */
template <ScalarField F>
struct FundamentalClass {
    Cochain<typename F::Elem> m;           // homogeneous cocycle, dual coefficients
    SparseVec<typename F::Elem> coords;    // class coordinates in its own slice
    bool bdual_class_vanishes = false;     // whether [B^vee m] = 0 in cohomology
    long long shift() const { return m.deg; }
};

/* Evaluate the left action g.h of an algebra-valued cochain on a mod-valued
   one at every word of a slice. The slice's word list covers every word that
   can carry a value in its degree, so the result is the complete cochain. */
template <ScalarField F>
Cochain<typename F::Elem> act_on_slice(const BarOps<F>& ops, const Bimodule<F>& mod,
                                       const Cochain<typename F::Elem>& g,
                                       const Cochain<typename F::Elem>& h,
                                       const CochainSlice<F>& s) {
    Cochain<typename F::Elem> out{g.deg + h.deg, {}};
    for (const auto& w : s.words) {
        auto v = ops.eval_cup(mod, g, h, w);
        if (!v.empty()) out.vals.emplace(w, std::move(v));
    }
    return out;
}

template <ScalarField F>
Cochain<typename F::Elem> bracket_on_slice(const BarOps<F>& ops,
                                           const Cochain<typename F::Elem>& g,
                                           const Cochain<typename F::Elem>& h,
                                           const CochainSlice<F>& s) {
    Cochain<typename F::Elem> out{g.deg + h.deg + 1, {}};
    for (const auto& w : s.words) {
        auto v = ops.eval_bracket(g, h, w);
        if (!v.empty()) out.vals.emplace(w, std::move(v));
    }
    return out;
}

template <ScalarField F>
Cochain<typename F::Elem> bdual_on_slice(const BarOps<F>& ops,
                                         const Cochain<typename F::Elem>& g,
                                         const CochainSlice<F>& s) {
    Cochain<typename F::Elem> out{g.deg + 1, {}};
    for (const auto& w : s.words) {
        auto v = ops.eval_bdual(g, w);
        if (!v.empty()) out.vals.emplace(w, std::move(v));
    }
    return out;
}

/* Validate a candidate fundamental cocycle: it must be a cocycle, and acting
   on its empty-word value must carry the algebra isomorphically onto the
   dual. Whether [B^vee m] vanishes is recorded, not required: a nonzero class
   only moves Delta(1) and switches the bracket-vs-Delta relation to its
   seven-term form. */
template <ScalarField F>
FundamentalClass<F> fundamental_class(Workbench<F>& wb, Cochain<typename F::Elem> m) {
    using Elem = typename F::Elem;
    const F& f = wb.field();
    const auto& a = wb.algebra();

    auto coords = wb.class_coords(Coeff::Dual, m.deg, m);
    if (!coords) throw InputError("fundamental cocycle candidate is not a cocycle");

    SparseVec<Elem> at_empty = cochain_eval(f, m, Word{});
    Mat<Elem> unit_map{a.dim(), std::vector<SparseVec<Elem>>(a.dim())};
    for (int j = 0; j < a.dim(); ++j)
        unit_map.cols[j] =
            wb.module(Coeff::Dual).act_left_vec(a, SparseVec<Elem>{{j, f.one()}}, at_empty);
    if (!mat_invertible(f, unit_map))
        throw InputError("fundamental cocycle fails the unit condition: a |-> a . m([]) "
                         "is not an isomorphism onto the dual");

    auto v = cochain_to_vec(f, wb.cochain_slice(Coeff::Dual, m.deg), m);
    auto bm = mat_apply(f, wb.bdual(m.deg), v);
    bool vanishes = wb.cohomology(Coeff::Dual, m.deg + 1).is_boundary(bm);
    return FundamentalClass<F>{std::move(m), std::move(*coords), vanishes};
}

/* The trace-like fundamental cocycle of a symmetric pairing: the empty word
   goes to theta(1) = <1,->. Word length zero makes B^vee m = 0 on the nose. */
template <ScalarField F>
FundamentalClass<F> fundamental_class(Workbench<F>& wb, const FrobeniusStructure<F>& fr) {
    using Elem = typename F::Elem;
    const F& f = wb.field();
    const auto& a = wb.algebra();
    Cochain<Elem> m{fr.degree_d(), {}};
    m.vals.emplace(Word{}, fr.theta(a, SparseVec<Elem>{{a.unit_index(), f.one()}}));
    return fundamental_class(wb, std::move(m));
}

/* Duality and the induced square-zero operator on cohomology with self
   coefficients. Cupping with the fundamental cocycle gives per-degree
   matrices D_t : HH^t(A;A) -> HH^{t+d}(A;A^vee); these are invertible
   whenever the fundamental class validated, so delta is the unique solution
   of  D_{t+1}(delta a) = [B^vee(a . m)].  Everything is per-degree, memoized,
   and expressed in the workbench's representative coordinates. */
template <ScalarField F>
class BvStructure {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;
    using Co = Cochain<Elem>;

    BvStructure(Workbench<F>& wb, FundamentalClass<F> fc)
        : wb_(wb), f_(wb.field()), fc_(std::move(fc)) {}

    Workbench<F>& workbench() { return wb_; }
    const FundamentalClass<F>& fundamental() const { return fc_; }
    long long shift() const { return fc_.shift(); }

    /* Representative cochain of a class given by coordinates. */
    Co rep(Coeff c, long long deg, const Vec& coords) {
        return vec_to_cochain(f_, wb_.cochain_slice(c, deg),
                              wb_.cohomology(c, deg).from_coords(coords));
    }

    /* Class of the cup product of two self-coefficient classes. */
    Vec cup(long long dg, const Vec& cg, long long dh, const Vec& ch) {
        Co g = rep(Coeff::Self, dg, cg), h = rep(Coeff::Self, dh, ch);
        return class_of(Coeff::Self, act_on_slice(wb_.ops(), wb_.module(Coeff::Self), g, h,
                                                  wb_.cochain_slice(Coeff::Self, dg + dh)));
    }

    /* Class of the Gerstenhaber bracket of two self-coefficient classes. */
    Vec bracket(long long dg, const Vec& cg, long long dh, const Vec& ch) {
        Co g = rep(Coeff::Self, dg, cg), h = rep(Coeff::Self, dh, ch);
        return class_of(Coeff::Self, bracket_on_slice(wb_.ops(), g, h,
                                                      wb_.cochain_slice(Coeff::Self, dg + dh + 1)));
    }

    /* Class of g . phi, a self class acting on a dual-coefficient class. */
    Vec act(long long dg, const Vec& cg, long long dphi, const Vec& cphi) {
        Co g = rep(Coeff::Self, dg, cg), phi = rep(Coeff::Dual, dphi, cphi);
        return class_of(Coeff::Dual, act_on_slice(wb_.ops(), wb_.module(Coeff::Dual), g, phi,
                                                  wb_.cochain_slice(Coeff::Dual, dg + dphi)));
    }

    /* Duality matrix a |-> a . [m] at one degree, verified invertible. */
    const Mat<Elem>& duality(long long deg) {
        auto it = dual_.find(deg);
        if (it != dual_.end()) return it->second;
        const auto& src = wb_.cohomology(Coeff::Self, deg);
        const auto& dst = wb_.cohomology(Coeff::Dual, deg + shift());
        if (src.dim() != dst.dim())
            throw TheoremViolation("duality dimension mismatch at degree " + std::to_string(deg) +
                                   ": " + std::to_string(src.dim()) + " vs " +
                                   std::to_string(dst.dim()));
        Mat<Elem> out{dst.dim(), std::vector<Vec>(src.dim())};
        for (int k = 0; k < src.dim(); ++k)
            out.cols[k] = act(deg, Vec{{k, f_.one()}}, fc_.m.deg, fc_.coords);
        if (!mat_invertible(f_, out))
            throw TheoremViolation("duality matrix is singular at degree " + std::to_string(deg));
        return dual_.emplace(deg, std::move(out)).first->second;
    }

    /* The square-zero operator, HH^t(A;A) -> HH^{t+1}(A;A), pulled back
       through duality from the dual cyclic operator. */
    const Mat<Elem>& delta(long long deg) {
        auto it = delta_.find(deg);
        if (it != delta_.end()) return it->second;
        const auto& dn = duality(deg + 1);
        const auto& src = wb_.cohomology(Coeff::Self, deg);
        const auto& mid = wb_.cohomology(Coeff::Dual, deg + shift() + 1);
        Mat<Elem> out{wb_.cohomology(Coeff::Self, deg + 1).dim(), std::vector<Vec>(src.dim())};
        for (int k = 0; k < src.dim(); ++k) {
            Co am = rep(Coeff::Dual, deg + shift(), duality(deg).cols[k]);
            auto v = cochain_to_vec(f_, wb_.cochain_slice(Coeff::Dual, deg + shift()), am);
            auto w = mat_apply(f_, wb_.bdual(deg + shift()), v);
            auto target = mid.coords(w);
            if (!target)
                throw TheoremViolation("B^vee of a duality image is not a cocycle at degree " +
                                       std::to_string(deg));
            auto x = solve_in_span(f_, dn, *target);
            if (!x)
                throw TheoremViolation("delta pullback through duality failed at degree " +
                                       std::to_string(deg));
            out.cols[k] = std::move(*x);
        }
        return delta_.emplace(deg, std::move(out)).first->second;
    }

    Vec delta_class(long long deg, const Vec& coords) { return mat_apply(f_, delta(deg), coords); }

    /* Class of the unit cochain in degree zero. */
    Vec unit_class() {
        Co one{0, {}};
        one.vals.emplace(Word{}, Vec{{wb_.algebra().unit_index(), f_.one()}});
        auto c = wb_.class_coords(Coeff::Self, 0, one);
        if (!c) throw TheoremViolation("the unit cochain is not a cocycle");
        return *c;
    }

    Vec delta_unit() { return delta_class(0, unit_class()); }

private:
    Vec class_of(Coeff c, const Co& g) {
        auto coords = wb_.class_coords(c, g.deg, g);
        if (!coords)
            throw TheoremViolation("operation on cocycles produced a non-cocycle in degree " +
                                   std::to_string(g.deg));
        return *coords;
    }

    Workbench<F>& wb_;
    const F& f_;
    FundamentalClass<F> fc_;
    std::map<long long, Mat<Elem>> dual_, delta_;
};

/* Outcome of testing the bracket against the two delta-identities on one pair
   of classes: the three-term form (valid when delta(1) = 0) and the general
   seven-term form that keeps the delta(1) correction. */
template <ScalarField F>
struct BvRelationReport {
    bool delta_unit_is_zero = false;
    bool three_term_holds = false;
    bool seven_term_holds = false;
    SparseVec<typename F::Elem> bracket, rhs_three, rhs_seven;
};

/* {a,b} = (-1)^{|a|} ( delta(a u b) - (delta a) u b - (-1)^{|a|} a u delta b ),
   and its seven-term refinement with + (-1)^{|b|} a u b u delta(1). */
template <ScalarField F>
BvRelationReport<F> check_bv_relation(BvStructure<F>& bv, long long da,
                                      const SparseVec<typename F::Elem>& ca, long long db,
                                      const SparseVec<typename F::Elem>& cb) {
    using Vec = SparseVec<typename F::Elem>;
    const F& f = bv.workbench().field();
    BvRelationReport<F> r;

    Vec cup_ab = bv.cup(da, ca, db, cb);
    Vec t_main = bv.delta_class(da + db, cup_ab);
    Vec t_left = bv.cup(da + 1, bv.delta_class(da, ca), db, cb);
    Vec t_right = bv.cup(da, ca, db + 1, bv.delta_class(db, cb));

    Vec rhs = sv_axpy(f, t_main, f.neg(f.one()), t_left);
    rhs = sv_axpy(f, rhs, f.neg(sign_of(f, da)), t_right);
    r.rhs_three = sv_scale(f, rhs, sign_of(f, da));

    Vec d1 = bv.delta_unit();
    r.delta_unit_is_zero = d1.empty();
    r.rhs_seven = sv_axpy(f, r.rhs_three, sign_of(f, db), bv.cup(da + db, cup_ab, 1, d1));

    r.bracket = bv.bracket(da, ca, db, cb);
    r.three_term_holds = (r.bracket == r.rhs_three);
    r.seven_term_holds = (r.bracket == r.rhs_seven);
    return r;
}

/* The duality map is a module map over the cup product: D(a u b) = a . D(b),
   with no sign because both sides cup with m on the right. */
template <ScalarField F>
bool duality_is_module_map(BvStructure<F>& bv, long long da,
                           const SparseVec<typename F::Elem>& ca, long long db,
                           const SparseVec<typename F::Elem>& cb) {
    const F& f = bv.workbench().field();
    auto lhs = mat_apply(f, bv.duality(da + db), bv.cup(da, ca, db, cb));
    auto rhs = bv.act(da, ca, db + bv.shift(), mat_apply(f, bv.duality(db), cb));
    return lhs == rhs;
}

/* All prefixes of all words supporting a batch of chains; the words where a
   cochain must be known for contraction against those chains. */
template <ScalarField F>
std::set<Word> prefix_support(const std::vector<const Chain<typename F::Elem>*>& chains) {
    std::set<Word> out;
    for (const auto* c : chains)
        for (const auto& [key, coeff] : *c)
            for (std::size_t p = 0; p <= key.second.size(); ++p)
                out.insert(Word(key.second.begin(), key.second.begin() + p));
    return out;
}

/* The bracket-contraction identity on chains:
     i_{{x,e}}(c) = (-1)^{|x|} B(i_{x u e} c) - i_x B(i_e c)
                    + (-1)^{(|e|+1)(|x|+1)} i_e B(i_x c) + (-1)^{|e|} i_{x u e} B(c),
   checked at homology level on one triple of classes. */
template <ScalarField F>
bool contraction_identity_on_chain(Workbench<F>& wb, long long dx,
                                   const SparseVec<typename F::Elem>& cx, long long de,
                                   const SparseVec<typename F::Elem>& ce, long long dc,
                                   const SparseVec<typename F::Elem>& cc) {
    using Elem = typename F::Elem;
    using Co = Cochain<Elem>;
    using Ch = Chain<Elem>;
    const F& f = wb.field();
    const auto& ops = wb.ops();

    Co x = vec_to_cochain(f, wb.cochain_slice(Coeff::Self, dx),
                          wb.cohomology(Coeff::Self, dx).from_coords(cx));
    Co e = vec_to_cochain(f, wb.cochain_slice(Coeff::Self, de),
                          wb.cohomology(Coeff::Self, de).from_coords(ce));
    Ch c = vec_to_chain(f, wb.chain_slice(dc), wb.homology(dc).from_coords(cc));
    Ch bc = ops.connes_b(c);
    Ch ixc = ops.iota(x, c), iec = ops.iota(e, c);
    Ch b_ixc = ops.connes_b(ixc), b_iec = ops.connes_b(iec);

    auto materialize = [&](auto&& eval, long long deg, const std::set<Word>& ws) {
        Co out{deg, {}};
        for (const auto& w : ws) {
            auto v = eval(w);
            if (!v.empty()) out.vals.emplace(w, v);
        }
        return out;
    };
    auto pref_c = prefix_support<F>({&c});
    auto pref_cb = prefix_support<F>({&c, &bc});
    Co br = materialize([&](const Word& w) { return ops.eval_bracket(x, e, w); }, dx + de + 1, pref_c);
    Co cu = materialize([&](const Word& w) {
        return ops.eval_cup(wb.module(Coeff::Self), x, e, w);
    }, dx + de, pref_cb);

    Ch lhs = ops.iota(br, c);
    Ch rhs = chain_scale(f, ops.connes_b(ops.iota(cu, c)), sign_of(f, dx));
    rhs = chain_sub(f, rhs, ops.iota(x, b_iec));
    rhs = chain_axpy(f, rhs, sign_of(f, (dx + 1) * (de + 1)), ops.iota(e, b_ixc));
    rhs = chain_axpy(f, rhs, sign_of(f, de), ops.iota(cu, bc));

    Ch diff = chain_sub(f, lhs, rhs);
    long long td = dc + dx + de + 1;
    return wb.homology(td).is_boundary(chain_to_vec(f, wb.chain_slice(td), diff));
}

/* The same identity transported to cohomology with dual coefficients, with
   the action g.phi in place of contraction and B^vee in place of B:
     {x,e}.phi = (-1)^{|x|} B^vee((x u e).phi) - x.B^vee(e.phi)
                 + (-1)^{(|e|+1)(|x|+1)} e.B^vee(x.phi) + (-1)^{|e|} (x u e).B^vee(phi). */
template <ScalarField F>
bool contraction_identity_on_dual(Workbench<F>& wb, long long dx,
                                  const SparseVec<typename F::Elem>& cx, long long de,
                                  const SparseVec<typename F::Elem>& ce, long long dphi,
                                  const SparseVec<typename F::Elem>& cphi) {
    using Elem = typename F::Elem;
    using Co = Cochain<Elem>;
    const F& f = wb.field();
    const auto& ops = wb.ops();
    const auto& mod = wb.module(Coeff::Dual);

    Co x = vec_to_cochain(f, wb.cochain_slice(Coeff::Self, dx),
                          wb.cohomology(Coeff::Self, dx).from_coords(cx));
    Co e = vec_to_cochain(f, wb.cochain_slice(Coeff::Self, de),
                          wb.cohomology(Coeff::Self, de).from_coords(ce));
    Co phi = vec_to_cochain(f, wb.cochain_slice(Coeff::Dual, dphi),
                            wb.cohomology(Coeff::Dual, dphi).from_coords(cphi));
    Co br = bracket_on_slice(wb.ops(), x, e, wb.cochain_slice(Coeff::Self, dx + de + 1));
    Co cu = act_on_slice(wb.ops(), wb.module(Coeff::Self), x, e,
                         wb.cochain_slice(Coeff::Self, dx + de));

    auto act = [&](const Co& g, const Co& psi) {
        return act_on_slice(ops, mod, g, psi, wb.cochain_slice(Coeff::Dual, g.deg + psi.deg));
    };
    auto bd = [&](const Co& g) {
        return bdual_on_slice(ops, g, wb.cochain_slice(Coeff::Dual, g.deg + 1));
    };

    long long td = dphi + dx + de + 1;
    const auto& out_slice = wb.cochain_slice(Coeff::Dual, td);
    auto vec = [&](const Co& g) { return cochain_to_vec(f, out_slice, g); };

    auto lhs = vec(act(br, phi));
    auto rhs = sv_scale(f, vec(bd(act(cu, phi))), sign_of(f, dx));
    rhs = sv_axpy(f, rhs, f.neg(f.one()), vec(act(x, bd(act(e, phi)))));
    rhs = sv_axpy(f, rhs, sign_of(f, (dx + 1) * (de + 1)), vec(act(e, bd(act(x, phi)))));
    rhs = sv_axpy(f, rhs, sign_of(f, de), vec(act(cu, bd(phi))));

    return wb.cohomology(Coeff::Dual, td).is_boundary(sv_sub(f, lhs, rhs));
}

} // namespace bvhh
