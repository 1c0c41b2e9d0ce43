#pragma once

#include "bvhh/bv.hpp"

namespace bvhh {

enum class MixedSide { Chain, Dual };
enum class CyclicVariant { Cyclic, Negative, Periodic };

/* A mixed complex (M, b, B): b lowers the degree by one, B raises it by one,
   and b² = B² = bB + Bb = 0. Both faces of the workbench fit the shape:
   chains with (d, Connes B) and dual-coefficient cochains with (D, B^∨). */
template <ScalarField F>
class MixedComplex {
public:
    using Elem = typename F::Elem;

    MixedComplex(Workbench<F>& wb, MixedSide side) : wb_(wb), side_(side) {}

    Workbench<F>& workbench() { return wb_; }
    MixedSide side() const { return side_; }
    const F& field() const { return wb_.field(); }

    int dim(long long deg) {
        return side_ == MixedSide::Chain ? wb_.chain_slice(deg).dim()
                                         : wb_.cochain_slice(Coeff::Dual, deg).dim();
    }

    bool truncated(long long deg) {
        return side_ == MixedSide::Chain ? wb_.chain_slice(deg).truncated
                                         : wb_.cochain_slice(Coeff::Dual, deg).truncated;
    }

    /* deg -> deg - 1 */
    const Mat<Elem>& b(long long deg) {
        return side_ == MixedSide::Chain ? wb_.d2(deg) : wb_.d1(Coeff::Dual, deg);
    }

    /* deg -> deg + 1 */
    const Mat<Elem>& bb(long long deg) {
        return side_ == MixedSide::Chain ? wb_.b(deg) : wb_.bdual(deg);
    }

    const Subquotient<F>& underlying(long long deg) {
        return side_ == MixedSide::Chain ? wb_.homology(deg) : wb_.cohomology(Coeff::Dual, deg);
    }

    /* Re-assert b² = B² = bB + Bb = 0 across a degree window. */
    void assert_mixed_identities(long long lo, long long hi) {
        const F& f = field();
        for (long long deg = lo; deg <= hi; ++deg) {
            if (!mat_is_zero(mat_compose(f, b(deg - 1), b(deg))))
                throw TheoremViolation("b^2 != 0 at degree " + std::to_string(deg));
            if (!mat_is_zero(mat_compose(f, bb(deg + 1), bb(deg))))
                throw TheoremViolation("B^2 != 0 at degree " + std::to_string(deg));
            auto mixed = mat_add(f, mat_compose(f, b(deg + 1), bb(deg)),
                                 mat_compose(f, bb(deg - 1), b(deg)));
            if (!mat_is_zero(mixed))
                throw TheoremViolation("bB + Bb != 0 at degree " + std::to_string(deg));
        }
    }

private:
    Workbench<F>& wb_;
    MixedSide side_;
};

/* Block layout of one total degree of a u-window complex: the element in the
   u^j block is an underlying element of degree n + 2j (u has lower degree
   -2). Only nonzero blocks are materialized. */
struct UWindow {
    std::vector<long long> powers; // ascending
    std::vector<int> offsets, dims;
    int dim = 0;

    int block_of(long long j) const {
        for (std::size_t k = 0; k < powers.size(); ++k)
            if (powers[k] == j) return static_cast<int>(k);
        return -1;
    }
};

/* The u-window total complex of a mixed complex with differential b + uB.
   Allowed powers: cyclic j in [-U, 0] (polynomials in the inverse variable,
   the differential-torsion-product realization), negative j in [0, U]
   (truncated power series), periodic j in [-U, U]. Groups per total degree
   are subquotients; the Connes exact-couple maps are exposed as class-level
   matrices. */
template <ScalarField F>
class CyclicComplex {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    CyclicComplex(MixedComplex<F>& mc, CyclicVariant variant, int u_trunc)
        : mc_(mc), f_(mc.field()), variant_(variant), u_(u_trunc) {
        if (u_trunc < 0) throw InputError("u-truncation order must be non-negative");
    }

    MixedComplex<F>& mixed() { return mc_; }
    CyclicVariant variant() const { return variant_; }
    int u_trunc() const { return u_; }

    const UWindow& window(long long n) {
        auto it = windows_.find(n);
        if (it != windows_.end()) return it->second;
        UWindow w;
        long long jlo = variant_ == CyclicVariant::Negative ? 0 : -static_cast<long long>(u_);
        long long jhi = variant_ == CyclicVariant::Cyclic ? 0 : static_cast<long long>(u_);
        for (long long j = jlo; j <= jhi; ++j) {
            int d = mc_.dim(n + 2 * j);
            if (d == 0) continue;
            w.powers.push_back(j);
            w.offsets.push_back(w.dim);
            w.dims.push_back(d);
            w.dim += d;
        }
        return windows_.emplace(n, std::move(w)).first->second;
    }

    /* Tot_n -> Tot_{n-1}: the u^j block maps by b into u^j and by B into
       u^{j+1}; a B-image whose power leaves the window is dropped (that is
       exactly the quotient/subcomplex structure of the variant). */
    const Mat<Elem>& d_total(long long n) {
        auto it = dt_.find(n);
        if (it != dt_.end()) return it->second;
        const UWindow& src = window(n);
        const UWindow& dst = window(n - 1);
        Mat<Elem> out{dst.dim, std::vector<Vec>(src.dim)};
        for (std::size_t blk = 0; blk < src.powers.size(); ++blk) {
            long long j = src.powers[blk];
            const auto& bm = mc_.b(n + 2 * j);
            int tb = dst.block_of(j);
            int tbb = in_range(j + 1) ? dst.block_of(j + 1) : -1;
            const Mat<Elem>* bbm = tbb >= 0 ? &mc_.bb(n + 2 * j) : nullptr;
            for (int k = 0; k < src.dims[blk]; ++k) {
                Vec col;
                if (tb >= 0) col = shift_up(bm.cols[k], dst.offsets[tb]);
                if (bbm && !bbm->cols[k].empty())
                    col = sv_add(f_, col, shift_up(bbm->cols[k], dst.offsets[tbb]));
                out.cols[src.offsets[blk] + k] = std::move(col);
            }
        }
        return dt_.emplace(n, std::move(out)).first->second;
    }

    const Subquotient<F>& group(long long n) {
        auto it = groups_.find(n);
        if (it != groups_.end()) return it->second;
        Subquotient<F> s(f_, window(n).dim, d_total(n + 1), d_total(n));
        return groups_.emplace(n, std::move(s)).first->second;
    }

    int dim(long long n) { return group(n).dim(); }

    /* Multiplication by u into another window complex over the same mixed
       complex: group(n) -> target.group(n-2), shifting every power up by one
       and dropping whatever leaves the target's allowed range. With target =
       *this this is the periodicity operator S; with target the (U-1)-window
       it is the sub/quotient comparison of the defining short exact
       sequence. */
    Mat<Elem> shift_into(CyclicComplex& target, long long n) {
        if (&target.mc_ != &mc_)
            throw InputError("u-shift between complexes over different mixed complexes");
        Mat<Elem> out{target.group(n - 2).dim(), std::vector<Vec>(group(n).dim())};
        const UWindow& src = window(n);
        const UWindow& dst = target.window(n - 2);
        for (int k = 0; k < group(n).dim(); ++k) {
            Vec amb = group(n).rep(k), shifted;
            for (std::size_t blk = 0; blk < src.powers.size(); ++blk) {
                long long j = src.powers[blk];
                if (!target.in_range(j + 1)) continue;
                int tb = dst.block_of(j + 1);
                if (tb < 0) continue;
                for (const auto& [i, c] : slice_block(amb, src, blk))
                    shifted = sv_axpy(f_, shifted, c, Vec{{dst.offsets[tb] + i, f_.one()}});
            }
            auto c = target.group(n - 2).coords(shifted);
            if (!c) throw TheoremViolation("multiplication by u left the cycles at degree " +
                                           std::to_string(n));
            out.cols[k] = std::move(*c);
        }
        return out;
    }

    /* The periodicity operator S: HC_n -> HC_{n-2} on this window. */
    Mat<Elem> s_map(long long n) { return shift_into(*this, n); }

    /* Degree-zero edge. Cyclic: I maps the underlying homology into the u^0
       block. Negative: I projects a class onto its u^0 component. */
    const Mat<Elem>& edge(long long n) {
        auto it = edges_.find(n);
        if (it != edges_.end()) return it->second;
        return edges_.emplace(n, make_edge(n)).first->second;
    }

    /* Degree +1 connecting map of the exact couple. Cyclic: HC_n -> H(M)_{n+1}
       by B of the u^0 component. Negative: H(M)_n -> HC_{n+1} by placing B(m)
       in the u^0 block. */
    const Mat<Elem>& connecting(long long n) {
        auto it = conns_.find(n);
        if (it != conns_.end()) return it->second;
        return conns_.emplace(n, make_connecting(n)).first->second;
    }

private:
    Mat<Elem> make_edge(long long n) {
        if (variant_ == CyclicVariant::Cyclic) {
            const auto& h = mc_.underlying(n);
            Mat<Elem> out{group(n).dim(), std::vector<Vec>(h.dim())};
            for (int k = 0; k < h.dim(); ++k) {
                auto c = group(n).coords(embed(h.rep(k), n, 0));
                if (!c) throw TheoremViolation("edge image is not a cycle at degree " +
                                               std::to_string(n));
                out.cols[k] = std::move(*c);
            }
            return out;
        }
        if (variant_ == CyclicVariant::Negative) {
            const auto& h = mc_.underlying(n);
            Mat<Elem> out{h.dim(), std::vector<Vec>(group(n).dim())};
            for (int k = 0; k < group(n).dim(); ++k) {
                auto c = h.coords(project(group(n).rep(k), n, 0));
                if (!c) throw TheoremViolation("u -> 0 edge is not a cycle at degree " +
                                               std::to_string(n));
                out.cols[k] = std::move(*c);
            }
            return out;
        }
        throw InputError("the periodic variant has no edge map in the exact couple");
    }

    Mat<Elem> make_connecting(long long n) {
        if (variant_ == CyclicVariant::Cyclic) {
            const auto& h = mc_.underlying(n + 1);
            Mat<Elem> out{h.dim(), std::vector<Vec>(group(n).dim())};
            for (int k = 0; k < group(n).dim(); ++k) {
                auto top = project(group(n).rep(k), n, 0);
                auto c = h.coords(mat_apply(f_, mc_.bb(n), top));
                if (!c) throw TheoremViolation("connecting image is not a cycle at degree " +
                                               std::to_string(n));
                out.cols[k] = std::move(*c);
            }
            return out;
        }
        if (variant_ == CyclicVariant::Negative) {
            const auto& h = mc_.underlying(n);
            Mat<Elem> out{group(n + 1).dim(), std::vector<Vec>(h.dim())};
            for (int k = 0; k < h.dim(); ++k) {
                auto c = group(n + 1).coords(embed(mat_apply(f_, mc_.bb(n), h.rep(k)), n + 1, 0));
                if (!c) throw TheoremViolation("connecting image is not a cycle at degree " +
                                               std::to_string(n));
                out.cols[k] = std::move(*c);
            }
            return out;
        }
        throw InputError("the periodic variant has no connecting map in the exact couple");
    }

private:
    bool in_range(long long j) const {
        switch (variant_) {
        case CyclicVariant::Cyclic: return j >= -static_cast<long long>(u_) && j <= 0;
        case CyclicVariant::Negative: return j >= 0 && j <= static_cast<long long>(u_);
        case CyclicVariant::Periodic:
            return j >= -static_cast<long long>(u_) && j <= static_cast<long long>(u_);
        }
        return false;
    }

    static Vec shift_up(const Vec& v, int offset) {
        Vec out;
        for (const auto& [i, c] : v) out.emplace_back(i + offset, c);
        return out;
    }

    /* entries of one block of an ambient vector, re-based to the block */
    static Vec slice_block(const Vec& amb, const UWindow& w, std::size_t blk) {
        Vec out;
        int lo = w.offsets[blk], hi = lo + w.dims[blk];
        for (const auto& [i, c] : amb)
            if (i >= lo && i < hi) out.emplace_back(i - lo, c);
        return out;
    }

    Vec embed(const Vec& v, long long n, long long j) {
        const UWindow& w = window(n);
        if (v.empty()) return {};
        int blk = w.block_of(j);
        if (blk < 0)
            throw TheoremViolation("embedding into an absent u-power block at degree " +
                                   std::to_string(n));
        return shift_up(v, w.offsets[blk]);
    }

    Vec project(const Vec& amb, long long n, long long j) {
        const UWindow& w = window(n);
        int blk = w.block_of(j);
        if (blk < 0) return {};
        return slice_block(amb, w, blk);
    }

    MixedComplex<F>& mc_;
    const F& f_;
    CyclicVariant variant_;
    int u_;
    std::map<long long, UWindow> windows_;
    std::map<long long, Mat<Elem>> dt_, edges_, conns_;
    std::map<long long, Subquotient<F>> groups_;
};

struct CyclicGroupInfo {
    int dim = 0;
    bool stable = false;
};

/* Per-degree dimensions with stabilization flags: a degree is stable when the
   dimension agrees between truncation orders U and U + 1. */
template <ScalarField F>
std::map<long long, CyclicGroupInfo> compute_cyclic(MixedComplex<F>& mc, CyclicVariant variant,
                                                    long long lo, long long hi, int u_trunc) {
    CyclicComplex<F> at(mc, variant, u_trunc), above(mc, variant, u_trunc + 1);
    std::map<long long, CyclicGroupInfo> out;
    for (long long n = lo; n <= hi; ++n)
        out[n] = CyclicGroupInfo{at.dim(n), at.dim(n) == above.dim(n)};
    return out;
}

/* Exactness of the Connes sequence at the three joints around degree n, by
   composite-zero plus rank arithmetic. The truncated window complexes sit in
   genuine short exact sequences whose third term is the one-step-shorter
   window shifted by u, so the sequence checked here mixes the truncation
   orders U and U-1 and is exact on the nose, with no stabilization caveat:
     cyclic (sub = u^0 block):
       ... -> H_n -I-> HC(U)_n -u-> HC(U-1)_{n-2} -∂-> H_{n-1} -I-> HC(U)_{n-1} -> ...
     negative (quotient = u -> 0 edge):
       ... -> HC(U-1)_{n+2} -u-> HC(U)_n -I-> H_n -∂-> HC(U-1)_{n+1} -u-> HC(U)_{n-1} -> ... */
template <ScalarField F>
bool connes_sequence_exact_at(CyclicComplex<F>& cc, CyclicComplex<F>& below, long long n) {
    if (&cc.mixed() != &below.mixed() || cc.variant() != below.variant() ||
        below.u_trunc() + 1 != cc.u_trunc())
        throw InputError("exactness needs the same variant at truncation orders U and U-1");
    const F& f = cc.mixed().field();
    auto joint = [&](const Mat<typename F::Elem>& into, const Mat<typename F::Elem>& out_of,
                     int dim) {
        return mat_is_zero(mat_compose(f, out_of, into)) &&
               mat_rank(f, into) + mat_rank(f, out_of) == dim;
    };
    if (cc.variant() == CyclicVariant::Cyclic) {
        auto i_n = cc.edge(n), u_n = cc.shift_into(below, n);
        auto del = below.connecting(n - 2), i_dn = cc.edge(n - 1);
        return joint(i_n, u_n, cc.dim(n)) && joint(u_n, del, below.dim(n - 2)) &&
               joint(del, i_dn, cc.mixed().underlying(n - 1).dim());
    }
    if (cc.variant() == CyclicVariant::Negative) {
        auto u_in = below.shift_into(cc, n + 2), i_n = cc.edge(n);
        auto del = below.connecting(n), u_up = below.shift_into(cc, n + 1);
        return joint(u_in, i_n, cc.dim(n)) &&
               joint(i_n, del, cc.mixed().underlying(n).dim()) &&
               joint(del, u_up, below.dim(n + 1));
    }
    throw InputError("the periodic variant carries no Connes exact sequence");
}

template <ScalarField F>
struct CyclicClass {
    long long deg = 0;
    SparseVec<typename F::Elem> coords;
};

/* Product on cohomology with dual coefficients, transported through the
   duality isomorphism; lowers degree by the duality shift d. */
template <ScalarField F>
SparseVec<typename F::Elem> dual_coefficient_product(BvStructure<F>& bv, long long ta,
                                                     const SparseVec<typename F::Elem>& ca,
                                                     long long tb,
                                                     const SparseVec<typename F::Elem>& cb) {
    const F& f = bv.workbench().field();
    long long d = bv.shift();
    auto a = solve_in_span(f, bv.duality(ta - d), ca);
    auto b = solve_in_span(f, bv.duality(tb - d), cb);
    if (!a || !b) throw TheoremViolation("dual-coefficient class has no duality preimage");
    return mat_apply(f, bv.duality(ta + tb - 2 * d), bv.cup(ta - d, *a, tb - d, *b));
}

/* The string-bracket-shaped Lie bracket on the cyclic groups of the dual
   mixed complex: {x,y} = (-1)^{|x|} I(∂x . ∂y), of lower degree 2 - d. The
   verified BvStructure supplies both the hypothesis (H(B^∨) is the operator
   of a Batalin-Vilkovisky structure) and the product. */
template <ScalarField F>
CyclicClass<F> cyclic_lie_bracket(BvStructure<F>& bv, CyclicComplex<F>& cc, long long tx,
                                  const SparseVec<typename F::Elem>& x, long long ty,
                                  const SparseVec<typename F::Elem>& y) {
    if (cc.mixed().side() != MixedSide::Dual || cc.variant() != CyclicVariant::Cyclic)
        throw InputError("the degree-(2-d) bracket lives on dual-side cyclic groups");
    if (&cc.mixed().workbench() != &bv.workbench())
        throw InputError("cyclic groups and duality belong to different workbenches");
    const F& f = bv.workbench().field();
    auto bx = mat_apply(f, cc.connecting(tx), x);
    auto by = mat_apply(f, cc.connecting(ty), y);
    auto prod = dual_coefficient_product(bv, tx + 1, bx, ty + 1, by);
    long long tz = tx + ty + 2 - bv.shift();
    return {tz, sv_scale(f, mat_apply(f, cc.edge(tz), prod), sign_of(f, tx))};
}

/* T_c : HH^t(A;A) -> HH_t(A;A), the contraction f |-> [f([]) . []] against
   the class of the unit cycle. When it is an isomorphism degree by degree it
   transports the cup product onto Hochschild homology. */
template <ScalarField F>
Mat<typename F::Elem> tc_matrix(Workbench<F>& wb, long long deg) {
    using Elem = typename F::Elem;
    const F& f = wb.field();
    const auto& src = wb.cohomology(Coeff::Self, deg);
    Mat<Elem> out{wb.homology(deg).dim(), std::vector<SparseVec<Elem>>(src.dim())};
    for (int k = 0; k < src.dim(); ++k) {
        auto g = wb.class_rep(Coeff::Self, deg, k);
        Chain<Elem> c;
        for (const auto& [m, coeff] : cochain_eval(f, g, Word{})) chain_add(f, c, m, {}, coeff);
        auto coords = wb.homology(deg).coords(chain_to_vec(f, wb.chain_slice(deg), c));
        if (!coords)
            throw TheoremViolation("contraction against the unit cycle left the cycles at degree " +
                                   std::to_string(deg));
        out.cols[k] = std::move(*coords);
    }
    return out;
}

/* Gate for the degree-2 chain-side bracket: T_c must be an isomorphism on the
   window and B must kill the unit cycle (it does, on the nose, in the
   normalized complex). */
template <ScalarField F>
bool tc_gate(Workbench<F>& wb, long long lo, long long hi) {
    Chain<typename F::Elem> c;
    chain_add(wb.field(), c, wb.algebra().unit_index(), {}, wb.field().one());
    if (!wb.ops().connes_b(c).empty()) return false;
    for (long long t = lo; t <= hi; ++t) {
        if (wb.cohomology(Coeff::Self, t).dim() != wb.homology(t).dim()) return false;
        if (!mat_invertible(wb.field(), tc_matrix(wb, t))) return false;
    }
    return true;
}

/* The degree-2 bracket on chain-side cyclic groups, available when the T_c
   gate holds on the degrees it touches: the product on HH_* is the cup
   product transported through T_c. */
template <ScalarField F>
CyclicClass<F> cyclic_lie_bracket_chain(Workbench<F>& wb, CyclicComplex<F>& cc, long long tx,
                                        const SparseVec<typename F::Elem>& x, long long ty,
                                        const SparseVec<typename F::Elem>& y) {
    if (cc.mixed().side() != MixedSide::Chain || cc.variant() != CyclicVariant::Cyclic)
        throw InputError("the degree-2 bracket lives on chain-side cyclic groups");
    if (&cc.mixed().workbench() != &wb)
        throw InputError("cyclic groups belong to a different workbench");
    const F& f = wb.field();
    long long tz = tx + ty + 2;
    auto pre = [&](long long t, const SparseVec<typename F::Elem>& v) {
        auto p = solve_in_span(f, tc_matrix(wb, t), v);
        if (!p) throw InputError("the unit-cycle contraction is not invertible at degree " +
                                 std::to_string(t));
        return *p;
    };
    auto bx = mat_apply(f, cc.connecting(tx), x);
    auto by = mat_apply(f, cc.connecting(ty), y);
    Cochain<typename F::Elem> g = vec_to_cochain(
        f, wb.cochain_slice(Coeff::Self, tx + 1),
        wb.cohomology(Coeff::Self, tx + 1).from_coords(pre(tx + 1, bx)));
    Cochain<typename F::Elem> h = vec_to_cochain(
        f, wb.cochain_slice(Coeff::Self, ty + 1),
        wb.cohomology(Coeff::Self, ty + 1).from_coords(pre(ty + 1, by)));
    auto cup = act_on_slice(wb.ops(), wb.module(Coeff::Self), g, h,
                            wb.cochain_slice(Coeff::Self, tx + ty + 2));
    auto cupc = wb.class_coords(Coeff::Self, tx + ty + 2, cup);
    if (!cupc) throw TheoremViolation("cup product of cocycles is not a cocycle");
    return {tz, sv_scale(f, mat_apply(f, cc.edge(tz), mat_apply(f, tc_matrix(wb, tz), *cupc)),
                         sign_of(f, tx))};
}

} // namespace bvhh
