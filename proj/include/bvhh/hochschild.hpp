#pragma once

#include "bvhh/slices.hpp"

namespace bvhh {

enum class Coeff { Self, Dual };

inline const char* coeff_name(Coeff c) { return c == Coeff::Self ? "self" : "dual"; }

/* Memoizing calculator for one algebra: degree slices (lower grading
   throughout), assembled differential matrices, and homology subquotients on
   both the cochain side (self or dual coefficients) and the chain side.
   Matrices into and out of each slice compose to zero by construction of the
   operator layer; the Subquotient constructor re-checks that on every slice
   it is given, so any sign regression surfaces as a theorem violation here. */
template <ScalarField F>
class Workbench {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    struct Options {
        std::optional<int> word_cutoff;
        SignConventions conventions;
    };

    explicit Workbench(GradedAlgebra<F> a, Options opt = {})
        : a_(std::move(a)), f_(a_.field()), opt_(opt), ops_(a_, opt.conventions),
          self_(Bimodule<F>::self(a_)), dual_(Bimodule<F>::dual(a_, Bimodule<F>::self(a_))) {}

    const GradedAlgebra<F>& algebra() const { return a_; }
    const F& field() const { return f_; }
    const BarOps<F>& ops() const { return ops_; }
    const Options& options() const { return opt_; }
    const Bimodule<F>& module(Coeff c) const { return c == Coeff::Self ? self_ : dual_; }
    bool exact() const { return sdeg_signature(a_) != 0; }

    const CochainSlice<F>& cochain_slice(Coeff c, long long deg) {
        auto key = std::make_pair(static_cast<int>(c), deg);
        auto it = coslices_.find(key);
        if (it == coslices_.end())
            it = coslices_.emplace(key, make_cochain_slice(a_, module(c), deg, opt_.word_cutoff)).first;
        return it->second;
    }

    const ChainSlice<F>& chain_slice(long long deg) {
        auto it = chslices_.find(deg);
        if (it == chslices_.end())
            it = chslices_.emplace(deg, make_chain_slice(a_, deg, opt_.word_cutoff)).first;
        return it->second;
    }

    /* Cochain differential as a matrix, degree t slice to degree t-1. */
    const Mat<Elem>& d1(Coeff c, long long deg) {
        auto key = std::make_pair(static_cast<int>(c), deg);
        auto it = d1_.find(key);
        if (it == d1_.end())
            it = d1_.emplace(key, d1_matrix(ops_, module(c), cochain_slice(c, deg),
                                            cochain_slice(c, deg - 1))).first;
        return it->second;
    }

    /* Dual cyclic operator as a matrix, dual-coefficient degree t to t+1. */
    const Mat<Elem>& bdual(long long deg) {
        auto it = bdual_.find(deg);
        if (it == bdual_.end())
            it = bdual_.emplace(deg, bdual_matrix(ops_, cochain_slice(Coeff::Dual, deg),
                                                  cochain_slice(Coeff::Dual, deg + 1))).first;
        return it->second;
    }

    /* Chain differential as a matrix, degree t to t-1. */
    const Mat<Elem>& d2(long long deg) {
        auto it = d2_.find(deg);
        if (it == d2_.end())
            it = d2_.emplace(deg, chain_op_matrix(f_, chain_slice(deg), chain_slice(deg - 1),
                                                  [&](const auto& c) { return ops_.d2(c); })).first;
        return it->second;
    }

    /* Cyclic operator as a matrix, degree t to t+1. */
    const Mat<Elem>& b(long long deg) {
        auto it = b_.find(deg);
        if (it == b_.end())
            it = b_.emplace(deg, chain_op_matrix(f_, chain_slice(deg), chain_slice(deg + 1),
                                                 [&](const auto& c) { return ops_.connes_b(c); })).first;
        return it->second;
    }

    /* Cohomology subquotient of the degree-t cochain slice. */
    const Subquotient<F>& cohomology(Coeff c, long long deg) {
        auto key = std::make_pair(static_cast<int>(c), deg);
        auto it = coh_.find(key);
        if (it == coh_.end()) {
            Subquotient<F> s(f_, cochain_slice(c, deg).dim(), d1(c, deg + 1), d1(c, deg));
            it = coh_.emplace(key, std::move(s)).first;
        }
        return it->second;
    }

    /* Homology subquotient of the degree-t chain slice. */
    const Subquotient<F>& homology(long long deg) {
        auto it = hom_.find(deg);
        if (it == hom_.end()) {
            Subquotient<F> s(f_, chain_slice(deg).dim(), d2(deg + 1), d2(deg));
            it = hom_.emplace(deg, std::move(s)).first;
        }
        return it->second;
    }

    /* Representative of a cohomology class as a cochain. */
    Cochain<Elem> class_rep(Coeff c, long long deg, int k) {
        return vec_to_cochain(f_, cochain_slice(c, deg), cohomology(c, deg).rep(k));
    }

    /* Coordinates of a cocycle given as a cochain; empty optional if it is
       not a cocycle in this slice. */
    std::optional<Vec> class_coords(Coeff c, long long deg, const Cochain<Elem>& g) {
        return cohomology(c, deg).coords(cochain_to_vec(f_, cochain_slice(c, deg), g));
    }

private:
    GradedAlgebra<F> a_; // owned: slices and operators reference it for the
                         // workbench's whole lifetime
    const F& f_;
    Options opt_;
    BarOps<F> ops_;
    Bimodule<F> self_, dual_;

    std::map<std::pair<int, long long>, CochainSlice<F>> coslices_;
    std::map<long long, ChainSlice<F>> chslices_;
    std::map<std::pair<int, long long>, Mat<Elem>> d1_;
    std::map<long long, Mat<Elem>> bdual_, d2_, b_;
    std::map<std::pair<int, long long>, Subquotient<F>> coh_;
    std::map<long long, Subquotient<F>> hom_;
};

} // namespace bvhh
