#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bvhh/linalg.hpp"

namespace bvhh {

/* Homology of a two-step complex  prev --d_in--> here --d_out--> next  at the
   middle slot, with explicit representatives and coset coordinates.

   The coordinate basis is built by feeding boundary columns first (with empty
   tags, so they vanish from every expression) and then the kernel vectors of
   d_out, keeping those that enlarge the span as class representatives. A
   cycle's coordinates are then exactly its coefficients over the chosen
   representatives modulo boundaries, with no back-solve. */
template <ScalarField F>
class Subquotient {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    Subquotient(const F& f, int ambient_dim, const Mat<Elem>& d_in, const Mat<Elem>& d_out)
        : f_(f), ambient_dim_(ambient_dim), basis_(f) {
        for (const auto& b : d_in.cols) {
            if (!mat_apply(f, d_out, b).empty())
                throw TheoremViolation("differential does not square to zero on this slice");
        }
        for (const auto& b : d_in.cols) basis_.insert(b, {});
        auto ker = kernel_basis(f, d_out);
        for (auto& k : ker) {
            Vec tag{{static_cast<int>(reps_.size()), f_.one()}};
            if (basis_.insert(k, tag)) reps_.push_back(std::move(k));
        }
    }

    int dim() const { return static_cast<int>(reps_.size()); }
    int ambient_dim() const { return ambient_dim_; }
    const Vec& rep(int c) const { return reps_[c]; }

    /* Coordinates of a cycle over the class representatives; nullopt when v
       is not a cycle (not in ker(d_out) + im(d_in)). */
    std::optional<Vec> coords(const Vec& v) const {
        auto r = basis_.reduce(v);
        if (!r.rem.empty()) return std::nullopt;
        return r.tag;
    }

    bool is_boundary(const Vec& v) const {
        auto c = coords(v);
        return c.has_value() && c->empty();
    }

    bool coset_equal(const Vec& u, const Vec& v) const { return is_boundary(sv_sub(f_, u, v)); }

    /* Rebuild a cycle from class coordinates. */
    Vec from_coords(const Vec& c) const {
        Vec out;
        for (const auto& [i, a] : c) out = sv_axpy(f_, out, a, reps_[i]);
        return out;
    }

private:
    const F& f_;
    int ambient_dim_;
    TriangularBasis<F> basis_;
    std::vector<Vec> reps_;
};

/* Dimension only: dim ker(d_out) - rank(d_in), after checking the composite
   vanishes. Far cheaper than building representatives. */
template <ScalarField F>
int homology_dim(const F& f, int ambient_dim, const Mat<typename F::Elem>& d_in,
                 const Mat<typename F::Elem>& d_out) {
    for (const auto& b : d_in.cols)
        if (!mat_apply(f, d_out, b).empty())
            throw TheoremViolation("differential does not square to zero on this slice");
    int rk_out = mat_rank(f, d_out);
    int rk_in = mat_rank(f, d_in);
    return (ambient_dim - rk_out) - rk_in;
}

} // namespace bvhh
