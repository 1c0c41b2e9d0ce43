#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bvhh/errors.hpp"
#include "bvhh/sparse.hpp"

namespace bvhh {

/* Incremental column reducer. Each stored entry has a distinct pivot (its
   lowest populated index) and a unit leading coefficient; incoming vectors
   are reduced against the stored entries in pivot order, which strictly
   increases the candidate's own pivot and so terminates. Determinism comes
   from insertion order alone — entries are never modified after insertion.

   An optional companion vector ("tag") is carried through every reduction,
   so the basis can answer "express v as a combination of the vectors I was
   fed" without a separate back-solve. The invariant: every stored entry's
   column equals the combination of fed vectors described by its tag, as
   long as the caller fed consistent (vector, tag) pairs. */
template <ScalarField F>
class TriangularBasis {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    explicit TriangularBasis(const F& f) : f_(f) {}

    struct Reduced {
        Vec rem;  // remainder after reduction; empty iff v was in the span
        Vec tag;  // v == rem + (combination of fed vectors described by tag)
    };

    Reduced reduce(Vec v) const {
        Vec tag;
        while (!v.empty()) {
            auto it = by_pivot_.find(v.front().first);
            if (it == by_pivot_.end()) break;
            const auto& e = entries_[it->second];
            Elem c = v.front().second; // stored columns have unit lead
            v = sv_axpy(f_, v, f_.neg(c), e.col);
            tag = sv_axpy(f_, tag, c, e.tag);
        }
        return {std::move(v), std::move(tag)};
    }

    /* Feed a vector declared to equal the tag combination. Returns nullopt
       when the span grew; otherwise the expression of v over earlier feeds. */
    std::optional<Vec> feed(const Vec& v, const Vec& tag = {}) {
        auto r = reduce(v);
        if (r.rem.empty()) return r.tag;
        Elem lead_inv = f_.inv(r.rem.front().second);
        Entry e;
        e.col = sv_scale(f_, r.rem, lead_inv);
        e.tag = sv_scale(f_, sv_sub(f_, tag, r.tag), lead_inv);
        by_pivot_[e.col.front().first] = static_cast<int>(entries_.size());
        entries_.push_back(std::move(e));
        return std::nullopt;
    }

    bool insert(const Vec& v, const Vec& tag = {}) { return !feed(v, tag).has_value(); }

    bool contains(const Vec& v) const { return reduce(v).rem.empty(); }

    /* If v lies in the span, returns the tag combination realizing it. */
    std::optional<Vec> express(const Vec& v) const {
        auto r = reduce(v);
        if (!r.rem.empty()) return std::nullopt;
        return r.tag;
    }

    int rank() const { return static_cast<int>(entries_.size()); }

private:
    struct Entry {
        Vec col;
        Vec tag;
    };

    const F& f_;
    std::vector<Entry> entries_;
    std::map<int, int> by_pivot_;
};

/* Rank of a column-major matrix. */
template <ScalarField F>
int mat_rank(const F& f, const Mat<typename F::Elem>& m) {
    TriangularBasis<F> t(f);
    for (const auto& c : m.cols) t.insert(c);
    return t.rank();
}

/* Null space of a column-major matrix, as vectors in the source space.
   Column j is fed with tag e_j; if it reduces to zero the returned
   expression x satisfies col_j == sum x_k col_k, so e_j - x is a kernel
   vector with unit coefficient on its defining source index. The basis is
   deterministic in the column order. */
template <ScalarField F>
std::vector<SparseVec<typename F::Elem>> kernel_basis(const F& f, const Mat<typename F::Elem>& m) {
    TriangularBasis<F> t(f);
    std::vector<SparseVec<typename F::Elem>> ker;
    for (int j = 0; j < m.ncols(); ++j) {
        SparseVec<typename F::Elem> ej{{j, f.one()}};
        if (auto dep = t.feed(m.cols[j], ej)) ker.push_back(sv_sub(f, ej, *dep));
    }
    return ker;
}

/* Solve m * x = rhs; empty optional when rhs is outside the column span.
   When the columns are dependent the answer uses the earliest-fed columns. */
template <ScalarField F>
std::optional<SparseVec<typename F::Elem>> solve_in_span(const F& f,
                                                         const Mat<typename F::Elem>& m,
                                                         const SparseVec<typename F::Elem>& rhs) {
    TriangularBasis<F> t(f);
    for (int j = 0; j < m.ncols(); ++j)
        t.insert(m.cols[j], SparseVec<typename F::Elem>{{j, f.one()}});
    return t.express(rhs);
}

/* Square-system check: invertible iff full rank. */
template <ScalarField F>
bool mat_invertible(const F& f, const Mat<typename F::Elem>& m) {
    return m.nrows == m.ncols() && mat_rank(f, m) == m.nrows;
}

} // namespace bvhh
