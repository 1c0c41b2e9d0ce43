#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "bvhh/field.hpp"

namespace bvhh {

/* Sparse vector over an abstract coordinate space: index -> coefficient,
   kept sorted by index with no explicit zeros. All helpers preserve that
   canonical form, so equality is plain vector equality. */
template <typename Elem>
using SparseVec = std::vector<std::pair<int, Elem>>;

template <ScalarField F>
SparseVec<typename F::Elem> sv_from_map(const F& f, const std::map<int, typename F::Elem>& m) {
    SparseVec<typename F::Elem> v;
    v.reserve(m.size());
    for (const auto& [i, c] : m)
        if (!f.is_zero(c)) v.emplace_back(i, c);
    return v;
}

template <ScalarField F>
typename F::Elem sv_get(const F& f, const SparseVec<typename F::Elem>& v, int i) {
    auto it = std::lower_bound(v.begin(), v.end(), i,
                               [](const auto& p, int k) { return p.first < k; });
    return (it != v.end() && it->first == i) ? it->second : f.zero();
}

/* First (lowest) populated index, or -1 if empty. */
template <typename Elem>
int sv_pivot(const SparseVec<Elem>& v) { return v.empty() ? -1 : v.front().first; }

template <ScalarField F>
SparseVec<typename F::Elem> sv_scale(const F& f, const SparseVec<typename F::Elem>& v,
                                     const typename F::Elem& c) {
    SparseVec<typename F::Elem> out;
    if (f.is_zero(c)) return out;
    out.reserve(v.size());
    for (const auto& [i, a] : v) {
        auto b = f.mul(a, c);
        if (!f.is_zero(b)) out.emplace_back(i, b);
    }
    return out;
}

/* y + c * x, merged in index order. */
template <ScalarField F>
SparseVec<typename F::Elem> sv_axpy(const F& f, const SparseVec<typename F::Elem>& y,
                                    const typename F::Elem& c,
                                    const SparseVec<typename F::Elem>& x) {
    if (f.is_zero(c) || x.empty()) return y;
    SparseVec<typename F::Elem> out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].first < y[i].first) {
            auto b = f.mul(c, x[j].second);
            if (!f.is_zero(b)) out.emplace_back(x[j].first, b);
            ++j;
        } else {
            auto b = f.add(y[i].second, f.mul(c, x[j].second));
            if (!f.is_zero(b)) out.emplace_back(y[i].first, b);
            ++i; ++j;
        }
    }
    return out;
}

template <ScalarField F>
SparseVec<typename F::Elem> sv_add(const F& f, const SparseVec<typename F::Elem>& a,
                                   const SparseVec<typename F::Elem>& b) {
    return sv_axpy(f, a, f.one(), b);
}

template <ScalarField F>
SparseVec<typename F::Elem> sv_sub(const F& f, const SparseVec<typename F::Elem>& a,
                                   const SparseVec<typename F::Elem>& b) {
    return sv_axpy(f, a, f.neg(f.one()), b);
}

/* Sparse matrix stored column-major: cols[j] is the image of the j-th source
   basis vector, expressed in target coordinates. nrows is informational (the
   target dimension); columns never reference an index >= nrows. */
template <typename Elem>
struct Mat {
    int nrows = 0;
    std::vector<SparseVec<Elem>> cols;

    int ncols() const { return static_cast<int>(cols.size()); }
};

template <ScalarField F>
SparseVec<typename F::Elem> mat_apply(const F& f, const Mat<typename F::Elem>& m,
                                      const SparseVec<typename F::Elem>& v) {
    SparseVec<typename F::Elem> out;
    for (const auto& [j, c] : v) out = sv_axpy(f, out, c, m.cols[j]);
    return out;
}

/* a * b as linear maps (apply b first). */
template <ScalarField F>
Mat<typename F::Elem> mat_compose(const F& f, const Mat<typename F::Elem>& a,
                                  const Mat<typename F::Elem>& b) {
    Mat<typename F::Elem> out;
    out.nrows = a.nrows;
    out.cols.reserve(b.cols.size());
    for (const auto& col : b.cols) out.cols.push_back(mat_apply(f, a, col));
    return out;
}

template <typename Elem>
bool mat_is_zero(const Mat<Elem>& m) {
    for (const auto& c : m.cols)
        if (!c.empty()) return false;
    return true;
}

template <ScalarField F>
Mat<typename F::Elem> mat_add(const F& f, const Mat<typename F::Elem>& a,
                              const Mat<typename F::Elem>& b) {
    Mat<typename F::Elem> out;
    out.nrows = a.nrows;
    out.cols.resize(a.cols.size());
    for (std::size_t j = 0; j < a.cols.size(); ++j) out.cols[j] = sv_add(f, a.cols[j], b.cols[j]);
    return out;
}

template <ScalarField F>
Mat<typename F::Elem> mat_scale(const F& f, const Mat<typename F::Elem>& a,
                                const typename F::Elem& c) {
    Mat<typename F::Elem> out;
    out.nrows = a.nrows;
    out.cols.reserve(a.cols.size());
    for (const auto& col : a.cols) out.cols.push_back(sv_scale(f, col, c));
    return out;
}

template <ScalarField F>
Mat<typename F::Elem> mat_transpose(const F& f, const Mat<typename F::Elem>& a) {
    (void)f;
    Mat<typename F::Elem> out;
    out.nrows = a.ncols();
    out.cols.resize(a.nrows);
    for (int j = 0; j < a.ncols(); ++j)
        for (const auto& [i, c] : a.cols[j]) out.cols[i].emplace_back(j, c);
    return out;
}

} // namespace bvhh
