#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bvhh/algebra.hpp"

namespace bvhh {

/* A word in the reduced tensor coalgebra: a list of algebra basis indices,
   none of which is the unit. The empty word is allowed. */
using Word = std::vector<int>;

/* A normalized cochain: a linear map from words to a coefficient bimodule,
   stored as word -> value on its (finite) support, together with its lower
   total degree. Homogeneity means |value| = deg + |word| for every entry;
   in the ungraded case deg is minus the arity. */
template <typename Elem>
struct Cochain {
    long long deg = 0;
    std::map<Word, SparseVec<Elem>> vals;
};

template <ScalarField F>
SparseVec<typename F::Elem> cochain_eval(const F& f, const Cochain<typename F::Elem>& g,
                                         const Word& w) {
    (void)f;
    auto it = g.vals.find(w);
    return it == g.vals.end() ? SparseVec<typename F::Elem>{} : it->second;
}

template <ScalarField F>
void cochain_set(const F& f, Cochain<typename F::Elem>& g, const Word& w,
                 SparseVec<typename F::Elem> v) {
    (void)f;
    if (v.empty()) g.vals.erase(w);
    else g.vals[w] = std::move(v);
}

template <ScalarField F>
Cochain<typename F::Elem> cochain_axpy(const F& f, const Cochain<typename F::Elem>& y,
                                       const typename F::Elem& c,
                                       const Cochain<typename F::Elem>& x) {
    Cochain<typename F::Elem> out = y;
    for (const auto& [w, v] : x.vals) {
        auto s = sv_axpy(f, cochain_eval(f, out, w), c, v);
        cochain_set(f, out, w, std::move(s));
    }
    return out;
}

template <ScalarField F>
Cochain<typename F::Elem> cochain_scale(const F& f, const Cochain<typename F::Elem>& g,
                                        const typename F::Elem& c) {
    Cochain<typename F::Elem> out;
    out.deg = g.deg;
    for (const auto& [w, v] : g.vals) {
        auto s = sv_scale(f, v, c);
        if (!s.empty()) out.vals[w] = std::move(s);
    }
    return out;
}

/* A normalized chain: an element of M (x) T(s A-bar), expanded over the
   module basis in the coefficient slot: (module index, word) -> scalar. */
template <typename Elem>
using Chain = std::map<std::pair<int, Word>, Elem>;

template <ScalarField F>
void chain_add(const F& f, Chain<typename F::Elem>& c, int m, const Word& w,
               const typename F::Elem& v) {
    if (f.is_zero(v)) return;
    auto key = std::make_pair(m, w);
    auto it = c.find(key);
    if (it == c.end()) {
        c.emplace(std::move(key), v);
    } else {
        it->second = f.add(it->second, v);
        if (f.is_zero(it->second)) c.erase(it);
    }
}

template <ScalarField F>
Chain<typename F::Elem> chain_axpy(const F& f, const Chain<typename F::Elem>& y,
                                   const typename F::Elem& c,
                                   const Chain<typename F::Elem>& x) {
    Chain<typename F::Elem> out = y;
    for (const auto& [k, v] : x) chain_add(f, out, k.first, k.second, f.mul(c, v));
    return out;
}

template <ScalarField F>
Chain<typename F::Elem> chain_scale(const F& f, const Chain<typename F::Elem>& x,
                                    const typename F::Elem& c) {
    Chain<typename F::Elem> out;
    for (const auto& [k, v] : x) {
        auto s = f.mul(v, c);
        if (!f.is_zero(s)) out.emplace(k, s);
    }
    return out;
}

template <ScalarField F>
Chain<typename F::Elem> chain_sub(const F& f, const Chain<typename F::Elem>& a,
                                  const Chain<typename F::Elem>& b) {
    return chain_axpy(f, a, f.neg(f.one()), b);
}

} // namespace bvhh
