#pragma once

#include <algorithm>
#include <optional>
#include <set>

#include "bvhh/operators.hpp"
#include "bvhh/subquotient.hpp"

namespace bvhh {

/* Sign signature of the suspended letter degrees: +1 when every reduced basis
   letter has |sa| >= 1, -1 when every one has |sa| <= -1, 0 otherwise. A
   nonzero signature makes every total degree meet finitely many word lengths,
   so slices are exact; signature 0 demands a word-length cutoff. */
template <ScalarField F>
int sdeg_signature(const GradedAlgebra<F>& a) {
    bool pos = true, neg = true;
    for (int j = 0; j < a.dim(); ++j) {
        if (j == a.unit_index()) continue;
        if (a.sdeg(j) < 1) pos = false;
        if (a.sdeg(j) > -1) neg = false;
    }
    return pos ? 1 : (neg ? -1 : 0);
}

/* All reduced words of total suspended degree s, in lexicographic order of
   basis indices (shorter prefixes first). With a cutoff, only words of length
   <= cutoff are produced and *truncated is set when the cutoff pruned a
   branch that could still have reached s. Without a cutoff the signature
   must be nonzero (checked by the caller). */
template <ScalarField F>
std::vector<Word> words_with_sdeg(const GradedAlgebra<F>& a, long long s,
                                  std::optional<int> cutoff, bool* truncated = nullptr) {
    int sig = sdeg_signature(a);
    if (truncated) *truncated = false;
    std::vector<Word> out;
    Word cur;
    auto reachable = [&](long long acc) {
        if (sig == 1) return acc < s;
        if (sig == -1) return acc > s;
        return true;
    };
    auto rec = [&](auto&& self, long long acc) -> void {
        if (acc == s) out.push_back(cur);
        if (cutoff && static_cast<int>(cur.size()) >= *cutoff) {
            if (truncated && reachable(acc)) *truncated = true;
            return;
        }
        if (!reachable(acc) && !(sig == 0)) return;
        if (sig == 0 && !cutoff) return; // caller bug; guarded upstream
        for (int j = 0; j < a.dim(); ++j) {
            if (j == a.unit_index()) continue;
            cur.push_back(j);
            self(self, acc + a.sdeg(j));
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/* Basis of the degree-t cochain space with coefficients in mod: pairs
   (word w, module basis index i) with deg_mod(i) = t + |sw|, grouped by word
   in lexicographic order, module indices ascending within a word. */
template <ScalarField F>
struct CochainSlice {
    long long deg = 0;
    std::vector<std::pair<Word, int>> basis;
    std::map<std::pair<Word, int>, int> index;
    std::vector<Word> words;
    bool truncated = false;

    int dim() const { return static_cast<int>(basis.size()); }
};

template <ScalarField F>
CochainSlice<F> make_cochain_slice(const GradedAlgebra<F>& a, const Bimodule<F>& mod,
                                   long long deg, std::optional<int> cutoff) {
    if (sdeg_signature(a) == 0 && !cutoff)
        throw InputError("this algebra's reduced letters mix suspended-degree signs; "
                         "an explicit word cutoff is required for slice enumeration");
    CochainSlice<F> s;
    s.deg = deg;
    std::map<Word, std::vector<int>> by_word;
    for (int i = 0; i < mod.dim(); ++i) {
        bool trunc = false;
        for (auto& w : words_with_sdeg(a, mod.degree(i) - deg, cutoff, &trunc))
            by_word[std::move(w)].push_back(i);
        s.truncated = s.truncated || trunc;
    }
    for (auto& [w, idxs] : by_word) {
        s.words.push_back(w);
        for (int i : idxs) {
            s.index[{w, i}] = s.dim();
            s.basis.emplace_back(w, i);
        }
    }
    return s;
}

/* Basis of the degree-t chain space: pairs (module index m over all of A,
   word w) with deg(m) + |sw| = t, ordered by m then word. */
template <ScalarField F>
struct ChainSlice {
    long long deg = 0;
    std::vector<std::pair<int, Word>> basis;
    std::map<std::pair<int, Word>, int> index;
    bool truncated = false;

    int dim() const { return static_cast<int>(basis.size()); }
};

template <ScalarField F>
ChainSlice<F> make_chain_slice(const GradedAlgebra<F>& a, long long deg,
                               std::optional<int> cutoff) {
    if (sdeg_signature(a) == 0 && !cutoff)
        throw InputError("this algebra's reduced letters mix suspended-degree signs; "
                         "an explicit word cutoff is required for slice enumeration");
    ChainSlice<F> s;
    s.deg = deg;
    for (int m = 0; m < a.dim(); ++m) {
        bool trunc = false;
        for (auto& w : words_with_sdeg(a, deg - a.degree(m), cutoff, &trunc)) {
            s.index[{m, w}] = s.dim();
            s.basis.emplace_back(m, std::move(w));
        }
        s.truncated = s.truncated || trunc;
    }
    return s;
}

/* Coordinate conversions between sparse slice vectors and operator-layer
   objects. Entries falling outside the slice are rejected unless the slice
   is truncated, in which case they are dropped (out-of-window). */
template <ScalarField F>
SparseVec<typename F::Elem> cochain_to_vec(const F& f, const CochainSlice<F>& s,
                                           const Cochain<typename F::Elem>& g) {
    std::map<int, typename F::Elem> m;
    for (const auto& [w, v] : g.vals)
        for (const auto& [i, c] : v) {
            auto it = s.index.find({w, i});
            if (it == s.index.end()) {
                if (s.truncated) continue;
                throw TheoremViolation("cochain has a component outside its degree slice");
            }
            m[it->second] = c;
        }
    return sv_from_map(f, m);
}

template <ScalarField F>
Cochain<typename F::Elem> vec_to_cochain(const F& f, const CochainSlice<F>& s,
                                         const SparseVec<typename F::Elem>& v) {
    Cochain<typename F::Elem> g;
    g.deg = s.deg;
    for (const auto& [j, c] : v) {
        const auto& [w, i] = s.basis.at(j);
        auto cur = cochain_eval(f, g, w);
        cochain_set(f, g, w, sv_axpy(f, cur, c, {{i, f.one()}}));
    }
    return g;
}

template <ScalarField F>
SparseVec<typename F::Elem> chain_to_vec(const F& f, const ChainSlice<F>& s,
                                         const Chain<typename F::Elem>& c) {
    std::map<int, typename F::Elem> m;
    for (const auto& [key, coeff] : c) {
        auto it = s.index.find(key);
        if (it == s.index.end()) {
            if (s.truncated) continue;
            throw TheoremViolation("chain has a component outside its degree slice");
        }
        m[it->second] = coeff;
    }
    return sv_from_map(f, m);
}

template <ScalarField F>
Chain<typename F::Elem> vec_to_chain(const F& f, const ChainSlice<F>& s,
                                     const SparseVec<typename F::Elem>& v) {
    Chain<typename F::Elem> c;
    for (const auto& [j, coeff] : v) {
        const auto& [m, w] = s.basis.at(j);
        chain_add(f, c, m, w, coeff);
    }
    return c;
}

/* Matrix of the cochain differential from the degree-t slice to the
   degree-(t-1) slice. Columns are elementary cochains; for each column the
   candidate target words (one letter prepended, one letter appended, or one
   letter split into a product of two) are generated and the operator layer
   is evaluated on each, so the sign logic lives in exactly one place. */
template <ScalarField F>
Mat<typename F::Elem> d1_matrix(const BarOps<F>& ops, const Bimodule<F>& mod,
                                const CochainSlice<F>& src, const CochainSlice<F>& dst) {
    const auto& a = ops.algebra();
    const F& f = a.field();
    // factorizations[j] = (y, z, c): reduced letters with <y z, e_j> = c != 0
    std::vector<std::vector<std::tuple<int, int, typename F::Elem>>> factor(a.dim());
    for (int y = 0; y < a.dim(); ++y) {
        if (y == a.unit_index()) continue;
        for (int z = 0; z < a.dim(); ++z) {
            if (z == a.unit_index()) continue;
            for (const auto& [j, c] : a.mul(y, z)) factor[j].emplace_back(y, z, c);
        }
    }
    Mat<typename F::Elem> out{dst.dim(), std::vector<SparseVec<typename F::Elem>>(src.dim())};
    for (int col = 0; col < src.dim(); ++col) {
        const auto& [u, i] = src.basis[col];
        Cochain<typename F::Elem> g;
        g.deg = src.deg;
        g.vals[u] = {{i, f.one()}};
        std::set<Word> targets;
        for (int l = 0; l < a.dim(); ++l) {
            if (l == a.unit_index()) continue;
            Word pre{l};
            pre.insert(pre.end(), u.begin(), u.end());
            targets.insert(std::move(pre));
            Word post = u;
            post.push_back(l);
            targets.insert(std::move(post));
        }
        for (size_t p = 0; p < u.size(); ++p)
            for (const auto& [y, z, c] : factor[u[p]]) {
                (void)c;
                Word split(u.begin(), u.begin() + p);
                split.push_back(y);
                split.push_back(z);
                split.insert(split.end(), u.begin() + p + 1, u.end());
                targets.insert(std::move(split));
            }
        std::map<int, typename F::Elem> colmap;
        for (const auto& w : targets) {
            auto v = ops.eval_differential(mod, g, w);
            for (const auto& [ii, cc] : v) {
                auto it = dst.index.find({w, ii});
                if (it == dst.index.end()) {
                    if (dst.truncated || src.truncated) continue;
                    throw TheoremViolation("differential left its target slice");
                }
                colmap[it->second] = cc;
            }
        }
        out.cols[col] = sv_from_map(f, colmap);
    }
    return out;
}

/* Matrix of the dual cyclic operator from the degree-t dual-cochain slice to
   the degree-(t+1) slice (arity drops by one). */
template <ScalarField F>
Mat<typename F::Elem> bdual_matrix(const BarOps<F>& ops, const CochainSlice<F>& src,
                                   const CochainSlice<F>& dst) {
    const F& f = ops.algebra().field();
    Mat<typename F::Elem> out{dst.dim(), std::vector<SparseVec<typename F::Elem>>(src.dim())};
    for (int col = 0; col < src.dim(); ++col) {
        const auto& [u, i] = src.basis[col];
        if (u.empty()) continue; // arity drops; nothing below the empty word
        Cochain<typename F::Elem> g;
        g.deg = src.deg;
        g.vals[u] = {{i, f.one()}};
        // the only target words are the cyclic rotations of u with their
        // first letter moved off into the module slot
        std::set<Word> targets;
        for (size_t r = 0; r < u.size(); ++r) {
            Word rot(u.begin() + r, u.end());
            rot.insert(rot.end(), u.begin(), u.begin() + r);
            targets.emplace(rot.begin() + 1, rot.end());
        }
        std::map<int, typename F::Elem> colmap;
        for (const auto& w : targets) {
            auto v = ops.eval_bdual(g, w);
            for (const auto& [ii, cc] : v) {
                auto it = dst.index.find({w, ii});
                if (it == dst.index.end()) {
                    if (dst.truncated || src.truncated) continue;
                    throw TheoremViolation("dual cyclic operator left its target slice");
                }
                colmap[it->second] = cc;
            }
        }
        out.cols[col] = sv_from_map(f, colmap);
    }
    return out;
}

/* Matrix of a chain-to-chain operator between two chain slices. */
template <ScalarField F, typename Op>
Mat<typename F::Elem> chain_op_matrix(const F& f, const ChainSlice<F>& src,
                                      const ChainSlice<F>& dst, Op&& op) {
    Mat<typename F::Elem> out{dst.dim(), std::vector<SparseVec<typename F::Elem>>(src.dim())};
    for (int col = 0; col < src.dim(); ++col) {
        const auto& [m, w] = src.basis[col];
        Chain<typename F::Elem> c;
        chain_add(f, c, m, w, f.one());
        std::map<int, typename F::Elem> colmap;
        for (const auto& [key, coeff] : op(c)) {
            auto it = dst.index.find(key);
            if (it == dst.index.end()) {
                if (dst.truncated || src.truncated) continue;
                throw TheoremViolation("chain operator left its target slice");
            }
            colmap[it->second] = coeff;
        }
        out.cols[col] = sv_from_map(f, colmap);
    }
    return out;
}

} // namespace bvhh
