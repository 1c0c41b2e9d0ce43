#pragma once

#include "bvhh/cochain.hpp"

namespace bvhh {

/* Deliberate sign mutations for the self-test harness. Each flag perturbs
   exactly one sign site; the identity battery must detect every single one.
   All default to false, which is the verified convention set. */
struct SignConventions {
    bool flip_epsilon_bar = false;    // middle (merge) terms of the cochain differential
    bool flip_d2_wraparound = false;  // wraparound term of the chain differential
    bool flip_b_rotation = false;     // adds the rotation count to the cyclic operator's exponent
    bool flip_bdual_prefactor = false; // negates the dual cyclic operator

    bool any() const { return flip_epsilon_bar || flip_d2_wraparound || flip_b_rotation || flip_bdual_prefactor; }
};

/* The operator layer on normalized chains and cochains of a fixed algebra.

   Grading is lower (homological) throughout; a letter a contributes its
   suspended degree |sa| = |a| + 1 to a word, a cochain of lower degree t
   sends words w to values of degree t + |w|, and differentials lower t by 1.
   Every sign below follows from the single transposition rule
   (-1)^{|u||v|}; the flags above are the only sanctioned deviations.

   Cochain operators evaluate on a single word (tables of the inputs are
   consulted as needed); chain operators rewrite whole chains. Coefficient
   modules: cochains may take values in any bimodule (passed per call where
   the actions matter); chains always have coefficients in the algebra. */
template <ScalarField F>
class BarOps {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;
    using Co = Cochain<Elem>;
    using Ch = Chain<Elem>;

    explicit BarOps(const GradedAlgebra<F>& a, SignConventions sc = {})
        : a_(a), f_(a.field()), sc_(sc) {}

    const GradedAlgebra<F>& algebra() const { return a_; }
    const SignConventions& conventions() const { return sc_; }

    /* Sum of suspended degrees of letters first..last-1 (half-open). */
    long long sdeg_range(const Word& w, int first, int last) const {
        long long s = 0;
        for (int i = first; i < last; ++i) s += a_.sdeg(w[i]);
        return s;
    }
    long long word_sdeg(const Word& w) const { return sdeg_range(w, 0, static_cast<int>(w.size())); }

    /* Cochain differential, value of (D g) on w:
         (D g)(a_1..a_k) = -(-1)^{|sa_1||g|} a_1.g(a_2..a_k)
                           - sum_{i=2}^{k} (-1)^{eb_i} g(a_1.. a_{i-1}a_i ..a_k)
                           + (-1)^{eb_k} g(a_1..a_{k-1}).a_k
       with eb_i = |g| + |sa_1| + ... + |sa_{i-1}|; merged letters are reduced
       along the unit before re-entering the word. */
    Vec eval_differential(const Bimodule<F>& mod, const Co& g, const Word& w) const {
        const int k = static_cast<int>(w.size());
        if (k == 0) return {};
        Vec out;
        {
            Word rest(w.begin() + 1, w.end());
            Vec gv = cochain_eval(f_, g, rest);
            if (!gv.empty()) {
                Elem s = f_.neg(sign_of(f_, a_.sdeg(w[0]) * g.deg));
                out = sv_axpy(f_, out, s, mod.act_left_vec(a_, Vec{{w[0], f_.one()}}, gv));
            }
        }
        for (int i = 2; i <= k; ++i) {
            long long eb = g.deg + sdeg_range(w, 0, i - 1);
            if (sc_.flip_epsilon_bar) eb += 1;
            Elem s = f_.neg(sign_of(f_, eb));
            const Vec& prod = a_.mul(w[i - 2], w[i - 1]);
            for (const auto& [j, c] : prod) {
                if (j == a_.unit_index()) continue;
                Word merged;
                merged.reserve(k - 1);
                merged.insert(merged.end(), w.begin(), w.begin() + (i - 2));
                merged.push_back(j);
                merged.insert(merged.end(), w.begin() + i, w.end());
                Vec gv = cochain_eval(f_, g, merged);
                if (!gv.empty()) out = sv_axpy(f_, out, f_.mul(s, c), gv);
            }
        }
        {
            Word head(w.begin(), w.end() - 1);
            Vec gv = cochain_eval(f_, g, head);
            if (!gv.empty()) {
                long long eb = g.deg + sdeg_range(w, 0, k - 1);
                Elem s = sign_of(f_, eb);
                out = sv_axpy(f_, out, s, mod.act_right_vec(a_, gv, Vec{{w[k - 1], f_.one()}}));
            }
        }
        return out;
    }

    /* Product action of an algebra-valued cochain on a mod-valued one:
         (g.h)(a_1..a_n) = sum_p (-1)^{|h| (|sa_1|+..+|sa_p|)} g(a_1..a_p) . h(a_{p+1}..a_n).
       With mod = the algebra itself this is the cup product. */
    Vec eval_cup(const Bimodule<F>& mod, const Co& g, const Co& h, const Word& w) const {
        const int n = static_cast<int>(w.size());
        Vec out;
        for (int p = 0; p <= n; ++p) {
            Word pre(w.begin(), w.begin() + p), post(w.begin() + p, w.end());
            Vec gv = cochain_eval(f_, g, pre);
            if (gv.empty()) continue;
            Vec hv = cochain_eval(f_, h, post);
            if (hv.empty()) continue;
            Elem s = sign_of(f_, h.deg * sdeg_range(w, 0, p));
            out = sv_axpy(f_, out, s, mod.act_left_vec(a_, gv, hv));
        }
        return out;
    }

    /* Insertion composition of algebra-valued cochains:
         (g o h)(a_1..a_n) = sum_{i,l} (-1)^{(|h|+1)(|sa_1|+..+|sa_{i-1}|)}
                             g(a_1..a_{i-1}, pi(h(a_i..a_{i+l-1})), a_{i+l}..a_n),
       the inserted value reduced along the unit (its unit component dies). */
    Vec eval_circle(const Co& g, const Co& h, const Word& w) const {
        const int n = static_cast<int>(w.size());
        Vec out;
        for (int l = 0; l <= n; ++l)
            for (int i = 1; i <= n - l + 1; ++i) {
                Word block(w.begin() + (i - 1), w.begin() + (i - 1 + l));
                Vec hv = cochain_eval(f_, h, block);
                if (hv.empty()) continue;
                Elem s = sign_of(f_, (h.deg + 1) * sdeg_range(w, 0, i - 1));
                for (const auto& [j, c] : hv) {
                    if (j == a_.unit_index()) continue;
                    Word spliced;
                    spliced.reserve(n - l + 1);
                    spliced.insert(spliced.end(), w.begin(), w.begin() + (i - 1));
                    spliced.push_back(j);
                    spliced.insert(spliced.end(), w.begin() + (i - 1 + l), w.end());
                    Vec gv = cochain_eval(f_, g, spliced);
                    if (!gv.empty()) out = sv_axpy(f_, out, f_.mul(s, c), gv);
                }
            }
        return out;
    }

    /* {g,h} = (-1)^{(|g|+1)(|h|+1)} h o g - g o h.
       This is the opposite (negated) insertion bracket: the contraction
       i_g below composes as a right cup-action, so the Lie action it
       carries on chains is by the opposite Lie algebra.  With this
       chirality the Batalin-Vilkovisky relation and the Cartan-type
       contraction identities hold verbatim for the Connes operators;
       the textbook orientation fails them by a global sign over Q. */
    Vec eval_bracket(const Co& g, const Co& h, const Word& w) const {
        Vec out = sv_scale(f_, eval_circle(g, h, w), f_.neg(f_.one()));
        Elem s = sign_of(f_, (g.deg + 1) * (h.deg + 1));
        return sv_axpy(f_, out, s, eval_circle(h, g, w));
    }

    /* Chain differential on M (x) T(sA-bar) with M = A:
         d(m[a_1..a_k]) = (-1)^{|m|} (m a_1)[a_2..a_k]
                        + sum_{i=1}^{k-1} (-1)^{e_i} m[a_1.. a_i a_{i+1} ..a_k]
                        - (-1)^{|sa_k| e_{k-1}} (a_k m)[a_1..a_{k-1}]
       with e_i = |m| + |sa_1| + ... + |sa_i|. */
    Ch d2(const Ch& c) const {
        Ch out;
        for (const auto& [key, coeff] : c) {
            const auto& [m, w] = key;
            const int k = static_cast<int>(w.size());
            if (k == 0) continue;
            long long md = a_.degree(m);
            {
                Elem s = f_.mul(coeff, sign_of(f_, md));
                Word rest(w.begin() + 1, w.end());
                for (const auto& [j, pc] : a_.mul(m, w[0]))
                    chain_add(f_, out, j, rest, f_.mul(s, pc));
            }
            for (int i = 1; i <= k - 1; ++i) {
                long long e = md + sdeg_range(w, 0, i);
                Elem s = f_.mul(coeff, sign_of(f_, e));
                for (const auto& [j, pc] : a_.mul(w[i - 1], w[i])) {
                    if (j == a_.unit_index()) continue;
                    Word merged;
                    merged.reserve(k - 1);
                    merged.insert(merged.end(), w.begin(), w.begin() + (i - 1));
                    merged.push_back(j);
                    merged.insert(merged.end(), w.begin() + (i + 1), w.end());
                    chain_add(f_, out, m, merged, f_.mul(s, pc));
                }
            }
            {
                long long e = a_.sdeg(w[k - 1]) * (md + sdeg_range(w, 0, k - 1));
                if (sc_.flip_d2_wraparound) e += 1;
                Elem s = f_.neg(f_.mul(coeff, sign_of(f_, e)));
                Word head(w.begin(), w.end() - 1);
                for (const auto& [j, pc] : a_.mul(w[k - 1], m))
                    chain_add(f_, out, j, head, f_.mul(s, pc));
            }
        }
        return out;
    }

    /* Normalized cyclic operator: with the cyclic word (x_0,..,x_n) =
       (pi(a_0), a_1, .., a_n),
         B(a_0[a_1..a_n]) = sum_{i=0}^{n} (-1)^{(|sx_0|+..+|sx_{i-1}|)(|sx_i|+..+|sx_n|)}
                            1[x_i..x_n x_0..x_{i-1}].
       Terms with a_0 proportional to the unit vanish, so B of any value of B
       is zero on the nose. */
    Ch connes_b(const Ch& c) const {
        Ch out;
        for (const auto& [key, coeff] : c) {
            const auto& [m, w] = key;
            if (m == a_.unit_index()) continue;
            Word x;
            x.reserve(w.size() + 1);
            x.push_back(m);
            x.insert(x.end(), w.begin(), w.end());
            const int len = static_cast<int>(x.size());
            long long total = word_sdeg(x);
            long long front = 0;
            for (int i = 0; i < len; ++i) {
                long long e = front * (total - front);
                if (sc_.flip_b_rotation) e += i;
                Word rot;
                rot.reserve(len);
                rot.insert(rot.end(), x.begin() + i, x.end());
                rot.insert(rot.end(), x.begin(), x.begin() + i);
                chain_add(f_, out, a_.unit_index(), rot, f_.mul(coeff, sign_of(f_, e)));
                front += a_.sdeg(x[i]);
            }
        }
        return out;
    }

    /* Contraction of an algebra-valued cochain against a chain:
         i_g(m[a_1..a_n]) = sum_p (-1)^{E_p} (m g(a_1..a_p))[a_{p+1}..a_n],
         E_p = S_p (|m| + |g| + S_n + 1) + |g| (|m| + S_n),
       where S_j = |sa_1| + .. + |sa_j|. Sign-free on ungraded input. */
    Ch iota(const Co& g, const Ch& c) const {
        Ch out;
        for (const auto& [key, coeff] : c) {
            const auto& [m, w] = key;
            const int n = static_cast<int>(w.size());
            long long md = a_.degree(m);
            long long sn = word_sdeg(w);
            for (int p = 0; p <= n; ++p) {
                Word pre(w.begin(), w.begin() + p);
                Vec gv = cochain_eval(f_, g, pre);
                if (gv.empty()) continue;
                long long sp = sdeg_range(w, 0, p);
                long long e = sp * (md + g.deg + sn + 1) + g.deg * (md + sn);
                Elem s = f_.mul(coeff, sign_of(f_, e));
                Word post(w.begin() + p, w.end());
                for (const auto& [j, pc] : a_.mul_vec(Vec{{m, f_.one()}}, gv))
                    chain_add(f_, out, j, post, f_.mul(s, pc));
            }
        }
        return out;
    }

    /* Lie derivative along a cochain: L_g = (-1)^{|g|} B i_g - i_g B. */
    Ch lie(const Co& g, const Ch& c) const {
        Ch out = chain_scale(f_, connes_b(iota(g, c)), sign_of(f_, g.deg));
        return chain_sub(f_, out, iota(g, connes_b(c)));
    }

    /* The functional a dual-valued cochain induces on chains:
       phi_g(m[w]) = (g(w))(m), extended linearly. */
    Elem pair_chain(const Co& g, const Ch& c) const {
        Elem s = f_.zero();
        for (const auto& [key, coeff] : c)
            s = f_.add(s, f_.mul(coeff, sv_get(f_, cochain_eval(f_, g, key.second), key.first)));
        return s;
    }

    /* Dual cyclic operator on dual-valued cochains:
         (B~ g)(w)(m) = (-1)^{|g|} phi_g(B(m[w])),
       one lower arity and degree |g| + 1. */
    Vec eval_bdual(const Co& g, const Word& w) const {
        Vec out;
        Elem pre = sign_of(f_, g.deg + (sc_.flip_bdual_prefactor ? 1 : 0));
        for (int m = 0; m < a_.dim(); ++m) {
            Ch single;
            chain_add(f_, single, m, w, f_.one());
            Elem v = f_.mul(pre, pair_chain(g, connes_b(single)));
            if (!f_.is_zero(v)) out.emplace_back(m, v);
        }
        return out;
    }

private:
    const GradedAlgebra<F>& a_;
    const F& f_;
    SignConventions sc_;
};

} // namespace bvhh
