#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bvhh/linalg.hpp"

namespace bvhh {

/* A finite-dimensional associative unital algebra with an integer (lower)
   grading on a chosen basis. Multiplication is given by structure constants;
   every axiom is checked eagerly at construction, and failures name the
   offending basis elements. Instances are immutable after validation.

   The basis is normalized so that the linear functional "coefficient of the
   unit" has the non-unit basis vectors as its kernel; the loader performs
   the basis change when a presentation supplies a different augmentation. */
template <ScalarField F>
class GradedAlgebra {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    GradedAlgebra(F field, std::vector<std::string> names, std::vector<long long> degrees,
                  int unit_index, std::vector<std::vector<Vec>> products)
        : f_(std::move(field)), names_(std::move(names)), degrees_(std::move(degrees)),
          unit_(unit_index), products_(std::move(products)) {
        const int n = dim();
        if (n == 0) throw InputError("algebra needs at least one basis element");
        if (static_cast<int>(degrees_.size()) != n ||
            static_cast<int>(products_.size()) != n)
            throw InputError("basis, degrees and product table sizes disagree");
        for (const auto& row : products_)
            if (static_cast<int>(row.size()) != n)
                throw InputError("product table is not square");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw InputError("duplicate basis name '" + names_[i] + "'");
        if (unit_ < 0 || unit_ >= n) throw InputError("unit index out of range");
        if (degrees_[unit_] != 0) throw InputError("the unit must sit in degree 0");

        for (int j = 0; j < n; ++j) {
            Vec ej{{j, f_.one()}};
            if (products_[unit_][j] != ej)
                throw InputError("unit violation: 1 * " + names_[j] + " != " + names_[j]);
            if (products_[j][unit_] != ej)
                throw InputError("unit violation: " + names_[j] + " * 1 != " + names_[j]);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (const auto& [k, c] : products_[i][j])
                    if (degrees_[k] != degrees_[i] + degrees_[j])
                        throw InputError("grading violation: " + names_[i] + " * " + names_[j] +
                                         " has a component on " + names_[k]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Vec ek{{k, f_.one()}};
                    Vec ei{{i, f_.one()}};
                    if (mul_vec(products_[i][j], ek) != mul_vec(ei, products_[j][k]))
                        throw InputError("associativity violation on (" + names_[i] + ", " +
                                         names_[j] + ", " + names_[k] + ")");
                }
    }

    const F& field() const { return f_; }
    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    long long degree(int i) const { return degrees_[i]; }
    int unit_index() const { return unit_; }
    const Vec& mul(int i, int j) const { return products_[i][j]; }

    Vec mul_vec(const Vec& u, const Vec& v) const {
        Vec out;
        for (const auto& [i, a] : u)
            for (const auto& [j, b] : v)
                out = sv_axpy(f_, out, f_.mul(a, b), products_[i][j]);
        return out;
    }

    Vec unit_vec() const { return Vec{{unit_, f_.one()}}; }

    /* Coefficient of the unit — the augmentation in the normalized basis. */
    Elem eps(const Vec& v) const { return sv_get(f_, v, unit_); }

    /* Projection onto the reduced part along the unit. */
    Vec reduce(const Vec& v) const {
        Vec out;
        out.reserve(v.size());
        for (const auto& [i, c] : v)
            if (i != unit_) out.emplace_back(i, c);
        return out;
    }

    /* Degree of a reduced basis element after suspension. */
    long long sdeg(int i) const { return degrees_[i] + 1; }

    /* True when the non-unit basis span is closed under multiplication, i.e.
       the default augmentation is an algebra map. */
    bool reduced_part_is_ideal() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) {
                if (i == unit_ || j == unit_) continue;
                if (!f_.is_zero(sv_get(f_, products_[i][j], unit_))) return false;
            }
        return true;
    }

private:
    F f_;
    std::vector<std::string> names_;
    std::vector<long long> degrees_;
    int unit_;
    std::vector<std::vector<Vec>> products_;
};

/* A graded bimodule over a GradedAlgebra, given by explicit action structure
   constants. The two coefficient systems the engine ships are the algebra
   itself and its graded dual; `dual` works over any bimodule so the double
   dual can be formed and compared against the original. */
template <ScalarField F>
class Bimodule {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    static Bimodule self(const GradedAlgebra<F>& a) {
        Bimodule m;
        for (int i = 0; i < a.dim(); ++i) {
            m.names_.push_back(a.name(i));
            m.degrees_.push_back(a.degree(i));
        }
        m.left_.assign(a.dim(), std::vector<Vec>(a.dim()));
        m.right_.assign(a.dim(), std::vector<Vec>(a.dim()));
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                m.left_[i][j] = a.mul(i, j);
                m.right_[j][i] = a.mul(j, i);
            }
        m.validate(a);
        return m;
    }

    /* Graded dual with the action sign fixed once and for all:
         (a.phi)(x) = (-1)^{|a|(|phi|+|x|)} phi(x a),   (phi.b)(x) = phi(b x). */
    static Bimodule dual(const GradedAlgebra<F>& a, const Bimodule& m) {
        const F& f = a.field();
        Bimodule d;
        const int n = m.dim();
        for (int i = 0; i < n; ++i) {
            d.names_.push_back(m.names_[i] + "^");
            d.degrees_.push_back(-m.degrees_[i]);
        }
        d.left_.assign(a.dim(), std::vector<Vec>(n));
        d.right_.assign(n, std::vector<Vec>(a.dim()));
        for (int k = 0; k < a.dim(); ++k)
            for (int i = 0; i < n; ++i) {
                std::map<int, Elem> lacc, racc;
                for (int j = 0; j < n; ++j) {
                    Elem cl = sv_get(f, m.right_[j][k], i); // coeff of m_i in m_j.a_k
                    if (!f.is_zero(cl)) {
                        long long e = a.degree(k) * (d.degrees_[i] + m.degrees_[j]);
                        lacc[j] = f.add(lacc.count(j) ? lacc[j] : f.zero(),
                                        f.mul(sign_of(f, e), cl));
                    }
                    Elem cr = sv_get(f, m.left_[k][j], i); // coeff of m_i in a_k.m_j
                    if (!f.is_zero(cr)) racc[j] = f.add(racc.count(j) ? racc[j] : f.zero(), cr);
                }
                d.left_[k][i] = sv_from_map(f, lacc);
                d.right_[i][k] = sv_from_map(f, racc);
            }
        d.validate(a);
        return d;
    }

    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    long long degree(int i) const { return degrees_[i]; }

    /* a_k . m_i and m_i . a_k on basis elements. */
    const Vec& act_left(int k, int i) const { return left_[k][i]; }
    const Vec& act_right(int i, int k) const { return right_[i][k]; }

    Vec act_left_vec(const GradedAlgebra<F>& a, const Vec& u, const Vec& m) const {
        const F& f = a.field();
        Vec out;
        for (const auto& [k, c] : u)
            for (const auto& [i, x] : m) out = sv_axpy(f, out, f.mul(c, x), left_[k][i]);
        return out;
    }

    Vec act_right_vec(const GradedAlgebra<F>& a, const Vec& m, const Vec& u) const {
        const F& f = a.field();
        Vec out;
        for (const auto& [i, x] : m)
            for (const auto& [k, c] : u) out = sv_axpy(f, out, f.mul(x, c), right_[i][k]);
        return out;
    }

private:
    void validate(const GradedAlgebra<F>& a) const {
        const F& f = a.field();
        const int n = dim();
        const int u = a.unit_index();
        for (int i = 0; i < n; ++i) {
            Vec ei{{i, f.one()}};
            if (left_[u][i] != ei || right_[i][u] != ei)
                throw InputError("bimodule unit violation on " + names_[i]);
        }
        for (int k = 0; k < a.dim(); ++k)
            for (int i = 0; i < n; ++i) {
                for (const auto& [j, c] : left_[k][i])
                    if (degrees_[j] != a.degree(k) + degrees_[i])
                        throw InputError("bimodule grading violation on " + a.name(k) + " . " + names_[i]);
                for (const auto& [j, c] : right_[i][k])
                    if (degrees_[j] != degrees_[i] + a.degree(k))
                        throw InputError("bimodule grading violation on " + names_[i] + " . " + a.name(k));
            }
        for (int p = 0; p < a.dim(); ++p)
            for (int q = 0; q < a.dim(); ++q)
                for (int i = 0; i < n; ++i) {
                    Vec ei{{i, f.one()}};
                    Vec ep{{p, f.one()}}, eq{{q, f.one()}};
                    if (act_left_vec(a, a.mul(p, q), ei) != act_left_vec(a, ep, left_[q][i]))
                        throw InputError("bimodule left action not associative on (" + a.name(p) +
                                         ", " + a.name(q) + ", " + names_[i] + ")");
                    if (act_right_vec(a, right_[i][p], eq) != act_right_vec(a, ei, a.mul(p, q)))
                        throw InputError("bimodule right action not associative on (" + names_[i] +
                                         ", " + a.name(p) + ", " + a.name(q) + ")");
                    if (act_right_vec(a, left_[p][i], eq) != act_left_vec(a, ep, right_[i][q]))
                        throw InputError("bimodule actions do not commute on (" + a.name(p) + ", " +
                                         names_[i] + ", " + a.name(q) + ")");
                }
    }

    std::vector<std::string> names_;
    std::vector<long long> degrees_;
    std::vector<std::vector<Vec>> left_;  // left_[algebra k][module i]
    std::vector<std::vector<Vec>> right_; // right_[module i][algebra k]
};

/* A nondegenerate invariant graded-symmetric pairing on the algebra, the
   induced isomorphism theta(a) = <a,-> onto the dual, and the shift d with
   <a,b> = 0 unless |a| + |b| = -d. Everything is verified at construction. */
template <ScalarField F>
class FrobeniusStructure {
public:
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    FrobeniusStructure(const GradedAlgebra<F>& a, std::vector<std::vector<Elem>> pairing)
        : pairing_(std::move(pairing)) {
        const F& f = a.field();
        const int n = a.dim();
        if (static_cast<int>(pairing_.size()) != n)
            throw InputError("pairing matrix size does not match the basis");
        for (const auto& row : pairing_)
            if (static_cast<int>(row.size()) != n) throw InputError("pairing matrix is not square");

        bool d_known = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (f.is_zero(pairing_[i][j])) continue;
                long long d = -(a.degree(i) + a.degree(j));
                if (!d_known) { degree_d_ = d; d_known = true; }
                else if (d != degree_d_)
                    throw InputError("inhomogeneous pairing: <" + a.name(i) + ", " + a.name(j) +
                                     "> conflicts with the inferred degree");
            }
        if (!d_known) throw InputError("degenerate pairing: identically zero");

        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Elem rhs = f.mul(sign_of(f, a.degree(i) * a.degree(j)), pairing_[j][i]);
                if (!f.eq(pairing_[i][j], rhs))
                    throw InputError("pairing is not graded symmetric at (" + a.name(i) + ", " +
                                     a.name(j) + ")");
            }

        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Vec ek{{k, f.one()}}, ei{{i, f.one()}};
                    if (!f.eq(pair(a, a.mul(i, j), ek), pair(a, ei, a.mul(j, k))))
                        throw InputError("pairing is not invariant on (" + a.name(i) + ", " +
                                         a.name(j) + ", " + a.name(k) + ")");
                }

        theta_.nrows = n;
        theta_.cols.resize(n);
        for (int i = 0; i < n; ++i) {
            std::map<int, Elem> col;
            for (int j = 0; j < n; ++j)
                if (!f.is_zero(pairing_[i][j])) col[j] = pairing_[i][j];
            theta_.cols[i] = sv_from_map(f, col);
        }
        if (!mat_invertible(f, theta_))
            throw InputError("degenerate pairing: matrix is singular");
        inv_cols_.resize(n);
        for (int j = 0; j < n; ++j) {
            auto x = solve_in_span(f, theta_, Vec{{j, f.one()}});
            inv_cols_[j] = *x; // exists: theta_ is invertible
        }

        // theta is a bimodule map of degree d into the dual:
        //   theta(ab) = theta(a).b  and  a.theta(b) = (-1)^{|a| d} theta(ab)
        auto dual = Bimodule<F>::dual(a, Bimodule<F>::self(a));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Vec ei{{i, f.one()}}, ej{{j, f.one()}};
                Vec t_ab = theta(a, a.mul(i, j));
                if (dual.act_right_vec(a, theta(a, ei), ej) != t_ab)
                    throw TheoremViolation("theta fails theta(ab) = theta(a).b on (" + a.name(i) +
                                           ", " + a.name(j) + ")");
                Vec lhs = dual.act_left_vec(a, ei, theta(a, ej));
                if (lhs != sv_scale(f, t_ab, sign_of(f, a.degree(i) * degree_d_)))
                    throw TheoremViolation("theta fails a.theta(b) = (-1)^{|a|d} theta(ab) on (" +
                                           a.name(i) + ", " + a.name(j) + ")");
            }
    }

    long long degree_d() const { return degree_d_; }

    Elem pair(const GradedAlgebra<F>& a, const Vec& u, const Vec& v) const {
        const F& f = a.field();
        Elem s = f.zero();
        for (const auto& [i, x] : u)
            for (const auto& [j, y] : v) s = f.add(s, f.mul(f.mul(x, y), pairing_[i][j]));
        return s;
    }

    /* theta(a) = <a,->, in dual-basis coordinates. */
    Vec theta(const GradedAlgebra<F>& a, const Vec& u) const { return mat_apply(a.field(), theta_, u); }

    Vec theta_inv(const GradedAlgebra<F>& a, const Vec& phi) const {
        const F& f = a.field();
        Vec out;
        for (const auto& [j, c] : phi) out = sv_axpy(f, out, c, inv_cols_[j]);
        return out;
    }

    const std::vector<std::vector<Elem>>& matrix() const { return pairing_; }

private:
    std::vector<std::vector<Elem>> pairing_;
    long long degree_d_ = 0;
    Mat<Elem> theta_;
    std::vector<Vec> inv_cols_;
};

} // namespace bvhh
