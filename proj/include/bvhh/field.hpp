#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <string>

#include "bvhh/errors.hpp"

namespace bvhh {

/* Scalar backends. Everything downstream (elimination, homology, operator
   assembly) is templated on one of these two field types. Elements are kept
   cheap to copy; PrimeField::Elem is a canonical residue in [0,p),
   RationalField::Elem is an exact boost rational. */

class PrimeField {
public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || p >= (1ull << 31)) throw InputError("field characteristic must be a prime in [2, 2^31)");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    }

    std::uint64_t characteristic() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }

    Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p_ ? s - p_ : s; }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; } // p < 2^31 so the product fits in 64 bits

    Elem inv(Elem a) const {
        if (a == 0) throw InputError("division by zero in prime field");
        // extended Euclid on (a, p)
        std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a);
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(t);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(long long n) const {
        long long m = n % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        return static_cast<Elem>(m);
    }

    /* Accepts "n" or "n/d" with optional signs; the fraction is evaluated in F_p. */
    Elem parse(const std::string& s) const {
        auto slash = s.find('/');
        if (slash == std::string::npos) return from_int(parse_int(s));
        Elem num = from_int(parse_int(s.substr(0, slash)));
        Elem den = from_int(parse_int(s.substr(slash + 1)));
        return div(num, den);
    }

    std::string to_string(Elem a) const { return std::to_string(a); }

    bool eq(Elem a, Elem b) const { return a == b; }

private:
    static long long parse_int(const std::string& s) {
        try {
            size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw InputError("bad integer literal '" + s + "'");
            return v;
        } catch (const std::invalid_argument&) {
            throw InputError("bad integer literal '" + s + "'");
        } catch (const std::out_of_range&) {
            throw InputError("integer literal out of range '" + s + "'");
        }
    }

    std::uint64_t p_;
};

class RationalField {
public:
    using Elem = boost::multiprecision::cpp_rational;

    RationalField() = default;

    std::uint64_t characteristic() const { return 0; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return a == 0; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }

    Elem inv(const Elem& a) const {
        if (a == 0) throw InputError("division by zero in rational field");
        return Elem(1) / a;
    }

    Elem div(const Elem& a, const Elem& b) const { return a * inv(b); }

    Elem from_int(long long n) const { return Elem(n); }

    Elem parse(const std::string& s) const {
        try {
            auto slash = s.find('/');
            if (slash == std::string::npos) return Elem(boost::multiprecision::cpp_int(s));
            boost::multiprecision::cpp_int num(s.substr(0, slash));
            boost::multiprecision::cpp_int den(s.substr(slash + 1));
            if (den == 0) throw InputError("zero denominator in '" + s + "'");
            return Elem(num, den);
        } catch (const std::runtime_error& e) {
            throw InputError("bad rational literal '" + s + "': " + e.what());
        }
    }

    std::string to_string(const Elem& a) const { return a.str(); }

    bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

template <typename F>
concept ScalarField = requires(const F f, const typename F::Elem a, const std::string s) {
    { f.zero() } -> std::convertible_to<typename F::Elem>;
    { f.one() } -> std::convertible_to<typename F::Elem>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.add(a, a) } -> std::convertible_to<typename F::Elem>;
    { f.sub(a, a) } -> std::convertible_to<typename F::Elem>;
    { f.neg(a) } -> std::convertible_to<typename F::Elem>;
    { f.mul(a, a) } -> std::convertible_to<typename F::Elem>;
    { f.inv(a) } -> std::convertible_to<typename F::Elem>;
    { f.from_int(1LL) } -> std::convertible_to<typename F::Elem>;
    { f.parse(s) } -> std::convertible_to<typename F::Elem>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
    { f.eq(a, a) } -> std::convertible_to<bool>;
    { f.characteristic() } -> std::convertible_to<std::uint64_t>;
};

/* Parity of a possibly negative exponent; used everywhere Koszul signs are
   built from graded degrees. */
inline bool is_odd(long long e) { return ((e % 2) + 2) % 2 == 1; }

/* (-1)^e as a field element. */
template <ScalarField F>
typename F::Elem sign_of(const F& f, long long e) {
    return is_odd(e) ? f.neg(f.one()) : f.one();
}

} // namespace bvhh
