#pragma once

// The ground ring of the whole library: Q(q)^pi = Q(q)[pi]/(pi^2 - 1).
//
// Adjoining the involution pi splits the ring through the idempotents
// (1 +- pi)/2, so an element is stored as its pair of specializations
// (value at pi = +1, value at pi = -1).  All ring operations become
// componentwise rational-function arithmetic and specialization is free.
// The bar involution q -> pi q^-1 acts componentwise as
//     plus  -> plus (q -> q^-1),
//     minus -> minus(q -> -q^-1).
// The Laurent subring Z[q,q^-1]^pi is detected through the idempotent
// coordinates a = (plus+minus)/2 and b = (plus-minus)/2: the element is
// a + b pi and lies in the subring iff both are integer Laurent polynomials.

#include <optional>
#include <utility>

#include "qcover/rational.hpp"

namespace qcover {

struct Scalar {
    RationalFn plus;   // value at pi = +1
    RationalFn minus;  // value at pi = -1

    Scalar() = default;
    Scalar(RationalFn p, RationalFn m) : plus(std::move(p)), minus(std::move(m)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return from_rat(Rat(1)); }
    static Scalar from_rat(const Rat& r) {
        return Scalar(RationalFn(r), RationalFn(r));
    }
    static Scalar from_int(long n) { return from_rat(Rat(n)); }
    static Scalar q() { return q_power(1); }
    static Scalar pi() { return Scalar(RationalFn(Rat(1)), RationalFn(Rat(-1))); }

    // q^e
    static Scalar q_power(long e) {
        return Scalar(RationalFn::q_power(e), RationalFn::q_power(e));
    }
    // pi^k
    static Scalar pi_power(long k) {
        Rat m = (k % 2 == 0) ? Rat(1) : Rat(-1);
        return Scalar(RationalFn(Rat(1)), RationalFn(m));
    }
    // pi^a q^e, the workhorse monomial
    static Scalar piq(long a, long e) {
        Rat m = (a % 2 == 0) ? Rat(1) : Rat(-1);
        return Scalar(RationalFn::q_power(e), RationalFn::q_power(e) * RationalFn(m));
    }

    bool is_zero() const { return plus.is_zero() && minus.is_zero(); }
    bool is_one() const { return *this == one(); }

    Scalar operator-() const { return Scalar(-plus, -minus); }
    Scalar operator+(const Scalar& o) const { return Scalar(plus + o.plus, minus + o.minus); }
    Scalar operator-(const Scalar& o) const { return Scalar(plus - o.plus, minus - o.minus); }
    Scalar operator*(const Scalar& o) const { return Scalar(plus * o.plus, minus * o.minus); }
    Scalar& operator+=(const Scalar& o) { plus += o.plus; minus += o.minus; return *this; }
    Scalar& operator-=(const Scalar& o) { plus -= o.plus; minus -= o.minus; return *this; }
    Scalar& operator*=(const Scalar& o) { plus *= o.plus; minus *= o.minus; return *this; }

    // division requires both specializations invertible
    Scalar operator/(const Scalar& o) const { return Scalar(plus / o.plus, minus / o.minus); }

    bool operator==(const Scalar& o) const { return plus == o.plus && minus == o.minus; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const {
        if (plus != o.plus) return plus < o.plus;
        return minus < o.minus;
    }

    // invertible iff neither specialization vanishes
    bool is_unit() const { return !plus.is_zero() && !minus.is_zero(); }
    Scalar inverse() const { return Scalar(plus.inverse(), minus.inverse()); }

    Scalar pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        Scalar r = one(), b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    std::string str() const;
};

inline RationalFn specialize(const Scalar& s, int sign) {
    return sign >= 0 ? s.plus : s.minus;
}

inline Scalar bar_scalar(const Scalar& s) {
    return Scalar(s.plus.subst_qinv(false), s.minus.subst_qinv(true));
}

// Laurent-subring membership, with the (a, b) witness such that s = a + b*pi.
inline std::optional<std::pair<LaurentPoly, LaurentPoly>> laurent_witness(const Scalar& s) {
    RationalFn half(Rat(1, 2));
    RationalFn a = (s.plus + s.minus) * half;
    RationalFn b = (s.plus - s.minus) * half;
    if (!a.is_polynomial() || !b.is_polynomial()) return std::nullopt;
    if (!a.num().integer_coeffs() || !b.num().integer_coeffs()) return std::nullopt;
    return std::make_pair(a.num(), b.num());
}

inline bool is_laurent(const Scalar& s) { return laurent_witness(s).has_value(); }

inline std::string Scalar::str() const {
    RationalFn half(Rat(1, 2));
    RationalFn a = (plus + minus) * half;
    RationalFn b = (plus - minus) * half;
    auto wrap = [](const RationalFn& f) {
        std::string s = f.str();
        bool atomic = f.is_polynomial() && f.num().coeffs().size() == 1 &&
                      f.num().coeffs().begin()->second > 0;
        return atomic ? s : "(" + s + ")";
    };
    if (b.is_zero()) return a.str();
    std::string bs = (b == RationalFn(Rat(1))) ? "p" : wrap(b) + "*p";
    if (a.is_zero()) return bs;
    return a.str() + " + " + bs;
}

}  // namespace qcover
