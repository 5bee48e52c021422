#pragma once

// Exact arithmetic in Z[q,q^-1] and Q(q).
//
// LaurentPoly: sparse map exponent -> rational coefficient, no zero entries.
// RationalFn:  numerator/denominator pair kept in a canonical form so that
//              equality is representational:
//                - denominator is an ordinary polynomial (lowest exponent 0)
//                  with coprime integer coefficients and positive leading
//                  coefficient;
//                - gcd(numerator, denominator) = 1 after clearing q-powers.
// Coefficients are GMP rationals; fixed-width arithmetic overflows on the
// Gram computations this library exists for.

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcover {

using Int = mpz_class;
using Rat = mpq_class;

// ---- LaurentPoly ----

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rat& r) {
        if (r != 0) c_[0] = r;
    }
    static LaurentPoly term(const Rat& r, long e) {
        LaurentPoly p;
        if (r != 0) p.c_[e] = r;
        return p;
    }
    static LaurentPoly one() { return LaurentPoly(Rat(1)); }

    bool is_zero() const { return c_.empty(); }

    // lowest/highest exponent; pre: nonzero
    long min_exp() const { return c_.begin()->first; }
    long max_exp() const { return c_.rbegin()->first; }

    const std::map<long, Rat>& coeffs() const { return c_; }

    Rat coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }

    void add_term(long e, const Rat& r) {
        if (r == 0) return;
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_[e] = r;
        } else {
            it->second += r;
            if (it->second == 0) c_.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [e, v] : c_) r.c_[e] = -v;
        return r;
    }
    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, v] : o.c_) r.add_term(e, v);
        return r;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, v] : o.c_) r.add_term(e, -v);
        return r;
    }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (auto& [e1, v1] : c_)
            for (auto& [e2, v2] : o.c_) r.add_term(e1 + e2, v1 * v2);
        return r;
    }
    LaurentPoly operator*(const Rat& s) const {
        LaurentPoly r;
        if (s == 0) return r;
        for (auto& [e, v] : c_) r.c_[e] = v * s;
        return r;
    }
    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }
    bool operator<(const LaurentPoly& o) const { return c_ < o.c_; }

    // multiply by q^k
    LaurentPoly shifted(long k) const {
        LaurentPoly r;
        for (auto& [e, v] : c_) r.c_[e + k] = v;
        return r;
    }

    // q -> q^-1; with alternate set, q -> -q^-1 (coefficient times (-1)^e)
    LaurentPoly subst_qinv(bool alternate) const {
        LaurentPoly r;
        for (auto& [e, v] : c_) {
            Rat w = v;
            if (alternate && (e % 2 != 0)) w = -w;
            r.c_[-e] = w;
        }
        return r;
    }

    bool integer_coeffs() const {
        for (auto& [e, v] : c_)
            if (v.get_den() != 1) return false;
        return true;
    }

    // rational content: c with (*this) = c * primitive, primitive having
    // coprime integer coefficients and positive leading coefficient.
    // pre: nonzero
    Rat rat_content() const {
        Int num_gcd = 0, den_lcm = 1;
        for (auto& [e, v] : c_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
        }
        Rat c(num_gcd, den_lcm);
        c.canonicalize();
        if (c_.rbegin()->second < 0) c = -c;
        return c;
    }

    std::string str() const;

private:
    std::map<long, Rat> c_;
};

// ---- polynomial helpers (dense view, min exponent 0) ----

namespace detail {

inline std::vector<Rat> dense(const LaurentPoly& p) {
    // pre: p nonzero with min_exp() == 0
    std::vector<Rat> v(static_cast<size_t>(p.max_exp()) + 1, Rat(0));
    for (auto& [e, c] : p.coeffs()) v[static_cast<size_t>(e)] = c;
    return v;
}

inline LaurentPoly from_dense(const std::vector<Rat>& v) {
    LaurentPoly p;
    for (size_t i = 0; i < v.size(); ++i) p.add_term(static_cast<long>(i), v[i]);
    return p;
}

inline void trim(std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// in-place a -= (a_lead/b_lead) q^(da-db) * b, repeatedly: returns remainder
inline std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    return a;
}

inline std::vector<Rat> poly_quot(std::vector<Rat> a, const std::vector<Rat>& b) {
    trim(a);
    std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        q[off] = f;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("poly_quot: inexact division");
    return q;
}

}  // namespace detail

// monic gcd of two polynomials; inputs shifted so min exponent is 0.
// Returns 1 if either is zero at that stage (Laurent units divide everything).
inline LaurentPoly poly_gcd(const LaurentPoly& pa, const LaurentPoly& pb) {
    if (pa.is_zero() || pb.is_zero()) return LaurentPoly::one();
    std::vector<Rat> a = detail::dense(pa.shifted(-pa.min_exp()));
    std::vector<Rat> b = detail::dense(pb.shifted(-pb.min_exp()));
    while (!b.empty()) {
        std::vector<Rat> r = detail::poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    // make monic
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
    return detail::from_dense(a);
}

// exact division of polynomials (min exponents cleared by caller being sane;
// works for Laurent inputs by shifting).
inline LaurentPoly poly_divexact(const LaurentPoly& pa, const LaurentPoly& pb) {
    if (pa.is_zero()) return LaurentPoly();
    long sa = pa.min_exp(), sb = pb.min_exp();
    std::vector<Rat> q =
        detail::poly_quot(detail::dense(pa.shifted(-sa)), detail::dense(pb.shifted(-sb)));
    return detail::from_dense(q).shifted(sa - sb);
}

// ---- RationalFn ----

class RationalFn {
public:
    RationalFn() : num_(), den_(LaurentPoly::one()) {}
    RationalFn(const LaurentPoly& n) : num_(n), den_(LaurentPoly::one()) {}
    RationalFn(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) {
        normalize();
    }
    explicit RationalFn(const Rat& r) : num_(LaurentPoly(r)), den_(LaurentPoly::one()) {}

    static RationalFn q_power(long e) {
        return RationalFn(LaurentPoly::term(Rat(1), e));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == LaurentPoly::one(); }

    RationalFn operator-() const {
        RationalFn r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    RationalFn operator+(const RationalFn& o) const {
        return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFn operator-(const RationalFn& o) const {
        return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalFn operator*(const RationalFn& o) const {
        return RationalFn(num_ * o.num_, den_ * o.den_);
    }
    RationalFn operator/(const RationalFn& o) const {
        if (o.is_zero()) throw std::domain_error("RationalFn: division by zero");
        return RationalFn(num_ * o.den_, den_ * o.num_);
    }
    RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
    RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
    RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
    RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }

    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }
    bool operator<(const RationalFn& o) const {
        if (num_ != o.num_) return num_ < o.num_;
        return den_ < o.den_;
    }

    RationalFn inverse() const {
        if (is_zero()) throw std::domain_error("RationalFn: inverse of zero");
        return RationalFn(den_, num_);
    }

    // q -> q^-1 (alternate: q -> -q^-1)
    RationalFn subst_qinv(bool alternate) const {
        return RationalFn(num_.subst_qinv(alternate), den_.subst_qinv(alternate));
    }

    std::string str() const;

private:
    LaurentPoly num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        long sn = num_.min_exp(), sd = den_.min_exp();
        LaurentPoly n0 = num_.shifted(-sn), d0 = den_.shifted(-sd);
        LaurentPoly g = poly_gcd(n0, d0);
        if (g != LaurentPoly::one()) {
            n0 = poly_divexact(n0, g);
            d0 = poly_divexact(d0, g);
        }
        Rat c = d0.rat_content();
        den_ = d0 * Rat(Rat(1) / c);
        num_ = n0.shifted(sn - sd) * Rat(Rat(1) / c);
    }
};

// ---- printing ----

inline std::string rat_str(const Rat& r) {
    return r.get_str();
}

inline std::string LaurentPoly::str() const {
    if (c_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [e, v] : c_) {
        Rat a = v;
        if (first) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
        } else {
            s += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string coef = rat_str(a);
        if (e == 0) {
            s += coef;
        } else {
            std::string qpart = (e == 1) ? "q" : "q^" + std::to_string(e);
            if (coef == "1")
                s += qpart;
            else
                s += coef + "*" + qpart;
        }
    }
    return s;
}

inline std::string RationalFn::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace qcover
