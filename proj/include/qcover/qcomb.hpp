#pragma once

// (q,pi)-integers, factorials and binomials.
//
// For a generator with d = (i.i)/2 and parity par, set q_i = q^d and
// pi_i = pi^par.  Everything here is a Laurent polynomial in q and pi even
// though it is computed in the fraction field; qbinom checks that and
// treats a failure as an internal error.

#include <stdexcept>

#include "qcover/scalar.hpp"

namespace qcover {

// n(n-1)/2, valid for negative n as well (only ever used in exponents)
inline long tri(long n) { return n * (n - 1) / 2; }

// [n] = ((pi_i q_i)^n - q_i^-n) / (pi_i q_i - q_i^-1)
inline Scalar qint_dp(long n, long d, int par) {
    if (n == 0) return Scalar::zero();
    Scalar num = Scalar::piq(par * n, d * n) - Scalar::q_power(-d * n);
    Scalar den = Scalar::piq(par, d) - Scalar::q_power(-d);
    Scalar r = num / den;
    if (!is_laurent(r)) throw std::logic_error("qint: not Laurent");
    return r;
}

// [n]! = [1][2]...[n]
inline Scalar qfact_dp(long n, long d, int par) {
    if (n < 0) throw std::domain_error("qfact: negative n");
    Scalar r = Scalar::one();
    for (long s = 1; s <= n; ++s) r *= qint_dp(s, d, par);
    return r;
}

// [a; t] = prod_{s=0}^{t-1} ((pi_i q_i)^{a-s} - q_i^{s-a})
//        / prod_{s=1}^{t}   ((pi_i q_i)^s - q_i^{-s})
inline Scalar qbinom_dp(long a, long t, long d, int par) {
    if (t < 0) throw std::domain_error("qbinom: negative t");
    Scalar num = Scalar::one(), den = Scalar::one();
    for (long s = 0; s < t; ++s)
        num *= Scalar::piq(par * (a - s), d * (a - s)) - Scalar::q_power(d * (s - a));
    for (long s = 1; s <= t; ++s)
        den *= Scalar::piq(par * s, d * s) - Scalar::q_power(-d * s);
    if (num.is_zero()) return Scalar::zero();
    Scalar r = num / den;
    if (!is_laurent(r)) throw std::logic_error("qbinom: not Laurent");
    return r;
}

}  // namespace qcover
