#pragma once

// Interpolating families between divided powers of two distinct generators:
// four corner variants, the commutation ladders they satisfy against single
// letters and divided powers, the level-drop recursion at the top exponent,
// and the vanishing threshold in the quotient algebra. The ladder residuals
// hold in the triangular normal form before any quotient is imposed; only
// the vanishing needs the radical.

#include <qcover/covering.hpp>

namespace qcover {

// parity weight attached to the coefficient-bearing exponent r
inline long hs_parity(const SuperCartanDatum& d, int i, int j, long n, long r) {
    return r * n * d.parity[i] * d.parity[j] + tri(r) * d.parity[i];
}

// which corner of the family: raising or lowering letters, coefficient tied
// to the outer exponent on the left or on the right
enum class HsKind { e, e_prime, f, f_prime };

inline UElt higher_serre(const Ctx& c, HsKind k, int i, int j, long n, long m) {
    if (i == j) throw std::domain_error("higher_serre: i == j");
    if (n < 0 || m < 0) return UElt{};
    const SuperCartanDatum& d = c.datum();
    long A = n * d.aij(i, j) + m - 1;
    bool raising = (k == HsKind::e || k == HsKind::e_prime);
    UElt out;
    for (long r = 0; r <= m; ++r) {
        long s = m - r;
        long pe = hs_parity(d, i, j, n, r);
        Scalar coef = raising ? piqi(d, i, pe - r * A, -r * A) : piqi(d, i, pe, r * A);
        if (r % 2) coef = -coef;
        UElt word;
        switch (k) {
            case HsKind::e:
                word = u_mul(c, u_Edp(c, i, r), u_Edp(c, j, n), u_Edp(c, i, s));
                break;
            case HsKind::e_prime:
                word = u_mul(c, u_Edp(c, i, s), u_Edp(c, j, n), u_Edp(c, i, r));
                break;
            case HsKind::f:
                word = u_mul(c, u_Fdp(c, i, s), u_Fdp(c, j, n), u_Fdp(c, i, r));
                break;
            case HsKind::f_prime:
                word = u_mul(c, u_Fdp(c, i, r), u_Fdp(c, j, n), u_Fdp(c, i, s));
                break;
        }
        out += coef * word;
    }
    return out;
}

// largest m whose family member survives in the quotient
inline long hs_top(const SuperCartanDatum& d, int i, int j, long n) {
    return -n * d.aij(i, j);
}

// ---- ladder residuals, each identically zero in the normal form ----

// single raising letter climbs the family one step
inline UElt hs_ladder_raise(Ctx& c, int i, int j, long n, long m) {
    const SuperCartanDatum& d = c.datum();
    UElt e = higher_serre(c, HsKind::e, i, j, n, m);
    Scalar pref = piqi(d, i, m + n * d.parity[j], -n * d.aij(i, j) - 2 * m);
    UElt lhs = (-pref) * u_mul(c, u_E(c, i), e) + u_mul(c, e, u_E(c, i));
    return lhs - d.qint(m + 1, i) * higher_serre(c, HsKind::e, i, j, n, m + 1);
}

// single lowering letter descends one step, at the cost of an inverse K
inline UElt hs_ladder_lower(Ctx& c, int i, int j, long n, long m) {
    const SuperCartanDatum& d = c.datum();
    UElt e = higher_serre(c, HsKind::e, i, j, n, m);
    UElt lhs = piqi(d, i, m + n * d.parity[j], 0) * u_mul(c, e, u_F(c, i)) -
               u_mul(c, u_F(c, i), e);
    Scalar cf = d.qint(-n * d.aij(i, j) - m + 1, i) * piqi(d, i, n * d.parity[j] + 1, 0);
    UElt rhs = cf * u_mul(c, u_Ktilde(c, unit_nu(c, i, -1)),
                          higher_serre(c, HsKind::e, i, j, n, m - 1));
    return lhs - rhs;
}

// divided raising power distributes over the family
inline UElt hs_dp_raise(Ctx& c, int i, int j, long n, long m, long N) {
    const SuperCartanDatum& d = c.datum();
    UElt lhs = u_mul(c, u_Edp(c, i, N), higher_serre(c, HsKind::e, i, j, n, m));
    UElt rhs;
    for (long k = 0; k <= N; ++k) {
        Scalar cf = piqi(d, i, N * (n * d.parity[j] + m) + tri(k),
                         N * (n * d.aij(i, j) + 2 * m) + (N - 1) * k) *
                    d.qbinom(m + k, k, i);
        if (k % 2) cf = -cf;
        rhs += cf * u_mul(c, higher_serre(c, HsKind::e, i, j, n, m + k), u_Edp(c, i, N - k));
    }
    return lhs - rhs;
}

// divided lowering power, with inverse K powers tracking the descent
inline UElt hs_dp_lower(Ctx& c, int i, int j, long n, long m, long M) {
    const SuperCartanDatum& d = c.datum();
    UElt lhs = u_mul(c, u_Fdp(c, i, M), higher_serre(c, HsKind::e, i, j, n, m));
    UElt rhs;
    for (long h = 0; h <= M; ++h) {
        Scalar cf = piqi(d, i, M * (m + n * d.parity[j]) + (M - m) * h, -(M - 1) * h) *
                    d.qbinom(-n * d.aij(i, j) - m + h, h, i);
        if (h % 2) cf = -cf;
        rhs += cf * u_mul(c, u_Ktilde(c, unit_nu(c, i, -h)),
                          u_mul(c, higher_serre(c, HsKind::e, i, j, n, m - h),
                                u_Fdp(c, i, M - h)));
    }
    return lhs - rhs;
}

// at m one past the top, lowering by the middle letter drops the level, the
// bar image entering with the opposite grouplike; the surviving coefficients
// are (pi_j q_j)^{n-1} and q_j^{1-n}, their parity parts pinned by the odd
// middle letter at even n
inline UElt hs_level_drop(Ctx& c, int i, int j, long n) {
    const SuperCartanDatum& d = c.datum();
    long m = 1 - n * d.aij(i, j);
    UElt e = higher_serre(c, HsKind::e, i, j, n, m);
    UElt lhs = u_mul(c, u_F(c, j), e) -
               piqi(d, j, m * d.parity[i] + n, 0) * u_mul(c, e, u_F(c, j));
    UElt lower = higher_serre(c, HsKind::e, i, j, n - 1, m);
    Scalar inv = (piqi(d, j, 1, 1) - piqi(d, j, 0, -1)).inverse();
    UElt rhs = piqi(d, j, n - 1, n - 1) * inv *
                   u_mul(c, u_Ktilde(c, unit_nu(c, j, -1)), lower) -
               piqi(d, j, 0, 1 - n) * inv *
                   u_mul(c, u_Jtilde(c, unit_nu(c, j)), u_Ktilde(c, unit_nu(c, j)),
                         u_bar(c, lower));
    return lhs - rhs;
}

}  // namespace qcover
