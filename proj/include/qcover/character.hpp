#pragma once

// Characters of integrable highest weight modules from the alternating Weyl
// sum, and the graded dimension of the lower half algebra by inverting the
// same denominator.  Finite type only.
//
// Multiplicities are exact integers and do not depend on the central sign;
// per-sign module dimensions are compared against them by the caller.  The
// quotient of the two alternating sums is computed as a formal series in the
// e^{-i'} monoid by a descending recursion over weights; afterwards the
// quotient is multiplied back and any discrepancy aborts, so a division
// remainder can never leak into reported multiplicities.

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcover/datum.hpp"

namespace qcover {

inline XWeight xw_apply(const Mat<long>& w, const XWeight& x) {
    XWeight r(x.size(), 0);
    for (size_t k = 0; k < x.size(); ++k)
        for (size_t l = 0; l < x.size(); ++l) r[k] += w[k][l] * x[l];
    return r;
}

// expansion of x in the images i'; integral coordinates or nothing
inline std::optional<Nu> x_in_iprime(const RootDatum& rd, const XWeight& x) {
    size_t n = rd.embedX.size(), m = rd.rankY;
    Mat<Rat> a(m, std::vector<Rat>(n));
    std::vector<Rat> b(m);
    for (size_t k = 0; k < m; ++k) {
        for (size_t i = 0; i < n; ++i) a[k][i] = Rat(rd.embedX[i][k]);
        b[k] = Rat(x[k]);
    }
    auto sol = mat_solve(a, b);
    if (!sol) return std::nullopt;
    Nu nu(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if ((*sol)[i].get_den() != 1) return std::nullopt;
        nu[i] = (*sol)[i].get_num().get_si();
    }
    return nu;
}

// Sum_w (-1)^{l(w)} e^{w(anchor+rho)-rho} keyed as anchor minus nu'.
// Every orbit point sits below the anchor, so the keys stay in N[I].
inline std::map<Nu, long> weyl_alternating(const SuperCartanDatum& d, const RootDatum& rd,
                                           const WeylGroupData& W, const XWeight& anchor) {
    XWeight rho = weyl_rho(d, rd);
    XWeight top = xw_add(anchor, rho);
    std::map<Nu, long> out;
    for (size_t k = 0; k < W.elements.size(); ++k) {
        XWeight drop = xw_sub(top, xw_apply(W.elements[k], top));
        auto nu = x_in_iprime(rd, drop);
        if (!nu) throw std::logic_error("weyl_alternating: orbit point not below the anchor");
        for (long c : *nu)
            if (c < 0) throw std::logic_error("weyl_alternating: orbit point not below the anchor");
        out[*nu] += (W.lengths[k] % 2) ? -1 : 1;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

struct CharData {
    XWeight lambda;
    std::map<Nu, long> mult;  // multiplicity of the weight lambda - nu'
    long dim = 0;

    XWeight weight_of(const RootDatum& rd, const Nu& nu) const {
        return xw_sub(lambda, nu_to_x(rd, nu));
    }
    std::map<XWeight, long> by_weight(const RootDatum& rd) const {
        std::map<XWeight, long> m;
        for (auto& [nu, c] : mult) m[weight_of(rd, nu)] += c;
        return m;
    }
};

namespace detail {

// series quotient num/den on the nu lattice; den(0) must be +-1.  The
// recursion runs over heights <= hcap.  With complete set, the quotient is
// multiplied back and compared against num as whole finite maps, which proves
// the division terminated inside the cap with no remainder anywhere; without
// it the caller accepts a plain truncation of an infinite series.
inline std::map<Nu, long> series_divide(size_t n, const std::map<Nu, long>& num,
                                        const std::map<Nu, long>& den, long hcap, bool complete) {
    auto at = [](const std::map<Nu, long>& m, const Nu& k) {
        auto it = m.find(k);
        return it == m.end() ? 0L : it->second;
    };
    long unit = at(den, Nu(n, 0));
    if (unit != 1 && unit != -1) throw std::logic_error("series_divide: denominator unit term");
    std::map<Nu, long> out;
    for (long h = 0; h <= hcap; ++h)
        for (auto& nu : enumerate_nu(n, h)) {
            long acc = at(num, nu);
            for (auto& [g, c] : den) {
                if (height(g) == 0) continue;
                auto rest = sub_nu(nu, g);
                if (rest) acc -= c * at(out, *rest);
            }
            if (acc % unit != 0) throw std::logic_error("series_divide: non integral quotient");
            long v = acc / unit;
            if (v) out[nu] = v;
        }
    if (complete) {
        std::map<Nu, long> conv;
        for (auto& [a, ca] : out)
            for (auto& [b, cb] : den) conv[add_nu(a, b)] += ca * cb;
        for (auto it = conv.begin(); it != conv.end();)
            it = it->second == 0 ? conv.erase(it) : std::next(it);
        std::map<Nu, long> numc = num;
        for (auto it = numc.begin(); it != numc.end();)
            it = it->second == 0 ? numc.erase(it) : std::next(it);
        if (conv != numc) throw std::logic_error("series_divide: remainder");
    }
    return out;
}

}  // namespace detail

// character of the integrable highest weight module with highest weight lam
inline CharData weyl_kac_character(const SuperCartanDatum& d, const RootDatum& rd,
                                   const WeylGroupData& W, const XWeight& lam) {
    if (!dominant(rd, lam)) throw std::domain_error("weyl_kac_character: weight not dominant");
    auto num = weyl_alternating(d, rd, W, lam);
    auto den = weyl_alternating(d, rd, W, XWeight(rd.rankY, 0));
    long hcap = 0;
    for (auto& [nu, c] : num) hcap = std::max(hcap, height(nu));
    for (auto& [nu, c] : den) hcap = std::max(hcap, height(nu));
    CharData ch;
    ch.lambda = lam;
    ch.mult = detail::series_divide(d.n(), num, den, 2 * hcap, true);
    for (auto& [nu, c] : ch.mult) {
        if (c < 0) throw std::logic_error("weyl_kac_character: negative multiplicity");
        ch.dim += c;
    }
    return ch;
}

// graded dimension of the lower half, heights <= cap, as 1/denominator
inline std::map<Nu, long> chU_minus(const SuperCartanDatum& d, const RootDatum& rd,
                                    const WeylGroupData& W, long cap) {
    std::map<Nu, long> one;
    one[Nu(d.n(), 0)] = 1;
    auto den = weyl_alternating(d, rd, W, XWeight(rd.rankY, 0));
    return detail::series_divide(d.n(), one, den, cap, false);
}

// the pairings <i,lam> for odd i are even and nonnegative
inline bool odd_pairings_even(const SuperCartanDatum& d, const RootDatum& rd, const XWeight& lam) {
    for (size_t i = 0; i < d.n(); ++i) {
        if (!d.parity[i]) continue;
        long c = pair_i(rd, i, lam);
        if (c < 0 || c % 2) return false;
    }
    return true;
}

}  // namespace qcover
