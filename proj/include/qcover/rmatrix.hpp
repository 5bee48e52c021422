#pragma once

// Height truncations of the quasi R-matrix and of the Casimir operator.
//
// The R-matrix truncation is assembled weight by weight from the kept-word
// basis and its dual under the bilinear form; its defining property is the
// intertwiner identity between the two coproducts, which holds up to a
// residual concentrated at the top height.  Both the defect and the residual
// are computed here so tests can require exact equality rather than a cutoff
// heuristic.
//
// The Casimir truncation folds the antipode into the first leg.  It commutes
// with the generators up to a grouplike twist; combined with the weight
// function G below, the corrected operator is a module endomorphism that
// acts as a single scalar on any quotient of a Verma module.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcover/modules.hpp"

namespace qcover {

// ---- graded front coefficients ----

inline long nu_odd_count(const SuperCartanDatum& d, const Nu& nu) {
    long k = 0;
    for (size_t i = 0; i < nu.size(); ++i) k += nu[i] * d.parity[i];
    return k;
}

inline long nu_q_degree(const SuperCartanDatum& d, const Nu& nu) {
    long e = 0;
    for (size_t i = 0; i < nu.size(); ++i) e += nu[i] * d.d(i);
    return e;
}

// (-1)^{ht nu} pi^{e(nu)} pi_nu q_nu with e(nu) counting unordered odd pairs
// among the letters of nu; the pi part collapses to tri(k+1) for k odd letters
inline Scalar theta_coeff(const SuperCartanDatum& d, const Nu& nu) {
    long k = nu_odd_count(d, nu);
    Scalar s = Scalar::piq(tri(k + 1), nu_q_degree(d, nu));
    if (height(nu) % 2) s = -s;
    return s;
}

// the Casimir folds the antipode into the R-matrix truncation, so its front
// coefficient keeps the odd-pair count
inline Scalar casimir_coeff(const SuperCartanDatum& d, const Nu& nu) {
    return theta_coeff(d, nu);
}

// ---- quasi R-matrix truncation ----

struct ThetaTrunc {
    long cap = 0;
    std::map<Nu, UTensorElt> comp;  // one component per weight, heights <= cap

    UTensorElt total() const {
        UTensorElt t;
        for (auto& [nu, x] : comp) t += x;
        return t;
    }
};

inline ThetaTrunc compute_theta(Ctx& c, long cap) {
    ThetaTrunc th;
    th.cap = cap;
    size_t n = c.datum().n();
    for (long h = 0; h <= cap; ++h)
        for (auto& nu : enumerate_nu(n, h)) {
            const BasisData& b = c.basis(nu);
            UTensorElt acc;
            for (size_t k = 0; k < b.dim(); ++k)
                acc += ut_of(u_minus(c, free_word(b.basis[k])), u_plus(c, c.dual_elt(nu, k)));
            th.comp.emplace(nu, theta_coeff(c.datum(), nu) * acc);
        }
    return th;
}

inline UTensorElt ut_bar(const Ctx& c, const UTensorElt& x) {
    UTensorElt out;
    for (auto& [k, s] : x.t) {
        UElt l, r;
        l.add_term(k.first, s);
        r.add_term(k.second, Scalar::one());
        out += ut_of(u_bar(c, l), u_bar(c, r));
    }
    return out;
}

// Delta(g) T - T Deltabar(g), reduced; zero through the top height when T is
// a valid R-matrix truncation
inline UTensorElt intertwiner_defect(Ctx& c, const UTensorElt& total, const UElt& g) {
    UTensorElt d = ut_mul(c, u_delta(c, g), total) - ut_mul(c, total, u_delta(c, g, true));
    return ut_reduce(c, d);
}

// residual of the truncated intertwiner identity for one raising generator:
// the top components paired with the second-leg terms of the two coproducts
inline UTensorElt theta_boundary_E(Ctx& c, const ThetaTrunc& th, int i) {
    UTensorElt jk = ut_of(
        u_mul(c, u_Jtilde(c, unit_nu(c, i)), u_Ktilde(c, unit_nu(c, i))), u_E(c, i));
    UTensorElt km = ut_of(u_Ktilde(c, unit_nu(c, i, -1)), u_E(c, i));
    UTensorElt r;
    for (auto& [nu, x] : th.comp)
        if (height(nu) == th.cap) r += ut_mul(c, jk, x) - ut_mul(c, x, km);
    return ut_reduce(c, r);
}

inline UTensorElt theta_boundary_F(Ctx& c, const ThetaTrunc& th, int i) {
    UTensorElt fk = ut_of(u_F(c, i), u_Ktilde(c, unit_nu(c, i, -1)));
    UTensorElt fjk = ut_of(
        u_F(c, i), u_mul(c, u_Jtilde(c, unit_nu(c, i)), u_Ktilde(c, unit_nu(c, i))));
    UTensorElt r;
    for (auto& [nu, x] : th.comp)
        if (height(nu) == th.cap) r += ut_mul(c, fk, x) - ut_mul(c, x, fjk);
    return ut_reduce(c, r);
}

// ---- Casimir truncation ----

inline UElt casimir_element(Ctx& c, long cap) {
    UElt om;
    size_t n = c.datum().n();
    for (long h = 0; h <= cap; ++h)
        for (auto& nu : enumerate_nu(n, h)) {
            const BasisData& b = c.basis(nu);
            UElt acc;
            for (size_t k = 0; k < b.dim(); ++k)
                acc += u_mul(c, u_antipode(c, u_minus(c, free_word(b.basis[k]))),
                             u_plus(c, c.dual_elt(nu, k)));
            om += casimir_coeff(c.datum(), nu) * acc;
        }
    return om;
}

// ---- weight function for the Casimir correction ----

// walk from the anchor along the listed steps (generator, direction),
// accumulating the defining increments; G(anchor) = 0
inline long casimir_g_walk(const Ctx& c, const XWeight& anchor,
                           const std::vector<std::pair<int, int>>& steps) {
    const auto& rd = c.rd();
    const auto& d = c.datum();
    XWeight w = anchor;
    long g = 0;
    for (auto& [i, dir] : steps) {
        XWeight ip = nu_to_x(rd, unit_nu(c, i));
        if (dir > 0) {
            w = xw_add(w, ip);
            g += d.d(i) * pair_i(rd, i, w);
        } else {
            g -= d.d(i) * pair_i(rd, i, w);
            w = xw_sub(w, ip);
        }
    }
    return g;
}

inline std::vector<std::pair<int, int>> casimir_g_steps(const Ctx& c, const XWeight& anchor,
                                                        const XWeight& mu) {
    auto coords = x_in_iprime(c.rd(), xw_sub(mu, anchor));
    if (!coords) throw std::domain_error("casimir_g: weights in different cosets");
    std::vector<std::pair<int, int>> steps;
    for (size_t i = 0; i < coords->size(); ++i)
        for (long r = 0; r < std::abs((*coords)[i]); ++r)
            steps.emplace_back((int)i, (*coords)[i] > 0 ? 1 : -1);
    return steps;
}

inline long casimir_g(const Ctx& c, const XWeight& anchor, const XWeight& mu) {
    return casimir_g_walk(c, anchor, casimir_g_steps(c, anchor, mu));
}

// diagonal correction (pi q^2)^{G(weight)} on a weight module, anchored at
// G(anchor) = 0
inline Mat<RationalFn> xi_matrix(const Ctx& c, const WeightModule& M, const XWeight& anchor) {
    size_t n = M.dim();
    Mat<RationalFn> r(n, Vec(n));
    for (size_t k = 0; k < n; ++k) {
        long g = casimir_g(c, anchor, M.wt[k]);
        r[k][k] = specialize(Scalar::piq(g, 2 * g), M.sign);
    }
    return r;
}

}  // namespace qcover
