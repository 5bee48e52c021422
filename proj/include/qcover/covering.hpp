#pragma once

// The covering algebra in triangular normal form.
//
// A monomial is F-word * J-class * K-exponent * E-word; the J part lives mod
// 2 since J_{2mu} = 1.  Right multiplication rewrites into this order using
// the defining relations:
//   K_mu E_i = q^{<mu,i'>} E_i K_mu,  J_mu E_i = pi^{<mu,i'>} E_i J_mu,
//   K_mu F_i = q^{-<mu,i'>} F_i K_mu, J_mu F_i = pi^{-<mu,i'>} F_i J_mu,
//   E_i F_j - pi^{p(i)p(j)} F_j E_i
//       = delta_ij (Jt_i Kt_i - Kt_{-i}) / (pi_i q_i - q_i^{-1}).
// Equality of normal forms is equality before the half-algebra relations are
// imposed; u_reduce maps both words through the radical quotient, so reduced
// normal forms compare elements of the covering group itself.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qcover/basis.hpp"
#include "qcover/datum.hpp"
#include "qcover/free_half.hpp"

namespace qcover {

using JClass = std::vector<int>;  // exponents of J mod 2, one per Y coordinate

inline JClass jclass_of(const YWeight& mu) {
    JClass j(mu.size());
    for (size_t k = 0; k < mu.size(); ++k) j[k] = static_cast<int>(((mu[k] % 2) + 2) % 2);
    return j;
}

struct UMono {
    Word fw;
    JClass jcl;
    std::vector<long> kex;
    Word ew;

    static UMono unit(size_t rank_y) {
        return UMono{{}, JClass(rank_y, 0), std::vector<long>(rank_y, 0), {}};
    }
    bool operator<(const UMono& o) const {
        return std::tie(fw, jcl, kex, ew) < std::tie(o.fw, o.jcl, o.kex, o.ew);
    }
    bool operator==(const UMono& o) const {
        return fw == o.fw && jcl == o.jcl && kex == o.kex && ew == o.ew;
    }
};

inline int umono_parity(const SuperCartanDatum& d, const UMono& m) {
    return (word_parity(d, m.fw) + word_parity(d, m.ew)) & 1;
}

// number of odd generator letters, as an integer
inline long umono_odd_count(const SuperCartanDatum& d, const UMono& m) {
    long k = 0;
    for (int l : m.fw) k += d.parity[l];
    for (int l : m.ew) k += d.parity[l];
    return k;
}

struct UElt {
    std::map<UMono, Scalar> t;

    bool is_zero() const { return t.empty(); }
    void add_term(const UMono& m, const Scalar& s) {
        if (s.is_zero()) return;
        auto it = t.find(m);
        if (it == t.end())
            t.emplace(m, s);
        else {
            it->second += s;
            if (it->second.is_zero()) t.erase(it);
        }
    }
    UElt& operator+=(const UElt& o) {
        for (auto& [m, s] : o.t) add_term(m, s);
        return *this;
    }
    UElt& operator-=(const UElt& o) {
        for (auto& [m, s] : o.t) add_term(m, -s);
        return *this;
    }
    friend UElt operator+(UElt a, const UElt& b) { return a += b; }
    friend UElt operator-(UElt a, const UElt& b) { return a -= b; }
    friend UElt operator*(const Scalar& s, const UElt& x) {
        UElt r;
        for (auto& [m, c] : x.t) r.add_term(m, s * c);
        return r;
    }
    bool operator==(const UElt& o) const { return t == o.t; }
    bool operator!=(const UElt& o) const { return !(*this == o); }

    std::string str() const {
        if (t.empty()) return "0";
        std::string s;
        for (auto& [m, c] : t) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (int l : m.fw) s += " F" + std::to_string(l);
            bool anyj = false;
            for (size_t k = 0; k < m.jcl.size(); ++k)
                if (m.jcl[k]) {
                    s += anyj ? "" : " J[";
                    s += (anyj ? "," : "") + std::to_string(k);
                    anyj = true;
                }
            if (anyj) s += "]";
            bool anyk = false;
            for (size_t k = 0; k < m.kex.size(); ++k)
                if (m.kex[k]) anyk = true;
            if (anyk) {
                s += " K[";
                for (size_t k = 0; k < m.kex.size(); ++k)
                    s += (k ? "," : "") + std::to_string(m.kex[k]);
                s += "]";
            }
            for (int l : m.ew) s += " E" + std::to_string(l);
        }
        return s;
    }
};

// ---- generator elements ----

inline UElt u_one(const Ctx& c) {
    UElt x;
    x.add_term(UMono::unit(c.rd().rankY), Scalar::one());
    return x;
}
inline UElt u_E(const Ctx& c, int i) {
    UMono m = UMono::unit(c.rd().rankY);
    m.ew = {i};
    UElt x;
    x.add_term(m, Scalar::one());
    return x;
}
inline UElt u_F(const Ctx& c, int i) {
    UMono m = UMono::unit(c.rd().rankY);
    m.fw = {i};
    UElt x;
    x.add_term(m, Scalar::one());
    return x;
}
inline UElt u_K(const Ctx& c, const YWeight& mu) {
    UMono m = UMono::unit(c.rd().rankY);
    m.kex = mu;
    UElt x;
    x.add_term(m, Scalar::one());
    return x;
}
inline UElt u_J(const Ctx& c, const YWeight& mu) {
    UMono m = UMono::unit(c.rd().rankY);
    m.jcl = jclass_of(mu);
    UElt x;
    x.add_term(m, Scalar::one());
    return x;
}
inline UElt u_Jcl(const Ctx& c, const JClass& j) {
    UMono m = UMono::unit(c.rd().rankY);
    m.jcl = j;
    UElt x;
    x.add_term(m, Scalar::one());
    return x;
}

// mu in Y for Kt_nu = prod_i K_{d_i nu_i i}
inline YWeight ytilde(const Ctx& c, const std::vector<long>& nu) {
    YWeight mu(c.rd().rankY, 0);
    for (size_t i = 0; i < nu.size(); ++i) {
        long f = c.datum().d(i) * nu[i];
        for (size_t k = 0; k < c.rd().rankY; ++k) mu[k] += f * c.rd().embedY[i][k];
    }
    return mu;
}

inline UElt u_Ktilde(const Ctx& c, const std::vector<long>& nu) { return u_K(c, ytilde(c, nu)); }
inline UElt u_Jtilde(const Ctx& c, const std::vector<long>& nu) { return u_J(c, ytilde(c, nu)); }

inline std::vector<long> unit_nu(const Ctx& c, int i, long mult = 1) {
    std::vector<long> nu(c.datum().n(), 0);
    nu[i] = mult;
    return nu;
}

inline UElt u_plus(const Ctx& c, const FreeElt& x) {
    UElt r;
    for (auto& [w, s] : x.t) {
        UMono m = UMono::unit(c.rd().rankY);
        m.ew = w;
        r.add_term(m, s);
    }
    return r;
}
inline UElt u_minus(const Ctx& c, const FreeElt& x) {
    UElt r;
    for (auto& [w, s] : x.t) {
        UMono m = UMono::unit(c.rd().rankY);
        m.fw = w;
        r.add_term(m, s);
    }
    return r;
}

inline UElt u_Edp(const Ctx& c, int i, long n) { return u_plus(c, divided_power(c.datum(), i, n)); }
inline UElt u_Fdp(const Ctx& c, int i, long n) { return u_minus(c, divided_power(c.datum(), i, n)); }

// ---- multiplication ----

namespace detail {

// <mu, nu'> summed over the letters of a word
inline long pair_mu_word(const Ctx& c, const std::vector<long>& mu, const Word& w) {
    long s = 0;
    for (int l : w) s += pair_mu_iprime(c.rd(), mu, l);
    return s;
}

inline long pair_jcl_word(const Ctx& c, const JClass& j, const Word& w) {
    YWeight mu(j.begin(), j.end());
    return pair_mu_word(c, mu, w);
}

inline UElt u_append_E(const UElt& x, int l) {
    UElt r;
    for (auto& [m, s] : x.t) {
        UMono n = m;
        n.ew.push_back(l);
        r.add_term(n, s);
    }
    return r;
}

inline UElt u_right_K(const Ctx& c, const UElt& x, const YWeight& mu) {
    UElt r;
    for (auto& [m, s] : x.t) {
        UMono n = m;
        for (size_t k = 0; k < mu.size(); ++k) n.kex[k] += mu[k];
        r.add_term(n, Scalar::q_power(-pair_mu_word(c, mu, m.ew)) * s);
    }
    return r;
}

inline UElt u_right_J(const Ctx& c, const UElt& x, const JClass& j) {
    UElt r;
    for (auto& [m, s] : x.t) {
        UMono n = m;
        for (size_t k = 0; k < j.size(); ++k) n.jcl[k] = (n.jcl[k] + j[k]) & 1;
        r.add_term(n, Scalar::pi_power(pair_jcl_word(c, j, m.ew)) * s);
    }
    return r;
}

inline UElt u_right_F(const Ctx& c, const UMono& m, const Scalar& s, int j);

inline UElt u_right_F(const Ctx& c, const UElt& x, int j) {
    UElt r;
    for (auto& [m, s] : x.t) r += u_right_F(c, m, s, j);
    return r;
}

inline UElt u_right_F(const Ctx& c, const UMono& m, const Scalar& s, int j) {
    const auto& d = c.datum();
    UElt out;
    if (m.ew.empty()) {
        Scalar f = Scalar::pi_power(pair_jcl_word(c, m.jcl, {j})) *
                   Scalar::q_power(-pair_mu_iprime(c.rd(), m.kex, j));
        UMono n = m;
        n.fw.push_back(j);
        out.add_term(n, f * s);
        return out;
    }
    int l = m.ew.back();
    UMono head = m;
    head.ew.pop_back();
    // E_l F_j = pi^{p(l)p(j)} F_j E_l + delta (Jt_l Kt_l - Kt_{-l}) / (pi_l q_l - q_l^{-1})
    Scalar sw = Scalar::pi_power(d.parity[l] * d.parity[j]) * s;
    out += u_append_E(u_right_F(c, head, sw, j), l);
    if (l == j) {
        UElt h;
        h.add_term(head, s);
        Scalar den_inv = (piqi(d, l, 1, 1) - qi_power(d, l, -1)).inverse();
        YWeight plus = ytilde(c, unit_nu(c, l)), minus = ytilde(c, unit_nu(c, l, -1));
        UElt mid = u_right_K(c, u_right_J(c, h, jclass_of(plus)), plus) - u_right_K(c, h, minus);
        out += den_inv * mid;
    }
    return out;
}

}  // namespace detail

inline UElt u_mul(const Ctx& c, const UElt& a, const UElt& b) {
    UElt out;
    for (auto& [mb, cb] : b.t) {
        UElt cur;
        for (auto& [ma, ca] : a.t) cur.add_term(ma, ca * cb);
        for (int j : mb.fw) cur = detail::u_right_F(c, cur, j);
        cur = detail::u_right_J(c, cur, mb.jcl);
        cur = detail::u_right_K(c, cur, mb.kex);
        for (int l : mb.ew) cur = detail::u_append_E(cur, l);
        out += cur;
    }
    return out;
}

inline UElt u_mul(const Ctx& c, const UElt& a, const UElt& b, const UElt& e) {
    return u_mul(c, u_mul(c, a, b), e);
}

inline UElt u_pow(const Ctx& c, const UElt& a, long n) {
    UElt r = u_one(c);
    for (long k = 0; k < n; ++k) r = u_mul(c, r, a);
    return r;
}

// reduced normal form: both words mapped through the radical quotient
inline UElt u_reduce(Ctx& c, const UElt& x) {
    UElt out;
    for (auto& [m, s] : x.t) {
        FreeElt rf = c.reduce_elt(free_word(m.fw));
        FreeElt re = c.reduce_elt(free_word(m.ew));
        for (auto& [wf, cf] : rf.t)
            for (auto& [we, ce] : re.t) {
                UMono n = m;
                n.fw = wf;
                n.ew = we;
                out.add_term(n, s * cf * ce);
            }
    }
    return out;
}

// ---- (anti)homomorphisms from generator images ----

struct HomSpec {
    std::function<UElt(int)> imE, imF;
    std::function<UElt(const YWeight&)> imK;
    std::function<UElt(const JClass&)> imJ;
    bool anti = false;
    bool super_sign = false;  // pi^{sum_{a<b} p_a p_b} on reversal
    bool bar_coeff = false;
};

inline UElt apply_hom(const Ctx& c, const HomSpec& h, const UElt& x) {
    UElt out;
    for (auto& [m, s] : x.t) {
        std::vector<UElt> imgs;
        for (int l : m.fw) imgs.push_back(h.imF(l));
        bool anyj = false;
        for (int v : m.jcl) anyj |= (v != 0);
        if (anyj) imgs.push_back(h.imJ(m.jcl));
        bool anyk = false;
        for (long v : m.kex) anyk |= (v != 0);
        if (anyk) imgs.push_back(h.imK(m.kex));
        for (int l : m.ew) imgs.push_back(h.imE(l));
        Scalar coeff = h.bar_coeff ? bar_scalar(s) : s;
        if (h.anti) {
            std::reverse(imgs.begin(), imgs.end());
            if (h.super_sign) coeff *= Scalar::pi_power(tri(umono_odd_count(c.datum(), m)));
        }
        UElt acc = u_one(c);
        for (auto& g : imgs) acc = u_mul(c, acc, g);
        out += coeff * acc;
    }
    return out;
}

inline YWeight yneg(const YWeight& mu) {
    YWeight r = mu;
    for (auto& v : r) v = -v;
    return r;
}

// omega: E_i -> pi_i Jt_i F_i, F_i -> E_i, K_mu -> K_{-mu}; order 4
inline HomSpec omega_spec(const Ctx& c) {
    HomSpec h;
    h.imE = [&c](int i) {
        return piqi(c.datum(), i, 1, 0) * u_mul(c, u_Jtilde(c, unit_nu(c, i)), u_F(c, i));
    };
    h.imF = [&c](int i) { return u_E(c, i); };
    h.imK = [&c](const YWeight& mu) { return u_K(c, yneg(mu)); };
    h.imJ = [&c](const JClass& j) { return u_Jcl(c, j); };
    return h;
}

// sigma: plain antiautomorphism, E_i -> E_i, F_i -> pi_i Jt_i F_i, K_mu -> K_{-mu}
inline HomSpec sigma_spec(const Ctx& c) {
    HomSpec h;
    h.imE = [&c](int i) { return u_E(c, i); };
    h.imF = [&c](int i) {
        return piqi(c.datum(), i, 1, 0) * u_mul(c, u_Jtilde(c, unit_nu(c, i)), u_F(c, i));
    };
    h.imK = [&c](const YWeight& mu) { return u_K(c, yneg(mu)); };
    h.imJ = [&c](const JClass& j) { return u_Jcl(c, j); };
    h.anti = true;
    return h;
}

// bar: coefficient bar, E_i -> E_i, F_i -> F_i, K_mu -> J_mu K_{-mu}
inline HomSpec bar_spec(const Ctx& c) {
    HomSpec h;
    h.imE = [&c](int i) { return u_E(c, i); };
    h.imF = [&c](int i) { return u_F(c, i); };
    h.imK = [&c](const YWeight& mu) { return u_mul(c, u_J(c, mu), u_K(c, yneg(mu))); };
    h.imJ = [&c](const JClass& j) { return u_Jcl(c, j); };
    h.bar_coeff = true;
    return h;
}

// antipode: super antiautomorphism,
// E_i -> -Jt_{-i} Kt_{-i} E_i, F_i -> -F_i Kt_i, K_mu -> K_{-mu}
inline HomSpec antipode_spec(const Ctx& c) {
    HomSpec h;
    h.imE = [&c](int i) {
        auto nu = unit_nu(c, i, -1);
        return -Scalar::one() *
               u_mul(c, u_mul(c, u_Jtilde(c, nu), u_Ktilde(c, nu)), u_E(c, i));
    };
    h.imF = [&c](int i) {
        return -Scalar::one() * u_mul(c, u_F(c, i), u_Ktilde(c, unit_nu(c, i)));
    };
    h.imK = [&c](const YWeight& mu) { return u_K(c, yneg(mu)); };
    h.imJ = [&c](const JClass& j) { return u_Jcl(c, j); };
    h.anti = true;
    h.super_sign = true;
    return h;
}

// skew antipode: E_i -> -E_i Jt_{-i} Kt_{-i}, F_i -> -Kt_i F_i
inline HomSpec skew_antipode_spec(const Ctx& c) {
    HomSpec h;
    h.imE = [&c](int i) {
        auto nu = unit_nu(c, i, -1);
        return -Scalar::one() *
               u_mul(c, u_E(c, i), u_mul(c, u_Jtilde(c, nu), u_Ktilde(c, nu)));
    };
    h.imF = [&c](int i) {
        return -Scalar::one() * u_mul(c, u_Ktilde(c, unit_nu(c, i)), u_F(c, i));
    };
    h.imK = [&c](const YWeight& mu) { return u_K(c, yneg(mu)); };
    h.imJ = [&c](const JClass& j) { return u_Jcl(c, j); };
    h.anti = true;
    h.super_sign = true;
    return h;
}

inline UElt u_omega(const Ctx& c, const UElt& x) { return apply_hom(c, omega_spec(c), x); }
inline UElt u_sigma(const Ctx& c, const UElt& x) { return apply_hom(c, sigma_spec(c), x); }
inline UElt u_bar(const Ctx& c, const UElt& x) { return apply_hom(c, bar_spec(c), x); }
inline UElt u_antipode(const Ctx& c, const UElt& x) { return apply_hom(c, antipode_spec(c), x); }
inline UElt u_skew_antipode(const Ctx& c, const UElt& x) {
    return apply_hom(c, skew_antipode_spec(c), x);
}

inline Scalar u_counit(const UElt& x) {
    Scalar acc = Scalar::zero();
    for (auto& [m, s] : x.t)
        if (m.fw.empty() && m.ew.empty()) acc += s;
    return acc;
}

// [Kt_i; a / t]: product over s = 1..t of
// ((pi_i q_i)^{a-s+1} Jt_i Kt_i - q_i^{s-a-1} Kt_{-i}) / ((pi_i q_i)^s - q_i^{-s})
inline UElt ktilde_binomial(const Ctx& c, int i, long a, long t) {
    const auto& d = c.datum();
    UElt acc = u_one(c);
    UElt jtkt = u_mul(c, u_Jtilde(c, unit_nu(c, i)), u_Ktilde(c, unit_nu(c, i)));
    UElt ktm = u_Ktilde(c, unit_nu(c, i, -1));
    for (long s = 1; s <= t; ++s) {
        UElt num = piqi(d, i, a - s + 1, a - s + 1) * jtkt - qi_power(d, i, s - a - 1) * ktm;
        Scalar den = piqi(d, i, s, s) - qi_power(d, i, -s);
        acc = den.inverse() * u_mul(c, acc, num);
    }
    return acc;
}

// ---- tensor algebra ----

struct UTensorElt {
    std::map<std::pair<UMono, UMono>, Scalar> t;

    bool is_zero() const { return t.empty(); }
    void add_term(const UMono& a, const UMono& b, const Scalar& s) {
        if (s.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = t.find(key);
        if (it == t.end())
            t.emplace(key, s);
        else {
            it->second += s;
            if (it->second.is_zero()) t.erase(it);
        }
    }
    UTensorElt& operator+=(const UTensorElt& o) {
        for (auto& [k, s] : o.t) add_term(k.first, k.second, s);
        return *this;
    }
    UTensorElt& operator-=(const UTensorElt& o) {
        for (auto& [k, s] : o.t) add_term(k.first, k.second, -s);
        return *this;
    }
    friend UTensorElt operator+(UTensorElt a, const UTensorElt& b) { return a += b; }
    friend UTensorElt operator-(UTensorElt a, const UTensorElt& b) { return a -= b; }
    friend UTensorElt operator*(const Scalar& s, const UTensorElt& x) {
        UTensorElt r;
        for (auto& [k, c] : x.t) r.add_term(k.first, k.second, s * c);
        return r;
    }
    bool operator==(const UTensorElt& o) const { return t == o.t; }
    bool operator!=(const UTensorElt& o) const { return !(*this == o); }
};

inline UTensorElt ut_of(const UElt& a, const UElt& b) {
    UTensorElt r;
    for (auto& [ma, ca] : a.t)
        for (auto& [mb, cb] : b.t) r.add_term(ma, mb, ca * cb);
    return r;
}

// (a (x) b)(c (x) d) = pi^{p(b)p(c)} ac (x) bd
inline UTensorElt ut_mul(const Ctx& c, const UTensorElt& x, const UTensorElt& y) {
    UTensorElt out;
    const auto& d = c.datum();
    for (auto& [kx, cx] : x.t)
        for (auto& [ky, cy] : y.t) {
            Scalar sgn =
                Scalar::pi_power(umono_parity(d, kx.second) * umono_parity(d, ky.first));
            UElt l, r;
            l.add_term(kx.first, Scalar::one());
            r.add_term(kx.second, Scalar::one());
            UElt lp = u_mul(c, l, [&] {
                UElt t_;
                t_.add_term(ky.first, Scalar::one());
                return t_;
            }());
            UElt rp = u_mul(c, r, [&] {
                UElt t_;
                t_.add_term(ky.second, Scalar::one());
                return t_;
            }());
            Scalar f = sgn * cx * cy;
            for (auto& [ml, cl] : lp.t)
                for (auto& [mr, cr] : rp.t) out.add_term(ml, mr, f * cl * cr);
        }
    return out;
}

inline UTensorElt ut_reduce(Ctx& c, const UTensorElt& x) {
    UTensorElt out;
    for (auto& [k, s] : x.t) {
        UElt l, r;
        l.add_term(k.first, Scalar::one());
        r.add_term(k.second, Scalar::one());
        UElt lr = u_reduce(c, l), rr = u_reduce(c, r);
        for (auto& [ml, cl] : lr.t)
            for (auto& [mr, cr] : rr.t) out.add_term(ml, mr, s * cl * cr);
    }
    return out;
}

// coproduct; the barred variant is bar (x) bar applied after bar
inline UTensorElt u_delta(const Ctx& c, const UElt& x, bool barred = false) {
    UTensorElt out;
    size_t m = c.rd().rankY;
    for (auto& [mono, s] : x.t) {
        UTensorElt acc;
        acc.add_term(UMono::unit(m), UMono::unit(m), s);
        auto mul_in = [&](const UTensorElt& g) { acc = ut_mul(c, acc, g); };
        for (int i : mono.fw) {
            UTensorElt g;
            if (!barred) {
                // F_i (x) Kt_{-i} + 1 (x) F_i
                g = ut_of(u_F(c, i), u_Ktilde(c, unit_nu(c, i, -1))) +
                    ut_of(u_one(c), u_F(c, i));
            } else {
                // F_i (x) Jt_i Kt_i + 1 (x) F_i
                g = ut_of(u_F(c, i), u_mul(c, u_Jtilde(c, unit_nu(c, i)),
                                           u_Ktilde(c, unit_nu(c, i)))) +
                    ut_of(u_one(c), u_F(c, i));
            }
            mul_in(g);
        }
        {
            bool anyj = false;
            for (int v : mono.jcl) anyj |= (v != 0);
            if (anyj) mul_in(ut_of(u_Jcl(c, mono.jcl), u_Jcl(c, mono.jcl)));
            bool anyk = false;
            for (long v : mono.kex) anyk |= (v != 0);
            if (anyk) mul_in(ut_of(u_K(c, mono.kex), u_K(c, mono.kex)));
        }
        for (int i : mono.ew) {
            UTensorElt g;
            if (!barred) {
                // E_i (x) 1 + Jt_i Kt_i (x) E_i
                g = ut_of(u_E(c, i), u_one(c)) +
                    ut_of(u_mul(c, u_Jtilde(c, unit_nu(c, i)), u_Ktilde(c, unit_nu(c, i))),
                          u_E(c, i));
            } else {
                // E_i (x) 1 + Kt_{-i} (x) E_i
                g = ut_of(u_E(c, i), u_one(c)) +
                    ut_of(u_Ktilde(c, unit_nu(c, i, -1)), u_E(c, i));
            }
            mul_in(g);
        }
        out += acc;
    }
    return out;
}

}  // namespace qcover
