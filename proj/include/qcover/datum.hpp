#pragma once

// Super Cartan data and root data.
//
// A datum is an ordered generator list with parities and a symmetric integer
// dot matrix.  Conditions checked by validate_datum:
//   (a) d_i = (i.i)/2 a positive integer
//   (b) <i,j'> = 2(i.j)/(i.i) a nonpositive integer for i != j
//   (c) super iff some generator is odd
//   (d) <i,j'> even whenever i is odd
//   (e) bar-consistency: d_i = p(i) mod 2  (reported, not a validity failure)
//   (f) all i.j even (follows from (d)+(e); reported)
// Finite type is detected by positive definiteness of the dot matrix.
//
// The root datum realizes (Y, X, <,>) with embeddings of the generators;
// the default construction takes Y = Z[I] + Z^c (c = corank of the Cartan
// matrix), X its dual under the canonical pairing, and i' the i-th Cartan
// column extended by unit rows in the extra coordinates.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcover/linalg.hpp"
#include "qcover/qcomb.hpp"
#include "qcover/scalar.hpp"

namespace qcover {

using Nu = std::vector<long>;       // element of N[I]
using XWeight = std::vector<long>;  // coordinates in X
using YWeight = std::vector<long>;  // coordinates in Y

// ---- datum ----

struct SuperCartanDatum {
    std::string name;
    std::vector<int> parity;            // p(i) in {0,1}
    std::vector<std::vector<long>> dot; // symmetric, i.j

    size_t n() const { return parity.size(); }
    long d(size_t i) const { return dot[i][i] / 2; }
    bool odd(size_t i) const { return parity[i] != 0; }
    // <i, j'> = 2(i.j)/(i.i)
    long aij(size_t i, size_t j) const { return dot[i][j] / d(i); }

    Scalar qint(long m, size_t i) const { return qint_dp(m, d(i), parity[i]); }
    Scalar qfact(long m, size_t i) const { return qfact_dp(m, d(i), parity[i]); }
    Scalar qbinom(long a, long t, size_t i) const { return qbinom_dp(a, t, d(i), parity[i]); }
};

struct DatumReport {
    bool valid = true;
    std::vector<std::string> failures;  // named condition + position
    bool is_super = false;
    bool consistent = true;  // condition (e)
    bool dot_even = true;    // condition (f)
    bool finite_type = false;

    std::string failure_text() const {
        std::string s;
        for (auto& f : failures) s += (s.empty() ? "" : "; ") + f;
        return s;
    }
};

inline bool positive_definite(const std::vector<std::vector<long>>& m) {
    for (size_t k = 1; k <= m.size(); ++k) {
        Mat<Rat> sub(k, std::vector<Rat>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub[i][j] = Rat(m[i][j]);
        if (mat_det(sub) <= 0) return false;
    }
    return true;
}

inline DatumReport validate_datum(const SuperCartanDatum& d) {
    DatumReport rep;
    size_t n = d.n();
    auto fail = [&](const std::string& msg) {
        rep.valid = false;
        rep.failures.push_back(msg);
    };
    if (d.dot.size() != n) {
        fail("dot matrix size does not match generator count");
        return rep;
    }
    for (size_t i = 0; i < n; ++i)
        if (d.dot[i].size() != n) {
            fail("dot matrix not square");
            return rep;
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (d.dot[i][j] != d.dot[j][i])
                fail("dot matrix not symmetric at (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
    for (size_t i = 0; i < n; ++i) {
        if (d.dot[i][i] <= 0 || d.dot[i][i] % 2 != 0)
            fail("condition (a) fails at i=" + std::to_string(i) +
                 ": i.i must be a positive even integer");
        if (d.parity[i] != 0 && d.parity[i] != 1)
            fail("parity must be 0 or 1 at i=" + std::to_string(i));
    }
    if (!rep.valid) return rep;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (d.dot[i][j] > 0 || d.dot[i][j] % d.d(i) != 0) {
                fail("condition (b) fails at (" + std::to_string(i) + "," + std::to_string(j) +
                     "): 2(i.j)/(i.i) must be a nonpositive integer");
                continue;
            }
            if (d.odd(i) && d.aij(i, j) % 2 != 0)
                fail("condition (d) fails at (" + std::to_string(i) + "," + std::to_string(j) +
                     "): <i,j'> must be even for odd i");
        }
    for (size_t i = 0; i < n; ++i) {
        if (d.odd(i)) rep.is_super = true;
        if ((d.d(i) - d.parity[i]) % 2 != 0) rep.consistent = false;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (d.dot[i][j] % 2 != 0) rep.dot_even = false;
    if (rep.valid && rep.consistent && !rep.dot_even)
        throw std::logic_error("consistent datum with odd i.j: cannot happen");
    if (rep.valid) rep.finite_type = positive_definite(d.dot);
    return rep;
}

// ---- weights in N[I] ----

inline long height(const Nu& nu) {
    long h = 0;
    for (long v : nu) h += v;
    return h;
}

inline int parity_nu(const SuperCartanDatum& d, const Nu& nu) {
    long p = 0;
    for (size_t i = 0; i < nu.size(); ++i) p += nu[i] * d.parity[i];
    return static_cast<int>(p & 1);
}

inline long dot_nu(const SuperCartanDatum& d, const Nu& a, const Nu& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) s += a[i] * b[j] * d.dot[i][j];
    return s;
}

inline Nu add_nu(const Nu& a, const Nu& b) {
    Nu r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline std::optional<Nu> sub_nu(const Nu& a, const Nu& b) {
    Nu r = a;
    for (size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
        if (r[i] < 0) return std::nullopt;
    }
    return r;
}

// all nu of the given exact height, lexicographic
inline std::vector<Nu> enumerate_nu(size_t n, long ht) {
    std::vector<Nu> out;
    Nu cur(n, 0);
    auto rec = [&](auto&& self, size_t pos, long left) -> void {
        if (pos + 1 == n) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (n == 0) return out;
    rec(rec, 0, ht);
    return out;
}

struct SignStats {
    long c, e, f;
    Scalar pi_nu, q_nu;
};

// c(nu) = nu.nu/2 - sum_i nu_i d_i; e(nu) = sum over unordered letter pairs
// of p(i_a)p(i_b); f(nu) = sum_i nu_i (i.i)
inline SignStats sign_stats(const SuperCartanDatum& d, const Nu& nu) {
    SignStats s{};
    s.c = dot_nu(d, nu, nu) / 2;
    long pq = 0, qq = 0;
    for (size_t i = 0; i < nu.size(); ++i) {
        s.c -= nu[i] * d.d(i);
        s.f += nu[i] * d.dot[i][i];
        s.e += tri(nu[i]) * d.parity[i];
        for (size_t j = i + 1; j < nu.size(); ++j)
            s.e += nu[i] * nu[j] * d.parity[i] * d.parity[j];
        pq += nu[i] * d.parity[i];
        qq += nu[i] * d.d(i);
    }
    s.pi_nu = Scalar::pi_power(pq);
    s.q_nu = Scalar::q_power(qq);
    return s;
}

// ---- root datum ----

struct RootDatum {
    size_t rankY = 0;
    Mat<long> pairing;  // P[k][l] = <e_k, x_l> on Y x X
    Mat<long> embedY;   // row i: generator i in Y
    Mat<long> embedX;   // row i: i' in X
};

inline long pair_yx(const RootDatum& rd, const YWeight& y, const XWeight& x) {
    long s = 0;
    for (size_t k = 0; k < rd.rankY; ++k) {
        if (y[k] == 0) continue;
        for (size_t l = 0; l < rd.rankY; ++l) s += y[k] * rd.pairing[k][l] * x[l];
    }
    return s;
}

// <i, lambda>
inline long pair_i(const RootDatum& rd, size_t i, const XWeight& lam) {
    return pair_yx(rd, rd.embedY[i], lam);
}

// <mu, i'>
inline long pair_mu_iprime(const RootDatum& rd, const YWeight& mu, size_t i) {
    return pair_yx(rd, mu, rd.embedX[i]);
}

inline XWeight nu_to_x(const RootDatum& rd, const Nu& nu) {
    XWeight x(rd.rankY, 0);
    for (size_t i = 0; i < nu.size(); ++i)
        for (size_t k = 0; k < rd.rankY; ++k) x[k] += nu[i] * rd.embedX[i][k];
    return x;
}

inline XWeight xw_sub(const XWeight& a, const XWeight& b) {
    XWeight r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}
inline XWeight xw_add(const XWeight& a, const XWeight& b) {
    XWeight r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

// s_i(lambda) = lambda - <i,lambda> i'
inline XWeight reflect_x(const RootDatum& rd, size_t i, const XWeight& lam) {
    long c = pair_i(rd, i, lam);
    XWeight r = lam;
    for (size_t k = 0; k < rd.rankY; ++k) r[k] -= c * rd.embedX[i][k];
    return r;
}

inline bool dominant(const RootDatum& rd, const XWeight& lam) {
    for (size_t i = 0; i < rd.embedY.size(); ++i)
        if (pair_i(rd, i, lam) < 0) return false;
    return true;
}

inline RootDatum default_root_datum(const SuperCartanDatum& d) {
    size_t n = d.n();
    Mat<Rat> cartan(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) cartan[i][j] = Rat(d.aij(i, j));
    // dependent columns, processed left to right
    std::vector<size_t> dep;
    Mat<Rat> cols;
    for (size_t j = 0; j < n; ++j) {
        Mat<Rat> trial = cols;
        std::vector<Rat> col(n);
        for (size_t i = 0; i < n; ++i) col[i] = cartan[i][j];
        trial.push_back(col);
        if (mat_rank(trial) > cols.size())
            cols = std::move(trial);
        else
            dep.push_back(j);
    }
    size_t c = dep.size(), m = n + c;
    RootDatum rd;
    rd.rankY = m;
    rd.pairing = mat_identity<long>(m);
    rd.embedY.assign(n, std::vector<long>(m, 0));
    rd.embedX.assign(n, std::vector<long>(m, 0));
    for (size_t i = 0; i < n; ++i) rd.embedY[i][i] = 1;
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) rd.embedX[j][k] = d.aij(k, j);
    for (size_t a = 0; a < c; ++a) rd.embedX[dep[a]][n + a] = 1;
    return rd;
}

// checks pairing perfectness, <i,j'> compatibility, independence
inline void validate_root_datum(const SuperCartanDatum& d, const RootDatum& rd) {
    size_t n = d.n(), m = rd.rankY;
    Mat<Rat> p(m, std::vector<Rat>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) p[i][j] = Rat(rd.pairing[i][j]);
    Rat det = mat_det(p);
    if (det != 1 && det != -1) throw std::domain_error("root datum: pairing not perfect");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (pair_yx(rd, rd.embedY[i], rd.embedX[j]) != d.aij(i, j))
                throw std::domain_error("root datum: <i,j'> mismatch at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
    auto rank_of = [&](const Mat<long>& rows) {
        Mat<Rat> q(rows.size(), std::vector<Rat>(m));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < m; ++j) q[i][j] = Rat(rows[i][j]);
        return mat_rank(q);
    };
    if (rank_of(rd.embedY) != n) throw std::domain_error("root datum: I not independent in Y");
    if (rank_of(rd.embedX) != n) throw std::domain_error("root datum: I' not independent in X");
}

// rho with <i, rho> = 1 for all i; requires an integral solution
inline XWeight weyl_rho(const SuperCartanDatum& d, const RootDatum& rd) {
    size_t n = d.n(), m = rd.rankY;
    Mat<Rat> a(n, std::vector<Rat>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < m; ++l) {
            Rat s = 0;
            for (size_t k = 0; k < m; ++k) s += Rat(rd.embedY[i][k]) * Rat(rd.pairing[k][l]);
            a[i][l] = s;
        }
    auto sol = mat_solve(a, std::vector<Rat>(n, Rat(1)));
    if (!sol) throw std::logic_error("rho: no solution");
    XWeight rho(m);
    for (size_t l = 0; l < m; ++l) {
        if ((*sol)[l].get_den() != 1) throw std::logic_error("rho: not integral");
        rho[l] = (*sol)[l].get_num().get_si();
    }
    return rho;
}

// ---- Weyl group (finite type) ----

struct WeylGroupData {
    std::vector<Mat<long>> elements;  // acting on X, identity first
    std::vector<int> lengths;
};

inline Mat<long> reflection_matrix_x(const RootDatum& rd, size_t i) {
    size_t m = rd.rankY;
    // row_i(l) = <i, e_l>
    std::vector<long> row(m, 0);
    for (size_t l = 0; l < m; ++l)
        for (size_t k = 0; k < m; ++k) row[l] += rd.embedY[i][k] * rd.pairing[k][l];
    Mat<long> s = mat_identity<long>(m);
    for (size_t k = 0; k < m; ++k)
        for (size_t l = 0; l < m; ++l) s[k][l] -= rd.embedX[i][k] * row[l];
    return s;
}

inline WeylGroupData weyl_enumerate(const SuperCartanDatum& d, const RootDatum& rd) {
    if (!positive_definite(d.dot))
        throw std::domain_error("weyl_enumerate: datum not of finite type");
    size_t n = d.n();
    std::vector<Mat<long>> gens(n);
    for (size_t i = 0; i < n; ++i) gens[i] = reflection_matrix_x(rd, i);
    WeylGroupData w;
    std::map<Mat<long>, int> seen;
    Mat<long> id = mat_identity<long>(rd.rankY);
    seen[id] = 0;
    w.elements.push_back(id);
    w.lengths.push_back(0);
    size_t head = 0;
    while (head < w.elements.size()) {
        Mat<long> cur = w.elements[head];
        int len = w.lengths[head];
        ++head;
        for (size_t i = 0; i < n; ++i) {
            Mat<long> nxt = mat_mul(gens[i], cur);
            if (seen.emplace(nxt, len + 1).second) {
                w.elements.push_back(std::move(nxt));
                w.lengths.push_back(len + 1);
                if (w.elements.size() > 1000000)
                    throw std::domain_error("weyl_enumerate: group too large");
            }
        }
    }
    return w;
}

// order m_ij of s_i s_j from <i,j'><j,i'>; absent means infinite
inline std::optional<int> coxeter_m(const SuperCartanDatum& d, size_t i, size_t j) {
    long p = d.aij(i, j) * d.aij(j, i);
    switch (p) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: return std::nullopt;
    }
}

// ---- JSON interface ----

struct DatumBundle {
    SuperCartanDatum datum;
    RootDatum rd;
    DatumReport report;
};

inline SuperCartanDatum datum_from_json(const nlohmann::json& j) {
    SuperCartanDatum d;
    d.name = j.value("name", "unnamed");
    d.parity = j.at("parity").get<std::vector<int>>();
    d.dot = j.at("dot").get<std::vector<std::vector<long>>>();
    return d;
}

inline RootDatum root_datum_from_json(const SuperCartanDatum& d, const nlohmann::json& j) {
    RootDatum rd;
    rd.pairing = j.at("pairingYX").get<Mat<long>>();
    rd.rankY = rd.pairing.size();
    size_t n = d.n(), m = rd.rankY;
    if (j.contains("embedI_Y"))
        rd.embedY = j.at("embedI_Y").get<Mat<long>>();
    else {
        rd.embedY.assign(n, std::vector<long>(m, 0));
        for (size_t i = 0; i < n; ++i) rd.embedY[i][i] = 1;
    }
    if (j.contains("embedI_X"))
        rd.embedX = j.at("embedI_X").get<Mat<long>>();
    else {
        if (j.contains("embedI_Y"))
            throw std::domain_error("root datum: embedI_Y given without embedI_X");
        // solve P x = (<k,i'>)_k for each i
        Mat<Rat> p(m, std::vector<Rat>(m));
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) p[a][b] = Rat(rd.pairing[a][b]);
        rd.embedX.assign(n, std::vector<long>(m, 0));
        for (size_t i = 0; i < n; ++i) {
            // <e_k, i'> = a_{ki} on the generator block, 0 on extra coordinates
            std::vector<Rat> rhs(m, Rat(0));
            for (size_t k = 0; k < n; ++k) rhs[k] = Rat(d.aij(k, i));
            auto sol = mat_solve(p, rhs);
            if (!sol) throw std::domain_error("root datum: cannot solve for i'");
            for (size_t l = 0; l < m; ++l) {
                if ((*sol)[l].get_den() != 1)
                    throw std::domain_error("root datum: i' not integral");
                rd.embedX[i][l] = (*sol)[l].get_num().get_si();
            }
        }
    }
    return rd;
}

inline DatumBundle bundle_from_json(const nlohmann::json& j) {
    DatumBundle b;
    b.datum = datum_from_json(j);
    b.report = validate_datum(b.datum);
    if (!b.report.valid) return b;
    if (j.contains("root_datum"))
        b.rd = root_datum_from_json(b.datum, j.at("root_datum"));
    else
        b.rd = default_root_datum(b.datum);
    validate_root_datum(b.datum, b.rd);
    return b;
}

// ---- stock data used across the test surface ----

inline SuperCartanDatum datum_b01() {
    return SuperCartanDatum{"b01", {1}, {{2}}};
}

// 1 even with 1.1 = 4, 2 odd with 2.2 = 2, 1.2 = -2
inline SuperCartanDatum datum_b02() {
    return SuperCartanDatum{"b02", {0, 1}, {{4, -2}, {-2, 2}}};
}

// rank-2 all-odd affine: both odd, i.i = 2, i.j = -2
inline SuperCartanDatum datum_rank2_odd_affine() {
    return SuperCartanDatum{"rank2odd", {1, 1}, {{2, -2}, {-2, 2}}};
}

// inconsistent but valid: both even, d_i = 1, i.j = -1
inline SuperCartanDatum datum_inconsistent_even() {
    return SuperCartanDatum{"evenA2", {0, 0}, {{2, -1}, {-1, 2}}};
}

}  // namespace qcover
