// Drives the R-matrix truncation and the Casimir at their consumer surface:
// prints the rank-one coefficient ladder with its q-group specialization,
// confirms the truncation inverts its bar image, and shows Xi flattening the
// Casimir to the identity on simple modules while it separates a tensor
// square.

#include <iostream>

#include <qcover/rmatrix.hpp>

using namespace qcover;

namespace {

bool is_identity(const Mat<RationalFn>& m) {
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t k = 0; k < m[r].size(); ++k) {
            RationalFn want = (r == k) ? RationalFn(Rat(1)) : RationalFn();
            if (m[r][k] != want) return false;
        }
    return true;
}

// ---- rank one truncation: the coefficient ladder ----

void coefficient_ladder() {
    SuperCartanDatum d = datum_b01();
    Ctx c = Ctx::make(d);
    const long cap = 4;
    ThetaTrunc th = compute_theta(c, cap);
    std::cout << "== rank one truncation, coefficient of F^(n) (x) E^(n) ==\n";
    for (long n = 0; n <= cap; ++n) {
        Scalar a = Scalar::zero();
        for (auto& [k, s] : th.comp.at(Nu{n}).t) a = s;  // one monomial per height
        a = a * d.qfact(n, 0) * d.qfact(n, 0);
        std::cout << "n=" << n << "  " << a.str() << "\n";
        std::cout << "      at p=+1: " << specialize(a, +1).str() << "\n";
    }
    std::cout << "\n";
}

// ---- the truncation inverts its bar image ----

void bar_inverse() {
    struct Row {
        SuperCartanDatum d;
        long cap;
    } rows[] = {{datum_b01(), 4}, {datum_b02(), 3}};
    std::cout << "== Theta * bar(Theta), heights within the cap ==\n";
    for (auto& [d, cap] : rows) {
        Ctx c = Ctx::make(d);
        UTensorElt t = compute_theta(c, cap).total();
        UTensorElt p = ut_reduce(c, ut_mul(c, t, ut_bar(c, t)));
        bool unit = false, clean = true;
        for (auto& [k, s] : p.t) {
            if ((long)k.first.fw.size() > cap) continue;  // beyond the truncation
            if (k.first.fw.empty() && k.second.ew.empty())
                unit = (s == Scalar::one());
            else
                clean = false;
        }
        std::cout << d.name << "  cap " << cap << "  "
                  << (unit && clean ? "exactly 1 (x) 1" : "NOT the unit") << "\n";
    }
    std::cout << "\n";
}

// ---- Xi flattens the Casimir on simple modules ----

void casimir_identity() {
    SuperCartanDatum d = datum_b01();
    Ctx c = Ctx::make(d);
    std::cout << "== Omega Xi on rank one simple modules ==\n";
    for (long n = 0; n <= 3; ++n) {
        XWeight lam = xweight_from_pairings(c.rd(), {n});
        for (int sign : {+1, -1}) {
            WeightModule V = build_simple(c, lam, sign);
            Mat<RationalFn> P =
                mat_mul(u_matrix(c, V, casimir_element(c, n)), xi_matrix(c, V, lam));
            std::cout << "V(" << n << ") sign " << (sign > 0 ? "+1" : "-1") << ": "
                      << (is_identity(P) ? "identity" : "NOT identity") << "\n";
        }
    }
    std::cout << "\n";
}

// ---- the Casimir separates a tensor square ----

void tensor_separation() {
    SuperCartanDatum d = datum_b01();
    Ctx c = Ctx::make(d);
    XWeight one = xweight_from_pairings(c.rd(), {1});
    XWeight top = xweight_from_pairings(c.rd(), {2});
    XWeight zero = xweight_from_pairings(c.rd(), {0});
    std::cout << "== Omega Xi on V(1) (x) V(1) ==\n";
    for (int sign : {+1, -1}) {
        WeightModule V = build_simple(c, one, sign);
        WeightModule T = tensor_module(c, V, V);
        Mat<RationalFn> P =
            mat_mul(u_matrix(c, T, casimir_element(c, 2)), xi_matrix(c, T, top));
        Mat<RationalFn> sv = singular_vectors(c, T, zero);
        std::vector<size_t> idx = weight_block(T, zero);
        Vec v(T.dim());
        for (size_t k = 0; k < idx.size(); ++k) v[idx[k]] = sv[0][k];
        Vec w = mat_apply(P, v);
        RationalFn ratio;
        for (size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) {
                ratio = w[k] / v[k];
                break;
            }
        bool prop = true;
        for (size_t k = 0; k < v.size(); ++k)
            if (w[k] != ratio * v[k]) prop = false;
        std::cout << "sign " << (sign > 0 ? "+1" : "-1") << ": lowest summand eigenvalue "
                  << ratio.str() << (prop ? "" : "  (NOT an eigenvector!)")
                  << ", weight walk " << casimir_g(c, top, zero) << "\n";
    }
    std::cout << "\n";
}

}  // namespace

int main() {
    coefficient_ladder();
    bar_inverse();
    casimir_identity();
    tensor_separation();
    return 0;
}
