#pragma once

// Weight modules with exact matrix actions, specialized at one value of the
// central sign.  A module stores a weight and a parity per basis vector and
// one dense matrix per generator pair E_i, F_i; the grouplikes K_mu, J_mu act
// diagonally through the stored weights, so a normal form monomial acts by
// composing the four layers right to left.
//
// The Verma module is carried by the basis of the lower half, one block per
// weight below the highest one, truncated at a height cap.  The raising
// action comes from the two one sided derivations of the half algebra; the
// defining cross relation between E_i and F_j is a test surface, not an
// input.  The integrable quotient divides each block by the left ideal
// spanned by the overshoot powers th_i^{<i,lam>+1} and checks that the guard
// layer above the predicted depth comes out empty and that the ideal is
// stable under raising, so the quotient matrices are exact, not a cutoff.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcover/basis.hpp"
#include "qcover/character.hpp"
#include "qcover/covering.hpp"

namespace qcover {

using Vec = std::vector<RationalFn>;

struct WeightModule {
    int sign = +1;                      // central sign of this specialization
    std::vector<XWeight> wt;            // weight per basis vector
    std::vector<int> par;               // parity per basis vector
    std::vector<Mat<RationalFn>> actE;  // one matrix per generator
    std::vector<Mat<RationalFn>> actF;
    std::optional<XWeight> hw;          // when set, basis vector 0 generates
    bool truncated = false;             // a height cap cut the action

    size_t dim() const { return wt.size(); }
};

inline XWeight xw_neg(const XWeight& x) {
    XWeight r = x;
    for (auto& v : r) v = -v;
    return r;
}

inline std::vector<size_t> weight_block(const WeightModule& M, const XWeight& mu) {
    std::vector<size_t> idx;
    for (size_t k = 0; k < M.dim(); ++k)
        if (M.wt[k] == mu) idx.push_back(k);
    return idx;
}

// lam with <i,lam> = ns[i] and zeros on the complementary coordinates
inline XWeight xweight_from_pairings(const RootDatum& rd, const std::vector<long>& ns) {
    size_t n = rd.embedY.size(), m = rd.rankY;
    if (ns.size() != n) throw std::invalid_argument("xweight_from_pairings: rank mismatch");
    Mat<Rat> a(n, std::vector<Rat>(m));
    std::vector<Rat> b(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t l = 0; l < m; ++l)
            for (size_t k = 0; k < m; ++k) a[i][l] += Rat(rd.embedY[i][k] * rd.pairing[k][l]);
        b[i] = Rat(ns[i]);
    }
    auto sol = mat_solve(a, b);
    if (!sol) throw std::domain_error("xweight_from_pairings: no such weight");
    XWeight lam(m);
    for (size_t l = 0; l < m; ++l) {
        if ((*sol)[l].get_den() != 1)
            throw std::domain_error("xweight_from_pairings: not integral");
        lam[l] = (*sol)[l].get_num().get_si();
    }
    for (size_t i = 0; i < n; ++i)
        if (pair_i(rd, i, lam) != ns[i])
            throw std::logic_error("xweight_from_pairings: solve mismatch");
    return lam;
}

// ---- Verma blocks ----

namespace detail {

// block matrices of the generator actions on the Verma module, one block per
// weight nu at height <= cap; F_i raises nu by e_i, E_i lowers it
struct VermaBlocks {
    std::vector<Nu> nus;
    std::map<Nu, size_t> dim;
    std::map<std::pair<size_t, Nu>, Mat<RationalFn>> F, E;  // key: (i, source)
};

inline VermaBlocks verma_blocks(Ctx& c, const XWeight& lam, long cap, int sign) {
    const SuperCartanDatum& d = c.datum();
    const RootDatum& rd = c.rd();
    size_t n = d.n();
    VermaBlocks vb;
    for (long h = 0; h <= cap; ++h)
        for (auto& nu : enumerate_nu(n, h)) {
            vb.nus.push_back(nu);
            vb.dim[nu] = c.dim_f(nu);
        }
    for (auto& nu : vb.nus) {
        size_t dsrc = vb.dim[nu];
        if (!dsrc) continue;
        std::vector<Word> bw = c.basis(nu).basis;
        for (size_t i = 0; i < n; ++i) {
            Nu up = nu;
            up[i] += 1;
            if (height(up) <= cap && vb.dim[up] > 0) {
                Mat<RationalFn> mat(vb.dim[up], Vec(dsrc));
                for (size_t k = 0; k < dsrc; ++k) {
                    Word w2;
                    w2.push_back((int)i);
                    w2.insert(w2.end(), bw[k].begin(), bw[k].end());
                    auto coords = c.reduce_coords(up, free_word(w2));
                    for (size_t l = 0; l < coords.size(); ++l)
                        mat[l][k] = specialize(coords[l], sign);
                }
                vb.F[{i, nu}] = std::move(mat);
            }
            if (nu[i] > 0) {
                Nu down = nu;
                down[i] -= 1;
                size_t ddst = vb.dim[down];
                if (ddst == 0) continue;
                // E_i through the one sided derivations: on z = x v with x of
                // weight nu the two summands pick up the grouplike factors of
                // the cross relation, evaluated at the weights they act on
                long A = pair_i(rd, i, lam) + 2;
                for (size_t j = 0; j < n; ++j) A -= nu[j] * d.aij(i, j);
                Scalar f1 = Scalar::piq(d.d(i) * A, d.d(i) * A);
                Scalar den_inv =
                    (piqi(d, i, 1, 1) - qi_power(d, i, -1)).inverse();
                Mat<RationalFn> mat(ddst, Vec(dsrc));
                for (size_t k = 0; k < dsrc; ++k) {
                    FreeElt x = free_word(bw[k]);
                    int px = word_parity(d, bw[k]);
                    Scalar f2 = piqi(d, i, px - d.parity[i], -pair_i(rd, i, lam));
                    FreeElt e = f1 * deriv_left(d, (int)i, x);
                    e -= f2 * deriv_right(d, (int)i, x);
                    auto coords = c.reduce_coords(down, den_inv * e);
                    for (size_t l = 0; l < coords.size(); ++l)
                        mat[l][k] = specialize(coords[l], sign);
                }
                vb.E[{i, nu}] = std::move(mat);
            }
        }
    }
    return vb;
}

}  // namespace detail

// Verma module with highest weight lam, carried by the half algebra basis up
// to the height cap.  Always flagged truncated: the lowering action escapes
// any finite cap.
inline WeightModule build_verma(Ctx& c, const XWeight& lam, long cap, int sign) {
    const SuperCartanDatum& d = c.datum();
    const RootDatum& rd = c.rd();
    size_t n = d.n();
    auto vb = detail::verma_blocks(c, lam, cap, sign);
    WeightModule M;
    M.sign = sign;
    M.hw = lam;
    M.truncated = true;
    std::map<Nu, size_t> base;
    size_t total = 0;
    for (auto& nu : vb.nus) {
        base[nu] = total;
        total += vb.dim[nu];
    }
    M.wt.resize(total);
    M.par.resize(total);
    for (auto& nu : vb.nus) {
        XWeight w = xw_sub(lam, nu_to_x(rd, nu));
        int p = parity_nu(d, nu);
        for (size_t k = 0; k < vb.dim[nu]; ++k) {
            M.wt[base[nu] + k] = w;
            M.par[base[nu] + k] = p;
        }
    }
    M.actE.assign(n, Mat<RationalFn>(total, Vec(total)));
    M.actF.assign(n, Mat<RationalFn>(total, Vec(total)));
    for (auto& [key, mat] : vb.F) {
        auto& [i, nu] = key;
        Nu up = nu;
        up[i] += 1;
        for (size_t r = 0; r < mat.size(); ++r)
            for (size_t k = 0; k < mat[r].size(); ++k)
                M.actF[i][base[up] + r][base[nu] + k] = mat[r][k];
    }
    for (auto& [key, mat] : vb.E) {
        auto& [i, nu] = key;
        Nu down = nu;
        down[i] -= 1;
        for (size_t r = 0; r < mat.size(); ++r)
            for (size_t k = 0; k < mat[r].size(); ++k)
                M.actE[i][base[down] + r][base[nu] + k] = mat[r][k];
    }
    return M;
}

// integrable quotient of the Verma module at a dominant weight
inline WeightModule build_simple(Ctx& c, const XWeight& lam, int sign) {
    const SuperCartanDatum& d = c.datum();
    const RootDatum& rd = c.rd();
    if (!dominant(rd, lam)) throw std::domain_error("build_simple: weight not dominant");
    size_t n = d.n();
    WeylGroupData W = weyl_enumerate(d, rd);
    long depth = 0;
    for (auto& w : W.elements) {
        auto nu = x_in_iprime(rd, xw_sub(lam, xw_apply(w, lam)));
        if (!nu) throw std::logic_error("build_simple: orbit outside the root lattice");
        depth = std::max(depth, height(*nu));
    }
    long cap = depth + 1;  // guard layer, must come out empty
    auto vb = detail::verma_blocks(c, lam, cap, sign);

    struct Block {
        EchelonAccum<RationalFn> sub;
        std::vector<Vec> gens;
        std::vector<size_t> keep;
    };
    std::map<Nu, Block> blocks;
    for (auto& nu : vb.nus) {
        Block b;
        size_t full = vb.dim[nu];
        for (size_t i = 0; i < n && full; ++i) {
            long ni = pair_i(rd, i, lam) + 1;
            Nu rest = nu;
            rest[i] -= ni;
            bool ok = true;
            for (long v : rest) ok = ok && v >= 0;
            if (!ok) continue;
            for (auto& u : words_of_weight(rest)) {
                Word w2 = u;
                w2.insert(w2.end(), (size_t)ni, (int)i);
                auto coords = c.reduce_coords(nu, free_word(w2));
                Vec row(full);
                for (size_t l = 0; l < full; ++l) row[l] = specialize(coords[l], sign);
                b.gens.push_back(row);
                b.sub.insert(row);
            }
        }
        std::vector<bool> piv(full, false);
        for (size_t p : b.sub.pivots()) piv[p] = true;
        for (size_t k = 0; k < full; ++k)
            if (!piv[k]) b.keep.push_back(k);
        blocks.emplace(nu, std::move(b));
    }
    bool closed = true;
    for (auto& nu : vb.nus)
        if (height(nu) == cap && !blocks.at(nu).keep.empty()) closed = false;
    // the ideal must be stable under raising, otherwise the quotient
    // matrices would be meaningless
    for (auto& nu : vb.nus) {
        for (size_t i = 0; i < n; ++i) {
            auto it = vb.E.find({i, nu});
            if (it == vb.E.end()) continue;
            Nu down = nu;
            down[i] -= 1;
            const Block& bdown = blocks.at(down);
            for (auto& g : blocks.at(nu).gens) {
                Vec img = mat_apply(it->second, g);
                bdown.sub.reduce(img);
                for (size_t j : bdown.keep)
                    if (!img[j].is_zero())
                        throw std::logic_error("build_simple: ideal not stable under raising");
            }
        }
    }
    auto to_quot = [&](const Nu& nu, Vec v) {
        const Block& b = blocks.at(nu);
        b.sub.reduce(v);
        Vec out(b.keep.size());
        for (size_t j = 0; j < b.keep.size(); ++j) out[j] = v[b.keep[j]];
        return out;
    };

    WeightModule M;
    M.sign = sign;
    M.hw = lam;
    M.truncated = !closed;
    std::map<Nu, size_t> base;
    size_t total = 0;
    for (auto& nu : vb.nus) {
        base[nu] = total;
        total += blocks.at(nu).keep.size();
    }
    M.wt.resize(total);
    M.par.resize(total);
    for (auto& nu : vb.nus) {
        XWeight w = xw_sub(lam, nu_to_x(rd, nu));
        int p = parity_nu(d, nu);
        for (size_t k = 0; k < blocks.at(nu).keep.size(); ++k) {
            M.wt[base[nu] + k] = w;
            M.par[base[nu] + k] = p;
        }
    }
    M.actE.assign(n, Mat<RationalFn>(total, Vec(total)));
    M.actF.assign(n, Mat<RationalFn>(total, Vec(total)));
    for (auto& nu : vb.nus) {
        const Block& b = blocks.at(nu);
        for (size_t i = 0; i < n; ++i) {
            auto fit = vb.F.find({i, nu});
            if (fit != vb.F.end()) {
                Nu up = nu;
                up[i] += 1;
                for (size_t k = 0; k < b.keep.size(); ++k) {
                    Vec col(vb.dim[up]);
                    for (size_t r = 0; r < col.size(); ++r) col[r] = fit->second[r][b.keep[k]];
                    Vec q = to_quot(up, std::move(col));
                    for (size_t r = 0; r < q.size(); ++r)
                        M.actF[i][base[up] + r][base[nu] + k] = q[r];
                }
            }
            auto eit = vb.E.find({i, nu});
            if (eit != vb.E.end()) {
                Nu down = nu;
                down[i] -= 1;
                for (size_t k = 0; k < b.keep.size(); ++k) {
                    Vec col(vb.dim[down]);
                    for (size_t r = 0; r < col.size(); ++r) col[r] = eit->second[r][b.keep[k]];
                    Vec q = to_quot(down, std::move(col));
                    for (size_t r = 0; r < q.size(); ++r)
                        M.actE[i][base[down] + r][base[nu] + k] = q[r];
                }
            }
        }
    }
    return M;
}

// ---- operations on modules ----

// tensor product through the coproduct; the second tensor leg picks up the
// grouplike factor of the first and the sign rule pairs the crossing parities
inline WeightModule tensor_module(const Ctx& c, const WeightModule& A, const WeightModule& B) {
    if (A.sign != B.sign) throw std::invalid_argument("tensor_module: mixed signs");
    const SuperCartanDatum& d = c.datum();
    const RootDatum& rd = c.rd();
    size_t n = d.n(), da = A.dim(), db = B.dim();
    WeightModule M;
    M.sign = A.sign;
    M.truncated = A.truncated || B.truncated;
    M.wt.resize(da * db);
    M.par.resize(da * db);
    for (size_t a = 0; a < da; ++a)
        for (size_t b = 0; b < db; ++b) {
            M.wt[a * db + b] = xw_add(A.wt[a], B.wt[b]);
            M.par[a * db + b] = (A.par[a] + B.par[b]) % 2;
        }
    M.actE.assign(n, Mat<RationalFn>(da * db, Vec(da * db)));
    M.actF.assign(n, Mat<RationalFn>(da * db, Vec(da * db)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t a = 0; a < da; ++a)
            for (size_t b = 0; b < db; ++b) {
                size_t col = a * db + b;
                long wa = pair_i(rd, i, A.wt[a]);
                long wb = pair_i(rd, i, B.wt[b]);
                // E_i: E_i m (x) m'  +  pi_i^{p(m)} (pi~_i q_i)^{<i,|m|>} m (x) E_i m'
                for (size_t a2 = 0; a2 < da; ++a2)
                    if (!A.actE[i][a2][a].is_zero())
                        M.actE[i][a2 * db + b][col] += A.actE[i][a2][a];
                RationalFn fe = specialize(
                    Scalar::piq(d.parity[i] * A.par[a] + d.d(i) * wa, d.d(i) * wa), M.sign);
                for (size_t b2 = 0; b2 < db; ++b2)
                    if (!B.actE[i][b2][b].is_zero())
                        M.actE[i][a * db + b2][col] += fe * B.actE[i][b2][b];
                // F_i: q_i^{-<i,|m'|>} F_i m (x) m'  +  pi_i^{p(m)} m (x) F_i m'
                RationalFn ff1 = specialize(Scalar::q_power(-d.d(i) * wb), M.sign);
                for (size_t a2 = 0; a2 < da; ++a2)
                    if (!A.actF[i][a2][a].is_zero())
                        M.actF[i][a2 * db + b][col] += ff1 * A.actF[i][a2][a];
                RationalFn ff2 = specialize(Scalar::pi_power(d.parity[i] * A.par[a]), M.sign);
                for (size_t b2 = 0; b2 < db; ++b2)
                    if (!B.actF[i][b2][b].is_zero())
                        M.actF[i][a * db + b2][col] += ff2 * B.actF[i][b2][b];
            }
    }
    return M;
}

// module pulled back through the involution swapping the halves; weights
// flip, the new raising action is the old lowering one scaled by the
// grouplike factors of the image
inline WeightModule omega_twist(const Ctx& c, const WeightModule& M) {
    const SuperCartanDatum& d = c.datum();
    const RootDatum& rd = c.rd();
    size_t n = d.n();
    WeightModule T = M;
    T.hw.reset();
    for (auto& w : T.wt) w = xw_neg(w);
    for (size_t i = 0; i < n; ++i) {
        T.actF[i] = M.actE[i];
        for (size_t k = 0; k < M.dim(); ++k) {
            RationalFn fac = specialize(
                Scalar::pi_power(d.parity[i] + d.d(i) * pair_i(rd, i, M.wt[k])), M.sign);
            for (size_t r = 0; r < M.dim(); ++r) T.actE[i][r][k] = fac * M.actF[i][r][k];
        }
    }
    return T;
}

// ---- action of algebra elements ----

// normal form monomials act right to left: E word, then the grouplikes
// through the stored weights, then the F word
inline Vec act_u(const Ctx& c, const WeightModule& M, const UElt& x, const Vec& v) {
    const RootDatum& rd = c.rd();
    Vec out(M.dim());
    for (auto& [m, s] : x.t) {
        Vec w = v;
        for (auto it = m.ew.rbegin(); it != m.ew.rend(); ++it) w = mat_apply(M.actE[*it], w);
        YWeight jw(m.jcl.begin(), m.jcl.end());
        for (size_t k = 0; k < w.size(); ++k) {
            if (w[k].is_zero()) continue;
            long a = pair_yx(rd, jw, M.wt[k]);
            long e = pair_yx(rd, m.kex, M.wt[k]);
            w[k] = w[k] * specialize(Scalar::piq(a, e), M.sign);
        }
        for (auto it = m.fw.rbegin(); it != m.fw.rend(); ++it) w = mat_apply(M.actF[*it], w);
        RationalFn cs = specialize(s, M.sign);
        for (size_t k = 0; k < w.size(); ++k) out[k] += cs * w[k];
    }
    return out;
}

inline Mat<RationalFn> u_matrix(const Ctx& c, const WeightModule& M, const UElt& x) {
    Mat<RationalFn> m(M.dim(), Vec(M.dim()));
    for (size_t k = 0; k < M.dim(); ++k) {
        Vec unit(M.dim());
        unit[k] = RationalFn(Rat(1));
        Vec col = act_u(c, M, x, unit);
        for (size_t r = 0; r < M.dim(); ++r) m[r][k] = col[r];
    }
    return m;
}

// ---- structure probes ----

// rows: a basis of the joint kernel of all E_i on the weight block of mu,
// in block coordinates
inline Mat<RationalFn> singular_vectors(const Ctx& c, const WeightModule& M, const XWeight& mu) {
    std::vector<size_t> idx = weight_block(M, mu);
    if (idx.empty()) return {};
    Mat<RationalFn> stack;
    for (size_t i = 0; i < M.actE.size(); ++i)
        for (size_t r = 0; r < M.dim(); ++r) {
            Vec row(idx.size());
            bool any = false;
            for (size_t k = 0; k < idx.size(); ++k) {
                row[k] = M.actE[i][r][idx[k]];
                any = any || !row[k].is_zero();
            }
            if (any) stack.push_back(std::move(row));
        }
    if (stack.empty()) return mat_nullspace(Mat<RationalFn>(1, Vec(idx.size())));
    return mat_nullspace(std::move(stack));
}

// every generator matrix nilpotent and no truncation cut
inline bool verify_integrable(const Ctx& c, const WeightModule& M) {
    if (M.truncated) return false;
    auto nilpotent = [&](const Mat<RationalFn>& a) {
        Mat<RationalFn> p = a;
        for (size_t s = 0; s <= M.dim(); ++s) {
            bool zero = true;
            for (auto& row : p)
                for (auto& x : row) zero = zero && x.is_zero();
            if (zero) return true;
            p = mat_mul(p, a);
        }
        return false;
    };
    for (size_t i = 0; i < M.actE.size(); ++i)
        if (!nilpotent(M.actE[i]) || !nilpotent(M.actF[i])) return false;
    return true;
}

struct DecompPiece {
    XWeight lambda;
    size_t mult = 0;
};

// isotypic decomposition by singular vectors, confirmed weight by weight
// against the character predictions; a mismatch means the input was not a
// sum of integrable highest weight modules and aborts
inline std::vector<DecompPiece> decompose(Ctx& c, const WeightModule& M) {
    const SuperCartanDatum& d = c.datum();
    const RootDatum& rd = c.rd();
    WeylGroupData W = weyl_enumerate(d, rd);
    std::map<XWeight, long> have;
    for (auto& w : M.wt) have[w] += 1;
    std::vector<DecompPiece> out;
    std::map<XWeight, long> predicted;
    for (auto& [mu, dim] : have) {
        auto nsp = singular_vectors(c, M, mu);
        if (nsp.empty()) continue;
        if (!dominant(rd, mu))
            throw std::logic_error("decompose: singular vector at a non dominant weight");
        out.push_back({mu, nsp.size()});
        CharData ch = weyl_kac_character(d, rd, W, mu);
        for (auto& [x, mult] : ch.by_weight(rd)) predicted[x] += (long)nsp.size() * mult;
    }
    if (predicted != have) throw std::logic_error("decompose: multiplicities do not add up");
    return out;
}

}  // namespace qcover
