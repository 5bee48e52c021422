#pragma once

// Word bases of the half algebra modulo the radical of the form.
//
// For each weight nu the Gram matrix of the word list is specialized at both
// values of the central sign; a greedy lexicographic scan keeps the words
// that enlarge the row space in both specializations at once.  The two ranks
// must agree with the number of kept words: a mismatch aborts, it would mean
// the two specializations of f have different graded dimensions.
//
// BasisData also carries the inverse Gram block on the kept words, which
// gives dual bases and coordinates modulo the radical.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcover/datum.hpp"
#include "qcover/free_half.hpp"
#include "qcover/linalg.hpp"

namespace qcover {

inline std::vector<Word> words_of_weight(const Nu& nu) {
    std::vector<Word> out;
    Word cur;
    Nu left = nu;
    long h = height(nu);
    auto rec = [&](auto&& self, long rem) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (size_t i = 0; i < left.size(); ++i) {
            if (left[i] == 0) continue;
            --left[i];
            cur.push_back(static_cast<int>(i));
            self(self, rem - 1);
            cur.pop_back();
            ++left[i];
        }
    };
    rec(rec, h);
    return out;
}

struct BasisData {
    std::vector<Word> words;  // all words of the weight, lex order
    std::vector<Word> basis;  // greedy spanning subset
    Mat<Scalar> gram;         // form on basis x basis
    Mat<Scalar> dual;         // inverse of gram

    size_t dim() const { return basis.size(); }
};

inline Mat<RationalFn> specialize_mat(const Mat<Scalar>& m, int sign) {
    Mat<RationalFn> r(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        r[i].reserve(m[i].size());
        for (auto& s : m[i]) r[i].push_back(specialize(s, sign));
    }
    return r;
}

inline Mat<Scalar> scalar_mat_inverse(const Mat<Scalar>& m) {
    auto ip = mat_inverse(specialize_mat(m, +1));
    auto im = mat_inverse(specialize_mat(m, -1));
    if (!ip || !im) throw std::logic_error("scalar_mat_inverse: singular block");
    size_t n = m.size();
    Mat<Scalar> r(n, std::vector<Scalar>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i][j] = Scalar{(*ip)[i][j], (*im)[i][j]};
    return r;
}

class Ctx {
  public:
    Ctx(SuperCartanDatum d, RootDatum rd) : half_(std::move(d)), rd_(std::move(rd)) {
        validate_root_datum(half_.datum(), rd_);
    }
    static Ctx make(const SuperCartanDatum& d) { return Ctx(d, default_root_datum(d)); }

    const SuperCartanDatum& datum() const { return half_.datum(); }
    const RootDatum& rd() const { return rd_; }
    HalfCtx& half() { return half_; }

    const BasisData& basis(const Nu& nu) {
        auto it = bases_.find(nu);
        if (it != bases_.end()) return it->second;
        return bases_.emplace(nu, build_basis(nu)).first->second;
    }

    size_t dim_f(const Nu& nu) { return basis(nu).dim(); }

    // coordinates of x in the kept-word basis modulo the radical;
    // x must be concentrated in weight nu
    std::vector<Scalar> reduce_coords(const Nu& nu, const FreeElt& x) {
        const BasisData& b = basis(nu);
        for (auto& [w, c] : x.t)
            if (word_weight(datum(), w) != nu)
                throw std::domain_error("reduce_coords: element not of the given weight");
        std::vector<Scalar> pairings(b.dim());
        for (size_t k = 0; k < b.dim(); ++k)
            pairings[k] = half_.form(x, free_word(b.basis[k]));
        std::vector<Scalar> coords(b.dim(), Scalar::zero());
        for (size_t k = 0; k < b.dim(); ++k)
            for (size_t l = 0; l < b.dim(); ++l) coords[k] += pairings[l] * b.dual[l][k];
        return coords;
    }

    // canonical representative of x modulo the radical, one memoized word at
    // a time
    FreeElt reduce_elt(const FreeElt& x) {
        FreeElt out;
        for (auto& [w, c] : x.t) out += c * reduce_word(w);
        return out;
    }

    const FreeElt& reduce_word(const Word& w) {
        auto it = word_memo_.find(w);
        if (it != word_memo_.end()) return it->second;
        Nu nu = word_weight(datum(), w);
        const BasisData& b = basis(nu);
        auto coords = reduce_coords(nu, free_word(w));
        FreeElt r;
        for (size_t k = 0; k < b.dim(); ++k) r += coords[k] * free_word(b.basis[k]);
        return word_memo_.emplace(w, std::move(r)).first->second;
    }

    bool in_radical(const FreeElt& x) { return reduce_elt(x).is_zero(); }

    // dual basis element b_k^* with (b_k^*, b_l) = delta_kl
    FreeElt dual_elt(const Nu& nu, size_t k) {
        const BasisData& b = basis(nu);
        FreeElt out;
        for (size_t c = 0; c < b.dim(); ++c) out += b.dual[c][k] * free_word(b.basis[c]);
        return out;
    }

    // rank, in each specialization, of the span of u S_ij v inside the word
    // space of weight nu
    std::pair<size_t, size_t> serre_span_rank(const Nu& nu) {
        const auto& d = datum();
        size_t n = d.n();
        auto words = words_of_weight(nu);
        std::map<Word, size_t> index;
        for (size_t k = 0; k < words.size(); ++k) index[words[k]] = k;
        EchelonAccum<RationalFn> accp, accm;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                FreeElt s = serre_elt(d, static_cast<int>(i), static_cast<int>(j));
                Nu ws(n, 0);
                ws[i] = 1 - d.aij(i, j);
                ws[j] = 1;
                auto rest = sub_nu(nu, ws);
                if (!rest) continue;
                for (long ha = 0; ha <= height(*rest); ++ha)
                    for (auto& alpha : enumerate_nu(n, ha)) {
                        auto beta = sub_nu(*rest, alpha);
                        if (!beta) continue;
                        for (auto& u : words_of_weight(alpha))
                            for (auto& v : words_of_weight(*beta)) {
                                FreeElt e = free_word(u) * s * free_word(v);
                                std::vector<Scalar> row(words.size(), Scalar::zero());
                                for (auto& [w, c] : e.t) row[index.at(w)] = c;
                                std::vector<RationalFn> rp(words.size()), rm(words.size());
                                for (size_t k = 0; k < row.size(); ++k) {
                                    rp[k] = specialize(row[k], +1);
                                    rm[k] = specialize(row[k], -1);
                                }
                                accp.insert(std::move(rp));
                                accm.insert(std::move(rm));
                            }
                    }
            }
        return {accp.rank(), accm.rank()};
    }

  private:
    BasisData build_basis(const Nu& nu) {
        BasisData b;
        b.words = words_of_weight(nu);
        EchelonAccum<RationalFn> selp, selm, allp, allm;
        for (auto& w : b.words) {
            std::vector<RationalFn> rp(b.words.size()), rm(b.words.size());
            for (size_t k = 0; k < b.words.size(); ++k) {
                Scalar s = half_.form_words(w, b.words[k]);
                rp[k] = specialize(s, +1);
                rm[k] = specialize(s, -1);
            }
            allp.insert(rp);
            allm.insert(rm);
            auto tp = rp;
            auto tm = rm;
            if (selp.reduce(tp) && selm.reduce(tm)) {
                selp.insert(std::move(rp));
                selm.insert(std::move(rm));
                b.basis.push_back(w);
            }
        }
        if (b.basis.size() != allp.rank() || b.basis.size() != allm.rank())
            throw std::logic_error("basis: specializations disagree on the graded dimension");
        b.gram.assign(b.dim(), std::vector<Scalar>(b.dim()));
        for (size_t i = 0; i < b.dim(); ++i)
            for (size_t j = 0; j < b.dim(); ++j)
                b.gram[i][j] = half_.form_words(b.basis[i], b.basis[j]);
        if (b.dim() > 0) b.dual = scalar_mat_inverse(b.gram);
        return b;
    }

    HalfCtx half_;
    RootDatum rd_;
    std::map<Nu, BasisData> bases_;
    std::map<Word, FreeElt> word_memo_;
};

}  // namespace qcover
