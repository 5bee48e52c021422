#pragma once

// The half algebra on generators th(i), presented on the free word algebra.
//
// Multiplication is word concatenation; the super structure lives in the
// twisted tensor product used by the coproduct r:
//   (x1 (x) x2)(x1' (x) x2') = q^{|x2|.|x1'|} pi^{p(x2)p(x1')} x1x1' (x) x2x2'
// and its bar companion, which replaces q^{...} by (pi q^{-1})^{...}.
//
// The bilinear form is determined by (1,1) = 1, (th i, th j) = delta_ij
// (1 - pi_i q_i^{-2})^{-1} and the adjunction that peels the leading letter
// of the first argument against the left derivation of the second.  The
// radical of the form is the defining ideal of the half algebra; elements
// here are representatives.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcover/datum.hpp"
#include "qcover/scalar.hpp"

namespace qcover {

using Word = std::vector<int>;

// pi_i^a q_i^e
inline Scalar piqi(const SuperCartanDatum& d, size_t i, long a, long e) {
    return Scalar::piq(d.parity[i] * a, d.d(i) * e);
}

inline Scalar qi_power(const SuperCartanDatum& d, size_t i, long e) {
    return Scalar::q_power(d.d(i) * e);
}

inline Nu word_weight(const SuperCartanDatum& d, const Word& w) {
    Nu nu(d.n(), 0);
    for (int l : w) ++nu[l];
    return nu;
}

inline int word_parity(const SuperCartanDatum& d, const Word& w) {
    int p = 0;
    for (int l : w) p += d.parity[l];
    return p & 1;
}

// ---- elements ----

struct FreeElt {
    std::map<Word, Scalar> t;

    bool is_zero() const { return t.empty(); }
    void add_term(const Word& w, const Scalar& s) {
        if (s.is_zero()) return;
        auto it = t.find(w);
        if (it == t.end())
            t.emplace(w, s);
        else {
            it->second += s;
            if (it->second.is_zero()) t.erase(it);
        }
    }
    FreeElt& operator+=(const FreeElt& o) {
        for (auto& [w, s] : o.t) add_term(w, s);
        return *this;
    }
    FreeElt& operator-=(const FreeElt& o) {
        for (auto& [w, s] : o.t) add_term(w, -s);
        return *this;
    }
    friend FreeElt operator+(FreeElt a, const FreeElt& b) { return a += b; }
    friend FreeElt operator-(FreeElt a, const FreeElt& b) { return a -= b; }
    friend FreeElt operator*(const Scalar& s, const FreeElt& x) {
        FreeElt r;
        for (auto& [w, c] : x.t) r.add_term(w, s * c);
        return r;
    }
    friend FreeElt operator*(const FreeElt& a, const FreeElt& b) {
        FreeElt r;
        for (auto& [wa, ca] : a.t)
            for (auto& [wb, cb] : b.t) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(w, ca * cb);
            }
        return r;
    }
    bool operator==(const FreeElt& o) const { return t == o.t; }
    bool operator!=(const FreeElt& o) const { return !(*this == o); }

    std::string str() const {
        if (t.empty()) return "0";
        std::string s;
        for (auto& [w, c] : t) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            if (w.empty())
                s += "*1";
            else
                for (int l : w) s += "*th(" + std::to_string(l) + ")";
        }
        return s;
    }
};

inline FreeElt free_one() {
    FreeElt x;
    x.add_term({}, Scalar::one());
    return x;
}
inline FreeElt free_word(const Word& w) {
    FreeElt x;
    x.add_term(w, Scalar::one());
    return x;
}
inline FreeElt free_gen(int i) { return free_word({i}); }

// coefficient-wise bar; words are bar-fixed
inline FreeElt bar_free(const FreeElt& x) {
    FreeElt r;
    for (auto& [w, c] : x.t) r.add_term(w, bar_scalar(c));
    return r;
}

// word reversal, extended linearly
inline FreeElt sigma_free(const FreeElt& x) {
    FreeElt r;
    for (auto& [w, c] : x.t) {
        Word v(w.rbegin(), w.rend());
        r.add_term(v, c);
    }
    return r;
}

// th_i^(n) = th_i^n / [n]!_i
inline FreeElt divided_power(const SuperCartanDatum& d, int i, long n) {
    if (n < 0) return FreeElt{};
    FreeElt x;
    x.add_term(Word(n, i), d.qfact(n, i).inverse());
    return x;
}

// ---- twisted tensor algebra ----

enum class Twist { plain, bar };

struct TensorElt {
    std::map<std::pair<Word, Word>, Scalar> t;

    bool is_zero() const { return t.empty(); }
    void add_term(const Word& a, const Word& b, const Scalar& s) {
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
    TensorElt& operator+=(const TensorElt& o) {
        for (auto& [k, s] : o.t) add_term(k.first, k.second, s);
        return *this;
    }
    TensorElt& operator-=(const TensorElt& o) {
        for (auto& [k, s] : o.t) add_term(k.first, k.second, -s);
        return *this;
    }
    friend TensorElt operator+(TensorElt a, const TensorElt& b) { return a += b; }
    friend TensorElt operator-(TensorElt a, const TensorElt& b) { return a -= b; }
    friend TensorElt operator*(const Scalar& s, const TensorElt& x) {
        TensorElt r;
        for (auto& [k, c] : x.t) r.add_term(k.first, k.second, s * c);
        return r;
    }
    bool operator==(const TensorElt& o) const { return t == o.t; }
    bool operator!=(const TensorElt& o) const { return !(*this == o); }
};

inline TensorElt tensor_of(const FreeElt& a, const FreeElt& b) {
    TensorElt r;
    for (auto& [wa, ca] : a.t)
        for (auto& [wb, cb] : b.t) r.add_term(wa, wb, ca * cb);
    return r;
}

inline TensorElt tensor_mul(const SuperCartanDatum& d, const TensorElt& x, const TensorElt& y,
                            Twist tw = Twist::plain) {
    TensorElt r;
    for (auto& [kx, cx] : x.t)
        for (auto& [ky, cy] : y.t) {
            const Word &x2 = kx.second, &y1 = ky.first;
            long dd = dot_nu(d, word_weight(d, x2), word_weight(d, y1));
            long pp = word_parity(d, x2) * word_parity(d, y1);
            Scalar f = (tw == Twist::plain) ? Scalar::piq(pp, dd)
                                            : Scalar::piq(pp + dd, -dd);
            Word a = kx.first;
            a.insert(a.end(), y1.begin(), y1.end());
            Word b = x2;
            b.insert(b.end(), ky.second.begin(), ky.second.end());
            r.add_term(a, b, f * cx * cy);
        }
    return r;
}

// r(th_i) = th_i (x) 1 + 1 (x) th_i extended as an algebra map for the
// chosen twist
inline TensorElt coproduct_r(const SuperCartanDatum& d, const FreeElt& x,
                             Twist tw = Twist::plain) {
    TensorElt out;
    for (auto& [w, c] : x.t) {
        TensorElt acc;
        acc.add_term({}, {}, c);
        for (int l : w) {
            TensorElt g;
            g.add_term({l}, {}, Scalar::one());
            g.add_term({}, {l}, Scalar::one());
            acc = tensor_mul(d, acc, g, tw);
        }
        out += acc;
    }
    return out;
}

// ---- derivations ----

// _ir: remove one letter i, weighting by the prefix to its left
inline FreeElt deriv_left(const SuperCartanDatum& d, int i, const FreeElt& x) {
    FreeElt r;
    for (auto& [w, c] : x.t) {
        int ppre = 0;
        long dpre = 0;
        for (size_t j = 0; j < w.size(); ++j) {
            if (w[j] == i) {
                Word v = w;
                v.erase(v.begin() + j);
                r.add_term(v, Scalar::piq(ppre * d.parity[i], dpre) * c);
            }
            ppre += d.parity[w[j]];
            dpre += d.dot[w[j]][i];
        }
    }
    return r;
}

// r_i: remove one letter i, weighting by the suffix to its right
inline FreeElt deriv_right(const SuperCartanDatum& d, int i, const FreeElt& x) {
    FreeElt r;
    for (auto& [w, c] : x.t) {
        int psuf = 0;
        long dsuf = 0;
        for (size_t jj = w.size(); jj-- > 0;) {
            if (w[jj] == i) {
                Word v = w;
                v.erase(v.begin() + jj);
                r.add_term(v, Scalar::piq(psuf * d.parity[i], dsuf) * c);
            }
            psuf += d.parity[w[jj]];
            dsuf += d.dot[w[jj]][i];
        }
    }
    return r;
}

// ---- bilinear form ----

class HalfCtx {
  public:
    explicit HalfCtx(SuperCartanDatum d) : d_(std::move(d)) {
        auto rep = validate_datum(d_);
        if (!rep.valid) throw std::domain_error("invalid datum: " + rep.failure_text());
    }

    const SuperCartanDatum& datum() const { return d_; }

    // (th_i, th_i) = (1 - pi_i q_i^{-2})^{-1}
    Scalar gen_norm(int i) const {
        return (Scalar::one() - piqi(d_, i, 1, -2)).inverse();
    }

    Scalar form_words(const Word& a, const Word& b) {
        if (a.size() != b.size()) return Scalar::zero();
        if (word_weight(d_, a) != word_weight(d_, b)) return Scalar::zero();
        if (a.empty()) return Scalar::one();
        auto key = std::make_pair(a, b);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        int i = a[0];
        Word y(a.begin() + 1, a.end());
        FreeElt dx = deriv_left(d_, i, free_word(b));
        Scalar acc = Scalar::zero();
        for (auto& [v, c] : dx.t) acc += c * form_words(y, v);
        acc = gen_norm(i) * acc;
        memo_.emplace(std::move(key), acc);
        return acc;
    }

    Scalar form(const FreeElt& x, const FreeElt& y) {
        Scalar acc = Scalar::zero();
        for (auto& [a, ca] : x.t)
            for (auto& [b, cb] : y.t) acc += ca * cb * form_words(a, b);
        return acc;
    }

    // {x,y} = bar((bar x, bar y))
    Scalar curly(const FreeElt& x, const FreeElt& y) {
        return bar_scalar(form(bar_free(x), bar_free(y)));
    }

  private:
    SuperCartanDatum d_;
    std::map<std::pair<Word, Word>, Scalar> memo_;
};

// ---- defining relation representatives ----

// sum over n + n' = 1 - <i,j'> of
//   (-1)^{n'} pi_i^{n' p(j) + C(n',2)} th_i^(n) th_j th_i^(n')
inline FreeElt serre_elt(const SuperCartanDatum& d, int i, int j) {
    if (i == j) throw std::domain_error("serre_elt: i == j");
    long top = 1 - d.aij(i, j);
    FreeElt out;
    for (long np = 0; np <= top; ++np) {
        long n = top - np;
        Scalar c = piqi(d, i, np * d.parity[j] + tri(np), 0);
        if (np % 2 != 0) c = -c;
        out += c * (divided_power(d, i, n) * free_gen(j) * divided_power(d, i, np));
    }
    return out;
}

}  // namespace qcover
