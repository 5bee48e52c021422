#pragma once

// Text forms for scalars and algebra elements.  The printers here define the
// syntax the command line tool and the reports emit; the parsers accept that
// syntax back, so any printed element is machine readable.
//
//   scalar    a(q) + b(q)*p          e.g.  q^-1 + (2 - q^2)*p
//   free      th(i) words            e.g.  (q^2)*th(0)th(1) + th(1)th(0)
//   full      F(i) J(c,..) K(k,..) E(i)    juxtaposition is the product
//
// Coefficients other than 1 are parenthesized and joined with '*'.  Inside an
// element, '(' always opens a scalar subexpression; generator tokens carry
// their own parentheses.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcover/basis.hpp"
#include "qcover/covering.hpp"
#include "qcover/free_half.hpp"

namespace qcover {

// ---- printers ----

namespace detail {

inline std::string coeff_prefix(const Scalar& s, bool word_empty) {
    if (s == Scalar::one()) return word_empty ? "1" : "";
    std::string c = "(" + s.str() + ")";
    return word_empty ? c : c + "*";
}

inline std::string vec_args(const std::vector<long>& v) {
    std::string s;
    for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

}  // namespace detail

inline std::string element_str(const FreeElt& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (auto& [w, c] : x.t) {
        if (!s.empty()) s += " + ";
        s += detail::coeff_prefix(c, w.empty());
        for (int l : w) s += "th(" + std::to_string(l) + ")";
    }
    return s;
}

inline std::string element_str(const UElt& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (auto& [m, c] : x.t) {
        bool anyj = false, anyk = false;
        for (int b : m.jcl) anyj = anyj || b;
        for (long e : m.kex) anyk = anyk || e;
        bool empty = m.fw.empty() && m.ew.empty() && !anyj && !anyk;
        if (!s.empty()) s += " + ";
        s += detail::coeff_prefix(c, empty);
        for (int l : m.fw) s += "F(" + std::to_string(l) + ")";
        if (anyj) {
            std::vector<long> jv(m.jcl.begin(), m.jcl.end());
            s += "J(" + detail::vec_args(jv) + ")";
        }
        if (anyk) s += "K(" + detail::vec_args(m.kex) + ")";
        for (int l : m.ew) s += "E(" + std::to_string(l) + ")";
    }
    return s;
}

inline std::string element_str(const UTensorElt& x) {
    if (x.t.empty()) return "0";
    std::string s;
    for (auto& [k, c] : x.t) {
        UElt a, b;
        a.add_term(k.first, c);
        b.add_term(k.second, Scalar::one());
        if (!s.empty()) s += " + ";
        s += element_str(a) + " (x) " + element_str(b);
    }
    return s;
}

// ---- parsers ----

namespace detail {

class Cursor {
  public:
    explicit Cursor(const std::string& s) : s_(s) {}

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool done() {
        skip();
        return p_ >= s_.size();
    }
    char peek() {
        skip();
        return p_ < s_.size() ? s_[p_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++p_;
        return true;
    }
    bool eat_word(const char* w) {
        skip();
        size_t l = std::char_traits<char>::length(w);
        if (s_.compare(p_, l, w) != 0) return false;
        p_ += l;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    long integer() {
        skip();
        size_t q = p_;
        if (q < s_.size() && (s_[q] == '-' || s_[q] == '+')) ++q;
        size_t dig = q;
        while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
        if (q == dig) fail("expected an integer");
        long v = std::stol(s_.substr(p_, q - p_));
        p_ = q;
        return v;
    }
    std::vector<long> int_list() {
        std::vector<long> v;
        v.push_back(integer());
        while (eat(',')) v.push_back(integer());
        return v;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("parse error at position " + std::to_string(p_) + ": " + why);
    }

  private:
    const std::string& s_;
    size_t p_ = 0;
};

inline Scalar scalar_expr(Cursor& c);

inline Scalar scalar_primary(Cursor& c) {
    if (c.eat('(')) {
        Scalar v = scalar_expr(c);
        c.expect(')');
        return v;
    }
    if (c.eat('q')) return Scalar::q();
    if (c.eat('p')) return Scalar::pi();
    return Scalar::from_int(c.integer());
}

inline Scalar scalar_factor(Cursor& c) {
    bool neg = false;
    while (true) {
        if (c.eat('-'))
            neg = !neg;
        else if (c.eat('+'))
            ;
        else
            break;
    }
    Scalar v = scalar_primary(c);
    if (c.eat('^')) {
        long e = c.integer();
        if (e < 0 && !v.is_unit()) c.fail("negative power of a non-unit");
        v = v.pow(e);
    }
    return neg ? -v : v;
}

inline Scalar scalar_term(Cursor& c) {
    Scalar v = scalar_factor(c);
    while (true) {
        if (c.eat('*')) {
            v *= scalar_factor(c);
        } else if (c.eat('/')) {
            Scalar w = scalar_factor(c);
            if (!w.is_unit()) c.fail("division by a non-unit");
            v *= w.inverse();
        } else {
            break;
        }
    }
    return v;
}

inline Scalar scalar_expr(Cursor& c) {
    Scalar v = scalar_term(c);
    while (true) {
        if (c.eat('+'))
            v += scalar_term(c);
        else if (c.eat('-'))
            v -= scalar_term(c);
        else
            break;
    }
    return v;
}

// one generator token if the cursor sits on one
enum class Gen { none, th, E, F, K, J, one };

inline Gen peek_gen(Cursor& c) {
    if (c.eat_word("th(")) return Gen::th;
    if (c.eat_word("E(")) return Gen::E;
    if (c.eat_word("F(")) return Gen::F;
    if (c.eat_word("K(")) return Gen::K;
    if (c.eat_word("J(")) return Gen::J;
    return Gen::none;
}

}  // namespace detail

// scalar in the report string form
inline Scalar parse_scalar(const std::string& s) {
    detail::Cursor c(s);
    Scalar v = detail::scalar_expr(c);
    if (!c.done()) c.fail("trailing input");
    return v;
}

// sum of th(i) words with scalar prefixes
inline FreeElt parse_free(const SuperCartanDatum& d, const std::string& s) {
    detail::Cursor c(s);
    FreeElt out;
    bool first = true;
    while (true) {
        bool neg = false;
        if (c.eat('-'))
            neg = true;
        else if (!c.eat('+') && !first)
            c.fail("expected '+' or '-'");
        first = false;
        Scalar coef = Scalar::one();
        FreeElt term = free_one();
        bool any = false;
        while (true) {
            detail::Gen g = detail::peek_gen(c);
            if (g == detail::Gen::th) {
                long i = c.integer();
                c.expect(')');
                if (i < 0 || static_cast<size_t>(i) >= d.n()) c.fail("generator out of range");
                term = term * free_gen(static_cast<int>(i));
            } else if (g == detail::Gen::none) {
                char ch = c.peek();
                if (ch == '(' || ch == 'q' || ch == 'p' ||
                    std::isdigit(static_cast<unsigned char>(ch))) {
                    coef *= detail::scalar_factor(c);
                } else {
                    break;
                }
            } else {
                c.fail("this token does not belong to the half algebra");
            }
            any = true;
            c.eat('*');
        }
        if (!any) c.fail("empty term");
        if (neg) coef = -coef;
        out += coef * term;
        if (c.done()) break;
        if (c.peek() != '+' && c.peek() != '-') c.fail("trailing input");
    }
    return out;
}

// sum of E/F/K/J words with scalar prefixes
inline UElt parse_u(const Ctx& c, const std::string& s) {
    const SuperCartanDatum& d = c.datum();
    size_t m = c.rd().rankY;
    detail::Cursor cur(s);
    UElt out;
    bool first = true;
    while (true) {
        bool neg = false;
        if (cur.eat('-'))
            neg = true;
        else if (!cur.eat('+') && !first)
            cur.fail("expected '+' or '-'");
        first = false;
        Scalar coef = Scalar::one();
        UElt term = u_one(c);
        bool any = false;
        while (true) {
            detail::Gen g = detail::peek_gen(cur);
            if (g == detail::Gen::E || g == detail::Gen::F) {
                long i = cur.integer();
                cur.expect(')');
                if (i < 0 || static_cast<size_t>(i) >= d.n()) cur.fail("generator out of range");
                term = u_mul(c, term,
                             g == detail::Gen::E ? u_E(c, static_cast<int>(i))
                                                 : u_F(c, static_cast<int>(i)));
            } else if (g == detail::Gen::K || g == detail::Gen::J) {
                std::vector<long> v = cur.int_list();
                cur.expect(')');
                if (v.size() != m) cur.fail("weight vector has the wrong length");
                term = u_mul(c, term, g == detail::Gen::K ? u_K(c, v) : u_J(c, v));
            } else if (g == detail::Gen::th) {
                cur.fail("this token belongs to the half algebra");
            } else {
                char ch = cur.peek();
                if (ch == '(' || ch == 'q' || ch == 'p' ||
                    std::isdigit(static_cast<unsigned char>(ch))) {
                    coef *= detail::scalar_factor(cur);
                } else {
                    break;
                }
            }
            any = true;
            cur.eat('*');
        }
        if (!any) cur.fail("empty term");
        if (neg) coef = -coef;
        out += coef * term;
        if (cur.done()) break;
        if (cur.peek() != '+' && cur.peek() != '-') cur.fail("trailing input");
    }
    return out;
}

}  // namespace qcover
