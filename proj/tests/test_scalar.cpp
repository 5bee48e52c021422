#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "qcover/qcomb.hpp"
#include "qcover/scalar.hpp"

using namespace qcover;

namespace {

Scalar rand_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> exp(-3, 3), coef(-4, 4);
    auto poly = [&](bool nonzero) {
        LaurentPoly p;
        for (int k = 0; k < 3; ++k) p.add_term(exp(rng), Rat(coef(rng)));
        if (nonzero && p.is_zero()) p.add_term(0, Rat(1));
        return p;
    };
    LaurentPoly np = poly(false), nm = poly(false), dp = poly(true), dm = poly(true);
    return Scalar(RationalFn(np, dp), RationalFn(nm, dm));
}

}  // namespace

TEST_CASE("laurent polynomials keep a canonical sparse form") {
    LaurentPoly p = LaurentPoly::term(Rat(1), 2) + LaurentPoly::term(Rat(-1), 2);
    CHECK(p.is_zero());
    LaurentPoly r = LaurentPoly::term(Rat(3), -1) + LaurentPoly::term(Rat(1), 4);
    CHECK(r.coeffs().size() == 2);
    CHECK(r.min_exp() == -1);
    CHECK(r.max_exp() == 4);
    CHECK(r.str() == "3*q^-1 + q^4");
}

TEST_CASE("rational functions normalize to representational equality") {
    LaurentPoly one = LaurentPoly::one();
    LaurentPoly q = LaurentPoly::term(Rat(1), 1);
    LaurentPoly q2 = LaurentPoly::term(Rat(1), 2);
    LaurentPoly q3 = LaurentPoly::term(Rat(1), 3);
    LaurentPoly q4 = LaurentPoly::term(Rat(1), 4);

    RationalFn a(one - q4, one - q2);
    CHECK(a == RationalFn(one + q2));
    CHECK(a.is_polynomial());

    RationalFn b(q - q3, one + q);
    CHECK(b == RationalFn(q - q2));

    // cross-multiplication equality agrees with representational equality
    RationalFn c(one, one - q);
    RationalFn d(one + q, one - q2);
    CHECK(c == d);

    // denominator canonical form: integral, positive leading coefficient
    RationalFn e(one, (one - q) * Rat(-3));
    CHECK(e.den().coeff(1) == 1);
    CHECK(e.den().coeff(0) == -1);
    CHECK(e.num().coeff(0) == Rat(1, 3));

    CHECK_THROWS_AS(RationalFn(one, LaurentPoly()), std::domain_error);
}

TEST_CASE("specialize projects onto the pi = +-1 components") {
    CHECK(specialize(Scalar::pi(), +1) == RationalFn(Rat(1)));
    CHECK(specialize(Scalar::pi(), -1) == RationalFn(Rat(-1)));
    Scalar s = Scalar::pi() * Scalar::q() + Scalar::q_power(-1);
    CHECK(specialize(s, -1) ==
          RationalFn(LaurentPoly::term(Rat(-1), 1) + LaurentPoly::term(Rat(1), -1)));
}

TEST_CASE("bar sends q to pi q^-1 and is an involutive ring map") {
    CHECK(bar_scalar(Scalar::q()) == Scalar::pi() * Scalar::q_power(-1));
    CHECK(bar_scalar(Scalar::one()) == Scalar::one());

    Scalar s = Scalar::pi() *
               Scalar(RationalFn(LaurentPoly::term(Rat(1), 2) + LaurentPoly::one(),
                                 LaurentPoly::term(Rat(1), 1) - LaurentPoly::one()),
                      RationalFn(LaurentPoly::term(Rat(1), 2) + LaurentPoly::one(),
                                 LaurentPoly::term(Rat(1), 1) - LaurentPoly::one()));
    CHECK(bar_scalar(bar_scalar(s)) == s);

    std::mt19937_64 rng(20260822);
    for (int n = 0; n < 200; ++n) {
        Scalar x = rand_scalar(rng), y = rand_scalar(rng);
        CHECK(bar_scalar(bar_scalar(x)) == x);
        CHECK(bar_scalar(x + y) == bar_scalar(x) + bar_scalar(y));
        CHECK(bar_scalar(x * y) == bar_scalar(x) * bar_scalar(y));
    }
}

TEST_CASE("laurent subring membership with witness") {
    // (q + q^-1) + (1 - q) pi
    Scalar s = Scalar::q() + Scalar::q_power(-1) +
               (Scalar::one() - Scalar::q()) * Scalar::pi();
    auto w = laurent_witness(s);
    REQUIRE(w.has_value());
    CHECK(w->first == LaurentPoly::term(Rat(1), 1) + LaurentPoly::term(Rat(1), -1));
    CHECK(w->second == LaurentPoly::one() - LaurentPoly::term(Rat(1), 1));

    Scalar bad = (Scalar::one() - Scalar::q()).inverse();
    CHECK_FALSE(is_laurent(bad));
    Scalar bad2 = (Scalar::pi() * Scalar::q() - Scalar::q_power(-1)).inverse();
    CHECK_FALSE(is_laurent(bad2));
    // half-integer coefficients are not in the subring either
    CHECK_FALSE(is_laurent(Scalar::from_rat(Rat(1, 2))));
    CHECK(is_laurent(qbinom_dp(5, 2, 1, 1)));
}

TEST_CASE("string form a(q) + b(q)*p") {
    Scalar s = Scalar::q_power(-1) + Scalar::q() * Scalar::pi();
    CHECK(s.str() == "q^-1 + q*p");
    CHECK(Scalar::one().str() == "1");
    CHECK(Scalar::pi().str() == "p");
    CHECK((Scalar::from_int(2) * Scalar::pi()).str() == "2*p");
}

TEST_CASE("q-integers") {
    CHECK(qint_dp(0, 1, 1).is_zero());
    CHECK(qint_dp(2, 1, 1) == Scalar::pi() * Scalar::q() + Scalar::q_power(-1));
    for (long d : {1L, 2L})
        for (int par : {0, 1}) {
            CHECK(qint_dp(-1, d, par) == -Scalar::pi_power(par));
            CHECK(qint_dp(1, d, par) == Scalar::one());
        }
    CHECK(qfact_dp(0, 1, 1) == Scalar::one());
    CHECK(qfact_dp(2, 1, 1) == qint_dp(2, 1, 1));
    CHECK(qfact_dp(3, 1, 1) == qint_dp(3, 1, 1) * qint_dp(2, 1, 1));
}

TEST_CASE("binomial edge rows") {
    for (long d : {1L, 2L})
        for (int par : {0, 1}) {
            for (long t = 0; t <= 4; ++t) {
                Scalar expect = Scalar::from_int(t % 2 == 0 ? 1 : -1) *
                                Scalar::pi_power(par * tri(t + 1));
                CHECK(qbinom_dp(-1, t, d, par) == expect);
            }
            for (long a = 0; a <= 3; ++a)
                for (long t = a + 1; t <= 4; ++t) CHECK(qbinom_dp(a, t, d, par).is_zero());
            CHECK(qbinom_dp(3, 0, d, par) == Scalar::one());
        }
    CHECK(qbinom_dp(2, 1, 1, 1) == qint_dp(2, 1, 1));
}

TEST_CASE("binomials agree with the factorial quotient on a >= t >= 0") {
    for (long d : {1L, 2L})
        for (int par : {0, 1})
            for (long a = 0; a <= 5; ++a)
                for (long t = 0; t <= a; ++t) {
                    Scalar lhs = qbinom_dp(a, t, d, par) * qfact_dp(t, d, par) *
                                 qfact_dp(a - t, d, par);
                    CHECK(lhs == qfact_dp(a, d, par));
                }
}

TEST_CASE("negation identity") {
    for (long d : {1L, 2L})
        for (int par : {0, 1})
            for (long a = -3; a <= 3; ++a)
                for (long t = 0; t <= 3; ++t) {
                    Scalar rhs = Scalar::from_int(t % 2 == 0 ? 1 : -1) *
                                 Scalar::pi_power(par * (t * a - tri(t))) *
                                 qbinom_dp(t - a - 1, t, d, par);
                    CHECK(qbinom_dp(a, t, d, par) == rhs);
                }
}

TEST_CASE("pascal identity") {
    for (long d : {1L, 2L})
        for (int par : {0, 1})
            for (long ap = -3; ap <= 3; ++ap)
                for (long app = -3; app <= 3; ++app)
                    for (long t = 0; t <= 3; ++t) {
                        Scalar sum = Scalar::zero();
                        for (long tp = 0; tp <= t; ++tp) {
                            long tpp = t - tp;
                            sum += Scalar::pi_power(par * (tp * tpp + ap * tpp)) *
                                   Scalar::q_power(d * (ap * tpp - app * tp)) *
                                   qbinom_dp(ap, tp, d, par) * qbinom_dp(app, tpp, d, par);
                        }
                        CHECK(qbinom_dp(ap + app, t, d, par) == sum);
                    }
}

TEST_CASE("generating function in an auxiliary variable") {
    for (long d : {1L, 2L})
        for (int par : {0, 1})
            for (long a = 0; a <= 5; ++a) {
                // coefficients of prod_{j=0}^{a-1} (1 + (pi_i q_i^2)^j z)
                std::vector<Scalar> cz{Scalar::one()};
                for (long j = 0; j < a; ++j) {
                    std::vector<Scalar> next(cz.size() + 1, Scalar::zero());
                    Scalar f = Scalar::piq(par * j, 2 * d * j);
                    for (size_t k = 0; k < cz.size(); ++k) {
                        next[k] += cz[k];
                        next[k + 1] += cz[k] * f;
                    }
                    cz = std::move(next);
                }
                for (long t = 0; t <= a; ++t) {
                    Scalar expect = Scalar::pi_power(par * tri(t)) *
                                    Scalar::q_power(d * t * (a - 1)) *
                                    qbinom_dp(a, t, d, par);
                    CHECK(cz[static_cast<size_t>(t)] == expect);
                }
            }
}

TEST_CASE("alternating sum vanishes for a >= 1") {
    for (long d : {1L, 2L})
        for (int par : {0, 1})
            for (long a = 1; a <= 6; ++a) {
                Scalar sum = Scalar::zero();
                for (long t = 0; t <= a; ++t)
                    sum += Scalar::from_int(t % 2 == 0 ? 1 : -1) *
                           Scalar::pi_power(par * tri(t)) * Scalar::q_power(d * t * (a - 1)) *
                           qbinom_dp(a, t, d, par);
                CHECK(sum.is_zero());
            }
}
