#include <catch2/catch_amalgamated.hpp>

#include <qcover/serre_plus.hpp>

using namespace qcover;

namespace {

Ctx& b02() {
    static Ctx c = Ctx::make(datum_b02());
    return c;
}

Ctx& aff() {
    static Ctx c = Ctx::make(datum_rank2_odd_affine());
    return c;
}

}  // namespace

TEST_CASE("degenerate family members collapse to plain divided powers") {
    Ctx& c = b02();
    for (int i : {0, 1}) {
        int j = 1 - i;
        for (long n = 0; n <= 3; ++n) {
            CHECK(higher_serre(c, HsKind::e, i, j, n, 0) == u_Edp(c, j, n));
            CHECK(higher_serre(c, HsKind::e_prime, i, j, n, 0) == u_Edp(c, j, n));
            CHECK(higher_serre(c, HsKind::f, i, j, n, 0) == u_Fdp(c, j, n));
            CHECK(higher_serre(c, HsKind::f_prime, i, j, n, 0) == u_Fdp(c, j, n));
        }
        CHECK(higher_serre(c, HsKind::e, i, j, 1, -1).is_zero());
    }
}

TEST_CASE("the four corners are symmetry images of each other") {
    Ctx& c = b02();
    for (int i : {0, 1}) {
        int j = 1 - i;
        for (long n = 1; n <= 2; ++n)
            for (long m = 0; m <= 3; ++m) {
                UElt e = higher_serre(c, HsKind::e, i, j, n, m);
                UElt ep = higher_serre(c, HsKind::e_prime, i, j, n, m);
                UElt f = higher_serre(c, HsKind::f, i, j, n, m);
                UElt fp = higher_serre(c, HsKind::f_prime, i, j, n, m);
                INFO("i " << i << " n " << n << " m " << m);
                CHECK(ep == u_sigma(c, e));
                CHECK(fp == u_sigma(c, u_omega(c, u_omega(c, f))));
                CHECK(e == u_omega(c, u_bar(c, fp)));
                CHECK(ep == u_omega(c, u_bar(c, f)));
            }
    }
}

TEST_CASE("the level one top member is the quadratic relation image") {
    Ctx& c = b02();
    const auto& d = c.datum();
    for (int i : {0, 1}) {
        int j = 1 - i;
        UElt rel = u_plus(c, serre_elt(d, i, j));
        CHECK(rel == higher_serre(c, HsKind::e_prime, i, j, 1, 1 - d.aij(i, j)));
    }
}

TEST_CASE("single letter ladders hold in the normal form") {
    Ctx& c = b02();
    for (int i : {0, 1}) {
        int j = 1 - i;
        for (long n = 1; n <= 2; ++n)
            for (long m = 0; m <= 3; ++m) {
                INFO("i " << i << " n " << n << " m " << m);
                CHECK(hs_ladder_raise(c, i, j, n, m).is_zero());
                CHECK(hs_ladder_lower(c, i, j, n, m).is_zero());
            }
    }
}

TEST_CASE("divided power ladders hold in the normal form") {
    Ctx& c = b02();
    for (int i : {0, 1}) {
        int j = 1 - i;
        for (long n = 1; n <= 2; ++n)
            for (long m = 0; m <= 2; ++m)
                for (long p = 1; p <= 3; ++p) {
                    INFO("i " << i << " n " << n << " m " << m << " power " << p);
                    CHECK(hs_dp_raise(c, i, j, n, m, p).is_zero());
                    CHECK(hs_dp_lower(c, i, j, n, m, p).is_zero());
                }
    }
}

TEST_CASE("the top exponent recursion drops a level") {
    for (Ctx* cp : {&b02(), &aff()}) {
        Ctx& c = *cp;
        for (int i : {0, 1}) {
            int j = 1 - i;
            for (long n = 1; n <= 2; ++n) {
                INFO(c.datum().name << " i " << i << " n " << n);
                CHECK(hs_level_drop(c, i, j, n).is_zero());
            }
        }
    }
}

TEST_CASE("the level drop coefficients are pinned by the odd middle letter") {
    Ctx& c = b02();
    const auto& d = c.datum();
    const int i = 0, j = 1;  // even outer letter, odd middle letter
    const long n = 2, m = 1 - n * d.aij(i, j);
    UElt e = higher_serre(c, HsKind::e, i, j, n, m);
    UElt lhs = u_mul(c, u_F(c, j), e) -
               piqi(d, j, m * d.parity[i] + n, 0) * u_mul(c, e, u_F(c, j));
    UElt lower = higher_serre(c, HsKind::e, i, j, n - 1, m);
    Scalar inv = (piqi(d, j, 1, 1) - piqi(d, j, 0, -1)).inverse();
    auto rhs = [&](long pa, long pb) {
        return piqi(d, j, n - 1 + pa, n - 1) * inv *
                   u_mul(c, u_Ktilde(c, unit_nu(c, j, -1)), lower) -
               piqi(d, j, pb, 1 - n) * inv *
                   u_mul(c, u_Jtilde(c, unit_nu(c, j)), u_Ktilde(c, unit_nu(c, j)),
                         u_bar(c, lower));
    };
    CHECK((lhs - rhs(0, 0)).is_zero());
    // shifting either parity exponent by one spoils the identity
    CHECK(!(lhs - rhs(1, 0)).is_zero());
    CHECK(!(lhs - rhs(0, 1)).is_zero());
}

TEST_CASE("members beyond the top vanish in the quotient") {
    for (Ctx* cp : {&b02(), &aff()}) {
        Ctx& c = *cp;
        const auto& d = c.datum();
        for (int i : {0, 1}) {
            int j = 1 - i;
            for (long n = 1; n <= 2; ++n) {
                long top = hs_top(d, i, j, n);
                for (long m = top + 1; m <= 6; ++m) {
                    INFO(d.name << " i " << i << " n " << n << " m " << m);
                    REQUIRE(u_reduce(c, higher_serre(c, HsKind::e, i, j, n, m)).is_zero());
                }
                INFO(d.name << " i " << i << " n " << n << " boundary " << top);
                REQUIRE(!u_reduce(c, higher_serre(c, HsKind::e, i, j, n, top)).is_zero());
            }
        }
    }
}

TEST_CASE("the other corners vanish beyond the top as well") {
    Ctx& c = b02();
    const auto& d = c.datum();
    for (int i : {0, 1}) {
        int j = 1 - i;
        long top = hs_top(d, i, j, 1);
        for (HsKind k : {HsKind::e_prime, HsKind::f, HsKind::f_prime}) {
            CHECK(u_reduce(c, higher_serre(c, k, i, j, 1, top + 1)).is_zero());
            CHECK(!u_reduce(c, higher_serre(c, k, i, j, 1, top)).is_zero());
        }
    }
}
