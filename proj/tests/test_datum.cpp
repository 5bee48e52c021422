#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcover/datum.hpp"

using namespace qcover;

TEST_CASE("stock data validate") {
    auto b01 = datum_b01();
    auto r1 = validate_datum(b01);
    CHECK(r1.valid);
    CHECK(r1.is_super);
    CHECK(r1.consistent);
    CHECK(r1.finite_type);
    CHECK(b01.d(0) == 1);

    auto b02 = datum_b02();
    auto r2 = validate_datum(b02);
    CHECK(r2.valid);
    CHECK(r2.is_super);
    CHECK(r2.consistent);
    CHECK(r2.finite_type);
    CHECK(b02.d(0) == 2);
    CHECK(b02.d(1) == 1);
    CHECK(b02.aij(0, 1) == -1);
    CHECK(b02.aij(1, 0) == -2);

    auto aff = datum_rank2_odd_affine();
    auto r3 = validate_datum(aff);
    CHECK(r3.valid);
    CHECK(r3.consistent);
    CHECK_FALSE(r3.finite_type);

    auto ev = datum_inconsistent_even();
    auto r4 = validate_datum(ev);
    CHECK(r4.valid);
    CHECK_FALSE(r4.is_super);
    CHECK_FALSE(r4.consistent);
    CHECK_FALSE(r4.dot_even);
}

TEST_CASE("validation failures name the condition") {
    SuperCartanDatum odd_diag{"x", {0}, {{3}}};
    auto r = validate_datum(odd_diag);
    CHECK_FALSE(r.valid);
    CHECK(r.failure_text().find("(a)") != std::string::npos);

    SuperCartanDatum pos_off{"x", {0, 0}, {{2, 1}, {1, 2}}};
    r = validate_datum(pos_off);
    CHECK_FALSE(r.valid);
    CHECK(r.failure_text().find("(b)") != std::string::npos);

    SuperCartanDatum frac{"x", {0, 0}, {{4, -1}, {-1, 2}}};
    r = validate_datum(frac);
    CHECK_FALSE(r.valid);
    CHECK(r.failure_text().find("(b)") != std::string::npos);

    // odd generator with odd <i,j'>
    SuperCartanDatum odd_pair{"x", {1, 0}, {{2, -1}, {-1, 2}}};
    r = validate_datum(odd_pair);
    CHECK_FALSE(r.valid);
    CHECK(r.failure_text().find("(d)") != std::string::npos);

    SuperCartanDatum asym{"x", {0, 0}, {{2, -1}, {-2, 2}}};
    r = validate_datum(asym);
    CHECK_FALSE(r.valid);
}

TEST_CASE("default root datum") {
    auto b01 = datum_b01();
    auto rd1 = default_root_datum(b01);
    CHECK(rd1.rankY == 1);
    CHECK(rd1.embedX[0][0] == 2);
    validate_root_datum(b01, rd1);
    CHECK(pair_i(rd1, 0, {5}) == 5);

    auto b02 = datum_b02();
    auto rd2 = default_root_datum(b02);
    CHECK(rd2.rankY == 2);
    CHECK(rd2.embedX[0] == std::vector<long>{2, -2});
    CHECK(rd2.embedX[1] == std::vector<long>{-1, 2});
    validate_root_datum(b02, rd2);
    CHECK(pair_i(rd2, 0, rd2.embedX[1]) == -1);
    CHECK(pair_i(rd2, 1, rd2.embedX[0]) == -2);

    auto aff = datum_rank2_odd_affine();
    auto rda = default_root_datum(aff);
    CHECK(rda.rankY == 3);
    CHECK(rda.embedX[0] == std::vector<long>{2, -2, 0});
    CHECK(rda.embedX[1] == std::vector<long>{-2, 2, 1});
    validate_root_datum(aff, rda);
}

TEST_CASE("root datum validation rejects a degenerate pairing") {
    auto b01 = datum_b01();
    RootDatum rd;
    rd.rankY = 1;
    rd.pairing = {{2}};
    rd.embedY = {{1}};
    rd.embedX = {{1}};
    CHECK_THROWS_AS(validate_root_datum(b01, rd), std::domain_error);
}

TEST_CASE("reflections") {
    auto b02 = datum_b02();
    auto rd = default_root_datum(b02);
    std::mt19937_64 rng(20260822u);
    std::uniform_int_distribution<long> coord(-6, 6);
    for (int rep = 0; rep < 20; ++rep) {
        XWeight lam{coord(rng), coord(rng)};
        for (size_t i = 0; i < 2; ++i) {
            auto twice = reflect_x(rd, i, reflect_x(rd, i, lam));
            CHECK(twice == lam);
        }
    }
    // braid relation for m = 4
    auto s0 = reflection_matrix_x(rd, 0), s1 = reflection_matrix_x(rd, 1);
    auto lhs = mat_mul(s0, mat_mul(s1, mat_mul(s0, s1)));
    auto rhs = mat_mul(s1, mat_mul(s0, mat_mul(s1, s0)));
    CHECK(lhs == rhs);
    CHECK(mat_mul(s0, s0) == mat_identity<long>(2));
    CHECK(mat_mul(s1, s1) == mat_identity<long>(2));
}

TEST_CASE("coxeter orders") {
    auto b02 = datum_b02();
    CHECK(coxeter_m(b02, 0, 1) == 4);
    auto aff = datum_rank2_odd_affine();
    CHECK_FALSE(coxeter_m(aff, 0, 1).has_value());
}

TEST_CASE("weyl group of the rank-two datum") {
    auto b02 = datum_b02();
    auto rd = default_root_datum(b02);
    auto w = weyl_enumerate(b02, rd);
    REQUIRE(w.elements.size() == 8);
    std::vector<int> by_len(5, 0);
    int sign_sum = 0;
    for (size_t k = 0; k < w.elements.size(); ++k) {
        REQUIRE(w.lengths[k] <= 4);
        ++by_len[w.lengths[k]];
        sign_sum += (w.lengths[k] % 2 == 0) ? 1 : -1;
    }
    CHECK(by_len == std::vector<int>{1, 2, 2, 2, 1});
    CHECK(sign_sum == 0);

    // rho pairs to 1 with every generator and is fixed by no reflection
    auto rho = weyl_rho(b02, rd);
    CHECK(rho == XWeight{1, 1});
    for (size_t i = 0; i < 2; ++i) {
        CHECK(pair_i(rd, i, rho) == 1);
        CHECK(reflect_x(rd, i, rho) != rho);
    }
    CHECK(dominant(rd, rho));
    CHECK_FALSE(dominant(rd, reflect_x(rd, 0, rho)));

    auto aff = datum_rank2_odd_affine();
    CHECK_THROWS_AS(weyl_enumerate(aff, default_root_datum(aff)), std::domain_error);
}

TEST_CASE("sign statistics") {
    auto b02 = datum_b02();
    // single letter: c = 0
    for (size_t i = 0; i < 2; ++i) {
        Nu nu(2, 0);
        nu[i] = 1;
        auto s = sign_stats(b02, nu);
        CHECK(s.c == 0);
        CHECK(s.e == 0);
        CHECK(s.f == b02.dot[i][i]);
    }
    // two distinct letters: c = i.j
    auto s = sign_stats(b02, {1, 1});
    CHECK(s.c == b02.dot[0][1]);
    CHECK(s.e == 0);  // only one odd letter
    // n copies of one letter: e = C(n,2) p(i)
    for (long n = 0; n <= 5; ++n) {
        auto sn = sign_stats(b02, {0, n});
        CHECK(sn.e == tri(n));
        auto se = sign_stats(b02, {n, 0});
        CHECK(se.e == 0);
    }
    // pi_nu, q_nu
    auto st = sign_stats(b02, {1, 2});
    CHECK(st.pi_nu == Scalar::pi_power(2));
    CHECK(st.q_nu == Scalar::q_power(2 * 1 + 2 * 1));
}

TEST_CASE("parity of nu matches the dot parity on a consistent datum") {
    auto b02 = datum_b02();
    std::mt19937_64 rng(20260822u);
    std::uniform_int_distribution<long> part(0, 8);
    int checked = 0;
    while (checked < 50) {
        long a = part(rng), b = part(rng);
        if (a + b > 8) continue;
        Nu nu{a, b};
        ++checked;
        long half_dot = dot_nu(b02, nu, nu) / 2;
        CHECK(((half_dot - parity_nu(b02, nu)) & 1) == 0);
    }
}

TEST_CASE("nu enumeration and arithmetic") {
    CHECK(enumerate_nu(2, 3).size() == 4);
    CHECK(enumerate_nu(3, 4).size() == 15);
    CHECK(enumerate_nu(1, 6) == std::vector<Nu>{{6}});
    CHECK(height(Nu{2, 3}) == 5);
    CHECK(add_nu({1, 2}, {3, 0}) == Nu{4, 2});
    CHECK(sub_nu({1, 2}, {0, 2}) == Nu{1, 0});
    CHECK_FALSE(sub_nu({1, 2}, {2, 0}).has_value());
}

TEST_CASE("json round trip") {
    nlohmann::json j = {
        {"name", "b02"},
        {"parity", {0, 1}},
        {"dot", {{4, -2}, {-2, 2}}},
    };
    auto b = bundle_from_json(j);
    REQUIRE(b.report.valid);
    CHECK(b.datum.name == "b02");
    CHECK(b.rd.rankY == 2);
    CHECK(b.rd.embedX == default_root_datum(datum_b02()).embedX);

    // explicit pairing: solved i' agrees with the default construction
    j["root_datum"] = {{"pairingYX", {{1, 0}, {0, 1}}}};
    auto b2 = bundle_from_json(j);
    REQUIRE(b2.report.valid);
    CHECK(b2.rd.embedX == b.rd.embedX);

    nlohmann::json bad = {
        {"name", "bad"},
        {"parity", {1, 0}},
        {"dot", {{2, -1}, {-1, 2}}},
    };
    auto bb = bundle_from_json(bad);
    CHECK_FALSE(bb.report.valid);
    CHECK(bb.report.failure_text().find("(d)") != std::string::npos);
}
