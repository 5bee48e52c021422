#include <catch2/catch_amalgamated.hpp>

#include "qcover/basis.hpp"
#include "qcover/character.hpp"

using namespace qcover;

namespace {

struct CharFixture {
    SuperCartanDatum d;
    RootDatum rd;
    WeylGroupData W;
    explicit CharFixture(SuperCartanDatum dd)
        : d(std::move(dd)), rd(default_root_datum(d)), W(weyl_enumerate(d, rd)) {}
};

CharFixture& f01() {
    static CharFixture f(datum_b01());
    return f;
}
CharFixture& f02() {
    static CharFixture f(datum_b02());
    return f;
}

}  // namespace

TEST_CASE("trivial weight gives the one dimensional character") {
    for (CharFixture* f : {&f01(), &f02()}) {
        CharData ch = weyl_kac_character(f->d, f->rd, f->W, XWeight(f->rd.rankY, 0));
        CHECK(ch.dim == 1);
        REQUIRE(ch.mult.size() == 1);
        CHECK(ch.mult.begin()->first == Nu(f->d.n(), 0));
        CHECK(ch.mult.begin()->second == 1);
    }
}

TEST_CASE("rank one characters are strings") {
    CharFixture& f = f01();
    for (long n = 0; n <= 6; ++n) {
        CharData ch = weyl_kac_character(f.d, f.rd, f.W, XWeight{n});
        CHECK(ch.dim == n + 1);
        REQUIRE(ch.mult.size() == (size_t)n + 1);
        for (long k = 0; k <= n; ++k) {
            auto it = ch.mult.find(Nu{k});
            REQUIRE(it != ch.mult.end());
            CHECK(it->second == 1);
        }
        auto bw = ch.by_weight(f.rd);
        for (long k = 0; k <= n; ++k) CHECK(bw.at(XWeight{n - 2 * k}) == 1);
    }
}

TEST_CASE("rank two characters are positive and Weyl invariant") {
    CharFixture& f = f02();
    for (auto& lam : std::vector<XWeight>{{1, 0}, {0, 1}, {1, 1}, {2, 2}}) {
        CharData ch = weyl_kac_character(f.d, f.rd, f.W, lam);
        CHECK(ch.mult.at(Nu{0, 0}) == 1);
        long total = 0;
        for (auto& [nu, c] : ch.mult) {
            CHECK(c > 0);
            total += c;
        }
        CHECK(total == ch.dim);
        auto bw = ch.by_weight(f.rd);
        for (auto& w : f.W.elements)
            for (auto& [x, c] : bw) CHECK(bw.at(xw_apply(w, x)) == c);
    }
}

TEST_CASE("half algebra dimensions come out of the denominator series") {
    CharFixture& f1 = f01();
    auto ch1 = chU_minus(f1.d, f1.rd, f1.W, 8);
    for (long h = 0; h <= 8; ++h) CHECK(ch1.at(Nu{h}) == 1);

    CharFixture& f2 = f02();
    auto ch2 = chU_minus(f2.d, f2.rd, f2.W, 6);
    static Ctx c = Ctx::make(datum_b02());
    for (long h = 0; h <= 6; ++h)
        for (auto& nu : enumerate_nu(2, h)) {
            auto it = ch2.find(nu);
            long predicted = it == ch2.end() ? 0 : it->second;
            INFO("weight " << nu[0] << "," << nu[1]);
            CHECK(predicted == (long)c.dim_f(nu));
        }
}

TEST_CASE("character rejects weights outside the dominant cone") {
    CHECK_THROWS_AS(weyl_kac_character(f01().d, f01().rd, f01().W, XWeight{-1}),
                    std::domain_error);
    CHECK_THROWS_AS(weyl_kac_character(f02().d, f02().rd, f02().W, XWeight{1, -2}),
                    std::domain_error);
}

TEST_CASE("lattice membership of weight differences") {
    CHECK(x_in_iprime(f02().rd, XWeight{1, 0}).has_value());
    CHECK_FALSE(x_in_iprime(f02().rd, XWeight{0, 1}).has_value());
    auto nu = x_in_iprime(f02().rd, XWeight{1, 0});
    REQUIRE(nu.has_value());
    CHECK(*nu == (Nu{1, 1}));
}

TEST_CASE("evenness of the odd pairings") {
    CHECK(odd_pairings_even(f02().d, f02().rd, XWeight{1, 0}));
    CHECK_FALSE(odd_pairings_even(f02().d, f02().rd, XWeight{0, 1}));
    CHECK(odd_pairings_even(f01().d, f01().rd, XWeight{4}));
    CHECK_FALSE(odd_pairings_even(f01().d, f01().rd, XWeight{3}));
}
