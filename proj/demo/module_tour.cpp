// Walks the integrable module layer end to end on the two stock data: builds
// simple modules, tensors them, decomposes the result, and prints character
// tables next to the per-sign dimensions they predict.

#include <iostream>
#include <string>

#include <qcover/modules.hpp>

using namespace qcover;

namespace {

std::string pairing_str(const RootDatum& rd, const SuperCartanDatum& d, const XWeight& w) {
    std::string s = "(";
    for (size_t i = 0; i < d.parity.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(pair_i(rd, i, w));
    }
    return s + ")";
}

// ---- rank one: the classical string shapes ----

void rank_one_tour() {
    SuperCartanDatum d = datum_b01();
    Ctx c = Ctx::make(d);
    std::cout << "== rank one, one odd generator ==\n";
    for (long n = 0; n <= 4; ++n) {
        WeightModule V = build_simple(c, xweight_from_pairings(c.rd(), {n}), -1);
        std::cout << "V(" << n << ")  dim " << V.dim() << "  weights";
        for (const auto& w : V.wt) std::cout << " " << pair_i(c.rd(), 0, w);
        std::cout << "\n";
    }

    WeightModule A = build_simple(c, xweight_from_pairings(c.rd(), {2}), -1);
    WeightModule B = build_simple(c, xweight_from_pairings(c.rd(), {3}), -1);
    WeightModule T = tensor_module(c, A, B);
    std::cout << "V(2) (x) V(3)  dim " << T.dim() << "  =";
    for (const auto& piece : decompose(c, T))
        std::cout << " " << piece.mult << "*V" << pairing_str(c.rd(), d, piece.lambda);
    std::cout << "\n\n";
}

// ---- rank two: characters against per-sign dimensions ----

void rank_two_tour() {
    SuperCartanDatum d = datum_b02();
    Ctx c = Ctx::make(d);
    WeylGroupData W = weyl_enumerate(d, c.rd());
    std::cout << "== rank two, one even and one odd generator ==\n";
    std::cout << "Weyl group order " << W.elements.size() << "\n";

    XWeight lam = xweight_from_pairings(c.rd(), {1, 0});
    CharData ch = weyl_kac_character(d, c.rd(), W, lam);
    std::cout << "character of V(1,0): total " << ch.dim << "\n";
    for (const auto& [w, m] : ch.by_weight(c.rd()))
        std::cout << "  weight " << pairing_str(c.rd(), d, w) << "  mult " << m << "\n";

    for (int sign : {+1, -1}) {
        WeightModule V = build_simple(c, lam, sign);
        std::cout << "built at sign " << (sign > 0 ? "+1" : "-1") << ": dim " << V.dim()
                  << (verify_integrable(c, V) ? "  (integrable)" : "  (not integrable!)") << "\n";
    }
    std::cout << "\n";
}

} // namespace

int main() {
    rank_one_tour();
    rank_two_tour();
    return 0;
}
