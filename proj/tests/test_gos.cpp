#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "toric/errors.hpp"
#include "toric/gos.hpp"

using namespace toric;
using support::example_sec3;
using support::example_sec4;
using support::make_arrangement;
using support::triangle;

namespace {

int total_degree(const GosTerm& t) { return std::popcount(t.mono) + int(t.s.size()); }

bool homogeneous_degree(const GosElement& x, int& deg) {
    deg = -1;
    for (const auto& [t, c] : x.terms) {
        int d = total_degree(t);
        if (deg < 0) deg = d;
        if (d != deg) return false;
    }
    return true;
}

GosTerm term_at(const LayerPoset& poset, uint32_t atoms_mask, std::vector<int> s,
                uint64_t mono = 0) {
    for (int i = 0; i < poset.size(); ++i)
        if (poset.rank_of[i] == int(s.size()) && poset.atoms_below[i] == atoms_mask)
            return GosTerm{i, std::move(s), mono};
    REQUIRE(false);
    return {};
}

} // namespace

TEST_CASE("classical Orlik-Solomon engine") {
    SUBCASE("boolean arrangement: every subset is nbc") {
        OsAlgebra os({0, 1, 2}, IntMatrix::identity(3));
        CHECK(os.nbc_sets(0).size() == 1);
        CHECK(os.nbc_sets(1).size() == 3);
        CHECK(os.nbc_sets(2).size() == 3);
        CHECK(os.nbc_sets(3).size() == 1);
    }
    SUBCASE("triangle top degree has dimension two") {
        OsAlgebra os({0, 1, 2}, IntMatrix(2, 3, {1, 0, 1, 0, 1, 1}));
        auto nbc = os.nbc_sets(2);
        REQUIRE(nbc.size() == 2);
        CHECK(nbc[0] == OsAlgebra::Word{0, 2});
        CHECK(nbc[1] == OsAlgebra::Word{1, 2});
        auto& e = os.straighten_word({0, 1});
        REQUIRE(e.size() == 2);
        CHECK(e.at({0, 2}) == 1);
        CHECK(e.at({1, 2}) == -1);
    }
    SUBCASE("straightening a small broken circuit inside a larger word") {
        // 1,2,3 coplanar plus a transverse element
        IntMatrix cols(3, 4, {1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1});
        OsAlgebra os({0, 1, 2, 3}, cols);
        auto& e = os.straighten_word({0, 1, 3});
        REQUIRE(e.size() == 2);
        CHECK(e.at({0, 2, 3}) == 1);
        CHECK(e.at({1, 2, 3}) == -1);
    }
    SUBCASE("product with signs") {
        OsAlgebra os({0, 1}, IntMatrix::identity(2));
        OsAlgebra::Element f0{{{0}, Int(1)}}, f1{{{1}, Int(1)}};
        auto p01 = os.product(f0, f1);
        auto p10 = os.product(f1, f0);
        REQUIRE(p01.size() == 1);
        CHECK(p01.at({0, 1}) == 1);
        CHECK(p10.at({0, 1}) == -1);
    }
}

TEST_CASE("gos basis and dimensions for the rank-2 example") {
    GosAlgebra gos(example_sec4());
    auto basis = gos.basis();
    CHECK(basis.size() == 19);

    HilbertTable t = gos.hilbert_table();
    CHECK(t.dims[0][0] == 1);
    CHECK(t.dims[1][0] == 2);
    CHECK(t.dims[0][1] == 4);
    CHECK(t.dims[2][0] == 1);
    CHECK(t.dims[1][1] == 4);
    CHECK(t.dims[0][2] == 7);
    CHECK(t.degree_sum(0) == 1);
    CHECK(t.degree_sum(1) == 6);
    CHECK(t.degree_sum(2) == 12);

    auto poly = poincare_polynomial(gos.poset());
    Int p1 = 0;
    for (const Int& c : poly) p1 += c;
    CHECK(Int(long(basis.size())) == p1);
    CHECK(t.total() == p1);

    SUBCASE("empty arrangement has the exterior algebra") {
        ToricArrangement d;
        d.rank = 3;
        GosAlgebra g(d);
        CHECK(g.basis().size() == 8);
    }
    SUBCASE("non-essential arrangement is rejected") {
        CHECK_THROWS_AS(GosAlgebra(make_arrangement(2, {{1, 0}})), Infeasible);
    }
}

TEST_CASE("straighten broken circuits in the rank-2 example") {
    GosAlgebra gos(example_sec4());
    const LayerPoset& p = gos.poset();

    SUBCASE("y_{p,(1,2)} = y_{p,13} - y_{p,23}") {
        RawGosTerm raw;
        raw.layer = term_at(p, 0b0111, {0, 1}).layer;
        raw.s = {0, 1};
        GosElement e = gos.straighten({raw}, Ring::Z);
        GosElement expect{Ring::Z, {}};
        expect.terms[term_at(p, 0b0111, {0, 2})] = 1;
        expect.terms[term_at(p, 0b0111, {1, 2})] = -1;
        CHECK(e == expect);
    }
    SUBCASE("already-nbc input is fixed") {
        RawGosTerm raw;
        raw.layer = term_at(p, 0b0111, {1, 2}).layer;
        raw.s = {1, 2};
        GosElement e = gos.straighten({raw}, Ring::Z);
        REQUIRE(e.terms.size() == 1);
        CHECK(e.terms.begin()->first == term_at(p, 0b0111, {1, 2}));
        CHECK(e.terms.begin()->second == 1);
    }
    SUBCASE("y_{q,(1,3)} = y_{q,14} - y_{q,34}") {
        RawGosTerm raw;
        raw.layer = term_at(p, 0b1101, {0, 2}).layer;
        raw.s = {0, 2};
        GosElement e = gos.straighten({raw}, Ring::Z);
        GosElement expect{Ring::Z, {}};
        expect.terms[term_at(p, 0b1101, {0, 3})] = 1;
        expect.terms[term_at(p, 0b1101, {2, 3})] = -1;
        CHECK(e == expect);
    }
    SUBCASE("unsorted input picks up the permutation sign") {
        RawGosTerm raw;
        raw.layer = term_at(p, 0b1101, {0, 3}).layer;
        raw.s = {3, 0};
        GosElement e = gos.straighten({raw}, Ring::Z);
        REQUIRE(e.terms.size() == 1);
        CHECK(e.terms.begin()->second == -1);
    }
    SUBCASE("dependent or mismatched input is rejected") {
        RawGosTerm raw;
        raw.layer = term_at(p, 0b0111, {0, 1}).layer;
        raw.s = {0, 1, 2};
        CHECK_THROWS_AS(gos.straighten({raw}, Ring::Z), InvalidInput);
        raw.s = {0, 3};
        CHECK_THROWS_AS(gos.straighten({raw}, Ring::Z), InvalidInput);
    }
}

TEST_CASE("products in the rank-2 example") {
    GosAlgebra gos(example_sec4());
    const LayerPoset& p = gos.poset();

    SUBCASE("y1 * y3 spreads over three points and straightens") {
        GosElement prod = gos.multiply(gos.atom(0, Ring::Z), gos.atom(2, Ring::Z));
        GosElement expect{Ring::Z, {}};
        expect.terms[term_at(p, 0b0111, {0, 2})] = 1; // p
        expect.terms[term_at(p, 0b1101, {0, 3})] = 1; // q, straightened
        expect.terms[term_at(p, 0b1101, {2, 3})] = -1;
        expect.terms[term_at(p, 0b0101, {0, 2})] = 1; // r
        CHECK(prod == expect);
    }
    SUBCASE("unit element") {
        GosElement y = gos.atom(1, Ring::Z);
        CHECK(gos.multiply(gos.one(Ring::Z), y) == y);
        CHECK(gos.multiply(y, gos.one(Ring::Z)) == y);
    }
    SUBCASE("y2 * y3 is the single point p") {
        GosElement prod = gos.multiply(gos.atom(1, Ring::Z), gos.atom(2, Ring::Z));
        GosElement expect{Ring::Z, {}};
        expect.terms[term_at(p, 0b0111, {1, 2})] = 1;
        CHECK(prod == expect);
    }
    SUBCASE("square of an atom vanishes") {
        GosElement y = gos.atom(0, Ring::Z);
        CHECK(gos.multiply(y, y).zero());
    }
    SUBCASE("parallel translates multiply to zero") {
        auto d = make_arrangement(2, {{1, 0}, {1, 0}, {0, 1}}, {"0", "1/2", "0"});
        GosAlgebra g(d);
        CHECK(g.multiply(g.atom(0, Ring::Z), g.atom(1, Ring::Z)).zero());
    }
}

TEST_CASE("rational generator map") {
    SUBCASE("standard basis characters give unit coordinates") {
        GosAlgebra gos(make_arrangement(2, {{1, 0}, {0, 1}}));
        auto gens = gos.rational_generator_map();
        CHECK(gens[0].terms.size() == 1);
        CHECK(gens[1].terms.size() == 1);
    }
    SUBCASE("running example relation maps to zero in normal form") {
        GosAlgebra gos(make_arrangement(2, {{2, -1}, {-32, 21}, {-43, 29}}));
        auto gens = gos.rational_generator_map();
        // 5 chi1 + 3 chi2 - 2 chi3 = 0
        GosElement acc = gos.add(gos.add(gos.scale(gens[0], 5), gos.scale(gens[1], 3)),
                                 gos.scale(gens[2], -2));
        CHECK(acc.zero());
    }
    SUBCASE("e3 = e1 + 3 e2 in the rank-2 example") {
        GosAlgebra gos(example_sec4());
        auto gens = gos.rational_generator_map();
        GosElement rhs = gos.add(gens[0], gos.scale(gens[1], 3));
        CHECK(gens[2] == rhs);
    }
}

TEST_CASE("algebra laws on random centred arrangements") {
    std::mt19937 rng(90210);
    for (int iter = 0; iter < 10; ++iter) {
        int rank = 2 + int(rng() % 2);
        int n = rank + 1 + int(rng() % 2);
        auto d = support::random_centred(rng, rank, n);
        GosAlgebra gos(d);
        auto basis = gos.basis();
        auto pick = [&]() {
            GosElement e{Ring::Z, {}};
            e.terms[basis[rng() % basis.size()]] = 1 + int(rng() % 3);
            return e;
        };
        for (int t = 0; t < 6; ++t) {
            GosElement x = pick(), y = pick(), z = pick();
            GosElement xy = gos.multiply(x, y);
            CHECK(gos.multiply(xy, z) == gos.multiply(x, gos.multiply(y, z)));
            // graded commutativity in total degree
            int dx, dy;
            REQUIRE(homogeneous_degree(x, dx));
            REQUIRE(homogeneous_degree(y, dy));
            GosElement yx = gos.multiply(y, x);
            CHECK(xy == gos.scale(yx, (dx * dy) % 2 == 0 ? 1 : -1));
            if (dx % 2 == 1) CHECK(gos.multiply(x, x).zero());
        }
    }
}

TEST_CASE("base change: Z and Q structure constants agree") {
    std::mt19937 rng(777);
    for (int iter = 0; iter < 4; ++iter) {
        auto d = support::random_centred(rng, 2, 3 + int(rng() % 2));
        GosAlgebra gos(d);
        auto basis = gos.basis();
        for (int t = 0; t < 10; ++t) {
            const GosTerm& a = basis[rng() % basis.size()];
            const GosTerm& b = basis[rng() % basis.size()];
            GosElement xz{Ring::Z, {{a, Rat(1)}}}, yz{Ring::Z, {{b, Rat(1)}}};
            GosElement xq{Ring::Q, {{a, Rat(1)}}}, yq{Ring::Q, {{b, Rat(1)}}};
            GosElement pz = gos.multiply(xz, yz);
            GosElement pq = gos.multiply(xq, yq);
            CHECK(pz.terms == pq.terms);
            assert_integral(pz);
        }
    }
}
