#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/normalform.hpp"

using namespace toric;

namespace {

IntMatrix sec3_matrix() { return IntMatrix(2, 3, {-2, -32, -43, 1, 21, 29}); }
IntMatrix sec3_normal() { return IntMatrix(2, 3, {2, -32, -43, -1, 21, 29}); }
IntMatrix triangle_matrix() { return IntMatrix(2, 3, {1, 0, 1, 0, 1, 1}); }

ArithmeticMatroid sec3_matroid() { return arithmetic_matroid(sec3_matrix()); }

// m_U of the surjective arrangement underneath the running example
ArithmeticMatroid sec5_mu() {
    // columns e1, e2, (5e1+3e2)/2 written in a basis of their span
    CoordMatrix cm = reconstruct_matrix(sec3_matroid());
    (void)cm;
    IntMatrix x(2, 3, {2, 0, 5, -1, 1, -1}); // coordinates in the HNF basis of the span
    return arithmetic_matroid(x);
}

} // namespace

TEST_CASE("coordinate matrix") {
    SUBCASE("running example in the basis {0,1}") {
        CoordMatrix cm = coordinate_matrix(sec3_matrix(), {0, 1});
        REQUIRE(cm.a.cols == 1);
        CHECK(cm.a.at(0, 0) == Rat(-5, 2));
        CHECK(cm.a.at(1, 0) == Rat(3, 2));
    }
    SUBCASE("basis equal to E gives an empty a") {
        CoordMatrix cm = coordinate_matrix(IntMatrix(2, 2, {1, 0, 0, 1}), {0, 1});
        CHECK(cm.a.cols == 0);
    }
    SUBCASE("triangle third column") {
        CoordMatrix cm = coordinate_matrix(triangle_matrix(), {0, 1});
        CHECK(cm.a.at(0, 0) == 1);
        CHECK(cm.a.at(1, 0) == 1);
    }
    SUBCASE("dependent subset is rejected") {
        CHECK_THROWS_AS(coordinate_matrix(IntMatrix(2, 3, {1, 2, 0, 1, 2, 1}), {0, 1}), Infeasible);
    }
}

TEST_CASE("maximal forest") {
    SUBCASE("single column, both edges") {
        auto f = maximal_forest({{true}, {true}});
        CHECK(f.forest.size() == 2);
    }
    SUBCASE("empty support") {
        auto f = maximal_forest({{false}, {false}});
        CHECK(f.forest.empty());
    }
    SUBCASE("full 2x2 pattern keeps three edges") {
        auto f = maximal_forest({{true, true}, {true, true}});
        CHECK(f.edges.size() == 4);
        CHECK(f.forest.size() == 3);
    }
}

TEST_CASE("normal form of the running example") {
    auto d = ToricArrangement::from_character_matrix(sec3_matrix());
    auto nf = to_normal_form(d);
    CHECK(nf.arrangement.character_matrix() == sec3_normal());
    CHECK(nf.signs == std::vector<int>{-1, 1, 1});
    CHECK(nf.coord.a.at(0, 0) == Rat(5, 2));
    CHECK(nf.coord.a.at(1, 0) == Rat(3, 2));

    SUBCASE("idempotent") {
        auto again = to_normal_form(nf.arrangement);
        CHECK(again.arrangement.character_matrix() == sec3_normal());
        CHECK(again.signs == std::vector<int>{1, 1, 1});
    }
}

TEST_CASE("normal form flips a negated forest column") {
    IntMatrix cols(2, 3, {1, 0, -1, 0, 1, -1});
    auto nf = normal_form_columns(cols, {});
    CHECK(nf.signs == std::vector<int>{1, 1, -1});
    CHECK(nf.arrangement.character_matrix() == triangle_matrix());
}

TEST_CASE("absolute minors from multiplicity") {
    auto m = sec3_matroid();
    SUBCASE("the two 1x1 minors of the running example") {
        CHECK(abs_minor_from_multiplicity(m, {0, 1}, {0}, {2}) == Rat(5, 2));
        CHECK(abs_minor_from_multiplicity(m, {0, 1}, {1}, {2}) == Rat(3, 2));
    }
    SUBCASE("dependent replacement gives zero") {
        auto tm = arithmetic_matroid(IntMatrix(2, 3, {1, 2, 0, 0, 0, 1}));
        // swapping element 2 for the parallel element 1 leaves {0,1}, dependent
        CHECK(abs_minor_from_multiplicity(tm, {0, 2}, {2}, {1}) == 0);
    }
    SUBCASE("size mismatch") {
        CHECK_THROWS_AS(abs_minor_from_multiplicity(m, {0, 1}, {0}, {}), InvalidInput);
    }
    SUBCASE("agrees with actual minors on the normal form, exhaustively") {
        auto nf = normal_form_columns(sec3_matrix(), {});
        for (int k = 1; k <= 1; ++k)
            for (const auto& ri : subsets_of_size(2, k))
                for (const auto& ci : subsets_of_size(1, k)) {
                    Rat v = nf.coord.a.at(ri[0], ci[0]);
                    if (v < 0) v = -v;
                    std::vector<int> ilab, jlab{2};
                    for (int i : ri) ilab.push_back(nf.coord.basis[i]);
                    CHECK(v == abs_minor_from_multiplicity(m, nf.coord.basis, ilab, jlab));
                }
    }
}

TEST_CASE("matrix reconstruction from the multiplicity table") {
    SUBCASE("running example table forces a = (5/2, 3/2)") {
        CoordMatrix cm = reconstruct_matrix(sec3_matroid());
        CHECK(cm.basis == std::vector<int>{0, 1});
        CHECK(cm.a.at(0, 0) == Rat(5, 2));
        CHECK(cm.a.at(1, 0) == Rat(3, 2));
    }
    SUBCASE("unimodular triangle forces a = (1, 1)") {
        CoordMatrix cm = reconstruct_matrix(arithmetic_matroid(triangle_matrix()));
        CHECK(cm.a.at(0, 0) == 1);
        CHECK(cm.a.at(1, 0) == 1);
    }
    SUBCASE("torsion is rejected") {
        auto m = arithmetic_matroid(triangle_matrix());
        m.mult_table[0] = 2;
        CHECK_THROWS_AS(reconstruct_matrix(m), Infeasible);
    }
}

TEST_CASE("representation reconstruction") {
    SUBCASE("standard basis matroid reconstructs to the identity") {
        IntMatrix id = IntMatrix::identity(2);
        CHECK(reconstruct_representation(arithmetic_matroid(id)) == id);
    }
    SUBCASE("triangle reconstructs up to the allowed action") {
        IntMatrix x = reconstruct_representation(arithmetic_matroid(triangle_matrix()));
        auto w = representations_equivalent(x, triangle_matrix());
        CHECK(w.has_value());
    }
    SUBCASE("the surjective running-example matroid recovers the half-integral span") {
        IntMatrix x = reconstruct_representation(sec5_mu());
        CHECK(arithmetic_matroid(x) == sec5_mu());
    }
    SUBCASE("non-surjective input is refused") {
        CHECK_THROWS_AS(reconstruct_representation(sec3_matroid()), Infeasible);
    }
}

TEST_CASE("character relations") {
    SUBCASE("running example: 5 chi1 + 3 chi2 - 2 chi3 = 0") {
        auto d = ToricArrangement::from_character_matrix(sec3_normal());
        auto rels = character_relations(d);
        REQUIRE(rels.size() == 1);
        CHECK(rels[0].support == std::vector<int>{0, 1, 2});
        CHECK(rels[0].signs == std::vector<int>{1, 1, -1});
        CHECK(rels[0].coeffs == std::vector<Int>{5, 3, 2});
    }
    SUBCASE("independent arrangement has none") {
        auto d = ToricArrangement::from_character_matrix(IntMatrix::identity(2));
        CHECK(character_relations(d).empty());
    }
    SUBCASE("triangle relation chi0 + chi1 - chi2 = 0") {
        auto rels = character_relations(ToricArrangement::from_character_matrix(triangle_matrix()));
        REQUIRE(rels.size() == 1);
        CHECK(rels[0].signs == std::vector<int>{1, 1, -1});
        CHECK(rels[0].coeffs == std::vector<Int>{1, 1, 1});
    }
    SUBCASE("relations evaluate to zero exactly") {
        std::mt19937 rng(555);
        for (int iter = 0; iter < 20; ++iter) {
            IntMatrix cols = oracle::random_matrix(rng, 2, 4, -6, 6);
            if (rank_int(cols) < 2) continue;
            bool zerocol = false;
            for (int j = 0; j < 4; ++j)
                if (cols.at(0, j) == 0 && cols.at(1, j) == 0) zerocol = true;
            if (zerocol) continue;
            auto d = ToricArrangement::from_character_matrix(cols);
            for (const auto& rel : character_relations(d)) {
                std::vector<Int> acc(2, Int(0));
                for (size_t t = 0; t < rel.support.size(); ++t)
                    for (int i = 0; i < 2; ++i)
                        acc[i] += Int(rel.signs[t]) * rel.coeffs[t] * cols.at(i, rel.support[t]);
                CHECK(acc == std::vector<Int>(2, Int(0)));
            }
        }
    }
}

TEST_CASE("representation equivalence") {
    SUBCASE("paper witness for the running example") {
        // the original matrix factors as G * C2 * D
        IntMatrix c2(2, 3, {1, -1, 1, 0, 10, 15});
        auto w = representations_equivalent(c2, sec3_matrix());
        REQUIRE(w.has_value());
        CHECK(w->g == IntMatrix(2, 2, {2, -3, -1, 2}));
        CHECK(w->signs == std::vector<int>{-1, 1, 1});
        IntMatrix gx = w->g * c2;
        for (int e = 0; e < 3; ++e)
            for (int i = 0; i < 2; ++i) CHECK(gx.at(i, e) * Int(w->signs[e]) == sec3_matrix().at(i, e));
    }
    SUBCASE("identity witness") {
        auto w = representations_equivalent(sec3_matrix(), sec3_matrix());
        REQUIRE(w.has_value());
        IntMatrix gx = w->g * sec3_matrix();
        for (int e = 0; e < 3; ++e)
            for (int i = 0; i < 2; ++i)
                CHECK(gx.at(i, e) * Int(w->signs[e]) == sec3_matrix().at(i, e));
    }
    SUBCASE("inequivalent representations with equal matroids") {
        IntMatrix c1(2, 3, {1, -3, -2, 0, 10, 15});
        IntMatrix c2(2, 3, {1, -1, 1, 0, 10, 15});
        CHECK(arithmetic_matroid(c1) == arithmetic_matroid(c2));
        CHECK(!representations_equivalent(c1, c2).has_value());
    }
}

TEST_CASE("round trip: matrix -> matroid -> reconstruction -> equivalence") {
    std::mt19937 rng(31007);
    int done = 0;
    while (done < 25) {
        int r = 2 + int(rng() % 2);
        int n = r + 1 + int(rng() % 2);
        IntMatrix cols = oracle::random_matrix(rng, r, n, -5, 5);
        // primitive columns generating Z^r
        bool ok = rank_int(cols) == r;
        for (int j = 0; j < n && ok; ++j) {
            Int c = content(cols.col(j));
            if (c == 0) ok = false;
            else
                for (int i = 0; i < r; ++i) cols.at(i, j) /= c;
        }
        if (ok) {
            auto s = smith_decomposition(cols);
            for (const Int& f : s.invariant_factors) ok = ok && f == 1;
        }
        if (!ok) continue;
        // no repeated hypertori
        auto d = ToricArrangement::from_character_matrix(cols);
        try {
            d.validate();
        } catch (const InvalidInput&) {
            continue;
        }
        ++done;
        IntMatrix rec = reconstruct_representation(arithmetic_matroid(cols));
        auto w = representations_equivalent(cols, rec);
        REQUIRE(w.has_value());
        IntMatrix gx = w->g * cols;
        for (int e = 0; e < n; ++e)
            for (int i = 0; i < r; ++i) CHECK(gx.at(i, e) * Int(w->signs[e]) == rec.at(i, e));
    }
}
