#include "doctest.h"

#include "powellkit/two_complex.hpp"

using namespace pk;

TEST_CASE("labelings are identified up to symmetry") {
    CHECK(favor_a({'A', 'A', 'B', 'B'}).pattern == LabelPattern::I);
    CHECK(favor_a({'A', 'B', 'B', 'A'}).pattern == LabelPattern::II);
    CHECK(favor_a({'A', 'A', 'A', 'B'}).pattern == LabelPattern::III);
    CHECK(favor_a({'B', 'B', 'A', 'B'}).pattern == LabelPattern::IV);
    CHECK_THROWS_AS(favor_a({'A', 'A', 'A', 'A'}), CatalogError);
    CHECK_THROWS_AS(favor_a({'B', 'B', 'B', 'B'}), CatalogError);
}

TEST_CASE("twist test audits disjointness") {
    SurfaceGroup G(3);
    CHECK(twist_disjoint(G, {X(1)}, {X(2)}) == true);
    CHECK(twist_disjoint(G, {X(1)}, {Y(1)}) == false);
    CHECK(twist_disjoint(G, commutator({X(1)}, {Y(1)}), {X(1)}) == true);
}

TEST_CASE("witness store") {
    DisjointnessWitnesses W(3);
    CHECK(W.disjoint({X(1)}, {Y(2)}));
    CHECK_FALSE(W.disjoint({X(1)}, {Y(1)}));
    CHECK_THROWS_AS(W.disjoint({X(1), X(2)}, {Y(3), Y(1)}), UnknownDisjointness);
    W.add_explicit({X(1), X(2)}, {Y(3)}, true);
    CHECK(W.disjoint({Y(3)}, {X(1), X(2)}));
    CHECK(W.provenance({X(1), X(2)}, {Y(3)}) == WitnessKind::Explicit);
}

TEST_CASE("admissible paths") {
    DisjointnessWitnesses W(3);
    std::vector<TwoCVertex> good{{{X(1)}, {Y(2)}}, {{X(3)}, {Y(2)}}, {{X(3)}, {Y(1)}}};
    CHECK(admissible_path_check(good, W));
    std::vector<TwoCVertex> bad{{{X(1)}, {Y(1)}}};
    CHECK_FALSE(admissible_path_check(bad, W));
    std::vector<TwoCVertex> jump{{{X(1)}, {Y(2)}}, {{X(3)}, {Y(1)}}};
    CHECK_FALSE(admissible_path_check(jump, W));
}

TEST_CASE("two of three in a pants relation") {
    SurfaceGroup G(2);
    CHECK(two_of_three(G, {X(1), X(2)}, {X(1)}, {X(2)}, Side::A));
    CHECK(two_of_three(G, {X(1), Y(2)}, {X(1)}, {Y(2)}, Side::A));
    CHECK_THROWS_AS(two_of_three(G, {X(1)}, {X(1)}, {X(2)}, Side::A), NotPantsRelation);
    // every product of disk words on one side bounds there too
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            CHECK(two_of_three(G, G.dehn({Y(i), X(j), -Y(i), X(1)}), {Y(i), X(j), -Y(i)}, {X(1)}, Side::A));
}

TEST_CASE("crossing catalog") {
    CrossingCatalog cat = CrossingCatalog::load(default_catalog_path());
    CHECK_NOTHROW(cat.validate());
    REQUIRE(cat.models.size() == 5);
    int excluded = 0, paths = 0;
    for (const auto& m : cat.models)
        for (const auto& c : enumerate_cases(m)) {
            DisjointnessWitnesses W = case_witnesses(c, cat.genus);
            try {
                std::vector<TwoCVertex> path = cloud_connect(c, W);
                CHECK(admissible_path_check(path, W));
                ++paths;
            } catch (const CaseExcluded&) {
                CHECK(m.id == 5);
                ++excluded;
            }
        }
    CHECK(paths > 0);
    CHECK(excluded > 0);
}
