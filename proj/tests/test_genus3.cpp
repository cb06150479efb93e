#include "doctest.h"

#include <random>

#include "powellkit/genus3.hpp"

using namespace pk;

TEST_CASE("Whitehead minimization never lengthens") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> l(1, 3), s(0, 1), n(1, 12);
    for (int k = 0; k < 200; ++k) {
        Letters w;
        for (int i = n(rng); i > 0; --i) w.push_back(s(rng) ? l(rng) : -l(rng));
        std::vector<std::size_t> lengths;
        Letters m = whitehead_minimize(w, 3, &lengths);
        for (std::size_t i = 1; i < lengths.size(); ++i) CHECK(lengths[i] < lengths[i - 1]);
        CHECK(m.size() <= cyclic_reduce(free_reduce(w)).size());
    }
    CHECK(is_primitive_in_free_group({1, 2, 1, -2}, 2) == false);
    CHECK(is_primitive_in_free_group({1, 2, 2}, 2));
    CHECK(is_primitive_in_free_group({1, 1, 2}, 2));
    CHECK_FALSE(is_primitive_in_free_group({1, 1}, 2));
}

TEST_CASE("primitivity is invariant under Goeritz maps") {
    MappingClasses M(GeneratorTable::standard(3));
    const SurfaceGroup& G = M.group();
    std::vector<DiskRef> disks{DiskRef::make(Side::A, {X(1)}, 3), DiskRef::make(Side::A, {X(1), X(2)}, 3),
                               DiskRef::make(Side::A, parse_letters("x1 y1 x1 x2 X1 Y1 x2", 3), 3),
                               DiskRef::make(Side::B, {Y(3)}, 3)};
    for (const char* w : {"Deta", "Dnu Deta12", "Dtheta Domega'", "Deta Dtheta Dnu"}) {
        PiOneAuto f = M.compile(parse_mcword(w, 3));
        for (const auto& d : disks) CHECK(is_primitive(transport(f, d, G)) == is_primitive(d));
    }
    CHECK_FALSE(is_primitive(disks[2]));
    CHECK_THROWS_AS(DiskRef::make(Side::A, {Y(1)}, 3), InvalidDisk);
}

TEST_CASE("surrogates of separating disks") {
    MappingClasses M(GeneratorTable::standard(3));
    const SurfaceGroup& G = M.group();
    DiskRef c1 = DiskRef::make(Side::A, commutator({X(1)}, {Y(1)}), 3);
    CHECK(c1.separating);
    DiskRef s = surrogate(c1, G);
    CHECK_FALSE(s.separating);
    CHECK(s.side == Side::A);
    CHECK(twist_disjoint(G, c1.curve, s.curve) == true);
    // the transported surrogate stays disjoint from the transported disk
    PiOneAuto f = M.compile(parse_mcword("Deta Dtheta", 3));
    DiskRef t = transport(f, c1, G);
    REQUIRE(t.transported_surrogate.has_value());
    CHECK(twist_disjoint(G, t.curve, *t.transported_surrogate) == true);
}

TEST_CASE("four-disk primitivity and class assignment") {
    MappingClasses M(GeneratorTable::standard(3));
    Genus3Instances base = Genus3Instances::load(default_genus3_path(), M);
    DisjointnessWitnesses W = base.witnesses(M);
    for (const auto& v : base.vertices) {
        CHECK_FALSE(four_disk_primitivity(v.a, v.b, M.group()).empty());
        ClassAssignment c = assign_class(v.a, v.b, W);
        CHECK((c.target == "a1" || c.target == "b3"));
    }
    for (const auto& t : base.triples) {
        EdgeBullet b = edge_invariance(t.single, t.d1, t.d2, W);
        CHECK(b.bullet >= 1);
        CHECK(b.bullet <= 4);
        CHECK(edge_agreement(t, W, M).agree);
    }
}
