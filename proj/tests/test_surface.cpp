#include "doctest.h"

#include <random>

#include "powellkit/surface.hpp"

using namespace pk;

TEST_CASE("letters parse and print") {
    CHECK(parse_letters("x1 Y3", 3) == Letters{X(1), -Y(3)});
    CHECK(format_letters({X(2), -Y(1)}) == "x2 Y1");
    CHECK(parse_letters("1", 2).empty());
    CHECK(parse_word("cyclic: x1 y1", 2).cyclic);
    CHECK_THROWS_AS(parse_letters("x4", 3), ParseError);
    CHECK_THROWS_AS(parse_letters("z1", 3), ParseError);
}

TEST_CASE("free and cyclic reduction") {
    CHECK(free_reduce({X(1), Y(1), -Y(1), -X(1), X(2)}) == Letters{X(2)});
    CHECK(cyclic_reduce({Y(1), X(1), X(2), -Y(1)}) == Letters{X(1), X(2)});
    CHECK(inverse({X(1), Y(2)}) == Letters{-Y(2), -X(1)});
    CHECK(commutator({X(1)}, {Y(1)}) == Letters{X(1), Y(1), -X(1), -Y(1)});
}

TEST_CASE("reduction is idempotent and respects inverses") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> l(1, 6), s(0, 1), n(0, 16);
    for (int k = 0; k < 500; ++k) {
        Letters w;
        for (int i = n(rng); i > 0; --i) w.push_back(s(rng) ? l(rng) : -l(rng));
        Letters r = free_reduce(w);
        CHECK(free_reduce(r) == r);
        CHECK(free_reduce(concat(w, inverse(w))).empty());
        CHECK(free_reduce(inverse(w)) == inverse(r));
    }
}

TEST_CASE("homology and intersection pairing") {
    const int g = 3;
    CHECK(pairing(homology({X(1)}, g), homology({Y(1)}, g)) == 1);
    CHECK(pairing(homology({Y(1)}, g), homology({X(1)}, g)) == -1);
    CHECK(pairing(homology({X(1)}, g), homology({Y(2)}, g)) == 0);
    CHECK(is_separating(commutator({X(1)}, {Y(1)}), g));
    CHECK(is_separating(relator(g), g));
    CHECK_FALSE(is_separating({X(1), Y(2)}, g));
}

TEST_CASE("disk bounding on each side") {
    CHECK(bounds_disk_in(Side::A, {X(1)}));
    CHECK_FALSE(bounds_disk_in(Side::B, {X(1)}));
    CHECK(bounds_disk_in(Side::B, {Y(2)}));
    CHECK(bounds_disk_in(Side::A, {Y(1), X(1), -Y(1)}));
    CHECK(bounds_disk_in(Side::A, commutator({X(1)}, {Y(1)})));
    CHECK(bounds_disk_in(Side::B, commutator({X(1)}, {Y(1)})));
}

TEST_CASE("atlas intersections") {
    StandardAtlas at(3);
    CHECK(at.a(2) == Letters{X(2)});
    CHECK(at.intersection({'a', 1}, {'b', 1}) == 1);
    CHECK(at.intersection({'a', 1}, {'b', 2}) == 0);
    CHECK(at.intersection({'a', 1}, {'a', 2}) == 0);
    CHECK(at.intersection({'c', 1}, {'a', 1}) == 0);
    CHECK(at.c(1) == commutator({X(1)}, {Y(1)}));
    CHECK(parse_curve_id("b2", 3) == CurveId{'b', 2});
    CHECK_THROWS(check_genus(1));
}
