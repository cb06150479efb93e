#include "doctest.h"

#include <random>

#include "powellkit/screening.hpp"
#include "powellkit/word_problem.hpp"

using namespace pk;

namespace {
Letters random_word(std::mt19937& rng, int g, int n) {
    std::uniform_int_distribution<int> l(1, 2 * g), s(0, 1);
    Letters w;
    for (int i = 0; i < n; ++i) w.push_back(s(rng) ? l(rng) : -l(rng));
    return w;
}
}  // namespace

TEST_CASE("relator and its rotations are trivial") {
    for (int g : {2, 3, 4}) {
        SurfaceGroup G(g);
        const Letters R = relator(g);
        for (std::size_t k = 0; k < R.size(); ++k) {
            CHECK(G.is_trivial(rotate(R, k)));
            CHECK(G.is_trivial(inverse(rotate(R, k))));
        }
        CHECK_FALSE(G.is_trivial({X(1)}));
        CHECK_FALSE(G.is_trivial(commutator({X(1)}, {Y(1)})));
    }
}

TEST_CASE("products of relator conjugates are trivial") {
    std::mt19937 rng(11);
    for (int g : {2, 3}) {
        SurfaceGroup G(g);
        for (int k = 0; k < 300; ++k) {
            Letters w;
            for (int j = 0; j < 3; ++j) {
                Letters u = random_word(rng, g, 4);
                w = concat({w, u, rotate(relator(g), static_cast<std::size_t>(rng() % (4 * g))), inverse(u)});
            }
            CHECK(G.is_trivial(w));
        }
    }
}

TEST_CASE("Dehn normal form represents the same element") {
    std::mt19937 rng(12);
    SurfaceGroup G(2);
    FiniteQuotientScreen screen(2, 32, 5);
    for (int k = 0; k < 300; ++k) {
        Letters w = random_word(rng, 2, 18);
        Letters d = G.dehn(w);
        CHECK(d.size() <= free_reduce(w).size());
        CHECK(G.is_trivial(concat(w, inverse(d))));
        for (std::size_t m = 0; m < screen.size(); ++m) CHECK(screen.evaluate(m, w) == screen.evaluate(m, d));
    }
}

TEST_CASE("screening maps kill the relator and see the generators") {
    for (int g : {2, 3}) {
        FiniteQuotientScreen screen(g, 24, 99);
        CHECK(screen.size() == 24);
        CHECK_FALSE(screen.proves_nontrivial(relator(g)));
        for (int l = 1; l <= 2 * g; ++l) CHECK(screen.proves_nontrivial({l}));
        CHECK(screen.proves_nontrivial(commutator({X(1)}, {Y(1)})));
    }
}

TEST_CASE("conjugacy witnesses") {
    std::mt19937 rng(13);
    SurfaceGroup G(2);
    for (int k = 0; k < 100; ++k) {
        Letters w = random_word(rng, 2, 6), u = random_word(rng, 2, 4);
        if (G.is_trivial(w)) continue;
        Letters v = concat({u, w, inverse(u)});
        auto r = G.are_conjugate(v, w);
        REQUIRE(r.has_value());
        CHECK(G.equal(v, concat({r->conjugator, w, inverse(r->conjugator)})));
    }
    CHECK_FALSE(G.are_conjugate({X(1)}, {Y(1)}).has_value());
    CHECK_FALSE(G.are_conjugate({X(1)}, {X(1), X(1)}).has_value());
}

TEST_CASE("automorphisms") {
    SurfaceGroup G(2);
    PiOneAuto id = identity_auto(2);
    CHECK(is_symplectic(h1_matrix(id)));
    PiOneAuto inn = inner_auto(G, {X(1), Y(2)});
    CHECK(outer_equal(G, inn, id));
    PiOneAuto swap = id;
    swap.images[0] = {Y(1)};
    swap.images[1] = {-X(1)};
    CHECK(is_symplectic(h1_matrix(swap)));
    CHECK_FALSE(outer_equal(G, swap, id));
    PiOneAuto twice = compose(G, swap, swap);
    CHECK(pk::apply(twice, {X(1)}) == Letters{-X(1)});
}
