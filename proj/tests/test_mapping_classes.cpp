#include "doctest.h"

#include <random>

#include "powellkit/mapping_classes.hpp"
#include "powellkit/twist.hpp"

using namespace pk;

TEST_CASE("move words parse and print") {
    MCWord w = parse_mcword("Dnu Deta' T[a1] Slide[1;b2]'", 3);
    REQUIRE(w.size() == 4);
    CHECK(w[1].power == -1);
    CHECK(w[2].kind == MoveKind::Twist);
    CHECK(w[3].kind == MoveKind::Slide);
    CHECK(format_mcword(w) == "Dnu Deta' T[a1] Slide[1;b2]'");
    CHECK(format_mcword(inverse(w)) == "Slide[1;b2] T[a1]' Deta Dnu'");
    CHECK_THROWS(parse_mcword("Dfoo", 3));
}

TEST_CASE("standard tables validate and round-trip") {
    for (int g : {2, 3, 4}) {
        GeneratorTable t = GeneratorTable::standard(g);
        CHECK_NOTHROW(t.validate(SurfaceGroup(g)));
        GeneratorTable back = GeneratorTable::parse(t.serialize());
        CHECK(back.genus == g);
        CHECK(back.serialize() == t.serialize());
    }
}

TEST_CASE("corrupted table entries are named") {
    GeneratorTable t = GeneratorTable::standard(3);
    t.entries.at("Dtheta").forward.images[0] = {Y(2), X(1), X(1), -Y(2)};
    try {
        t.validate(SurfaceGroup(3));
        FAIL("corrupted table accepted");
    } catch (const InvalidTableEntry& e) {
        CHECK(std::string(e.what()).find("Dtheta") != std::string::npos);
    }
    GeneratorTable u = GeneratorTable::standard(3);
    u.entries.at("Dnu").backward = identity_auto(3);
    CHECK_THROWS_AS(u.validate(SurfaceGroup(3)), InvalidTableEntry);
}

TEST_CASE("Deta has order g") {
    for (int g : {2, 3, 4}) {
        MappingClasses M(GeneratorTable::standard(g));
        CHECK(M.equals(MCWord(static_cast<std::size_t>(g), powell(MoveKind::Deta)), {}));
        for (int k = 1; k < g; ++k) CHECK_FALSE(M.equals(MCWord(static_cast<std::size_t>(k), powell(MoveKind::Deta)), {}));
    }
}

TEST_CASE("generators are Goeritz and words cancel with their inverses") {
    MappingClasses M(GeneratorTable::standard(3));
    std::vector<GeneratorSymbol> gens;
    for (MoveKind k : {MoveKind::Dnu, MoveKind::Deta, MoveKind::Deta12, MoveKind::Domega, MoveKind::Dtheta}) gens.push_back(powell(k));
    for (const auto& s : gens) {
        PiOneAuto f = M.symbol(s);
        CHECK(M.preserves_splitting(f));
        CHECK(M.preserves_relator(f));
        CHECK(is_symplectic(h1_matrix(f)));
    }
    std::mt19937 rng(3);
    for (int k = 0; k < 40; ++k) {
        MCWord w;
        for (int i = 0; i < 5; ++i) {
            GeneratorSymbol s = gens[rng() % gens.size()];
            s.power = rng() % 2 ? 1 : -1;
            w.push_back(s);
        }
        CHECK(M.equals(concat(w, inverse(w)), {}));
        CHECK(M.equals(conjugate(w, {}), {}));
    }
    CHECK_FALSE(M.equals({powell(MoveKind::Dnu)}, {powell(MoveKind::Dtheta)}));
}

TEST_CASE("twists act on homology by transvections") {
    const int g = 3;
    MappingClasses M(GeneratorTable::standard(g));
    StandardAtlas at(g);
    for (const CurveId& c : at.curves()) {
        if (is_separating(at.curve(c), g)) continue;
        PiOneAuto f = M.symbol(twist_symbol(c));
        HomologyClass hc = homology(at.curve(c), g);
        for (int l = 1; l <= 2 * g; ++l) {
            HomologyClass v = homology({l}, g), img = homology(f.image(l), g);
            long p = pairing(v, hc);
            for (std::size_t i = 0; i < v.size(); ++i) CHECK(img[i] == v[i] + p * hc[i]);
        }
    }
}

TEST_CASE("twists about meridians are not Goeritz") {
    MappingClasses M(GeneratorTable::standard(2));
    CHECK_FALSE(M.preserves_splitting(M.symbol(twist_symbol({'b', 1}))));
    CHECK(M.preserves_splitting(M.symbol(twist_symbol({'c', 1}))));
}

TEST_CASE("curve action") {
    MappingClasses M(GeneratorTable::standard(2));
    Word w = M.act_on_curve(M.compile(parse_mcword("Deta", 2)), Word{{X(1)}, true});
    CHECK(M.group().are_conjugate(w.letters, {X(2)}).has_value());
}
