#include "doctest.h"

#include "powellkit/disk_systems.hpp"
#include "powellkit/word_problem.hpp"

using namespace pk;

TEST_CASE("chord diagrams round-trip and validate") {
    ChordDiagram d = ChordDiagram::parse("disk a1: 1 2 2 1\ndisk b: 1 1\ndisk c: 2 2\n");
    CHECK(d.crossing_count() == 2);
    CHECK(d.disks_of(1) == std::vector<int>{0, 1});
    CHECK(ChordDiagram::parse(d.serialize()).serialize() == d.serialize());
    CHECK_THROWS_AS(ChordDiagram::parse("disk a1: 1 2 1 2\ndisk b: 1 1 2 2\n"), DiagramError);
    CHECK_THROWS_AS(ChordDiagram::parse("disk a1: 1\ndisk b: 1 1\n"), DiagramError);
}

TEST_CASE("outermost-arc surgery lowers the crossing count") {
    ChordDiagram d = ChordDiagram::parse("disk a1: 1 2 2 1\ndisk b: 1 1 2 2\n");
    int arc = outermost_arc(d, 0);
    CHECK(arc == 2);
    ChordDiagram e = surgery(d, arc);
    CHECK(e.crossing_count() < d.crossing_count());
    CHECK_NOTHROW(e.validate());
}

TEST_CASE("band sums") {
    CHECK(band_sum({Y(2)}, {Y(1)}, 1) == Letters{Y(2), -Y(1)});
    CHECK(band_sum({Y(2)}, {Y(1)}, -1) == Letters{-Y(1), Y(2)});
}

TEST_CASE("lens factors reproduce the word") {
    SurfaceGroup G(3);
    for (const char* s : {"x1", "x1 x2", "y1 x1 Y1 x2", "x1 y2 x3 Y2"}) {
        Letters w = parse_letters(s, 3);
        Lens l;
        l.side = Side::A;
        l.factors = lens_factors(w, Side::A);
        CHECK(G.equal(l.word(), w));
    }
}

TEST_CASE("eyeglass frames") {
    EyeglassFrame f = EyeglassFrame::parse("A: x1; x2\nB: Y3\narc A 1 0 1\n", 3);
    CHECK(f.measure() == 1);
    CHECK(f.lens_a.factors.size() == 2);
    CHECK(outermost_lens_arc(f.lens_a) == 1);
    SurfaceGroup G(3);
    CompressionResult r = boundary_compress(f, Side::A, 1, [&](const Letters& w) { return G.is_trivial(w); });
    for (const auto& piece : r.frames) CHECK(piece.measure() < f.measure());
    CHECK(EyeglassFrame::parse(f.serialize(), 3).serialize() == f.serialize());
}

TEST_CASE("bridge frames") {
    BridgeFrame b = BridgeFrame::parse("crossings: 0 2 1\nplanar: A\n");
    CHECK(b.count() == 3);
    CHECK(b.a_side_planar);
    CHECK_FALSE(b.b_side_planar);
    CHECK(BridgeFrame::parse(b.serialize()).serialize() == b.serialize());
}
