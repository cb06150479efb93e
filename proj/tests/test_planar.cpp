#include "doctest.h"

#include "powellkit/planar_checker.hpp"

using namespace pk;

TEST_CASE("single attachments") {
    PlanarSurfaceModel disk = PlanarSurfaceModel::planar({1});
    PlanarSurfaceModel annulus = attach(disk, {0, 0, 0, 0});
    CHECK(annulus.genus() == 0);
    CHECK(annulus.boundary_count() == 2);
    CHECK(annulus.euler == 0);
    PlanarSurfaceModel torus = attach(annulus, {0, 0, 1, 0});
    CHECK(torus.genus() == 1);
    CHECK(torus.boundary_count() == 1);
    CHECK(torus.euler == -1);
    PlanarSurfaceModel two = attach(PlanarSurfaceModel::planar({1, 1}), {0, 0, 1, 0});
    CHECK(two.components() == 1);
    CHECK(two.genus() == 0);
    HandleAttachment twisted{0, 0, 0, 0, false, true};
    CHECK_THROWS_AS(attach(disk, twisted), InvalidAttachment);
}

TEST_CASE("Euler characteristic drops by one per handle") {
    Placement pl = sharpness_example();
    PlanarSurfaceModel m = realize(pl);
    CHECK(m.euler == 1 - pl.handles);
    CHECK(m.euler == m.euler_from_parts());
    FaceCount f = face_count(pl);
    CHECK(f.genus == m.genus());
    CHECK(f.boundaries == m.boundary_count());
}

TEST_CASE("four handles can escape the lemma") {
    PlanarSurfaceModel m = realize(sharpness_example());
    CHECK(m.genus() == 2);
    CHECK_FALSE(check_lemma(m).pass);
}

TEST_CASE("symmetry reduction keeps the verdict") {
    PlanarReport r = exhaustive_check(2, 3, 2, true, false);
    PlanarReport u = exhaustive_check(2, 3, 2, false, false);
    CHECK(r.counterexamples == u.counterexamples);
    CHECK(r.placements <= u.placements);
    CHECK(u.placements == u.unreduced);
    CHECK((r.genus_branch > 0) == (u.genus_branch > 0));
    CHECK((r.nonseparating_branch > 0) == (u.nonseparating_branch > 0));
}

TEST_CASE("small enumerations pass") {
    CHECK(exhaustive_check(1, 1, 3).counterexamples == 0);
    CHECK(exhaustive_check(2, 4, 3).counterexamples == 0);
}
