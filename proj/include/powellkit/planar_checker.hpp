#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pk {

class CounterexampleFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class InvalidAttachment : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Orientable surface built from a planar surface P by attaching 1-handles.
// Each boundary circle is a cyclic list of items: handle ends still to be
// attached (pending) and sides of attached handles. The boundary arc after an
// item remembers which circle of P it came from.
struct PlanarSurfaceModel {
    struct Item {
        int handle = 0;
        bool pending = false;
        int after_origin = 0;
    };
    struct Circle {
        std::vector<Item> items;
        int origin = 0;     // circle of P, used while the circle has no items
        int component = 0;
    };

    std::vector<int> original_component;  // circle of P -> component of P
    int original_components = 0;
    std::vector<Circle> circles;
    std::vector<int> genus_of;            // indexed by component label; -1 once merged away
    std::vector<std::pair<int, int>> handle_origins;
    int euler = 0;

    static PlanarSurfaceModel planar(const std::vector<int>& boundary_counts);

    int genus() const;
    int boundary_count() const { return static_cast<int>(circles.size()); }
    int components() const;
    int euler_from_parts() const;  // sum of 2 - 2g - b over components
};

struct HandleAttachment {
    int circle1 = 0, gap1 = 0;  // the end goes after item gap1 of circle1 (0 on an empty circle)
    int circle2 = 0, gap2 = 0;
    bool second_first = false;  // both ends in one gap: the second end comes first
    bool twisted = false;       // rejected: the surfaces are orientable
};

PlanarSurfaceModel attach(const PlanarSurfaceModel& p, const HandleAttachment& h);

// Handle ends placed on the circles of P: ends[c] is the cyclic order of end
// ids on circle c; end 2k and 2k+1 belong to handle k.
struct Placement {
    std::vector<int> boundary_counts;
    std::vector<std::vector<int>> ends;
    int handles = 0;

    std::string describe() const;
};

// Attach every handle of the placement in order.
PlanarSurfaceModel realize(const Placement& pl);
// Boundary count and genus read off the whole placement at once: boundary
// circles are cycles of e -> succ(partner(e)).
struct FaceCount {
    int boundaries = 0;
    int components = 0;
    int euler = 0;
    int genus = 0;
};
FaceCount face_count(const Placement& pl);

// Whether the circle c of P, pushed into P, is non-separating in P+.
bool original_nonseparating(const PlanarSurfaceModel& m, int c);

struct LemmaVerdict {
    bool pass = false;
    int genus = 0;
    int nonseparating_circle = -1;
    std::string witness;
};
LemmaVerdict check_lemma(const PlanarSurfaceModel& m);

struct PlanarReport {
    std::uint64_t placements = 0;  // after symmetry reduction
    std::uint64_t unreduced = 0;
    std::uint64_t genus_branch = 0;
    std::uint64_t nonseparating_branch = 0;
    std::uint64_t counterexamples = 0;
    std::vector<std::string> failures;
};

// Every placement of up to `max_handles` handles on every planar surface with
// at most `max_components` components and `max_boundaries` circles. Checks
// the lemma, the Euler characteristic after each attachment, and the genus
// against face_count. `reduce` keeps one placement per handle relabeling.
PlanarReport exhaustive_check(int max_components, int max_boundaries, int max_handles, bool reduce = true,
                              bool throw_on_counterexample = true);

// Four handles on a disk giving genus 2 with the disk's boundary separating.
Placement sharpness_example();

}  // namespace pk
