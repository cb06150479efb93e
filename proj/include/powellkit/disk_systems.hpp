#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "powellkit/surface.hpp"

namespace pk {

class NoCrossings : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NotDisjoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class InessentialPiece : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class DiagramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Disks of two systems meeting in arcs. Each disk boundary lists arc
// endpoints in order, starting just after its anchor point (the point where
// the disk meets its meridian); every arc id occurs twice on each of the two
// disks containing it.
struct ChordDiagram {
    struct Disk {
        std::string label;
        std::vector<int> points;
        bool masked = false;  // ignored when choosing innermost circles
    };
    std::vector<Disk> disks;

    int crossing_count() const;
    std::vector<int> arcs() const;
    std::vector<int> disks_of(int arc) const;
    int disk_index(const std::string& label) const;
    void validate() const;  // throws DiagramError

    static ChordDiagram parse(const std::string& text);
    std::string serialize() const;
};

// Arc cutting off a sub-disk of `disk` containing no other arc endpoint and
// not the anchor; lowest arc id on ties.
int outermost_arc(const ChordDiagram& d, int disk);
// Replace the sub-disk cut off by `arc` in its other disk with the outermost
// sub-disk. The arc is outermost in the first disk (by index) where it is.
ChordDiagram surgery(const ChordDiagram& d, int arc);

// Band sum of two disjoint disks orthogonal to the same meridian, as based
// words. `side` selects the band: +1 gives b * b1^-1, -1 gives b1^-1 * b.
Letters band_sum(const Letters& b, const Letters& b1, int side);

// Lens boundary as an ordered product of conjugated meridians (letters x_i
// for an A lens, y_i for a B lens).
struct LensFactor {
    Letters conj;
    int letter = 0;
    bool operator==(const LensFactor&) const = default;
};
// Arc of the lens meeting a cut disk. The chord separates the factors
// [from, to) from the rest; the rest contains the bridge foot.
struct LensArc {
    int id = 0;
    int from = 0;
    int to = 0;
    int cut_disk = 0;
};
struct Lens {
    Side side = Side::A;
    std::vector<LensFactor> factors;
    std::vector<LensArc> arcs;

    Letters word() const;
    void validate() const;
};

struct EyeglassFrame {
    Lens lens_a;
    Lens lens_b;
    int bridge_c = 1;                 // |v ∩ c|
    int bridge_meridian_points = 0;   // points of v on cut disks
    int measure() const { return static_cast<int>(lens_a.arcs.size() + lens_b.arcs.size()); }
    void validate() const;

    static EyeglassFrame parse(const std::string& text, int genus);
    std::string serialize() const;
};

// Lens factors for a word bounding a disk on `side`.
std::vector<LensFactor> lens_factors(const Letters& w, Side side);

int outermost_lens_arc(const Lens& lens);

struct CompressionResult {
    std::vector<EyeglassFrame> frames;  // two pieces, or one extended-bridge frame
    bool extended_bridge = false;
};
// Boundary-compress the lens on `side` along arc `arc_id`. `is_trivial`
// decides whether a piece is inessential.
CompressionResult boundary_compress(const EyeglassFrame& frame, Side side, int arc_id,
                                    const std::function<bool(const Letters&)>& is_trivial);

// Bridge of an eyeglass relative to the separating curve c: crossings
// p_1..p_k in order along v (from lens a to lens b); c_position[k] is the
// position of p_k along c.
struct BridgeFrame {
    std::vector<int> c_position;
    bool a_side_planar = true;  // v ∩ T_A lies in P_A
    bool b_side_planar = false; // v ∩ T_B lies in P_B
    int count() const { return static_cast<int>(c_position.size()); }

    static BridgeFrame parse(const std::string& text);
    std::string serialize() const;
};

}  // namespace pk
