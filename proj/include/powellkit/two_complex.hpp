#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "powellkit/word_problem.hpp"

namespace pk {

class UnknownDisjointness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NotPantsRelation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class CaseExcluded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unoriented isotopy label of a closed curve given by a word: least rotation
// of the cyclically reduced Dehn core of w or w^-1. Empty for inessential curves.
Letters unoriented_label(const SurfaceGroup& G, const Letters& w);

// Decides disjointness of a single pair by the twist test T_u(v) ~ v. Used to
// audit catalog witnesses, never as a witness source. nullopt when neither
// curve is simple in the polygon model.
std::optional<bool> twist_disjoint(const SurfaceGroup& G, const Letters& u, const Letters& v);

enum class WitnessKind { Atlas, Transported, Explicit };

// Disjointness facts with provenance. Isotopic curves count as disjoint.
class DisjointnessWitnesses {
public:
    explicit DisjointnessWitnesses(int genus);

    const SurfaceGroup& group() const { return G_; }
    int genus() const { return G_.genus(); }

    void add_explicit(const Letters& u, const Letters& v, bool disjoint);
    // Record (f u, f v) with the status of (u, v); throws UnknownDisjointness
    // when (u, v) itself is unwitnessed.
    void add_transported(const PiOneAuto& f, const Letters& u, const Letters& v);

    bool same_curve(const Letters& u, const Letters& v) const;
    std::optional<bool> lookup(const Letters& u, const Letters& v) const;
    std::optional<WitnessKind> provenance(const Letters& u, const Letters& v) const;
    bool disjoint(const Letters& u, const Letters& v) const;  // throws UnknownDisjointness

private:
    SurfaceGroup G_;
    StandardAtlas atlas_;
    std::map<Letters, CurveId> atlas_labels_;
    std::map<std::pair<Letters, Letters>, std::pair<bool, WitnessKind>> pairs_;

    std::pair<Letters, Letters> key(const Letters& u, const Letters& v) const;
};

struct TwoCVertex {
    Letters a;
    Letters b;
};

bool valid_vertex(const TwoCVertex& v, const DisjointnessWitnesses& W);
bool is_edge(const TwoCVertex& v1, const TwoCVertex& v2, const DisjointnessWitnesses& W);
bool admissible_path_check(const std::vector<TwoCVertex>& path, const DisjointnessWitnesses& W);

// Lemma check for a pants relation c ~ c1 c2: false exactly when two of the
// three curves compress on `side` and the third does not.
bool two_of_three(const SurfaceGroup& G, const Letters& c, const Letters& c1, const Letters& c2, Side side);

// Quadrants are indexed NW, NE, SW, SE.
enum class LabelPattern { I, II, III, IV };
std::string pattern_name(LabelPattern p);

// Roles of the quadrants in the proof for the pattern, -1 when absent.
struct QuadrantRoles {
    int a = -1, a1 = -1, a2 = -1;  // a, a', a''
    int b = -1, b1 = -1, b2 = -1;  // b, b', b''
};

struct Labeling {
    LabelPattern pattern = LabelPattern::I;
    int transform = 0;  // dihedral symmetry taking the drawn layout to this one
    QuadrantRoles roles;
};

// Identify the (i)-(iv) pattern of a quadrant labeling. At an alternating
// crossing the two A regions are taken to be joined (favor A). Throws
// CatalogError for AAAA / BBBB.
Labeling favor_a(const std::array<char, 4>& labels);

struct CrossingModel {
    int id = 0;
    int danger_intersection = 0;  // 0: no dangerous diagonal; it is NW-SE otherwise
    std::array<std::array<Letters, 2>, 4> realization;  // [quadrant][0 for A, 1 for B]
    std::optional<Letters> far_b;
    std::array<std::vector<Letters>, 2> lantern;  // boundary curves for an AA / BB danger
};

struct CrossingCatalog {
    int genus = 0;
    std::vector<CrossingModel> models;

    static CrossingCatalog parse(const std::string& text);
    static CrossingCatalog load(const std::string& path);
    // Checks witnesses against the twist test and the model constraints;
    // throws CatalogError.
    void validate() const;
};

std::string default_catalog_path();

struct CrossingCase {
    int model = 0;
    std::array<char, 4> labels{};
    std::array<Letters, 4> curves;
    bool danger = false;  // NW-SE
    int danger_intersection = 0;
    std::optional<Letters> far_b;
    std::vector<Letters> lantern;  // boundaries on the side of a monochromatic danger
    Labeling labeling;

    std::string name() const;
    void validate(const SurfaceGroup& G) const;  // throws CatalogError
};

// All legal labelings of a model, with and without a far b.
std::vector<CrossingCase> enumerate_cases(const CrossingModel& m);
DisjointnessWitnesses case_witnesses(const CrossingCase& c, int genus);

// Admissible path from the first cloud to the second, re-validated edge by edge.
std::vector<TwoCVertex> cloud_connect(const CrossingCase& c, const DisjointnessWitnesses& W);

}  // namespace pk
