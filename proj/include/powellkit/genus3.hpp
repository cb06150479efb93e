#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "powellkit/mapping_classes.hpp"
#include "powellkit/two_complex.hpp"

namespace pk {

class NotSeparating : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class UnsupportedSeparatingCurve : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class EmptyResult : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NoBulletFires : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class InvalidDisk : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DiskRef {
    Side side = Side::A;
    Letters curve;
    bool separating = false;
    // Surrogate carried along when the disk is the image of a separating disk.
    std::optional<Letters> transported_surrogate;

    static DiskRef make(Side side, const Letters& curve, int genus);  // throws InvalidDisk
};

// Image of f(d); f must preserve the splitting.
DiskRef transport(const PiOneAuto& f, const DiskRef& d, const SurfaceGroup& G);

// Whitehead's algorithm in the free group on letters +-1..+-rank.
Letters whitehead_minimize(const Letters& w, int rank, std::vector<std::size_t>* lengths = nullptr);
bool is_primitive_in_free_group(const Letters& w, int rank);

// Word of the curve in the free group pi1 of the opposite handlebody (the
// letters of the other family deleted).
Letters opposite_quotient(const DiskRef& d);

DiskRef surrogate(const DiskRef& d, const SurfaceGroup& G);
bool is_primitive(const DiskRef& d);

struct PrimitiveCandidate {
    std::string role;  // "a", "surrogate(a)", "b", "surrogate(b)"
    DiskRef disk;
};
std::vector<PrimitiveCandidate> four_disk_primitivity(const DiskRef& a, const DiskRef& b, const SurfaceGroup& G);

struct ClassAssignment {
    DiskRef anchor;
    std::string target;     // "a1" or "b3"
    std::string rationale;  // role of the anchor in the bullet order
};
ClassAssignment assign_class(const TwoCVertex& v, const DisjointnessWitnesses& W);
// Disk form, for images of separating disks that carry their surrogates.
ClassAssignment assign_class(const DiskRef& a, const DiskRef& b, const DisjointnessWitnesses& W);

struct EdgeBullet {
    int bullet = 0;  // 1: primitive, 2: surrogate primitive, 3: parallel, 4: surrogate relation
    std::string evidence;
};
// Triple with one disk on side `single.side` and two disks on the other side.
EdgeBullet edge_invariance(const DiskRef& single, const DiskRef& d1, const DiskRef& d2, const DisjointnessWitnesses& W);

// A Powell word h with h(alpha) ~ target_a and h(beta) ~ target_b, searched
// over words of length <= depth in the Powell generators and verified on curves.
std::optional<MCWord> simultaneous_normalizer(const MappingClasses& M, const Letters& alpha, const Letters& target_a,
                                              const Letters& beta, const Letters& target_b, int depth);

// Instances: base configurations plus their images under transport words.
struct Genus3Vertex {
    std::string name;
    DiskRef a, b;
    MCWord provenance;  // (a, b) = provenance(base_a, base_b)
    DiskRef base_a, base_b;
};
struct Genus3Triple {
    std::string name;
    DiskRef single;
    DiskRef d1, d2;
    MCWord provenance;
    DiskRef base_single, base_d1, base_d2;
};
struct Genus3Instances {
    std::vector<Genus3Vertex> vertices;
    std::vector<Genus3Triple> triples;
    std::vector<std::pair<Letters, Letters>> explicit_disjoint;  // audited by the twist test
    std::vector<MCWord> transports;

    static Genus3Instances parse(const std::string& text, const MappingClasses& M);
    static Genus3Instances load(const std::string& path, const MappingClasses& M);
    // Base instances followed by every transported copy.
    Genus3Instances expanded(const MappingClasses& M) const;
    DisjointnessWitnesses witnesses(const MappingClasses& M) const;
};

std::string default_genus3_path();

struct EdgeAgreement {
    bool agree = false;
    std::string how;   // "same anchor" or a reconciliation summary
    std::vector<MCWord> certificates;
};
// Checks that assign_class agrees on the two vertices of the shuffle edge
// given by the triple, reconciling through the shared coordinate when the
// anchors differ.
EdgeAgreement edge_agreement(const Genus3Triple& t, const DisjointnessWitnesses& W, const MappingClasses& M);

}  // namespace pk
