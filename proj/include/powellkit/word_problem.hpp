#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "powellkit/surface.hpp"

namespace pk {

class CandidateBoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConjugacyWitness {
    Letters conjugator;  // w1 = conjugator * w2 * conjugator^-1
};

// Surface group <x_i, y_i | [x1,y1]...[xg,yg]> with Dehn's algorithm.
class SurfaceGroup {
public:
    explicit SurfaceGroup(int genus);

    int genus() const { return g_; }
    const Letters& relator() const { return r_; }

    Letters dehn(const Letters& w) const;
    bool is_trivial(const Letters& w) const;
    bool equal(const Letters& u, const Letters& v) const;

    // w = conj * core * conj^-1 with core cyclically Dehn-reduced.
    struct CyclicForm {
        Letters conj;
        Letters core;
    };
    CyclicForm cyclic_dehn(const Letters& w) const;

    std::optional<ConjugacyWitness> are_conjugate(const Letters& w1, const Letters& w2) const;

private:
    int g_;
    Letters r_;
    std::vector<Letters> sym_;                 // all rotations of R and R^-1
    std::vector<std::vector<int>> by_first_;   // letter index -> indices into sym_
    std::vector<Letters> short_conj_;
    std::vector<Letters> long_conj_;

    std::optional<Letters> search_conjugator(const Letters& cu, const Letters& cv,
                                             const std::vector<Letters>& cands) const;
    static std::size_t slot(int letter, int genus) {
        return static_cast<std::size_t>(letter > 0 ? letter - 1 : 2 * genus - letter - 1);
    }
};

// Endomorphism given by images of x1, y1, ..., xg, yg (index letter-1).
struct PiOneAuto {
    int genus = 0;
    std::vector<Letters> images;

    const Letters& image(int letter) const { return images.at(static_cast<std::size_t>(letter - 1)); }
    bool operator==(const PiOneAuto&) const = default;
};

PiOneAuto identity_auto(int genus);
Letters apply(const PiOneAuto& f, const Letters& w);
// (f o h)(z) = f(h(z)); images Dehn-reduced.
PiOneAuto compose(const SurfaceGroup& G, const PiOneAuto& f, const PiOneAuto& h);
PiOneAuto inner_auto(const SurfaceGroup& G, const Letters& u);

using IntMatrix = std::vector<std::vector<long>>;
// Column j is the homology class of the image of generator j.
IntMatrix h1_matrix(const PiOneAuto& f);
bool is_symplectic(const IntMatrix& m);

// True iff f and h differ by an inner automorphism. The candidate search over
// centralizer powers is bounded by `bound`; exhausting it throws.
bool outer_equal(const SurfaceGroup& G, const PiOneAuto& f, const PiOneAuto& h, int bound = 64);

}  // namespace pk
