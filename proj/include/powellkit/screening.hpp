#pragma once

#include <cstdint>
#include <vector>

#include "powellkit/surface.hpp"

namespace pk {

// Permutation of {0..n-1}; products apply the left factor first.
using Perm = std::vector<std::uint8_t>;

// Random homomorphisms from the genus-g surface group to symmetric groups
// S_n, n <= 8. A word sent to a non-identity permutation is nontrivial in the
// group; a word killed by every map proves nothing.
class FiniteQuotientScreen {
public:
    FiniteQuotientScreen(int genus, int maps, std::uint64_t seed, int max_degree = 8);

    int genus() const { return g_; }
    std::size_t size() const { return images_.size(); }
    int degree(std::size_t k) const { return static_cast<int>(images_[k][0].size()); }

    Perm evaluate(std::size_t k, const Letters& w) const;
    // Index of a map witnessing nontriviality, or -1.
    int witness(const Letters& w) const;
    bool proves_nontrivial(const Letters& w) const { return witness(w) >= 0; }

private:
    int g_;
    std::vector<std::vector<Perm>> images_;  // images_[k][letter-1]
};

}  // namespace pk
