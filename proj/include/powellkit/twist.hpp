#pragma once

#include <stdexcept>
#include <vector>

#include "powellkit/word_problem.hpp"

namespace pk {

class NotSimple : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sides of the 4g-gon in counterclockwise order, labelled by the letter read
// when a path leaves the polygon through that side.
std::vector<int> polygon_sides(int genus);

// Chord system of a cyclically reduced word drawn in the 4g-gon. Positions are
// side index plus a fractional offset. Throws NotSimple if the chords cross or
// the endpoints fail to match across paired sides.
struct ChordSystem {
    std::vector<std::pair<double, double>> chords;  // chord k runs from entry of k to exit of k+1
    Letters word;
};
ChordSystem polygon_chords(int genus, const Letters& cyclic_word);
bool is_polygon_simple(int genus, const Letters& w);

// Dehn twist about the simple closed curve carried by w, to the given power.
// Positive twists act on homology by v -> v + <v,c> c.
PiOneAuto dehn_twist(const SurfaceGroup& G, const Letters& w, int power = 1);

}  // namespace pk
