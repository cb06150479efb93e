#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "powellkit/disk_systems.hpp"
#include "powellkit/mapping_classes.hpp"

namespace pk {

class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NotGoeritz : public EngineError {
public:
    using EngineError::EngineError;
};
class NotBraidImage : public EngineError {
public:
    using EngineError::EngineError;
};
class BridgeParity : public EngineError {
public:
    using EngineError::EngineError;
};
class NotOrthogonal : public EngineError {
public:
    using EngineError::EngineError;
};
class AlphabetError : public EngineError {
public:
    using EngineError::EngineError;
};
class ParityError : public EngineError {
public:
    using EngineError::EngineError;
};
class NotShort : public EngineError {
public:
    using EngineError::EngineError;
};
class DepthExceeded : public EngineError {
public:
    using EngineError::EngineError;
};
class SearchExhausted : public EngineError {
public:
    using EngineError::EngineError;
};

struct Certificate {
    std::string engine;
    std::string input;   // human-readable statement of the input
    MCWord input_move;   // compiled independently when the claim is an equality of moves
    MCWord output;       // Powell word
    bool h1_check = false;
    bool pi1_check = false;
    std::vector<std::string> trace;

    bool passed() const { return h1_check && pi1_check && is_powell_word(output); }
};

enum class OutputFormat { Text, Structured };
std::string render(const Certificate& c, OutputFormat fmt);

// A bubble move: the handles in `bubble` travel along `path`, a sequence of
// loops a_j / b_j (with orientation) in the complementary surface.
struct BraidStep {
    CurveId loop;
    int power = 1;
};
struct BraidMoveSpec {
    std::vector<int> bubble;
    std::vector<BraidStep> path;
};
MCWord braid_move_word(const BraidMoveSpec& spec);
BraidMoveSpec parse_braid_spec(const std::string& text, int genus);
std::string format_braid_spec(const BraidMoveSpec& spec);

// Lemma-level inputs for the orthogonal replacement engine. `b` is a based
// word for the boundary of a disk in B meeting a1 once. Each intersection arc
// with b1 carries the curve produced by outermost-arc surgery.
struct OrthogonalInstance {
    Letters b;
    std::vector<Letters> surgery_witnesses;  // one per arc of b ∩ b1, outermost first
};

// Mixed braid words: a<k> in B_a, b<k> in B_b, s for sigma; ' marks inverses.
struct MixedLetter {
    char family = 'a';  // 'a', 'b', 's'
    int index = 0;
    int power = 1;
    bool operator==(const MixedLetter&) const = default;
};
using MixedWord = std::vector<MixedLetter>;
MixedWord parse_mixed_word(const std::string& text);
std::string format_mixed_word(const MixedWord& w);
MixedWord inverse(const MixedWord& w);
int sigma_count(const MixedWord& w);

struct SigmaFactor {
    MixedWord conjugator;  // alpha beta
    MixedWord factor;      // alpha beta sigma^e beta^-1 alpha^-1
    MixedWord remainder;   // alpha beta omega
};
struct SigmaReduction {
    std::vector<SigmaFactor> factors;
    MixedWord residual;
};

struct ShortEyeglassNode {
    BridgeFrame frame;
    std::string role;  // "root", "lens a_c", "isotoped"
    std::vector<ShortEyeglassNode> children;
};

class PowellEngine {
public:
    explicit PowellEngine(const MappingClasses& mc, int depth_cap = 64, int search_depth = 5);

    const MappingClasses& classes() const { return M_; }

    // Powell word for a single Goeritz symbol; throws NotGoeritz for twists
    // about a_i or b_i.
    MCWord powellize(const GeneratorSymbol& s) const;
    MCWord powellize(const MCWord& w) const;

    // Deta/Deta12 word P with P (base) P^-1 = Slide(i, loop), base being Dnu
    // for meridians and Dtheta Domega Dtheta Domega for longitudes.
    MCWord relocation(int handle, const CurveId& loop) const;

    Certificate braid_to_powell(const BraidMoveSpec& spec) const;
    Certificate normalize_reducing_curve(const Word& c, int g1, const std::optional<MCWord>& braid) const;
    Certificate orthogonal_system_align(const ChordDiagram& diagram, const std::vector<Letters>& b_prime) const;
    Certificate eyeglass_factor(const EyeglassFrame& frame, const std::optional<MCWord>& provenance) const;
    Certificate orthogonal_replace(const OrthogonalInstance& inst) const;

    SigmaReduction sigma_reduce(const MixedWord& rho) const;
    ShortEyeglassNode short_eyeglass_reduce(const BridgeFrame& frame) const;

    // Eyeglass twist E(alpha, beta) = T_{alpha beta}^-1 T_alpha T_beta.
    PiOneAuto eyeglass_twist(const Letters& alpha, const Letters& beta) const;

private:
    const MappingClasses& M_;
    int depth_cap_;
    int search_depth_;
    mutable std::mutex mu_;
    mutable std::map<std::string, MCWord> relocations_;
    mutable std::map<std::string, MCWord> standard_frames_;

    MCWord standard_lens_word(const Letters& alpha, const Letters& beta, std::vector<std::string>& trace) const;
    std::pair<EyeglassFrame, EyeglassFrame> split_frame(const EyeglassFrame& frame, Side side, const Lens& l1, const Lens& l2,
                                                        std::vector<std::string>& trace) const;
    MCWord factor_frame(const EyeglassFrame& frame, int depth, std::vector<std::string>& trace) const;
    MCWord orthogonal_special(const Letters& b, std::vector<std::string>& trace) const;
    void finish(Certificate& c, const PiOneAuto& target) const;
};

}  // namespace pk
