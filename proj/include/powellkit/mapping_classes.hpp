#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "powellkit/twist.hpp"
#include "powellkit/word_problem.hpp"

namespace pk {

enum class MoveKind { Dnu, Deta, Deta12, Domega, Dtheta, Twist, Slide };

struct GeneratorSymbol {
    MoveKind kind = MoveKind::Dnu;
    CurveId curve{};  // twist curve, or slide loop
    int handle = 0;   // slide: the bubble
    int power = 1;    // +1 or -1

    bool operator==(const GeneratorSymbol&) const = default;
};

using MCWord = std::vector<GeneratorSymbol>;

class InvalidTableEntry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_powell_kind(MoveKind k);
bool is_powell_word(const MCWord& w);
const char* powell_name(MoveKind k);

GeneratorSymbol powell(MoveKind k, int power = 1);
GeneratorSymbol twist_symbol(CurveId c, int power = 1);
GeneratorSymbol slide_symbol(int handle, CurveId loop, int power = 1);

// "Dnu Deta' T[a1] Slide[1;b2]'"; the word s1 s2 ... sn denotes s1 o s2 o ... o sn.
MCWord parse_mcword(const std::string& text, int genus);
std::string format_symbol(const GeneratorSymbol& s);
std::string format_mcword(const MCWord& w);
MCWord inverse(const MCWord& w);
MCWord concat(const MCWord& u, const MCWord& v);
MCWord concat(std::initializer_list<MCWord> parts);
MCWord conjugate(const MCWord& p, const MCWord& w);  // p w p^-1

struct TableEntry {
    PiOneAuto forward;
    PiOneAuto backward;
};

// Automorphisms for the five Powell generators at a fixed genus.
class GeneratorTable {
public:
    int genus = 0;
    std::map<std::string, TableEntry> entries;  // keyed by powell_name

    static GeneratorTable standard(int genus);
    static GeneratorTable parse(const std::string& text);
    static GeneratorTable load(const std::string& path);
    std::string serialize() const;

    const TableEntry& entry(MoveKind k) const;
    // Throws InvalidTableEntry naming the violated invariant.
    void validate(const SurfaceGroup& G, int bound = 64) const;
};

// Resolves a table path: explicit flag, then POWELLKIT_TABLE, then built-in.
GeneratorTable resolve_table(int genus, const std::optional<std::string>& path);

// Simple band curve joining the bubble of handle i to the loop.
Letters slide_band(int handle, const CurveId& loop);

struct EqualityCheck {
    bool h1 = false;
    bool pi1 = false;
    bool holds() const { return h1 && pi1; }
};

class MappingClasses {
public:
    explicit MappingClasses(GeneratorTable table, int bound = 64);

    int genus() const { return table_.genus; }
    const SurfaceGroup& group() const { return G_; }
    const StandardAtlas& atlas() const { return atlas_; }
    const GeneratorTable& table() const { return table_; }
    int bound() const { return bound_; }

    PiOneAuto symbol(const GeneratorSymbol& s) const;
    PiOneAuto compile(const MCWord& w) const;
    Word act_on_curve(const PiOneAuto& f, const Word& w) const;
    IntMatrix act_on_homology(const PiOneAuto& f) const { return h1_matrix(f); }

    EqualityCheck check_equal(const PiOneAuto& f, const PiOneAuto& h) const;
    EqualityCheck check_equal(const MCWord& u, const MCWord& v) const;
    bool equals(const MCWord& u, const MCWord& v) const { return check_equal(u, v).holds(); }

    // Goeritz membership: every a_i bounds in A and every b_i in B after f.
    bool preserves_splitting(const PiOneAuto& f) const;
    bool preserves_relator(const PiOneAuto& f) const;

private:
    GeneratorTable table_;
    SurfaceGroup G_;
    StandardAtlas atlas_;
    int bound_;
    mutable std::mutex mu_;
    mutable std::map<std::string, PiOneAuto> cache_;
};

}  // namespace pk
