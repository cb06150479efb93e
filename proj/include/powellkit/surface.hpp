#pragma once

#include <cstdlib>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace pk {

// Letters: x_i = 2i-1, y_i = 2i, inverses negated.
using Letters = std::vector<int>;

inline int X(int i) { return 2 * i - 1; }
inline int Y(int i) { return 2 * i; }
inline int handle_of(int letter) { return (std::abs(letter) + 1) / 2; }
inline bool is_x(int letter) { return std::abs(letter) % 2 == 1; }

struct Word {
    Letters letters;
    bool cyclic = false;

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
    bool operator==(const Word&) const = default;
};

enum class Side { A, B };

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Letters free_reduce(const Letters& w);
Letters cyclic_reduce(const Letters& w);
Letters inverse(const Letters& w);
Letters concat(const Letters& u, const Letters& v);
Letters concat(std::initializer_list<Letters> parts);
Letters power(const Letters& w, int k);
Letters commutator(const Letters& u, const Letters& v);
Letters rotate(const Letters& w, std::size_t k);

Word reduce(const Word& w);

// "x1 Y3", optional "cyclic:" prefix; "1" or empty string is the identity.
Word parse_word(const std::string& text, int genus);
Letters parse_letters(const std::string& text, int genus);
std::string format_letters(const Letters& w);
std::string format_word(const Word& w);

using HomologyClass = std::vector<long>;
HomologyClass homology(const Letters& w, int genus);
long pairing(const HomologyClass& u, const HomologyClass& v);

bool bounds_disk_in(Side side, const Letters& w);
bool is_separating(const Letters& w, int genus);

Letters relator(int genus);

// Standard atlas: a_i = x_i, b_i = y_i, c_i = [x1,y1]...[xi,yi].
struct CurveId {
    char kind = 'a';  // 'a', 'b', 'c'
    int index = 1;
    bool operator==(const CurveId&) const = default;
    auto operator<=>(const CurveId&) const = default;
};

CurveId parse_curve_id(const std::string& text, int genus);
std::string format_curve_id(const CurveId& c);

class StandardAtlas {
public:
    explicit StandardAtlas(int genus);
    int genus() const { return g_; }
    Letters a(int i) const;
    Letters b(int i) const;
    Letters c(int i) const;
    Letters curve(const CurveId& id) const;
    Letters relator() const { return pk::relator(g_); }
    std::vector<CurveId> curves() const;
    // Geometric intersection number of two atlas curves.
    int intersection(const CurveId& u, const CurveId& v) const;

private:
    int g_;
};

void check_genus(int genus);

}  // namespace pk
