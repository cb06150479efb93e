#include "powellkit/surface.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pk {

void check_genus(int genus) {
    if (genus < 2) throw std::invalid_argument("genus must be at least 2");
}

Letters free_reduce(const Letters& w) {
    Letters out;
    out.reserve(w.size());
    for (int a : w) {
        if (!out.empty() && out.back() == -a)
            out.pop_back();
        else
            out.push_back(a);
    }
    return out;
}

Letters cyclic_reduce(const Letters& w) {
    Letters r = free_reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo > 1 && r[lo] == -r[hi - 1]) {
        ++lo;
        --hi;
    }
    return Letters(r.begin() + lo, r.begin() + hi);
}

Letters inverse(const Letters& w) {
    Letters out(w.rbegin(), w.rend());
    for (int& a : out) a = -a;
    return out;
}

Letters concat(const Letters& u, const Letters& v) {
    Letters out = u;
    out.insert(out.end(), v.begin(), v.end());
    return free_reduce(out);
}

Letters concat(std::initializer_list<Letters> parts) {
    Letters out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return free_reduce(out);
}

Letters power(const Letters& w, int k) {
    Letters base = k >= 0 ? w : inverse(w);
    Letters out;
    for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
    return free_reduce(out);
}

Letters commutator(const Letters& u, const Letters& v) {
    return concat({u, v, inverse(u), inverse(v)});
}

Letters rotate(const Letters& w, std::size_t k) {
    if (w.empty()) return w;
    k %= w.size();
    Letters out(w.begin() + k, w.end());
    out.insert(out.end(), w.begin(), w.begin() + k);
    return out;
}

Word reduce(const Word& w) {
    return Word{w.cyclic ? cyclic_reduce(w.letters) : free_reduce(w.letters), w.cyclic};
}

Letters parse_letters(const std::string& text, int genus) {
    // Letters may be separated by spaces or dots, or written run together.
    Letters out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1" || tok == "e") continue;
        std::size_t k = 0;
        while (k < tok.size()) {
            char c = tok[k];
            if (c == '.') {
                ++k;
                continue;
            }
            int sign = std::islower(static_cast<unsigned char>(c)) ? 1 : -1;
            char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (lc != 'x' && lc != 'y') throw ParseError("bad letter in '" + tok + "'");
            std::size_t j = k + 1;
            int idx = 0;
            while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) {
                idx = idx * 10 + (tok[j] - '0');
                if (idx > 1000000) throw ParseError("bad letter in '" + tok + "'");
                ++j;
            }
            if (j == k + 1) throw ParseError("bad letter in '" + tok + "'");
            if (idx < 1 || idx > genus)
                throw ParseError("letter '" + tok.substr(k, j - k) + "' outside genus " + std::to_string(genus));
            out.push_back(sign * (lc == 'x' ? X(idx) : Y(idx)));
            k = j;
        }
    }
    return out;
}

Word parse_word(const std::string& text, int genus) {
    std::string body = text;
    bool cyc = false;
    auto p = body.find_first_not_of(" \t");
    if (p != std::string::npos && body.compare(p, 7, "cyclic:") == 0) {
        cyc = true;
        body = body.substr(p + 7);
    }
    return reduce(Word{parse_letters(body, genus), cyc});
}

std::string format_letters(const Letters& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ' ';
        int a = w[k];
        char c = is_x(a) ? 'x' : 'y';
        if (a < 0) c = static_cast<char>(std::toupper(c));
        s += c;
        s += std::to_string(handle_of(a));
    }
    return s;
}

std::string format_word(const Word& w) {
    return (w.cyclic ? "cyclic: " : "") + format_letters(w.letters);
}

HomologyClass homology(const Letters& w, int genus) {
    HomologyClass v(2 * genus, 0);
    for (int a : w) v[std::abs(a) - 1] += a > 0 ? 1 : -1;
    return v;
}

long pairing(const HomologyClass& u, const HomologyClass& v) {
    long s = 0;
    for (std::size_t i = 0; i + 1 < u.size(); i += 2) s += u[i] * v[i + 1] - u[i + 1] * v[i];
    return s;
}

bool bounds_disk_in(Side side, const Letters& w) {
    Letters kept;
    for (int a : w)
        if (is_x(a) != (side == Side::A)) kept.push_back(a);
    return free_reduce(kept).empty();
}

bool is_separating(const Letters& w, int genus) {
    auto h = homology(w, genus);
    return std::all_of(h.begin(), h.end(), [](long c) { return c == 0; });
}

Letters relator(int genus) {
    Letters r;
    for (int i = 1; i <= genus; ++i) {
        r.push_back(X(i));
        r.push_back(Y(i));
        r.push_back(-X(i));
        r.push_back(-Y(i));
    }
    return r;
}

CurveId parse_curve_id(const std::string& text, int genus) {
    if (text.size() < 2 || (text[0] != 'a' && text[0] != 'b' && text[0] != 'c'))
        throw ParseError("bad atlas curve '" + text + "'");
    int idx = 0;
    for (std::size_t k = 1; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw ParseError("bad atlas curve '" + text + "'");
        idx = idx * 10 + (text[k] - '0');
    }
    if (idx < 1 || idx > genus) throw ParseError("atlas curve '" + text + "' out of range");
    return CurveId{text[0], idx};
}

std::string format_curve_id(const CurveId& c) {
    return std::string(1, c.kind) + std::to_string(c.index);
}

StandardAtlas::StandardAtlas(int genus) : g_(genus) { check_genus(genus); }

Letters StandardAtlas::a(int i) const { return {X(i)}; }
Letters StandardAtlas::b(int i) const { return {Y(i)}; }

Letters StandardAtlas::c(int i) const {
    Letters r;
    for (int k = 1; k <= i; ++k) {
        Letters kk = commutator({X(k)}, {Y(k)});
        r.insert(r.end(), kk.begin(), kk.end());
    }
    return r;
}

Letters StandardAtlas::curve(const CurveId& id) const {
    if (id.index < 1 || id.index > g_) throw std::out_of_range("atlas index");
    switch (id.kind) {
        case 'a': return a(id.index);
        case 'b': return b(id.index);
        case 'c': return c(id.index);
    }
    throw std::out_of_range("atlas kind");
}

std::vector<CurveId> StandardAtlas::curves() const {
    std::vector<CurveId> out;
    for (char k : {'a', 'b', 'c'})
        for (int i = 1; i <= g_; ++i) out.push_back({k, i});
    return out;
}

int StandardAtlas::intersection(const CurveId& u, const CurveId& v) const {
    if (u.index == v.index && ((u.kind == 'a' && v.kind == 'b') || (u.kind == 'b' && v.kind == 'a')))
        return 1;
    return 0;
}

}  // namespace pk
