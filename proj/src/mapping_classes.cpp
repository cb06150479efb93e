#include "powellkit/mapping_classes.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pk {

namespace {

struct PowellName {
    MoveKind kind;
    const char* name;
};
constexpr PowellName kPowell[] = {{MoveKind::Dnu, "Dnu"},
                                  {MoveKind::Deta, "Deta"},
                                  {MoveKind::Deta12, "Deta12"},
                                  {MoveKind::Domega, "Domega"},
                                  {MoveKind::Dtheta, "Dtheta"}};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Letters comm_k(int i) { return commutator({X(i)}, {Y(i)}); }

Letters conj_by(const Letters& u, const Letters& w) { return concat({u, w, inverse(u)}); }

PiOneAuto substitution(int genus, const std::map<int, Letters>& images) {
    PiOneAuto f = identity_auto(genus);
    for (const auto& [a, w] : images) f.images[static_cast<std::size_t>(a - 1)] = w;
    return f;
}

PiOneAuto chain(const SurfaceGroup& G, std::initializer_list<PiOneAuto> fs) {
    PiOneAuto r = identity_auto(G.genus());
    for (const auto& f : fs) r = compose(G, r, f);
    return r;
}

}  // namespace

bool is_powell_kind(MoveKind k) { return k != MoveKind::Twist && k != MoveKind::Slide; }

bool is_powell_word(const MCWord& w) {
    for (const auto& s : w)
        if (!is_powell_kind(s.kind)) return false;
    return true;
}

const char* powell_name(MoveKind k) {
    for (const auto& p : kPowell)
        if (p.kind == k) return p.name;
    return k == MoveKind::Twist ? "T" : "Slide";
}

GeneratorSymbol powell(MoveKind k, int power) { return GeneratorSymbol{k, {}, 0, power}; }
GeneratorSymbol twist_symbol(CurveId c, int power) { return GeneratorSymbol{MoveKind::Twist, c, 0, power}; }
GeneratorSymbol slide_symbol(int handle, CurveId loop, int power) {
    return GeneratorSymbol{MoveKind::Slide, loop, handle, power};
}

MCWord parse_mcword(const std::string& text, int genus) {
    MCWord out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1" || tok == "id") continue;
        int power = 1;
        while (!tok.empty() && tok.back() == '\'') {
            power = -power;
            tok.pop_back();
        }
        GeneratorSymbol s;
        bool found = false;
        for (const auto& p : kPowell)
            if (tok == p.name) {
                s = powell(p.kind);
                found = true;
            }
        if (!found && tok.size() > 3 && tok.rfind("T[", 0) == 0 && tok.back() == ']') {
            s = twist_symbol(parse_curve_id(tok.substr(2, tok.size() - 3), genus));
            found = true;
        }
        if (!found && tok.rfind("Slide[", 0) == 0 && tok.back() == ']') {
            std::string body = tok.substr(6, tok.size() - 7);
            auto semi = body.find(';');
            if (semi == std::string::npos) throw ParseError("bad slide '" + tok + "'");
            int h = 0;
            try {
                h = std::stoi(body.substr(0, semi));
            } catch (const std::exception&) {
                throw ParseError("bad slide handle in '" + tok + "'");
            }
            CurveId loop = parse_curve_id(body.substr(semi + 1), genus);
            if (h < 1 || h > genus) throw ParseError("slide handle out of range in '" + tok + "'");
            if (loop.kind == 'c' || loop.index == h) throw ParseError("slide loop must be a_j or b_j with j != i");
            s = slide_symbol(h, loop);
            found = true;
        }
        if (!found) throw ParseError("unknown move '" + tok + "'");
        s.power = power;
        out.push_back(s);
    }
    return out;
}

std::string format_symbol(const GeneratorSymbol& s) {
    std::string t;
    switch (s.kind) {
        case MoveKind::Twist: t = "T[" + format_curve_id(s.curve) + "]"; break;
        case MoveKind::Slide: t = "Slide[" + std::to_string(s.handle) + ";" + format_curve_id(s.curve) + "]"; break;
        default: t = powell_name(s.kind);
    }
    if (s.power < 0) t += "'";
    return t;
}

std::string format_mcword(const MCWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += format_symbol(w[i]);
    }
    return out;
}

MCWord inverse(const MCWord& w) {
    MCWord out(w.rbegin(), w.rend());
    for (auto& s : out) s.power = -s.power;
    return out;
}

MCWord concat(const MCWord& u, const MCWord& v) {
    MCWord out = u;
    for (const auto& s : v) {
        if (!out.empty()) {
            GeneratorSymbol t = out.back();
            t.power = -t.power;
            if (t == s) {
                out.pop_back();
                continue;
            }
        }
        out.push_back(s);
    }
    return out;
}

MCWord concat(std::initializer_list<MCWord> parts) {
    MCWord out;
    for (const auto& p : parts) out = concat(out, p);
    return out;
}

MCWord conjugate(const MCWord& p, const MCWord& w) { return concat({p, w, inverse(p)}); }

Letters slide_band(int handle, const CurveId& loop) {
    Letters k = comm_k(handle);
    return loop.kind == 'a' ? concat(k, Letters{X(loop.index)}) : concat(k, Letters{-Y(loop.index)});
}

GeneratorTable GeneratorTable::standard(int g) {
    check_genus(g);
    SurfaceGroup G(g);
    GeneratorTable t;
    t.genus = g;

    PiOneAuto eta = identity_auto(g), eta_inv = identity_auto(g);
    for (int i = 1; i <= g; ++i) {
        int j = i % g + 1, k = (i + g - 2) % g + 1;
        eta.images[static_cast<std::size_t>(X(i) - 1)] = {X(j)};
        eta.images[static_cast<std::size_t>(Y(i) - 1)] = {Y(j)};
        eta_inv.images[static_cast<std::size_t>(X(i) - 1)] = {X(k)};
        eta_inv.images[static_cast<std::size_t>(Y(i) - 1)] = {Y(k)};
    }
    t.entries["Deta"] = {eta, eta_inv};

    // Half twist exchanging handles 1 and 2; its square is a twist about c2.
    const Letters k1 = comm_k(1), k2 = comm_k(2);
    PiOneAuto swap = substitution(g, {{X(1), {X(2)}},
                                      {Y(1), {Y(2)}},
                                      {X(2), conj_by(inverse(k2), {X(1)})},
                                      {Y(2), conj_by(inverse(k2), {Y(1)})}});
    PiOneAuto swap_inv = substitution(g, {{X(2), {X(1)}},
                                          {Y(2), {Y(1)}},
                                          {X(1), conj_by(k1, {X(2)})},
                                          {Y(1), conj_by(k1, {Y(2)})}});
    t.entries["Deta12"] = {compose(G, swap, dehn_twist(G, k2, -1)), compose(G, dehn_twist(G, k2, 1), swap_inv)};

    PiOneAuto flip = substitution(g, {{X(1), {Y(1), -X(1), -Y(1)}}, {Y(1), {Y(1), X(1), -Y(1), -X(1), -Y(1)}}});
    t.entries["Domega"] = {flip, compose(G, flip, dehn_twist(G, k1, 1))};

    const Letters band = slide_band(1, {'a', 2});
    t.entries["Dnu"] = {compose(G, dehn_twist(G, band, -1), dehn_twist(G, {X(2)}, 1)),
                        compose(G, dehn_twist(G, {X(2)}, -1), dehn_twist(G, band, 1))};

    const Letters bridge = {X(1), -Y(2)};
    t.entries["Dtheta"] = {
        chain(G, {dehn_twist(G, bridge, -1), dehn_twist(G, {X(1)}, 1), dehn_twist(G, {Y(2)}, 1)}),
        chain(G, {dehn_twist(G, {Y(2)}, -1), dehn_twist(G, {X(1)}, -1), dehn_twist(G, bridge, 1)})};
    return t;
}

std::string GeneratorTable::serialize() const {
    std::ostringstream out;
    out << "# powellkit generator table\n";
    out << "genus " << genus << "\n";
    for (const auto& p : kPowell) {
        const auto& e = entries.at(p.name);
        for (const auto* f : {&e.forward, &e.backward})
            for (int a = 1; a <= 2 * genus; ++a)
                out << p.name << (f == &e.backward ? "'" : "") << " " << format_letters({a}) << " = "
                    << format_letters(f->image(a)) << "\n";
    }
    return out.str();
}

GeneratorTable GeneratorTable::parse(const std::string& text) {
    GeneratorTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, std::map<int, Letters>> raw;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "genus") {
            if (!(ls >> t.genus)) throw ParseError("table line " + std::to_string(lineno) + ": bad genus");
            check_genus(t.genus);
            continue;
        }
        if (t.genus == 0) throw ParseError("table line " + std::to_string(lineno) + ": genus must come first");
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("table line " + std::to_string(lineno) + ": missing '='");
        std::istringstream lhs(line.substr(0, eq));
        std::string sym, gen;
        lhs >> sym >> gen;
        Letters g = parse_letters(gen, t.genus);
        if (g.size() != 1 || g[0] < 0) throw ParseError("table line " + std::to_string(lineno) + ": bad generator");
        raw[sym][g[0]] = free_reduce(parse_letters(line.substr(eq + 1), t.genus));
    }
    for (const auto& p : kPowell) {
        TableEntry e{identity_auto(t.genus), identity_auto(t.genus)};
        for (int dir = 0; dir < 2; ++dir) {
            std::string key = std::string(p.name) + (dir ? "'" : "");
            auto it = raw.find(key);
            if (it == raw.end()) throw InvalidTableEntry(std::string("table has no entry for ") + key);
            PiOneAuto& f = dir ? e.backward : e.forward;
            for (int a = 1; a <= 2 * t.genus; ++a) {
                auto im = it->second.find(a);
                if (im == it->second.end())
                    throw InvalidTableEntry(key + " lacks the image of " + format_letters({a}));
                f.images[static_cast<std::size_t>(a - 1)] = im->second;
            }
        }
        t.entries[p.name] = e;
    }
    return t;
}

GeneratorTable GeneratorTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const TableEntry& GeneratorTable::entry(MoveKind k) const { return entries.at(powell_name(k)); }

void GeneratorTable::validate(const SurfaceGroup& G, int bound) const {
    if (G.genus() != genus) throw InvalidTableEntry("table genus differs from group genus");
    const Letters R = G.relator();
    const PiOneAuto id = identity_auto(genus);
    for (const auto& p : kPowell) {
        const auto& e = entries.at(p.name);
        for (int dir = 0; dir < 2; ++dir) {
            const PiOneAuto& f = dir ? e.backward : e.forward;
            std::string name = std::string(p.name) + (dir ? "'" : "");
            if (!G.are_conjugate(apply(f, R), R))
                throw InvalidTableEntry(name + ": image of the relator is not conjugate to the relator");
            if (!is_symplectic(h1_matrix(f))) throw InvalidTableEntry(name + ": H1 action is not symplectic");
            for (int i = 1; i <= genus; ++i) {
                if (!bounds_disk_in(Side::A, f.image(X(i))) || !bounds_disk_in(Side::B, f.image(Y(i))))
                    throw InvalidTableEntry(name + ": does not preserve the splitting");
            }
        }
        if (!outer_equal(G, compose(G, e.forward, e.backward), id, bound))
            throw InvalidTableEntry(std::string(p.name) + ": listed inverse is not an inverse");
    }
}

GeneratorTable resolve_table(int genus, const std::optional<std::string>& path) {
    std::optional<std::string> p = path;
    if (!p) {
        if (const char* env = std::getenv("POWELLKIT_TABLE"); env && *env) p = std::string(env);
    }
    if (!p) return GeneratorTable::standard(genus);
    GeneratorTable t = GeneratorTable::load(*p);
    if (t.genus != genus)
        throw InvalidTableEntry("table '" + *p + "' is for genus " + std::to_string(t.genus) + ", not " +
                                std::to_string(genus));
    return t;
}

MappingClasses::MappingClasses(GeneratorTable table, int bound)
    : table_(std::move(table)), G_(table_.genus), atlas_(table_.genus), bound_(bound) {}

PiOneAuto MappingClasses::symbol(const GeneratorSymbol& s) const {
    const std::string key = format_symbol(s);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    PiOneAuto f;
    switch (s.kind) {
        case MoveKind::Twist: {
            if (s.curve.kind == 'c' && s.curve.index == genus())
                f = identity_auto(genus());  // c_g bounds a disk
            else
                f = dehn_twist(G_, atlas_.curve(s.curve), s.power);
            break;
        }
        case MoveKind::Slide: {
            Letters loop = atlas_.curve(s.curve);
            Letters band = slide_band(s.handle, s.curve);
            f = s.power > 0 ? compose(G_, dehn_twist(G_, band, -1), dehn_twist(G_, loop, 1))
                            : compose(G_, dehn_twist(G_, loop, -1), dehn_twist(G_, band, 1));
            break;
        }
        default: {
            const auto& e = table_.entry(s.kind);
            f = s.power > 0 ? e.forward : e.backward;
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, f);
    return f;
}

PiOneAuto MappingClasses::compile(const MCWord& w) const {
    PiOneAuto r = identity_auto(genus());
    for (const auto& s : w) r = compose(G_, r, symbol(s));
    return r;
}

Word MappingClasses::act_on_curve(const PiOneAuto& f, const Word& w) const {
    Letters im = apply(f, w.letters);
    if (!w.cyclic) return Word{G_.dehn(im), false};
    return Word{G_.cyclic_dehn(im).core, true};
}

EqualityCheck MappingClasses::check_equal(const PiOneAuto& f, const PiOneAuto& h) const {
    EqualityCheck r;
    r.h1 = h1_matrix(f) == h1_matrix(h);
    if (!r.h1) return r;
    r.pi1 = outer_equal(G_, f, h, bound_);
    return r;
}

EqualityCheck MappingClasses::check_equal(const MCWord& u, const MCWord& v) const {
    return check_equal(compile(u), compile(v));
}

bool MappingClasses::preserves_splitting(const PiOneAuto& f) const {
    for (int i = 1; i <= genus(); ++i)
        if (!bounds_disk_in(Side::A, f.image(X(i))) || !bounds_disk_in(Side::B, f.image(Y(i)))) return false;
    return true;
}

bool MappingClasses::preserves_relator(const PiOneAuto& f) const {
    return G_.are_conjugate(apply(f, G_.relator()), G_.relator()).has_value();
}

}  // namespace pk
