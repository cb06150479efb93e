#include "powellkit/disk_systems.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pk {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return trim(h == std::string::npos ? line : line.substr(0, h));
}

std::vector<int> parse_ints(const std::string& s) {
    std::istringstream in(s);
    std::vector<int> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw DiagramError("bad integer '" + tok + "'");
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw DiagramError("bad integer '" + tok + "'");
        }
    }
    return out;
}

// Positions of `arc` on a disk boundary.
std::pair<int, int> positions(const std::vector<int>& pts, int arc) {
    int p = -1, q = -1;
    for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
        if (pts[static_cast<std::size_t>(k)] != arc) continue;
        if (p < 0) p = k;
        else q = k;
    }
    return {p, q};
}

}  // namespace

int ChordDiagram::crossing_count() const { return static_cast<int>(arcs().size()); }

std::vector<int> ChordDiagram::arcs() const {
    std::set<int> ids;
    for (const auto& d : disks) ids.insert(d.points.begin(), d.points.end());
    return {ids.begin(), ids.end()};
}

std::vector<int> ChordDiagram::disks_of(int arc) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(disks.size()); ++i) {
        const auto& p = disks[static_cast<std::size_t>(i)].points;
        if (std::find(p.begin(), p.end(), arc) != p.end()) out.push_back(i);
    }
    return out;
}

int ChordDiagram::disk_index(const std::string& label) const {
    for (int i = 0; i < static_cast<int>(disks.size()); ++i)
        if (disks[static_cast<std::size_t>(i)].label == label) return i;
    throw DiagramError("no disk labeled " + label);
}

void ChordDiagram::validate() const {
    std::set<std::string> labels;
    for (const auto& d : disks) {
        if (d.label.empty()) throw DiagramError("empty disk label");
        if (!labels.insert(d.label).second) throw DiagramError("duplicate disk label " + d.label);
    }
    for (int a : arcs()) {
        auto ds = disks_of(a);
        if (ds.size() != 2) throw DiagramError("arc " + std::to_string(a) + " must lie on exactly two disks");
        for (int di : ds) {
            const auto& p = disks[static_cast<std::size_t>(di)].points;
            if (std::count(p.begin(), p.end(), a) != 2)
                throw DiagramError("arc " + std::to_string(a) + " needs two endpoints on " +
                                   disks[static_cast<std::size_t>(di)].label);
        }
    }
    // chords on one disk are pairwise non-crossing
    for (const auto& d : disks) {
        std::vector<int> stack;
        std::set<int> closed;
        for (int a : d.points) {
            if (!stack.empty() && stack.back() == a) {
                stack.pop_back();
                closed.insert(a);
            } else if (std::find(stack.begin(), stack.end(), a) != stack.end()) {
                throw DiagramError("arcs cross on disk " + d.label);
            } else {
                stack.push_back(a);
            }
        }
    }
}

ChordDiagram ChordDiagram::parse(const std::string& text) {
    ChordDiagram d;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = strip_comment(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (line.rfind("disk ", 0) != 0 || colon == std::string::npos)
            throw DiagramError("expected 'disk <label> [masked]: <arc ids>', got: " + line);
        std::istringstream head(line.substr(5, colon - 5));
        Disk disk;
        head >> disk.label;
        std::string flag;
        while (head >> flag) {
            if (flag == "masked") disk.masked = true;
            else throw DiagramError("unknown disk flag " + flag);
        }
        disk.points = parse_ints(line.substr(colon + 1));
        d.disks.push_back(std::move(disk));
    }
    d.validate();
    return d;
}

std::string ChordDiagram::serialize() const {
    std::ostringstream out;
    for (const auto& d : disks) {
        out << "disk " << d.label << (d.masked ? " masked" : "") << ":";
        for (int a : d.points) out << ' ' << a;
        out << '\n';
    }
    return out.str();
}

int outermost_arc(const ChordDiagram& d, int disk) {
    const auto& pts = d.disks.at(static_cast<std::size_t>(disk)).points;
    if (pts.empty()) throw NoCrossings("disk " + d.disks[static_cast<std::size_t>(disk)].label + " meets no other disk");
    // The anchor sits at both ends of the sequence, so an adjacent equal pair
    // cuts off an empty sub-disk away from it.
    int best = -1;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        if (pts[k] == pts[k + 1] && (best < 0 || pts[k] < best)) best = pts[k];
    if (best < 0) throw DiagramError("malformed disk " + d.disks[static_cast<std::size_t>(disk)].label);
    return best;
}

ChordDiagram surgery(const ChordDiagram& d, int arc) {
    auto ds = d.disks_of(arc);
    if (ds.size() != 2) throw DiagramError("arc " + std::to_string(arc) + " not in diagram");
    int first = -1;
    for (int di : ds) {
        auto [p, q] = positions(d.disks[static_cast<std::size_t>(di)].points, arc);
        if (q == p + 1) {
            first = di;
            break;
        }
    }
    if (first < 0) throw DiagramError("arc " + std::to_string(arc) + " is not outermost on either disk");
    int other = ds[0] == first ? ds[1] : ds[0];

    ChordDiagram out = d;
    auto& pts = out.disks[static_cast<std::size_t>(other)].points;
    auto [p, q] = positions(pts, arc);
    std::set<int> dropped(pts.begin() + p, pts.begin() + q + 1);
    pts.erase(pts.begin() + p, pts.begin() + q + 1);
    for (auto& disk : out.disks) {
        auto& v = disk.points;
        v.erase(std::remove_if(v.begin(), v.end(), [&](int a) { return dropped.count(a) > 0; }), v.end());
    }
    return out;
}

Letters band_sum(const Letters& b, const Letters& b1, int side) {
    if (free_reduce(b) == free_reduce(b1)) throw NotDisjoint("band sum of a disk with itself");
    if (side != 1 && side != -1) throw std::invalid_argument("band side must be +1 or -1");
    return side > 0 ? concat(b, inverse(b1)) : concat(inverse(b1), b);
}

Letters Lens::word() const {
    Letters w;
    for (const auto& f : factors) {
        w = concat(w, f.conj);
        w.push_back(f.letter);
        w = concat(w, inverse(f.conj));
    }
    return free_reduce(w);
}

void Lens::validate() const {
    if (factors.empty()) throw DiagramError("lens has no factors");
    for (const auto& f : factors) {
        if (f.letter == 0 || is_x(f.letter) != (side == Side::A))
            throw DiagramError("lens factor letter on the wrong side");
    }
    int n = static_cast<int>(factors.size());
    std::set<int> ids;
    for (const auto& a : arcs) {
        if (!ids.insert(a.id).second) throw DiagramError("duplicate lens arc id");
        if (a.from < 0 || a.to > n || a.from >= a.to || (a.from == 0 && a.to == n))
            throw DiagramError("lens arc " + std::to_string(a.id) + " must cut off a proper set of factors");
    }
    for (const auto& a : arcs)
        for (const auto& b : arcs) {
            if (a.id == b.id) continue;
            bool disjoint = a.to <= b.from || b.to <= a.from;
            bool nested = (a.from <= b.from && b.to <= a.to) || (b.from <= a.from && a.to <= b.to);
            if (!disjoint && !nested) throw DiagramError("lens arcs cross");
            if (a.from == b.from && a.to == b.to) throw DiagramError("parallel lens arcs");
        }
}

void EyeglassFrame::validate() const {
    if (lens_a.side != Side::A || lens_b.side != Side::B) throw DiagramError("lens sides");
    lens_a.validate();
    lens_b.validate();
    if (bridge_c < 0 || bridge_meridian_points < 0) throw DiagramError("negative bridge counts");
}

std::vector<LensFactor> lens_factors(const Letters& w, Side side) {
    Letters rest;
    std::vector<LensFactor> out;
    for (int l : free_reduce(w)) {
        if (is_x(l) == (side == Side::A)) out.push_back({free_reduce(rest), l});
        else rest.push_back(l);
    }
    if (!free_reduce(rest).empty()) throw DiagramError("word does not bound a disk on this side");
    if (out.empty()) throw DiagramError("trivial lens");
    return out;
}

int outermost_lens_arc(const Lens& lens) {
    int best = -1;
    for (const auto& a : lens.arcs) {
        bool inner = true;
        for (const auto& b : lens.arcs)
            if (b.id != a.id && a.from <= b.from && b.to <= a.to) inner = false;
        if (inner && (best < 0 || a.id < best)) best = a.id;
    }
    if (best < 0) throw NoCrossings("lens meets no cut disk");
    return best;
}

namespace {

Lens drop_range(const Lens& lens, int from, int to, int skip_id) {
    Lens out;
    out.side = lens.side;
    int len = to - from;
    for (int k = 0; k < static_cast<int>(lens.factors.size()); ++k)
        if (k < from || k >= to) out.factors.push_back(lens.factors[static_cast<std::size_t>(k)]);
    int n = static_cast<int>(out.factors.size());
    for (const auto& a : lens.arcs) {
        if (a.id == skip_id) continue;
        LensArc b = a;
        if (b.from >= to) b.from -= len;
        if (b.to >= to) b.to -= len;
        if (b.from < b.to && !(b.from == 0 && b.to == n)) out.arcs.push_back(b);
    }
    return out;
}

}  // namespace

CompressionResult boundary_compress(const EyeglassFrame& frame, Side side, int arc_id,
                                    const std::function<bool(const Letters&)>& is_trivial) {
    const Lens& lens = side == Side::A ? frame.lens_a : frame.lens_b;
    auto it = std::find_if(lens.arcs.begin(), lens.arcs.end(), [&](const LensArc& a) { return a.id == arc_id; });
    if (it == lens.arcs.end()) throw DiagramError("no lens arc " + std::to_string(arc_id));
    if (outermost_lens_arc(lens) != arc_id) {
        for (const auto& b : lens.arcs)
            if (b.id != arc_id && it->from <= b.from && b.to <= it->to)
                throw DiagramError("lens arc " + std::to_string(arc_id) + " is not outermost");
    }
    const LensArc gamma = *it;

    // Inner piece P I P^-1, outer piece P S, for the lens word P I S.
    Letters prefix;
    for (int k = 0; k < gamma.from; ++k) {
        const auto& f = lens.factors[static_cast<std::size_t>(k)];
        prefix = concat({prefix, f.conj, Letters{f.letter}, inverse(f.conj)});
    }
    Lens inner;
    inner.side = lens.side;
    for (int k = gamma.from; k < gamma.to; ++k) {
        LensFactor f = lens.factors[static_cast<std::size_t>(k)];
        f.conj = free_reduce(concat(prefix, f.conj));
        inner.factors.push_back(std::move(f));
    }
    Lens outer = drop_range(lens, gamma.from, gamma.to, gamma.id);

    auto with_lens = [&](const Lens& l) {
        EyeglassFrame f = frame;
        (side == Side::A ? f.lens_a : f.lens_b) = l;
        return f;
    };
    CompressionResult r;
    bool inner_trivial = is_trivial(inner.word());
    bool outer_trivial = is_trivial(outer.word());
    if (inner_trivial && outer_trivial) throw InessentialPiece("lens is inessential");
    if (inner_trivial || outer_trivial) {
        EyeglassFrame f = with_lens(inner_trivial ? outer : inner);
        f.bridge_meridian_points += 1;
        r.frames.push_back(std::move(f));
        r.extended_bridge = true;
        return r;
    }
    // E(l1 l2, m) = E(l1, m) o E(l2, m), and likewise in the B lens.
    r.frames.push_back(with_lens(inner));
    r.frames.push_back(with_lens(outer));
    return r;
}

namespace {

std::vector<LensFactor> parse_factor_list(const std::string& s, Side side, int genus) {
    std::vector<LensFactor> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ';')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        LensFactor f;
        auto slash = tok.find('/');
        Letters letter;
        if (slash == std::string::npos) {
            letter = parse_letters(tok, genus);
        } else {
            f.conj = parse_letters(trim(tok.substr(0, slash)), genus);
            letter = parse_letters(trim(tok.substr(slash + 1)), genus);
        }
        if (letter.size() != 1) throw DiagramError("lens factor must be a single meridian letter: " + tok);
        f.letter = letter[0];
        if (is_x(f.letter) != (side == Side::A)) throw DiagramError("lens factor on the wrong side: " + tok);
        out.push_back(std::move(f));
    }
    return out;
}

std::string format_factors(const Lens& lens) {
    std::string out;
    for (std::size_t k = 0; k < lens.factors.size(); ++k) {
        const auto& f = lens.factors[k];
        if (k) out += "; ";
        if (!f.conj.empty()) out += format_letters(f.conj) + "/";
        out += format_letters({f.letter});
    }
    return out;
}

}  // namespace

// Format:
//   A: x1; y2/x2          factors (conj/letter), or  A = <word>  to factor a word
//   B: y2'
//   arc A <id> <from> <to> [cut <disk>]
//   bridge <|v ∩ c|> [<points on cut disks>]
EyeglassFrame EyeglassFrame::parse(const std::string& text, int genus) {
    EyeglassFrame f;
    f.lens_a.side = Side::A;
    f.lens_b.side = Side::B;
    bool have_a = false, have_b = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = strip_comment(line);
        if (line.empty()) continue;
        if (line[0] == 'A' || line[0] == 'B') {
            Side side = line[0] == 'A' ? Side::A : Side::B;
            Lens& lens = side == Side::A ? f.lens_a : f.lens_b;
            std::string rest = trim(line.substr(1));
            if (rest.empty()) throw DiagramError("empty lens line");
            if (rest[0] == ':') lens.factors = parse_factor_list(rest.substr(1), side, genus);
            else if (rest[0] == '=') lens.factors = lens_factors(parse_letters(trim(rest.substr(1)), genus), side);
            else throw DiagramError("bad lens line: " + line);
            (side == Side::A ? have_a : have_b) = true;
            continue;
        }
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "arc") {
            std::string s;
            LensArc a;
            ls >> s >> a.id >> a.from >> a.to;
            if (!ls || (s != "A" && s != "B")) throw DiagramError("bad arc line: " + line);
            std::string cut;
            if (ls >> cut) {
                if (cut != "cut" || !(ls >> a.cut_disk)) throw DiagramError("bad arc line: " + line);
            }
            (s == "A" ? f.lens_a : f.lens_b).arcs.push_back(a);
        } else if (kw == "bridge") {
            if (!(ls >> f.bridge_c)) throw DiagramError("bad bridge line: " + line);
            int m;
            if (ls >> m) f.bridge_meridian_points = m;
        } else {
            throw DiagramError("unknown eyeglass line: " + line);
        }
    }
    if (!have_a || !have_b) throw DiagramError("eyeglass needs both lenses");
    f.validate();
    return f;
}

std::string EyeglassFrame::serialize() const {
    std::ostringstream out;
    out << "A: " << format_factors(lens_a) << '\n';
    out << "B: " << format_factors(lens_b) << '\n';
    for (const Lens* l : {&lens_a, &lens_b})
        for (const auto& a : l->arcs)
            out << "arc " << (l->side == Side::A ? 'A' : 'B') << ' ' << a.id << ' ' << a.from << ' ' << a.to
                << " cut " << a.cut_disk << '\n';
    out << "bridge " << bridge_c << ' ' << bridge_meridian_points << '\n';
    return out.str();
}

// Format:
//   crossings: <position on c of p_1> ... <position of p_k>
//   planar: A | B | both | none
BridgeFrame BridgeFrame::parse(const std::string& text) {
    BridgeFrame f;
    bool have = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = strip_comment(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw DiagramError("bad bridge line: " + line);
        std::string key = trim(line.substr(0, colon)), val = trim(line.substr(colon + 1));
        if (key == "crossings") {
            f.c_position = parse_ints(val);
            have = true;
        } else if (key == "planar") {
            f.a_side_planar = val == "A" || val == "both";
            f.b_side_planar = val == "B" || val == "both";
            if (!f.a_side_planar && !f.b_side_planar && val != "none") throw DiagramError("bad planar value " + val);
        } else {
            throw DiagramError("unknown bridge key " + key);
        }
    }
    if (!have) throw DiagramError("bridge frame needs a crossings line");
    std::set<int> seen(f.c_position.begin(), f.c_position.end());
    if (seen.size() != f.c_position.size()) throw DiagramError("repeated crossing position on c");
    return f;
}

std::string BridgeFrame::serialize() const {
    std::ostringstream out;
    out << "crossings:";
    for (int p : c_position) out << ' ' << p;
    out << "\nplanar: "
        << (a_side_planar && b_side_planar ? "both" : a_side_planar ? "A" : b_side_planar ? "B" : "none") << '\n';
    return out.str();
}

}  // namespace pk
