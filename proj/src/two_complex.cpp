#include "powellkit/two_complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "powellkit/twist.hpp"

namespace pk {

namespace {

Letters least_rotation(const Letters& w) {
    Letters best = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
        Letters cand = rotate(w, r);
        if (cand < best) best = cand;
    }
    return best;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Letters unoriented_label(const SurfaceGroup& G, const Letters& w) {
    Letters core = cyclic_reduce(G.cyclic_dehn(w).core);
    if (core.empty()) return core;
    Letters l1 = least_rotation(core);
    Letters l2 = least_rotation(cyclic_reduce(G.cyclic_dehn(inverse(w)).core));
    return std::min(l1, l2);
}

std::optional<bool> twist_disjoint(const SurfaceGroup& G, const Letters& u, const Letters& v) {
    if (G.is_trivial(u) || G.is_trivial(v)) return true;
    for (int pass = 0; pass < 2; ++pass) {
        const Letters& s = pass == 0 ? u : v;
        const Letters& t = pass == 0 ? v : u;
        Letters core = G.cyclic_dehn(s).core;
        if (!is_polygon_simple(G.genus(), core)) continue;
        PiOneAuto T = dehn_twist(G, core, 1);
        return G.are_conjugate(G.dehn(pk::apply(T, t)), t).has_value();
    }
    return std::nullopt;
}

DisjointnessWitnesses::DisjointnessWitnesses(int genus) : G_(genus), atlas_(genus) {
    for (const CurveId& id : atlas_.curves()) {
        Letters l = unoriented_label(G_, atlas_.curve(id));
        if (!l.empty()) atlas_labels_.emplace(l, id);
    }
}

std::pair<Letters, Letters> DisjointnessWitnesses::key(const Letters& u, const Letters& v) const {
    Letters lu = unoriented_label(G_, u), lv = unoriented_label(G_, v);
    if (lv < lu) std::swap(lu, lv);
    return {lu, lv};
}

void DisjointnessWitnesses::add_explicit(const Letters& u, const Letters& v, bool disjoint) {
    pairs_[key(u, v)] = {disjoint, WitnessKind::Explicit};
}

void DisjointnessWitnesses::add_transported(const PiOneAuto& f, const Letters& u, const Letters& v) {
    auto known = lookup(u, v);
    if (!known) throw UnknownDisjointness("cannot transport an unwitnessed pair");
    auto k = key(pk::apply(f, u), pk::apply(f, v));
    if (!pairs_.count(k)) pairs_[k] = {*known, WitnessKind::Transported};
}

bool DisjointnessWitnesses::same_curve(const Letters& u, const Letters& v) const {
    return unoriented_label(G_, u) == unoriented_label(G_, v);
}

std::optional<bool> DisjointnessWitnesses::lookup(const Letters& u, const Letters& v) const {
    auto k = key(u, v);
    if (k.first.empty() || k.first == k.second) return true;
    auto ia = atlas_labels_.find(k.first), ib = atlas_labels_.find(k.second);
    if (ia != atlas_labels_.end() && ib != atlas_labels_.end())
        return atlas_.intersection(ia->second, ib->second) == 0;
    auto it = pairs_.find(k);
    if (it != pairs_.end()) return it->second.first;
    return std::nullopt;
}

std::optional<WitnessKind> DisjointnessWitnesses::provenance(const Letters& u, const Letters& v) const {
    auto k = key(u, v);
    if (k.first.empty() || k.first == k.second) return WitnessKind::Atlas;
    if (atlas_labels_.count(k.first) && atlas_labels_.count(k.second)) return WitnessKind::Atlas;
    auto it = pairs_.find(k);
    if (it != pairs_.end()) return it->second.second;
    return std::nullopt;
}

bool DisjointnessWitnesses::disjoint(const Letters& u, const Letters& v) const {
    auto r = lookup(u, v);
    if (!r)
        throw UnknownDisjointness("no disjointness witness for " + format_letters(u) + " and " + format_letters(v));
    return *r;
}

bool valid_vertex(const TwoCVertex& v, const DisjointnessWitnesses& W) {
    const SurfaceGroup& G = W.group();
    if (G.is_trivial(v.a) || G.is_trivial(v.b)) return false;
    if (!bounds_disk_in(Side::A, v.a) || !bounds_disk_in(Side::B, v.b)) return false;
    return W.disjoint(v.a, v.b);
}

bool is_edge(const TwoCVertex& v1, const TwoCVertex& v2, const DisjointnessWitnesses& W) {
    bool sa = W.same_curve(v1.a, v2.a), sb = W.same_curve(v1.b, v2.b);
    if (sa == sb) return false;  // no shared coordinate, or the same vertex
    const Letters& shared = sa ? v1.a : v1.b;
    const Letters& p = sa ? v1.b : v1.a;
    const Letters& q = sa ? v2.b : v2.a;
    return W.disjoint(shared, p) && W.disjoint(shared, q) && W.disjoint(p, q);
}

bool admissible_path_check(const std::vector<TwoCVertex>& path, const DisjointnessWitnesses& W) {
    if (path.empty()) throw std::invalid_argument("empty path");
    for (std::size_t i = 0; i < path.size(); ++i) {
        try {
            if (!valid_vertex(path[i], W)) return false;
            if (i > 0 && !is_edge(path[i - 1], path[i], W)) return false;
        } catch (const UnknownDisjointness& e) {
            throw UnknownDisjointness("at index " + std::to_string(i) + ": " + e.what());
        }
    }
    return true;
}

bool two_of_three(const SurfaceGroup& G, const Letters& c, const Letters& c1, const Letters& c2, Side side) {
    Letters prod = concat(c1, c2);
    bool ok = G.is_trivial(c) ? G.is_trivial(prod) : G.are_conjugate(c, prod).has_value();
    if (!ok) throw NotPantsRelation(format_letters(c) + " is not conjugate to " + format_letters(prod));
    int n = bounds_disk_in(side, c) + bounds_disk_in(side, c1) + bounds_disk_in(side, c2);
    return n != 2;
}

// ---- crossing cases ----

namespace {

const char* kQuadrant[4] = {"NW", "NE", "SW", "SE"};

int transform_position(int t, int p) {
    int r = p / 2, c = p % 2;
    for (int k = 0; k < t % 4; ++k) {
        int nr = c, nc = 1 - r;
        r = nr;
        c = nc;
    }
    if (t >= 4) c = 1 - c;
    return 2 * r + c;
}

struct DrawnPattern {
    LabelPattern pattern;
    std::array<char, 4> labels;
    QuadrantRoles roles;
};

std::vector<DrawnPattern> drawn_patterns() {
    std::vector<DrawnPattern> out;
    QuadrantRoles r;
    r = {};
    r.a = 0, r.a1 = 1, r.b = 2, r.b1 = 3;
    out.push_back({LabelPattern::I, {'A', 'A', 'B', 'B'}, r});
    r = {};
    r.a = 0, r.b = 1, r.b2 = 2, r.a1 = 3;
    out.push_back({LabelPattern::II, {'A', 'B', 'B', 'A'}, r});
    r = {};
    r.a1 = 0, r.a2 = 1, r.a = 2, r.b = 3;
    out.push_back({LabelPattern::III, {'A', 'A', 'A', 'B'}, r});
    r = {};
    r.a = 0, r.b2 = 1, r.b = 2, r.b1 = 3;
    out.push_back({LabelPattern::IV, {'A', 'B', 'B', 'B'}, r});
    return out;
}

QuadrantRoles move_roles(const QuadrantRoles& r, int t) {
    auto mv = [t](int q) { return q < 0 ? q : transform_position(t, q); };
    return {mv(r.a), mv(r.a1), mv(r.a2), mv(r.b), mv(r.b1), mv(r.b2)};
}

std::array<char, 4> move_labels(const std::array<char, 4>& l, int t) {
    std::array<char, 4> out{};
    for (int p = 0; p < 4; ++p) out[static_cast<std::size_t>(transform_position(t, p))] = l[static_cast<std::size_t>(p)];
    return out;
}

int quadrant_index(const std::string& s) {
    for (int i = 0; i < 4; ++i)
        if (s == kQuadrant[i]) return i;
    throw CatalogError("bad quadrant '" + s + "'");
}

}  // namespace

std::string pattern_name(LabelPattern p) {
    switch (p) {
        case LabelPattern::I: return "i";
        case LabelPattern::II: return "ii";
        case LabelPattern::III: return "iii";
        case LabelPattern::IV: return "iv";
    }
    return "?";
}

Labeling favor_a(const std::array<char, 4>& labels) {
    for (const DrawnPattern& d : drawn_patterns())
        for (int t = 0; t < 8; ++t)
            if (move_labels(d.labels, t) == labels) return {d.pattern, t, move_roles(d.roles, t)};
    throw CatalogError("quadrant labels do not come from a crossing of M");
}

CrossingCatalog CrossingCatalog::parse(const std::string& text) {
    CrossingCatalog cat;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw CatalogError("catalog line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        std::string rest;
        std::getline(ls, rest);
        rest = trim(rest);
        try {
            if (kw == "genus") {
                cat.genus = std::stoi(rest);
                check_genus(cat.genus);
                continue;
            }
            if (cat.genus == 0) fail("genus must come first");
            if (kw == "model") {
                CrossingModel m;
                m.id = std::stoi(rest);
                cat.models.push_back(m);
                continue;
            }
            if (cat.models.empty()) fail("'" + kw + "' outside a model");
            CrossingModel& m = cat.models.back();
            if (kw == "danger") {
                m.danger_intersection = std::stoi(rest);
            } else if (kw == "quadrant") {
                std::istringstream qs(rest);
                std::string q, lab;
                qs >> q >> lab;
                std::string w;
                std::getline(qs, w);
                if (lab != "A" && lab != "B") fail("label must be A or B");
                m.realization[static_cast<std::size_t>(quadrant_index(q))][lab == "A" ? 0 : 1] = parse_letters(w, cat.genus);
            } else if (kw == "far_b") {
                m.far_b = parse_letters(rest, cat.genus);
            } else if (kw == "lantern") {
                std::string lab = rest.substr(0, 1);
                if (lab != "A" && lab != "B") fail("lantern side must be A or B");
                auto& dst = m.lantern[lab == "A" ? 0 : 1];
                std::istringstream bs(rest.substr(1));
                std::string part;
                while (std::getline(bs, part, '|')) dst.push_back(parse_letters(part, cat.genus));
            } else {
                fail("unknown keyword '" + kw + "'");
            }
        } catch (const ParseError& e) {
            fail(e.what());
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
    return cat;
}

CrossingCatalog CrossingCatalog::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CatalogError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    CrossingCatalog cat = parse(ss.str());
    cat.validate();
    return cat;
}

std::string default_catalog_path() {
    if (const char* d = std::getenv("POWELLKIT_DATA")) return std::string(d) + "/crossing_cases.txt";
    return std::string(POWELLKIT_DATA_DIR) + "/crossing_cases.txt";
}

std::string CrossingCase::name() const {
    std::string s = "model " + std::to_string(model) + " (" + pattern_name(labeling.pattern) + ") ";
    for (char c : labels) s += c;
    if (far_b) s += " far-b";
    return s;
}

void CrossingCase::validate(const SurfaceGroup& G) const {
    Labeling l = favor_a(labels);
    if (l.pattern != labeling.pattern) throw CatalogError(name() + ": labeling mismatch");
    for (int q = 0; q < 4; ++q) {
        const Letters& w = curves[static_cast<std::size_t>(q)];
        Side s = labels[static_cast<std::size_t>(q)] == 'A' ? Side::A : Side::B;
        if (G.is_trivial(w) || !bounds_disk_in(s, w))
            throw CatalogError(name() + ": quadrant " + kQuadrant[q] + " curve does not compress on its side");
    }
    if (far_b && (G.is_trivial(*far_b) || !bounds_disk_in(Side::B, *far_b)))
        throw CatalogError(name() + ": far b does not compress in B");
    if (!lantern.empty()) {
        Side s = labels[0] == 'A' ? Side::A : Side::B;
        int inessential = 0;
        for (const Letters& w : lantern) {
            if (!bounds_disk_in(s, w)) throw CatalogError(name() + ": lantern boundary does not compress");
            inessential += G.is_trivial(w);
        }
        if (lantern.size() != 4 || inessential > 2)
            throw CatalogError(name() + ": lantern needs four boundaries, at most two inessential");
    }
}

std::vector<CrossingCase> enumerate_cases(const CrossingModel& m) {
    std::vector<CrossingCase> out;
    std::set<std::array<char, 4>> seen;
    for (const DrawnPattern& d : drawn_patterns()) {
        for (int t = 0; t < 8; ++t) {
            auto labels = move_labels(d.labels, t);
            if (!seen.insert(labels).second) continue;
            for (int far = 0; far < (m.far_b ? 2 : 1); ++far) {
                CrossingCase c;
                c.model = m.id;
                c.labels = labels;
                c.labeling = {d.pattern, t, move_roles(d.roles, t)};
                for (std::size_t q = 0; q < 4; ++q) c.curves[q] = m.realization[q][labels[q] == 'A' ? 0 : 1];
                c.danger = m.danger_intersection > 0;
                c.danger_intersection = m.danger_intersection;
                if (far) c.far_b = m.far_b;
                if (c.danger && labels[0] == labels[3]) c.lantern = m.lantern[labels[0] == 'A' ? 0 : 1];
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

namespace {

// Disjointness claims made by the catalog for one case: quadrant curves are
// pairwise disjoint off the dangerous diagonal, a far b misses every local
// curve, and the lantern boundaries miss everything else in the picture.
std::vector<std::pair<std::pair<Letters, Letters>, bool>> case_claims(const CrossingCase& c) {
    std::vector<std::pair<std::pair<Letters, Letters>, bool>> out;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
            bool dangerous = c.danger && p == 0 && q == 3;
            out.push_back({{c.curves[static_cast<std::size_t>(p)], c.curves[static_cast<std::size_t>(q)]}, !dangerous});
        }
    std::vector<Letters> others(c.curves.begin(), c.curves.end());
    if (c.far_b) {
        for (const Letters& w : c.curves) out.push_back({{*c.far_b, w}, true});
        others.push_back(*c.far_b);
    }
    for (const Letters& d : c.lantern)
        for (const Letters& w : others) out.push_back({{d, w}, true});
    return out;
}

}  // namespace

DisjointnessWitnesses case_witnesses(const CrossingCase& c, int genus) {
    DisjointnessWitnesses W(genus);
    for (const auto& [pr, dis] : case_claims(c)) W.add_explicit(pr.first, pr.second, dis);
    return W;
}

void CrossingCatalog::validate() const {
    SurfaceGroup G(genus);
    std::set<int> ids;
    for (const CrossingModel& m : models) {
        std::string tag = "model " + std::to_string(m.id);
        if (!ids.insert(m.id).second) throw CatalogError(tag + " repeated");
        if (m.danger_intersection < 0 || m.danger_intersection > 2)
            throw CatalogError(tag + ": dangerous diagonal must meet once or twice");
        for (const auto& q : m.realization)
            for (const Letters& w : q)
                if (w.empty()) throw CatalogError(tag + ": missing quadrant realization");
        for (const CrossingCase& c : enumerate_cases(m)) {
            c.validate(G);
            bool mono = c.danger && c.labels[0] == c.labels[3];
            // A once-meeting pair of disks on one side does not exist; such
            // labelings are excluded before any curve is used.
            if (mono && c.danger_intersection == 1) continue;
            for (const auto& [pr, dis] : case_claims(c)) {
                auto t = twist_disjoint(G, pr.first, pr.second);
                if (!t) throw CatalogError(c.name() + ": witness cannot be audited");
                if (*t != dis)
                    throw CatalogError(c.name() + ": witness for " + format_letters(pr.first) + ", " +
                                       format_letters(pr.second) + " fails the twist test");
            }
            if (c.danger && c.danger_intersection == 1) {
                long ip = pairing(homology(c.curves[0], genus), homology(c.curves[3], genus));
                if (std::labs(ip) != 1) throw CatalogError(c.name() + ": dangerous pair must meet once");
            }
        }
    }
}

std::vector<TwoCVertex> cloud_connect(const CrossingCase& c, const DisjointnessWitnesses& W) {
    const QuadrantRoles& r = c.labeling.roles;
    auto cv = [&](int q) { return c.curves[static_cast<std::size_t>(q)]; };
    auto dangerous = [&](int p, int q) { return c.danger && ((p == 0 && q == 3) || (p == 3 && q == 0)); };
    bool mono = c.danger && c.labels[0] == c.labels[3];
    if (mono && c.danger_intersection == 1)
        throw CaseExcluded(c.name() + ": two disks on one side cannot meet once");

    auto lantern_curve = [&](const Letters& fixed) {
        for (const Letters& d : c.lantern) {
            if (W.group().is_trivial(d)) continue;
            auto ok = W.lookup(d, fixed);
            if (ok && *ok) return d;
        }
        throw CatalogError(c.name() + ": no essential lantern boundary misses the fixed curve");
    };

    std::vector<TwoCVertex> path;
    switch (c.labeling.pattern) {
        case LabelPattern::I:
            if (c.far_b) {
                path = {{cv(r.a), *c.far_b}, {cv(r.a1), *c.far_b}};
            } else if (dangerous(r.a, r.b1)) {
                path = {{cv(r.a), cv(r.b)}, {cv(r.a1), cv(r.b)}, {cv(r.a1), cv(r.b1)}};
            } else {
                path = {{cv(r.a), cv(r.b)}, {cv(r.a), cv(r.b1)}, {cv(r.a1), cv(r.b1)}};
            }
            break;
        case LabelPattern::II:
        case LabelPattern::III: {
            int target = c.labeling.pattern == LabelPattern::II ? r.a1 : r.a2;
            Letters b = cv(r.b);
            if (dangerous(r.a, target)) {
                path = {{cv(r.a), b}, {lantern_curve(b), b}, {cv(target), b}};
            } else {
                path = {{cv(r.a), b}, {cv(target), b}};
            }
            break;
        }
        case LabelPattern::IV:
            if (c.far_b) {
                path = {{cv(r.a), *c.far_b}};
            } else if (c.danger_intersection == 1) {
                throw CaseExcluded(c.name() + ": all b curves local with a once-meeting diagonal");
            } else if (dangerous(r.b, r.b2)) {
                Letters a = cv(r.a);
                path = {{a, cv(r.b)}, {a, lantern_curve(a)}, {a, cv(r.b2)}};
            } else {
                path = {{cv(r.a), cv(r.b)}, {cv(r.a), cv(r.b2)}};
            }
            break;
    }
    if (!admissible_path_check(path, W)) throw CatalogError(c.name() + ": constructed path is not admissible");
    return path;
}

}  // namespace pk
