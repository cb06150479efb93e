#include "powellkit/planar_checker.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace pk {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

template <class T>
std::vector<T> rotated(const std::vector<T>& v, std::size_t start) {
    std::vector<T> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(v[(start + k) % v.size()]);
    return out;
}

// Surgery on the boundary for one handle whose two ends are pending items.
void surgery(PlanarSurfaceModel& m, int handle) {
    using Item = PlanarSurfaceModel::Item;
    int c1 = -1, i1 = -1, c2 = -1, i2 = -1;
    int seen = 0;
    for (std::size_t c = 0; c < m.circles.size(); ++c)
        for (std::size_t i = 0; i < m.circles[c].items.size(); ++i) {
            const Item& it = m.circles[c].items[i];
            if (!it.pending || it.handle != handle) continue;
            if (seen++ == 0) c1 = static_cast<int>(c), i1 = static_cast<int>(i);
            else c2 = static_cast<int>(c), i2 = static_cast<int>(i);
        }
    if (seen != 2) throw InvalidAttachment("handle " + std::to_string(handle) + " does not have two pending ends");

    auto& circles = m.circles;
    if (c1 == c2) {
        // C = [e1, X, e2, Y] -> [X, side] and [Y, side]
        PlanarSurfaceModel::Circle C = circles[static_cast<std::size_t>(c1)];
        auto items = rotated(C.items, static_cast<std::size_t>(i1));
        std::size_t j = static_cast<std::size_t>((i2 - i1 + static_cast<int>(items.size())) % static_cast<int>(items.size()));
        Item e1 = items[0], e2 = items[j];
        PlanarSurfaceModel::Circle a{{}, e1.after_origin, C.component}, b{{}, e2.after_origin, C.component};
        a.items.assign(items.begin() + 1, items.begin() + static_cast<long>(j));
        a.items.push_back({handle, false, e1.after_origin});
        b.items.assign(items.begin() + static_cast<long>(j) + 1, items.end());
        b.items.push_back({handle, false, e2.after_origin});
        circles.erase(circles.begin() + c1);
        circles.push_back(std::move(a));
        circles.push_back(std::move(b));
        return;
    }
    // C1 = [e1, X], C2 = [e2, Y] -> [X, side, Y, side]
    PlanarSurfaceModel::Circle C1 = circles[static_cast<std::size_t>(c1)], C2 = circles[static_cast<std::size_t>(c2)];
    auto x = rotated(C1.items, static_cast<std::size_t>(i1));
    auto y = rotated(C2.items, static_cast<std::size_t>(i2));
    Item e1 = x[0], e2 = y[0];
    PlanarSurfaceModel::Circle merged{{}, e1.after_origin, C1.component};
    merged.items.assign(x.begin() + 1, x.end());
    merged.items.push_back({handle, false, e2.after_origin});
    merged.items.insert(merged.items.end(), y.begin() + 1, y.end());
    merged.items.push_back({handle, false, e1.after_origin});
    if (C1.component == C2.component) {
        m.genus_of[static_cast<std::size_t>(C1.component)] += 1;
    } else {
        int keep = C1.component, gone = C2.component;
        m.genus_of[static_cast<std::size_t>(keep)] += m.genus_of[static_cast<std::size_t>(gone)];
        m.genus_of[static_cast<std::size_t>(gone)] = -1;
        for (auto& c : circles)
            if (c.component == gone) c.component = keep;
    }
    circles.erase(circles.begin() + std::max(c1, c2));
    circles.erase(circles.begin() + std::min(c1, c2));
    circles.push_back(std::move(merged));
}

}  // namespace

PlanarSurfaceModel PlanarSurfaceModel::planar(const std::vector<int>& boundary_counts) {
    PlanarSurfaceModel m;
    int circle = 0;
    for (std::size_t comp = 0; comp < boundary_counts.size(); ++comp) {
        if (boundary_counts[comp] < 1) throw InvalidAttachment("a planar component needs a boundary circle");
        for (int k = 0; k < boundary_counts[comp]; ++k) {
            m.circles.push_back({{}, circle++, static_cast<int>(comp)});
            m.original_component.push_back(static_cast<int>(comp));
        }
        m.genus_of.push_back(0);
        m.euler += 2 - boundary_counts[comp];
    }
    m.original_components = static_cast<int>(boundary_counts.size());
    return m;
}

int PlanarSurfaceModel::genus() const {
    int g = 0;
    for (int x : genus_of)
        if (x > 0) g += x;
    return g;
}

int PlanarSurfaceModel::components() const {
    return static_cast<int>(std::count_if(genus_of.begin(), genus_of.end(), [](int x) { return x >= 0; }));
}

int PlanarSurfaceModel::euler_from_parts() const {
    int chi = 0;
    for (std::size_t c = 0; c < genus_of.size(); ++c) {
        if (genus_of[c] < 0) continue;
        int b = static_cast<int>(std::count_if(circles.begin(), circles.end(),
                                               [&](const Circle& x) { return x.component == static_cast<int>(c); }));
        chi += 2 - 2 * genus_of[c] - b;
    }
    return chi;
}

PlanarSurfaceModel attach(const PlanarSurfaceModel& p, const HandleAttachment& h) {
    if (h.twisted) throw InvalidAttachment("twisted handles give non-orientable surfaces");
    const int n = p.boundary_count();
    if (h.circle1 < 0 || h.circle1 >= n || h.circle2 < 0 || h.circle2 >= n) throw InvalidAttachment("no such circle");
    auto valid_gap = [&](int c, int g) {
        int k = static_cast<int>(p.circles[static_cast<std::size_t>(c)].items.size());
        return k == 0 ? g == 0 : (g >= 0 && g < k);
    };
    if (!valid_gap(h.circle1, h.gap1) || !valid_gap(h.circle2, h.gap2)) throw InvalidAttachment("no such gap");
    PlanarSurfaceModel m = p;
    const int id = static_cast<int>(m.handle_origins.size());
    auto origin_of = [&](int c, int g) {
        const auto& C = m.circles[static_cast<std::size_t>(c)];
        return C.items.empty() ? C.origin : C.items[static_cast<std::size_t>(g)].after_origin;
    };
    int o1 = origin_of(h.circle1, h.gap1), o2 = origin_of(h.circle2, h.gap2);
    m.handle_origins.push_back({o1, o2});
    auto insert_at = [&](int c, std::size_t pos, int origin) {
        auto& items = m.circles[static_cast<std::size_t>(c)].items;
        items.insert(items.begin() + static_cast<long>(pos), PlanarSurfaceModel::Item{id, true, origin});
    };
    auto slot = [&](int c, int g) {
        return m.circles[static_cast<std::size_t>(c)].items.empty() ? std::size_t{0} : static_cast<std::size_t>(g) + 1;
    };
    std::size_t s1 = slot(h.circle1, h.gap1), s2 = slot(h.circle2, h.gap2);
    insert_at(h.circle1, s1, o1);
    if (h.circle1 == h.circle2 && (s2 > s1 || (s2 == s1 && !h.second_first))) ++s2;
    insert_at(h.circle2, s2, o2);
    surgery(m, id);
    m.euler -= 1;
    return m;
}

std::string Placement::describe() const {
    std::ostringstream os;
    os << "components [";
    for (std::size_t i = 0; i < boundary_counts.size(); ++i) os << (i ? " " : "") << boundary_counts[i];
    os << "] ends";
    for (std::size_t c = 0; c < ends.size(); ++c) {
        os << " (";
        for (std::size_t k = 0; k < ends[c].size(); ++k) {
            int e = ends[c][k];
            os << (k ? " " : "") << "h" << e / 2 + 1 << (e % 2 ? "'" : "");
        }
        os << ")";
    }
    return os.str();
}

PlanarSurfaceModel realize(const Placement& pl) {
    PlanarSurfaceModel m = PlanarSurfaceModel::planar(pl.boundary_counts);
    // Load every end as a pending item, then attach handle by handle.
    for (std::size_t c = 0; c < pl.ends.size(); ++c)
        for (int e : pl.ends[c]) m.circles[c].items.push_back({e / 2, true, static_cast<int>(c)});
    for (int h = 0; h < pl.handles; ++h) {
        int o[2] = {-1, -1};
        for (std::size_t c = 0; c < pl.ends.size(); ++c)
            for (int e : pl.ends[c])
                if (e / 2 == h) o[e % 2] = static_cast<int>(c);
        m.handle_origins.push_back({o[0], o[1]});
        int before = m.euler;
        surgery(m, h);
        m.euler = before - 1;
        if (m.euler != m.euler_from_parts())
            throw CounterexampleFound("Euler characteristic bookkeeping broke: " + pl.describe());
    }
    return m;
}

FaceCount face_count(const Placement& pl) {
    const int nends = 2 * pl.handles;
    std::vector<int> succ(static_cast<std::size_t>(nends), -1), circle_of(static_cast<std::size_t>(nends), -1);
    int untouched = 0;
    for (std::size_t c = 0; c < pl.ends.size(); ++c) {
        const auto& e = pl.ends[c];
        if (e.empty()) ++untouched;
        for (std::size_t k = 0; k < e.size(); ++k) {
            succ[static_cast<std::size_t>(e[k])] = e[(k + 1) % e.size()];
            circle_of[static_cast<std::size_t>(e[k])] = static_cast<int>(c);
        }
    }
    FaceCount f;
    std::vector<char> seen(static_cast<std::size_t>(nends), 0);
    for (int e = 0; e < nends; ++e) {
        if (seen[static_cast<std::size_t>(e)]) continue;
        ++f.boundaries;
        for (int x = e; !seen[static_cast<std::size_t>(x)]; x = succ[static_cast<std::size_t>(x ^ 1)]) seen[static_cast<std::size_t>(x)] = 1;
    }
    f.boundaries += untouched;
    const int ncomp = static_cast<int>(pl.boundary_counts.size());
    std::vector<int> comp_of_circle;
    for (int c = 0; c < ncomp; ++c)
        for (int k = 0; k < pl.boundary_counts[static_cast<std::size_t>(c)]; ++k) comp_of_circle.push_back(c);
    UnionFind uf(ncomp);
    f.components = ncomp;
    for (int h = 0; h < pl.handles; ++h)
        if (uf.unite(comp_of_circle[static_cast<std::size_t>(circle_of[static_cast<std::size_t>(2 * h)])],
                     comp_of_circle[static_cast<std::size_t>(circle_of[static_cast<std::size_t>(2 * h + 1)])]))
            --f.components;
    f.euler = -pl.handles;
    for (int b : pl.boundary_counts) f.euler += 2 - b;
    f.genus = (2 * f.components - f.euler - f.boundaries) / 2;
    return f;
}

bool original_nonseparating(const PlanarSurfaceModel& m, int c) {
    // Pieces: components of P (minus collars), one collar per circle of P.
    // Handles join collars. The pushed-in circle is the edge between its
    // component and its collar; it is non-separating iff that edge is not a bridge.
    const int ncirc = static_cast<int>(m.original_component.size());
    const int nodes = m.original_components + ncirc;
    UnionFind uf(nodes);
    for (int k = 0; k < ncirc; ++k)
        if (k != c) uf.unite(m.original_component[static_cast<std::size_t>(k)], m.original_components + k);
    for (const auto& [a, b] : m.handle_origins) uf.unite(m.original_components + a, m.original_components + b);
    return uf.find(m.original_component[static_cast<std::size_t>(c)]) == uf.find(m.original_components + c);
}

LemmaVerdict check_lemma(const PlanarSurfaceModel& m) {
    LemmaVerdict v;
    v.genus = m.genus();
    if (v.genus <= 1) {
        v.pass = true;
        v.witness = "genus " + std::to_string(v.genus);
        return v;
    }
    for (int c = 0; c < static_cast<int>(m.original_component.size()); ++c)
        if (original_nonseparating(m, c)) {
            v.pass = true;
            v.nonseparating_circle = c;
            v.witness = "circle " + std::to_string(c) + " non-separating";
            return v;
        }
    v.witness = "genus " + std::to_string(v.genus) + " and every circle of P separates";
    return v;
}

namespace {

void partitions(int total, int max_parts, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (total == 0) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int p = std::min(total, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(total - p, max_parts, p, cur, out);
        cur.pop_back();
    }
}

// Cyclic lists normalized to their least rotation.
std::vector<std::vector<int>> normal_form(const std::vector<std::vector<int>>& ends) {
    std::vector<std::vector<int>> out;
    for (const auto& e : ends) {
        std::vector<int> best = e;
        for (std::size_t r = 1; r < e.size(); ++r) best = std::min(best, rotated(e, r));
        out.push_back(best);
    }
    return out;
}

bool is_canonical(const Placement& pl) {
    std::vector<int> perm(static_cast<std::size_t>(pl.handles));
    std::iota(perm.begin(), perm.end(), 0);
    auto base = normal_form(pl.ends);
    do {
        for (int flips = 0; flips < (1 << pl.handles); ++flips) {
            std::vector<std::vector<int>> relabeled = pl.ends;
            for (auto& e : relabeled)
                for (int& x : e) {
                    int h = x / 2, s = x % 2;
                    if (flips >> h & 1) s ^= 1;
                    x = 2 * perm[static_cast<std::size_t>(h)] + s;
                }
            if (normal_form(relabeled) < base) return false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

}  // namespace

PlanarReport exhaustive_check(int max_components, int max_boundaries, int max_handles, bool reduce,
                              bool throw_on_counterexample) {
    PlanarReport rep;
    std::vector<std::vector<int>> shapes;
    for (int total = 1; total <= max_boundaries; ++total) {
        std::vector<int> cur;
        partitions(total, max_components, total, cur, shapes);
    }
    for (const auto& shape : shapes) {
        const int ncirc = std::accumulate(shape.begin(), shape.end(), 0);
        for (int n = 0; n <= max_handles; ++n) {
            Placement pl;
            pl.boundary_counts = shape;
            pl.handles = n;
            pl.ends.assign(static_cast<std::size_t>(ncirc), {});
            std::function<void(int)> place = [&](int e) {
                if (e == 2 * n) {
                    ++rep.unreduced;
                    if (reduce && !is_canonical(pl)) return;
                    ++rep.placements;
                    PlanarSurfaceModel m = realize(pl);
                    FaceCount f = face_count(pl);
                    if (f.boundaries != m.boundary_count() || f.genus != m.genus() || f.components != m.components() ||
                        f.euler != m.euler)
                        throw CounterexampleFound("genus bookkeeping disagrees: " + pl.describe());
                    LemmaVerdict v = check_lemma(m);
                    if (v.pass) {
                        ++(v.nonseparating_circle < 0 ? rep.genus_branch : rep.nonseparating_branch);
                        return;
                    }
                    ++rep.counterexamples;
                    rep.failures.push_back(pl.describe() + ": " + v.witness);
                    if (throw_on_counterexample) throw CounterexampleFound(rep.failures.back());
                    return;
                }
                for (std::size_t c = 0; c < pl.ends.size(); ++c) {
                    auto& lst = pl.ends[c];
                    std::size_t slots = std::max<std::size_t>(lst.size(), 1);
                    for (std::size_t s = 0; s < slots; ++s) {
                        lst.insert(lst.begin() + static_cast<long>(s), e);
                        place(e + 1);
                        lst.erase(lst.begin() + static_cast<long>(s));
                    }
                }
            };
            place(0);
        }
    }
    return rep;
}

Placement sharpness_example() {
    // Two interleaved pairs, twice: h1 h2 h1' h2' h3 h4 h3' h4'.
    Placement pl;
    pl.boundary_counts = {1};
    pl.handles = 4;
    pl.ends = {{0, 2, 1, 3, 4, 6, 5, 7}};
    return pl;
}

}  // namespace pk
