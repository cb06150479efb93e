#include "powellkit/genus3.hpp"

#include <cstdlib>
#include <deque>
#include <fstream>
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

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) out.push_back(trim(part));
    return out;
}

Letters whitehead_apply(const Letters& w, int a, const std::vector<int>& in_set) {
    // in_set[2x] and in_set[2x+1] mark x and x^-1 as members of the set.
    Letters out;
    for (int l : w) {
        int x = std::abs(l);
        if (x == std::abs(a)) {
            out.push_back(l);
            continue;
        }
        bool plus = in_set[static_cast<std::size_t>(2 * x)] != 0;
        bool minus = in_set[static_cast<std::size_t>(2 * x + 1)] != 0;
        Letters img;
        if (plus && !minus) img = {x, a};
        else if (!plus && minus) img = {-a, x};
        else if (plus && minus) img = {-a, x, a};
        else img = {x};
        if (l < 0) img = inverse(img);
        out.insert(out.end(), img.begin(), img.end());
    }
    return cyclic_reduce(free_reduce(out));
}

Letters meridian(Side side, int handle) { return {side == Side::A ? X(handle) : Y(handle)}; }

const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

}  // namespace

DiskRef DiskRef::make(Side side, const Letters& curve, int genus) {
    SurfaceGroup G(genus);
    if (G.is_trivial(curve)) throw InvalidDisk("disk boundary is inessential");
    if (!bounds_disk_in(side, curve))
        throw InvalidDisk(format_letters(curve) + " does not bound a disk in " + side_name(side));
    DiskRef d;
    d.side = side;
    d.curve = curve;
    d.separating = is_separating(curve, genus);
    return d;
}

DiskRef transport(const PiOneAuto& f, const DiskRef& d, const SurfaceGroup& G) {
    DiskRef out = DiskRef::make(d.side, G.dehn(pk::apply(f, d.curve)), G.genus());
    if (d.separating) out.transported_surrogate = G.dehn(pk::apply(f, surrogate(d, G).curve));
    return out;
}

Letters whitehead_minimize(const Letters& w, int rank, std::vector<std::size_t>* lengths) {
    Letters cur = cyclic_reduce(free_reduce(w));
    if (lengths) lengths->push_back(cur.size());
    std::vector<int> others;
    bool improved = true;
    while (improved && cur.size() > 1) {
        improved = false;
        for (int a = -rank; a <= rank && !improved; ++a) {
            if (a == 0) continue;
            others.clear();
            for (int x = 1; x <= rank; ++x)
                if (x != std::abs(a)) others.push_back(x);
            std::size_t n = 2 * others.size();
            for (std::size_t mask = 1; mask < (std::size_t{1} << n) && !improved; ++mask) {
                std::vector<int> in_set(static_cast<std::size_t>(2 * rank + 2), 0);
                for (std::size_t k = 0; k < n; ++k)
                    if (mask >> k & 1) in_set[static_cast<std::size_t>(2 * others[k / 2]) + k % 2] = 1;
                Letters next = whitehead_apply(cur, a, in_set);
                if (next.size() < cur.size()) {
                    cur = std::move(next);
                    if (lengths) lengths->push_back(cur.size());
                    improved = true;
                }
            }
        }
    }
    return cur;
}

bool is_primitive_in_free_group(const Letters& w, int rank) { return whitehead_minimize(w, rank).size() == 1; }

Letters opposite_quotient(const DiskRef& d) {
    // An A disk is read in pi1(B) = F(x); a B disk in pi1(A) = F(y).
    Letters out;
    for (int l : d.curve)
        if ((d.side == Side::A) == is_x(l)) out.push_back(l);
    return free_reduce(out);
}

bool is_primitive(const DiskRef& d) {
    if (d.separating) return false;
    Letters w;
    int rank = 1;
    for (int l : opposite_quotient(d)) {
        int h = handle_of(l);
        rank = std::max(rank, h);
        w.push_back(l > 0 ? h : -h);
    }
    return is_primitive_in_free_group(w, rank);
}

DiskRef surrogate(const DiskRef& d, const SurfaceGroup& G) {
    if (!d.separating) throw NotSeparating(format_letters(d.curve) + " is not separating");
    if (d.transported_surrogate) return DiskRef::make(d.side, *d.transported_surrogate, G.genus());
    const int g = G.genus();
    Letters label = unoriented_label(G, d.curve);
    for (unsigned mask = 1; mask + 1 < (1u << g); ++mask) {
        Letters k;
        int count = 0, missing = 0, only = 0;
        for (int i = 1; i <= g; ++i) {
            if (mask >> (i - 1) & 1) {
                k = concat(k, commutator({X(i)}, {Y(i)}));
                ++count;
                only = i;
            } else {
                missing = i;
            }
        }
        if (unoriented_label(G, k) != label) continue;
        int torus = count == 1 ? only : (count == g - 1 ? missing : 0);
        if (torus == 0) break;
        return DiskRef::make(d.side, meridian(d.side, torus), g);
    }
    throw UnsupportedSeparatingCurve(format_letters(d.curve) + " is not an atlas product of handle commutators");
}

std::vector<PrimitiveCandidate> four_disk_primitivity(const DiskRef& a, const DiskRef& b, const SurfaceGroup& G) {
    std::vector<PrimitiveCandidate> out;
    auto consider = [&](const DiskRef& d, const std::string& name) {
        if (!d.separating) {
            if (is_primitive(d)) out.push_back({name, d});
        } else {
            DiskRef s = surrogate(d, G);
            if (is_primitive(s)) out.push_back({"surrogate(" + name + ")", s});
        }
    };
    consider(a, "a");
    consider(b, "b");
    if (out.empty())
        throw EmptyResult("none of the four disks is primitive for (" + format_letters(a.curve) + ", " +
                          format_letters(b.curve) + ")");
    return out;
}

ClassAssignment assign_class(const TwoCVertex& v, const DisjointnessWitnesses& W) {
    const int g = W.genus();
    return assign_class(DiskRef::make(Side::A, v.a, g), DiskRef::make(Side::B, v.b, g), W);
}

ClassAssignment assign_class(const DiskRef& a, const DiskRef& b, const DisjointnessWitnesses& W) {
    if (a.side != Side::A || b.side != Side::B) throw InvalidDisk("vertex disks must lie in A and B");
    if (!valid_vertex({a.curve, b.curve}, W)) throw InvalidDisk("not a vertex of the complex");
    auto cands = four_disk_primitivity(a, b, W.group());
    const PrimitiveCandidate& c = cands.front();
    return {c.disk, c.disk.side == Side::A ? "a1" : "b3", c.role};
}

EdgeBullet edge_invariance(const DiskRef& single, const DiskRef& d1, const DiskRef& d2, const DisjointnessWitnesses& W) {
    if (d1.side != d2.side || d1.side == single.side) throw InvalidDisk("triple must have two disks on one side");
    if (!W.disjoint(single.curve, d1.curve) || !W.disjoint(single.curve, d2.curve) || !W.disjoint(d1.curve, d2.curve))
        throw InvalidDisk("triple is not pairwise disjoint");
    const SurfaceGroup& G = W.group();
    if (!single.separating && is_primitive(single))
        return {1, "Whitehead reduces " + format_letters(opposite_quotient(single)) + " to a basis element"};
    if (single.separating) {
        DiskRef s = surrogate(single, G);
        if (is_primitive(s)) return {2, "surrogate " + format_letters(s.curve) + " is primitive"};
    }
    if (W.same_curve(d1.curve, d2.curve)) return {3, "boundaries are conjugate"};
    for (int k = 0; k < 2; ++k) {
        const DiskRef& sep = k == 0 ? d2 : d1;
        const DiskRef& other = k == 0 ? d1 : d2;
        if (!sep.separating) continue;
        DiskRef s = surrogate(sep, G);
        if (W.same_curve(s.curve, other.curve))
            return {4, std::string(k == 0 ? "first" : "second") + " disk is the surrogate of the other"};
    }
    throw NoBulletFires("no bullet fires for (" + format_letters(single.curve) + "; " + format_letters(d1.curve) + ", " +
                        format_letters(d2.curve) + ")");
}

std::optional<MCWord> simultaneous_normalizer(const MappingClasses& M, const Letters& alpha, const Letters& target_a,
                                              const Letters& beta, const Letters& target_b, int depth) {
    const SurfaceGroup& G = M.group();
    Letters ta = unoriented_label(G, target_a), tb = unoriented_label(G, target_b);
    std::vector<GeneratorSymbol> gens;
    std::vector<PiOneAuto> autos;
    for (MoveKind k : {MoveKind::Deta, MoveKind::Deta12, MoveKind::Domega, MoveKind::Dnu, MoveKind::Dtheta})
        for (int e : {1, -1}) {
            gens.push_back(powell(k, e));
            autos.push_back(M.symbol(gens.back()));
        }
    struct Node {
        Letters a, b;
        MCWord word;
    };
    std::deque<Node> q;
    std::set<std::pair<Letters, Letters>> seen;
    q.push_back({G.dehn(alpha), G.dehn(beta), {}});
    seen.insert({unoriented_label(G, alpha), unoriented_label(G, beta)});
    while (!q.empty()) {
        Node n = std::move(q.front());
        q.pop_front();
        if (unoriented_label(G, n.a) == ta && unoriented_label(G, n.b) == tb) {
            PiOneAuto h = M.compile(n.word);
            Letters ia = G.dehn(pk::apply(h, alpha)), ib = G.dehn(pk::apply(h, beta));
            if (unoriented_label(G, ia) == ta && unoriented_label(G, ib) == tb) return n.word;
        }
        if (static_cast<int>(n.word.size()) >= depth || seen.size() > 200000) continue;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Letters a = G.cyclic_dehn(pk::apply(autos[i], n.a)).core;
            Letters b = G.cyclic_dehn(pk::apply(autos[i], n.b)).core;
            if (!seen.insert({unoriented_label(G, a), unoriented_label(G, b)}).second) continue;
            MCWord w{gens[i]};
            w.insert(w.end(), n.word.begin(), n.word.end());
            q.push_back({std::move(a), std::move(b), std::move(w)});
        }
    }
    return std::nullopt;
}

// ---- instance sets ----

Genus3Instances Genus3Instances::parse(const std::string& text, const MappingClasses& M) {
    const int g = M.genus();
    Genus3Instances out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw CatalogError("instance line " + std::to_string(lineno) + ": " + msg);
    };
    auto side_of = [&](const std::string& s) {
        if (s == "A") return Side::A;
        if (s == "B") return Side::B;
        fail("expected side A or B, got '" + s + "'");
        return Side::A;
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
        try {
            if (kw == "vertex" || kw == "triple") {
                auto colon = rest.find(':');
                if (colon == std::string::npos) fail("missing ':'");
                std::string name = trim(rest.substr(0, colon));
                auto parts = split(rest.substr(colon + 1), ';');
                if (kw == "vertex") {
                    if (parts.size() != 2) fail("vertex needs 'a ; b'");
                    DiskRef a = DiskRef::make(Side::A, parse_letters(parts[0], g), g);
                    DiskRef b = DiskRef::make(Side::B, parse_letters(parts[1], g), g);
                    out.vertices.push_back({name, a, b, {}, a, b});
                } else {
                    if (parts.size() != 3) fail("triple needs three disks");
                    std::vector<DiskRef> ds;
                    for (const auto& p : parts) {
                        std::istringstream ps(p);
                        std::string s;
                        ps >> s;
                        std::string w;
                        std::getline(ps, w);
                        ds.push_back(DiskRef::make(side_of(s), parse_letters(w, g), g));
                    }
                    out.triples.push_back({name, ds[0], ds[1], ds[2], {}, ds[0], ds[1], ds[2]});
                }
            } else if (kw == "disjoint") {
                auto parts = split(rest, ';');
                if (parts.size() != 2) fail("disjoint needs 'u ; v'");
                out.explicit_disjoint.push_back({parse_letters(parts[0], g), parse_letters(parts[1], g)});
            } else if (kw == "transport") {
                MCWord w = parse_mcword(rest, g);
                if (!is_powell_word(w)) fail("transport words must be Powell words");
                out.transports.push_back(w);
            } else {
                fail("unknown keyword '" + kw + "'");
            }
        } catch (const ParseError& e) {
            fail(e.what());
        } catch (const InvalidDisk& e) {
            fail(e.what());
        }
    }
    for (const auto& [u, v] : out.explicit_disjoint) {
        auto t = twist_disjoint(M.group(), u, v);
        if (!t || !*t)
            throw CatalogError("disjointness witness " + format_letters(u) + " ; " + format_letters(v) +
                               " fails the twist test");
    }
    return out;
}

Genus3Instances Genus3Instances::load(const std::string& path, const MappingClasses& M) {
    std::ifstream f(path);
    if (!f) throw CatalogError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), M);
}

std::string default_genus3_path() {
    if (const char* d = std::getenv("POWELLKIT_DATA")) return std::string(d) + "/genus3_instances.txt";
    return std::string(POWELLKIT_DATA_DIR) + "/genus3_instances.txt";
}

Genus3Instances Genus3Instances::expanded(const MappingClasses& M) const {
    const SurfaceGroup& G = M.group();
    Genus3Instances out = *this;
    for (const MCWord& w : transports) {
        PiOneAuto f = M.compile(w);
        std::string tag = " @ " + format_mcword(w);
        for (const Genus3Vertex& v : vertices)
            out.vertices.push_back({v.name + tag, transport(f, v.a, G), transport(f, v.b, G), w, v.base_a, v.base_b});
        for (const Genus3Triple& t : triples)
            out.triples.push_back({t.name + tag, transport(f, t.single, G), transport(f, t.d1, G), transport(f, t.d2, G),
                                   w, t.base_single, t.base_d1, t.base_d2});
    }
    return out;
}

DisjointnessWitnesses Genus3Instances::witnesses(const MappingClasses& M) const {
    DisjointnessWitnesses W(M.genus());
    for (const auto& [u, v] : explicit_disjoint) W.add_explicit(u, v, true);
    for (const MCWord& w : transports) {
        PiOneAuto f = M.compile(w);
        for (const Genus3Vertex& v : vertices)
            if (v.provenance.empty()) W.add_transported(f, v.a.curve, v.b.curve);
        for (const Genus3Triple& t : triples) {
            if (!t.provenance.empty()) continue;
            W.add_transported(f, t.single.curve, t.d1.curve);
            W.add_transported(f, t.single.curve, t.d2.curve);
            W.add_transported(f, t.d1.curve, t.d2.curve);
        }
    }
    return W;
}

EdgeAgreement edge_agreement(const Genus3Triple& t, const DisjointnessWitnesses& W, const MappingClasses& M) {
    const SurfaceGroup& G = W.group();
    auto assign = [&](const DiskRef& single, const DiskRef& d) {
        return single.side == Side::A ? assign_class(single, d, W) : assign_class(d, single, W);
    };
    ClassAssignment c1 = assign(t.single, t.d1);
    ClassAssignment c2 = assign(t.single, t.d2);
    EdgeAgreement out;
    if (c1.anchor.side == c2.anchor.side && W.same_curve(c1.anchor.curve, c2.anchor.curve)) {
        out.agree = true;
        out.how = "same anchor (" + c1.rationale + ", " + c2.rationale + ")";
        return out;
    }
    // Reconcile both anchors through the primitive disk of the shared coordinate.
    std::optional<DiskRef> sigma;
    if (!t.single.separating && is_primitive(t.single)) sigma = t.single;
    else if (t.single.separating && is_primitive(surrogate(t.single, G))) sigma = surrogate(t.single, G);
    if (!sigma) {
        out.how = "anchors differ and the shared disk has no primitive representative";
        return out;
    }
    PiOneAuto back = M.compile(inverse(t.provenance));
    auto target = [&](const DiskRef& d, bool orth) -> Letters {
        if (d.side == Side::A) return {X(1)};
        return {orth ? Y(1) : Y(3)};
    };
    Letters sigma0 = G.dehn(pk::apply(back, sigma->curve));
    for (const ClassAssignment* c : {&c1, &c2}) {
        if (c->anchor.side == sigma->side && W.same_curve(c->anchor.curve, sigma->curve)) continue;
        Letters alpha0 = G.dehn(pk::apply(back, c->anchor.curve));
        bool found = false;
        for (bool orth : {false, true}) {
            // Orthogonal anchors go to a1, b1 and then need the exchange.
            auto s = simultaneous_normalizer(M, alpha0, target(c->anchor, orth), sigma0, target(*sigma, orth), 4);
            if (!s) continue;
            MCWord h = concat(*s, inverse(t.provenance));
            PiOneAuto hf = M.compile(h);
            if (!W.same_curve(pk::apply(hf, c->anchor.curve), target(c->anchor, orth)) ||
                !W.same_curve(pk::apply(hf, sigma->curve), target(*sigma, orth)))
                continue;
            out.certificates.push_back(h);
            if (orth) {
                auto x = simultaneous_normalizer(M, {X(1)}, {X(3)}, {Y(1)}, {Y(3)}, 4);
                if (!x) continue;
                out.certificates.push_back(*x);
            }
            found = true;
            break;
        }
        if (!found) {
            out.how = "no normalizer found for anchor " + format_letters(c->anchor.curve);
            return out;
        }
    }
    out.agree = true;
    out.how = "reconciled through " + format_letters(sigma->curve) + " (" + c1.rationale + ", " + c2.rationale + ")";
    return out;
}

}  // namespace pk
