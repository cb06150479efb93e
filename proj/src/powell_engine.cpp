#include "powellkit/powell_engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace pk {

namespace {

MCWord power_of(const MCWord& w, int k) {
    MCWord out;
    const MCWord base = k >= 0 ? w : inverse(w);
    for (int t = 0; t < std::abs(k); ++t) out = concat(out, base);
    return out;
}

MCWord P(MoveKind k, int e = 1) { return {powell(k, e)}; }

}  // namespace

// ---------------------------------------------------------------- rendering

std::string render(const Certificate& c, OutputFormat fmt) {
    if (fmt == OutputFormat::Structured) {
        nlohmann::json j;
        j["engine"] = c.engine;
        j["input"] = c.input;
        j["input_move"] = format_mcword(c.input_move);
        j["output"] = format_mcword(c.output);
        j["h1_check"] = c.h1_check ? "pass" : "fail";
        j["pi1_check"] = c.pi1_check ? "pass" : "fail";
        j["trace"] = c.trace;
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "engine: " << c.engine << '\n';
    out << "input: " << c.input << '\n';
    if (!c.input_move.empty()) out << "input_move: " << format_mcword(c.input_move) << '\n';
    out << "output: " << format_mcword(c.output) << '\n';
    out << "h1_check: " << (c.h1_check ? "pass" : "fail") << '\n';
    out << "pi1_check: " << (c.pi1_check ? "pass" : "fail") << '\n';
    for (const auto& t : c.trace) out << "trace: " << t << '\n';
    return out.str();
}

// ---------------------------------------------------------------- braid specs

MCWord braid_move_word(const BraidMoveSpec& spec) {
    MCWord out;
    for (const auto& step : spec.path) {
        MCWord one;
        for (int i : spec.bubble) one.push_back(slide_symbol(i, step.loop, 1));
        out = concat(out, power_of(one, step.power));
    }
    return out;
}

// "bubble 1 2; path a3 b3'" or "bubble 1; path b2^2"
BraidMoveSpec parse_braid_spec(const std::string& text, int genus) {
    BraidMoveSpec spec;
    bool have_bubble = false, have_path = false;
    std::string body;
    for (char ch : text) body += (ch == '\n' ? ';' : ch);
    std::istringstream parts(body);
    std::string part;
    while (std::getline(parts, part, ';')) {
        auto h = part.find('#');
        if (h != std::string::npos) part = part.substr(0, h);
        std::istringstream in(part);
        std::string kw;
        if (!(in >> kw)) continue;
        std::string tok;
        if (kw == "bubble") {
            have_bubble = true;
            while (in >> tok) {
                int i = 0;
                try {
                    i = std::stoi(tok);
                } catch (const std::logic_error&) {
                    throw ParseError("bad bubble index " + tok);
                }
                if (i < 1 || i > genus) throw ParseError("bubble index out of range: " + tok);
                spec.bubble.push_back(i);
            }
        } else if (kw == "path") {
            have_path = true;
            while (in >> tok) {
                BraidStep step;
                std::string id = tok;
                if (!id.empty() && id.back() == '\'') {
                    step.power = -1;
                    id.pop_back();
                }
                auto caret = id.find('^');
                if (caret != std::string::npos) {
                    int k = 0;
                    try {
                        k = std::stoi(id.substr(caret + 1));
                    } catch (const std::logic_error&) {
                        throw ParseError("bad power in " + tok);
                    }
                    step.power *= k;
                    id = id.substr(0, caret);
                }
                step.loop = parse_curve_id(id, genus);
                if (step.loop.kind == 'c') throw ParseError("path steps run along a_j or b_j");
                spec.path.push_back(step);
            }
        } else {
            throw ParseError("unknown braid spec keyword " + kw);
        }
    }
    if (!have_bubble || spec.bubble.empty()) throw ParseError("braid spec needs a bubble");
    if (!have_path) throw ParseError("braid spec needs a path");
    std::sort(spec.bubble.begin(), spec.bubble.end());
    if (std::adjacent_find(spec.bubble.begin(), spec.bubble.end()) != spec.bubble.end())
        throw ParseError("repeated bubble index");
    for (const auto& s : spec.path)
        if (std::binary_search(spec.bubble.begin(), spec.bubble.end(), s.loop.index))
            throw ParseError("path loop " + format_curve_id(s.loop) + " lies in the bubble");
    return spec;
}

std::string format_braid_spec(const BraidMoveSpec& spec) {
    std::string s = "bubble";
    for (int i : spec.bubble) s += " " + std::to_string(i);
    s += "; path";
    for (const auto& st : spec.path) {
        s += " " + format_curve_id(st.loop);
        if (std::abs(st.power) != 1) s += "^" + std::to_string(std::abs(st.power));
        if (st.power < 0) s += "'";
    }
    return s;
}

// ---------------------------------------------------------------- mixed words

MixedWord parse_mixed_word(const std::string& text) {
    MixedWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        MixedLetter l;
        std::string t = tok;
        while (!t.empty() && t.back() == '\'') {
            l.power = -l.power;
            t.pop_back();
        }
        if (t.empty()) throw AlphabetError("empty mixed letter");
        l.family = t[0];
        if (l.family == 's' || l.family == 'S') {
            if (t.size() != 1) throw AlphabetError("sigma takes no index: " + tok);
            if (l.family == 'S') l.power = -l.power;
            l.family = 's';
        } else if (l.family == 'a' || l.family == 'b') {
            if (t.size() < 2 || !std::all_of(t.begin() + 1, t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw AlphabetError("bad braid letter " + tok);
            l.index = std::stoi(t.substr(1));
            if (l.index < 1) throw AlphabetError("bad braid letter " + tok);
        } else {
            throw AlphabetError("letter outside B_a, B_b and sigma: " + tok);
        }
        w.push_back(l);
    }
    return w;
}

std::string format_mixed_word(const MixedWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ' ';
        s += w[k].family;
        if (w[k].family != 's') s += std::to_string(w[k].index);
        if (w[k].power < 0) s += '\'';
    }
    return s;
}

MixedWord inverse(const MixedWord& w) {
    MixedWord out(w.rbegin(), w.rend());
    for (auto& l : out) l.power = -l.power;
    return out;
}

int sigma_count(const MixedWord& w) {
    return static_cast<int>(std::count_if(w.begin(), w.end(), [](const MixedLetter& l) { return l.family == 's'; }));
}

// ---------------------------------------------------------------- engine

PowellEngine::PowellEngine(const MappingClasses& mc, int depth_cap, int search_depth)
    : M_(mc), depth_cap_(depth_cap), search_depth_(search_depth) {}

void PowellEngine::finish(Certificate& c, const PiOneAuto& target) const {
    auto r = M_.check_equal(M_.compile(c.output), target);
    c.h1_check = r.h1;
    c.pi1_check = r.pi1;
}

MCWord PowellEngine::powellize(const GeneratorSymbol& s) const {
    const int g = M_.genus();
    if (is_powell_kind(s.kind)) return {s};
    if (s.kind == MoveKind::Slide) {
        MCWord p = relocation(s.handle, s.curve);
        MCWord base = s.curve.kind == 'a'
                          ? P(MoveKind::Dnu)
                          : MCWord{powell(MoveKind::Dtheta), powell(MoveKind::Domega), powell(MoveKind::Dtheta),
                                   powell(MoveKind::Domega)};
        if (s.power < 0) base = inverse(base);
        return conjugate(p, base);
    }
    // twists
    if (s.curve.kind != 'c')
        throw NotGoeritz("twist about " + format_curve_id(s.curve) + " does not extend over both handlebodies");
    const int i = s.curve.index;
    MCWord w;
    if (i == g) return {};
    if (i == 1) {
        w = {powell(MoveKind::Domega, -1), powell(MoveKind::Domega, -1)};
    } else if (i == g - 1) {
        w = {powell(MoveKind::Deta, -1), powell(MoveKind::Domega, -1), powell(MoveKind::Domega, -1),
             powell(MoveKind::Deta)};
    } else if (i == 2) {
        w = {powell(MoveKind::Deta12, -1), powell(MoveKind::Deta12, -1)};
    } else if (i == g - 2) {
        w = {powell(MoveKind::Deta, -1), powell(MoveKind::Deta, -1), powell(MoveKind::Deta12, -1),
             powell(MoveKind::Deta12, -1), powell(MoveKind::Deta), powell(MoveKind::Deta)};
    } else {
        throw EngineError("no Powell word known for " + format_symbol(s) + " at genus " + std::to_string(g));
    }
    return s.power < 0 ? inverse(w) : w;
}

MCWord PowellEngine::powellize(const MCWord& w) const {
    MCWord out;
    for (const auto& s : w) out = concat(out, powellize(s));
    return out;
}

MCWord PowellEngine::relocation(int handle, const CurveId& loop) const {
    const std::string key = std::to_string(handle) + format_curve_id(loop);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = relocations_.find(key);
        if (it != relocations_.end()) return it->second;
    }
    const MCWord base = loop.kind == 'a'
                            ? P(MoveKind::Dnu)
                            : MCWord{powell(MoveKind::Dtheta), powell(MoveKind::Domega), powell(MoveKind::Dtheta),
                                     powell(MoveKind::Domega)};
    const PiOneAuto target = M_.symbol(slide_symbol(handle, loop, 1));
    const PiOneAuto b = M_.compile(base);
    const IntMatrix th = h1_matrix(target);
    const std::vector<GeneratorSymbol> alphabet = {powell(MoveKind::Deta), powell(MoveKind::Deta, -1),
                                                   powell(MoveKind::Deta12), powell(MoveKind::Deta12, -1)};
    // Breadth-first over Deta/Deta12 words, shortest first, fixed symbol order.
    std::deque<MCWord> queue{MCWord{}};
    std::set<std::vector<std::vector<long>>> seen_h1;
    const std::size_t max_len = static_cast<std::size_t>(std::max(4, 2 * M_.genus()));
    while (!queue.empty()) {
        MCWord p = queue.front();
        queue.pop_front();
        PiOneAuto pa = M_.compile(p);
        PiOneAuto pinv = M_.compile(inverse(p));
        PiOneAuto cand = compose(M_.group(), pa, compose(M_.group(), b, pinv));
        if (h1_matrix(cand) == th && M_.check_equal(cand, target).holds()) {
            std::lock_guard<std::mutex> lk(mu_);
            relocations_[key] = p;
            return p;
        }
        if (p.size() >= max_len) continue;
        for (const auto& s : alphabet) {
            MCWord q = p;
            if (!q.empty() && q.back().kind == s.kind && q.back().power == -s.power) continue;
            q.push_back(s);
            queue.push_back(std::move(q));
        }
    }
    throw SearchExhausted("no relocation word for Slide[" + std::to_string(handle) + ";" + format_curve_id(loop) + "]");
}

Certificate PowellEngine::braid_to_powell(const BraidMoveSpec& spec) const {
    const int g = M_.genus();
    for (int i : spec.bubble)
        if (i < 1 || i > g) throw EngineError("bubble index out of range");
    for (const auto& s : spec.path) {
        if (s.loop.index < 1 || s.loop.index > g || s.loop.kind == 'c') throw EngineError("bad path loop");
        if (std::find(spec.bubble.begin(), spec.bubble.end(), s.loop.index) != spec.bubble.end())
            throw EngineError("path loop lies in the bubble");
    }
    Certificate c;
    c.engine = "braid";
    c.input = format_braid_spec(spec);
    c.input_move = braid_move_word(spec);
    for (const auto& s : spec.path)
        for (int i : spec.bubble) {
            MCWord p = relocation(i, s.loop);
            c.trace.push_back("circuit handle " + std::to_string(i) + " around " + format_curve_id(s.loop) +
                              (s.power < 0 ? "'" : "") + (std::abs(s.power) != 1 ? "^" + std::to_string(std::abs(s.power)) : "") +
                              " via " + (s.loop.kind == 'a' ? "Dnu" : "Dtheta Domega Dtheta Domega") +
                              " relocated by [" + format_mcword(p) + "]");
        }
    c.output = powellize(c.input_move);
    finish(c, M_.compile(c.input_move));
    return c;
}

Certificate PowellEngine::normalize_reducing_curve(const Word& curve, int g1, const std::optional<MCWord>& braid) const {
    const int g = M_.genus();
    if (g1 < 1 || g1 > g) throw EngineError("reducing curve index out of range");
    const Letters cg1 = M_.atlas().c(g1);
    Certificate c;
    c.engine = "normalize";
    c.input = "curve " + format_word(curve) + " onto c" + std::to_string(g1);
    auto conj = [&](const Letters& u, const Letters& v) { return M_.group().are_conjugate(u, v).has_value(); };
    if (!braid) {
        if (!conj(curve.letters, cg1)) throw NotBraidImage("curve is not c" + std::to_string(g1) + " and no braid was supplied");
        c.trace.push_back("curve already c" + std::to_string(g1));
        finish(c, identity_auto(g));
        return c;
    }
    for (const auto& s : *braid)
        if (s.kind == MoveKind::Twist && s.curve.kind != 'c') throw NotBraidImage("braid word contains " + format_symbol(s));
    const Word image = M_.act_on_curve(M_.compile(*braid), Word{cg1, true});
    if (!conj(image.letters, curve.letters)) throw NotBraidImage("braid word does not carry c" + std::to_string(g1) + " to the curve");
    c.input_move = inverse(*braid);
    c.output = powellize(c.input_move);
    c.trace.push_back("undo braid [" + format_mcword(*braid) + "]");
    const Word back = M_.act_on_curve(M_.compile(c.output), curve);
    bool ok = conj(back.letters, cg1);
    c.trace.push_back(std::string("output carries curve to c") + std::to_string(g1) + ": " + (ok ? "yes" : "no"));
    finish(c, M_.compile(c.input_move));
    if (!ok) c.pi1_check = false;
    return c;
}

// ---------------------------------------------------------------- orthogonal systems

Certificate PowellEngine::orthogonal_system_align(const ChordDiagram& diagram, const std::vector<Letters>& b_prime) const {
    const int g = M_.genus();
    const auto& G = M_.group();
    if (static_cast<int>(b_prime.size()) != g) throw EngineError("need one dual disk per handle");
    for (int i = 1; i <= g; ++i) {
        const Letters& b = b_prime[static_cast<std::size_t>(i - 1)];
        if (!bounds_disk_in(Side::B, b)) throw EngineError("b'" + std::to_string(i) + " does not bound in B");
        for (int j = 1; j <= g; ++j) {
            long p = pairing(homology(Letters{X(j)}, g), homology(b, g));
            if (std::abs(p) != (i == j ? 1 : 0)) throw EngineError("b'" + std::to_string(i) + " is not dual to the meridian system");
        }
    }
    diagram.validate();
    Certificate c;
    c.engine = "orthogonal-system";
    c.input = "align b_i to b'_i";

    // Surgery to disjoint systems.
    ChordDiagram d = diagram;
    int steps = 0;
    while (d.crossing_count() > 0) {
        if (++steps > depth_cap_) throw DepthExceeded("surgery recursion exceeded depth cap");
        int disk = -1;
        for (int k = 0; k < static_cast<int>(d.disks.size()); ++k)
            if (!d.disks[static_cast<std::size_t>(k)].points.empty()) {
                disk = k;
                break;
            }
        int arc = outermost_arc(d, disk);
        int before = d.crossing_count();
        d = surgery(d, arc);
        if (d.crossing_count() >= before) throw EngineError("surgery failed to reduce crossings");
        c.trace.push_back("surgery on arc " + std::to_string(arc) + " outermost in " + d.disks[static_cast<std::size_t>(disk)].label +
                          ": crossings " + std::to_string(before) + " -> " + std::to_string(d.crossing_count()));
    }

    // Special case: slide summands once around a_l until every b_l matches.
    auto conj = [&](const Letters& u, const Letters& v) { return G.are_conjugate(u, v).has_value(); };
    MCWord F;
    auto aligned = [&](const PiOneAuto& f, int upto) {
        for (int i = 1; i <= g; ++i)
            if (!conj(G.dehn(pk::apply(f, Letters{X(i)})), Letters{X(i)})) return false;
        for (int i = 1; i <= upto; ++i)
            if (!conj(G.dehn(pk::apply(f, Letters{Y(i)})), b_prime[static_cast<std::size_t>(i - 1)])) return false;
        return true;
    };
    for (int l = 1; l <= g; ++l) {
        if (aligned(M_.compile(F), l)) continue;
        std::vector<int> others;
        for (int k = 1; k <= g; ++k)
            if (k != l) others.push_back(k);
        bool found = false;
        const int n = static_cast<int>(others.size());
        for (int rounds = 1; rounds <= 2 && !found; ++rounds) {
            // moves: subsets of the other handles, each sliding once around a_l
            std::vector<MCWord> moves;
            for (int mask = 1; mask < (1 << n); ++mask)
                for (int e : {1, -1}) {
                    MCWord m;
                    for (int t = 0; t < n; ++t)
                        if (mask & (1 << t)) m.push_back(slide_symbol(others[static_cast<std::size_t>(t)], {'a', l}, e));
                    moves.push_back(m);
                }
            std::vector<MCWord> cands = moves;
            if (rounds == 2) {
                cands.clear();
                for (const auto& m1 : moves)
                    for (const auto& m2 : moves) cands.push_back(concat(m1, m2));
            }
            for (const auto& m : cands) {
                for (bool left : {false, true}) {
                    MCWord cand = left ? concat(m, F) : concat(F, m);
                    if (aligned(M_.compile(cand), l)) {
                        c.trace.push_back("b" + std::to_string(l) + ": slide [" + format_mcword(m) + "] around a" + std::to_string(l));
                        F = cand;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
        if (!found) throw SearchExhausted("no slide sequence aligns b" + std::to_string(l));
    }
    c.input_move = F;
    c.output = powellize(F);
    const PiOneAuto out = M_.compile(c.output);
    bool curves = aligned(out, g);
    c.trace.push_back(std::string("output carries each b_i to b'_i and fixes each a_i: ") + (curves ? "yes" : "no"));
    finish(c, M_.compile(F));
    if (!curves) c.pi1_check = false;
    return c;
}

}  // namespace pk

namespace pk {

namespace {

PiOneAuto twist_any(const SurfaceGroup& G, const Letters& w, int e) {
    try {
        return dehn_twist(G, w, e);
    } catch (const NotSimple&) {
    }
    return dehn_twist(G, G.cyclic_dehn(w).core, e);
}

Letters curve_label(const SurfaceGroup& G, const Letters& w) {
    Letters core = cyclic_reduce(G.cyclic_dehn(w).core);
    Letters best = core;
    for (std::size_t r = 1; r < core.size(); ++r) {
        Letters cand = rotate(core, r);
        if (cand < best) best = cand;
    }
    return best;
}

}  // namespace

PiOneAuto PowellEngine::eyeglass_twist(const Letters& alpha, const Letters& beta) const {
    const auto& G = M_.group();
    PiOneAuto ta = twist_any(G, alpha, 1);
    PiOneAuto tb = twist_any(G, beta, 1);
    PiOneAuto td = twist_any(G, concat(alpha, beta), -1);
    return compose(G, td, compose(G, ta, tb));
}

// Braid-alphabet word W with W(x1) ~ alpha, W(y2^-1) ~ beta and W(x1 y2^-1) ~
// alpha beta, so that W Dtheta W^-1 is the eyeglass twist on (alpha, beta).
// Handles are first relocated and oriented by Deta, Deta12 and Domega; slides
// then move the bridge.
MCWord PowellEngine::standard_lens_word(const Letters& alpha_in, const Letters& beta_in, std::vector<std::string>& trace) const {
    const auto& G = M_.group();
    const int g = M_.genus();
    Letters alpha = free_reduce(alpha_in), beta = free_reduce(beta_in);
    // E(alpha, beta) = E(alpha^-1, beta^-1): beta^-1 alpha^-1 is conjugate to (alpha beta)^-1.
    auto lens_letter = [](const Letters& w) {
        for (int l : w)
            if (std::abs(l) % 2 == 1) return l;
        return 0;
    };
    if (lens_letter(alpha) < 0) {
        alpha = inverse(alpha);
        beta = inverse(beta);
    }
    const std::string key = format_letters(alpha) + "|" + format_letters(beta);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = standard_frames_.find(key);
        if (it != standard_frames_.end()) {
            trace.push_back("leaf (" + format_letters(alpha) + ", " + format_letters(beta) + "): cached [" +
                            format_mcword(it->second) + "]");
            return it->second;
        }
    }
    const HomologyClass ha = homology(alpha, g), hb = homology(beta, g);
    const Letters ab = concat(alpha, beta);
    const Letters la = curve_label(G, alpha), lb = curve_label(G, beta), lab = curve_label(G, ab);
    auto same = [&](const Letters& u, const Letters& label, const Letters& v) {
        return curve_label(G, u) == label || G.are_conjugate(u, v).has_value();
    };
    auto lenses_hit = [&](const Letters& ai, const Letters& bi) {
        return homology(ai, g) == ha && homology(bi, g) == hb && same(ai, la, alpha) && same(bi, lb, beta);
    };
    auto full_hit = [&](const Letters& ai, const Letters& bi) {
        return lenses_hit(ai, bi) && same(concat(ai, bi), lab, ab);
    };

    std::vector<GeneratorSymbol> relocators, movers;
    for (MoveKind k : {MoveKind::Deta, MoveKind::Deta12, MoveKind::Domega})
        for (int e : {1, -1}) relocators.push_back(powell(k, e));
    movers = relocators;
    for (MoveKind k : {MoveKind::Dnu, MoveKind::Dtheta})
        for (int e : {1, -1}) movers.push_back(powell(k, e));
    for (int i = 1; i <= g; ++i)
        for (int j = 1; j <= g; ++j) {
            if (i == j) continue;
            for (char kind : {'a', 'b'})
                for (int e : {1, -1}) movers.push_back(slide_symbol(i, {kind, j}, e));
        }

    struct Node {
        Letters a, b;
        MCWord w;  // leftmost symbol applied last
    };
    // Breadth-first from `start`; stops at the first node `accept` takes.
    auto search = [&](const Node& start, const std::vector<GeneratorSymbol>& alphabet, int max_depth,
                      const std::function<bool(const Node&)>& accept) {
        std::vector<PiOneAuto> autos;
        for (const auto& s : alphabet) autos.push_back(M_.symbol(s));
        std::vector<Node> frontier{start};
        std::set<std::vector<Letters>> seen;
        seen.insert({curve_label(G, start.a), curve_label(G, start.b), curve_label(G, concat(start.a, start.b))});
        for (int depth = 0; depth <= max_depth && !frontier.empty(); ++depth) {
            std::vector<Node> next;
            for (const auto& n : frontier) {
                if (accept(n)) return true;
                if (depth == max_depth || seen.size() > 200000) continue;
                for (std::size_t k = 0; k < alphabet.size(); ++k) {
                    Letters a = G.dehn(pk::apply(autos[k], n.a));
                    Letters b = G.dehn(pk::apply(autos[k], n.b));
                    if (!seen.insert({curve_label(G, a), curve_label(G, b), curve_label(G, concat(a, b))}).second) continue;
                    MCWord w{alphabet[k]};
                    w.insert(w.end(), n.w.begin(), n.w.end());
                    next.push_back({std::move(a), std::move(b), std::move(w)});
                }
            }
            frontier = std::move(next);
        }
        return false;
    };

    const PiOneAuto target = eyeglass_twist(alpha, beta);
    const MCWord theta{powell(MoveKind::Dtheta)};
    const Node model{{X(1)}, {-Y(2)}, {}};
    std::optional<MCWord> result;
    int placements = 0;
    search(model, relocators, 2 * g + 2, [&](const Node& p) {
        if (!lenses_hit(p.a, p.b)) return false;
        if (++placements > 4) return true;
        return search(p, movers, search_depth_, [&](const Node& n) {
            if (!full_hit(n.a, n.b)) return false;
            MCWord w = powellize(n.w);
            if (!M_.check_equal(M_.compile(conjugate(w, theta)), target).holds()) return false;
            trace.push_back("leaf (" + format_letters(alpha) + ", " + format_letters(beta) + "): W = [" + format_mcword(n.w) + "]");
            result = w;
            return true;
        });
    });
    if (result) {
        std::lock_guard<std::mutex> lk(mu_);
        standard_frames_[key] = *result;
        return *result;
    }
    throw SearchExhausted("no braid word carries the model eyeglass to (" + format_letters(alpha) + ", " +
                          format_letters(beta) + ") within depth " + std::to_string(search_depth_));
}

}  // namespace pk

namespace pk {

namespace {

Lens conjugated(const Lens& l, const Letters& z) {
    Lens out = l;
    for (auto& f : out.factors) f.conj = free_reduce(concat(z, f.conj));
    return out;
}

}  // namespace

// Splits the eyeglass twist on `frame` along l = l1 l2 in the lens on `side`.
// Candidate identities are tried in order; the first confirmed by the oracle
// is used.
std::pair<EyeglassFrame, EyeglassFrame> PowellEngine::split_frame(const EyeglassFrame& frame, Side side, const Lens& l1,
                                                                  const Lens& l2, std::vector<std::string>& trace) const {
    const Letters u1 = l1.word(), u2 = l2.word();
    auto make = [&](const Lens& lens, const Letters& other_conj) {
        EyeglassFrame f = frame;
        if (side == Side::A) {
            f.lens_a = lens;
            f.lens_b = conjugated(frame.lens_b, other_conj);
        } else {
            f.lens_b = lens;
            f.lens_a = conjugated(frame.lens_a, other_conj);
        }
        return f;
    };
    std::vector<std::pair<EyeglassFrame, EyeglassFrame>> cands;
    cands.emplace_back(make(l1, {}), make(l2, {}));
    if (side == Side::A) {
        cands.emplace_back(make(l2, inverse(u1)), make(l1, {}));
        cands.emplace_back(make(l2, {}), make(l1, u2));
    } else {
        cands.emplace_back(make(l2, {}), make(l1, u2));
        cands.emplace_back(make(l2, inverse(u1)), make(l1, {}));
    }
    PiOneAuto whole;
    try {
        whole = eyeglass_twist(frame.lens_a.word(), frame.lens_b.word());
    } catch (const NotSimple&) {
        throw EngineError("eyeglass curve is not simple in the polygon model");
    }
    for (std::size_t k = 0; k < cands.size(); ++k) {
        const auto& [f1, f2] = cands[k];
        try {
            PiOneAuto e1 = eyeglass_twist(f1.lens_a.word(), f1.lens_b.word());
            PiOneAuto e2 = eyeglass_twist(f2.lens_a.word(), f2.lens_b.word());
            if (M_.check_equal(compose(M_.group(), e1, e2), whole).holds()) {
                trace.push_back("split (" + format_letters(frame.lens_a.word()) + ", " + format_letters(frame.lens_b.word()) +
                                ") into (" + format_letters(f1.lens_a.word()) + ", " + format_letters(f1.lens_b.word()) + ") then (" +
                                format_letters(f2.lens_a.word()) + ", " + format_letters(f2.lens_b.word()) + ")");
                return cands[k];
            }
        } catch (const NotSimple&) {
        } catch (const CandidateBoundExceeded&) {
        }
    }
    throw EngineError("no split of the lens " + format_letters(side == Side::A ? frame.lens_a.word() : frame.lens_b.word()) +
                      " is confirmed by the oracle");
}

MCWord PowellEngine::factor_frame(const EyeglassFrame& frame, int depth, std::vector<std::string>& trace) const {
    if (depth > depth_cap_) throw DepthExceeded("eyeglass recursion exceeded depth cap");
    const auto& G = M_.group();
    auto trivial = [&](const Letters& w) { return G.is_trivial(w); };
    for (Side side : {Side::A, Side::B}) {
        const Lens& lens = side == Side::A ? frame.lens_a : frame.lens_b;
        if (lens.arcs.empty()) continue;
        int id = outermost_lens_arc(lens);
        CompressionResult r = boundary_compress(frame, side, id, trivial);
        std::string where = side == Side::A ? "A" : "B";
        for (const auto& f : r.frames)
            if (f.measure() >= frame.measure()) throw EngineError("boundary compression did not reduce the lens arcs");
        if (r.extended_bridge) {
            trace.push_back("compress lens " + where + " along arc " + std::to_string(id) + ": inessential piece, bridge extended");
            return factor_frame(r.frames[0], depth + 1, trace);
        }
        trace.push_back("compress lens " + where + " along arc " + std::to_string(id));
        const Lens& p1 = side == Side::A ? r.frames[0].lens_a : r.frames[0].lens_b;
        const Lens& p2 = side == Side::A ? r.frames[1].lens_a : r.frames[1].lens_b;
        auto [f1, f2] = split_frame(frame, side, p1, p2, trace);
        return concat(factor_frame(f1, depth + 1, trace), factor_frame(f2, depth + 1, trace));
    }
    for (Side side : {Side::A, Side::B}) {
        const Lens& lens = side == Side::A ? frame.lens_a : frame.lens_b;
        if (lens.factors.size() < 2) continue;
        Lens l1 = lens, l2 = lens;
        l1.factors.assign(lens.factors.begin(), lens.factors.begin() + 1);
        l2.factors.assign(lens.factors.begin() + 1, lens.factors.end());
        trace.push_back(std::string("coplanar lens ") + (side == Side::A ? "A" : "B"));
        auto [f1, f2] = split_frame(frame, side, l1, l2, trace);
        return concat(factor_frame(f1, depth + 1, trace), factor_frame(f2, depth + 1, trace));
    }
    MCWord w = standard_lens_word(frame.lens_a.word(), frame.lens_b.word(), trace);
    return conjugate(w, MCWord{powell(MoveKind::Dtheta)});
}

Certificate PowellEngine::eyeglass_factor(const EyeglassFrame& frame, const std::optional<MCWord>& provenance) const {
    frame.validate();
    if (frame.bridge_c != 1)
        throw BridgeParity("bridge meets the reducing curve " + std::to_string(frame.bridge_c) + " times; reduce the short eyeglass first");
    const auto& G = M_.group();
    const Letters alpha = frame.lens_a.word(), beta = frame.lens_b.word();
    Certificate c;
    c.engine = "eyeglass";
    c.input = "lenses " + format_letters(alpha) + " / " + format_letters(beta);
    const MCWord theta{powell(MoveKind::Dtheta)};
    if (provenance) {
        const PiOneAuto h = M_.compile(*provenance);
        const Letters a1 = G.dehn(pk::apply(h, Letters{X(1)})), b1 = G.dehn(pk::apply(h, Letters{-Y(2)}));
        bool match = G.are_conjugate(a1, alpha) && G.are_conjugate(b1, beta) &&
                     G.are_conjugate(concat(a1, b1), concat(alpha, beta));
        if (!match) throw EngineError("provenance does not carry the model eyeglass to this frame");
        c.input_move = conjugate(*provenance, theta);
        MCWord hp = powellize(*provenance);
        c.output = conjugate(hp, theta);
        c.trace.push_back("provenance h = [" + format_mcword(*provenance) + "], Powell form [" + format_mcword(hp) + "]");
        finish(c, M_.compile(c.input_move));
        return c;
    }
    c.output = factor_frame(frame, 0, c.trace);
    finish(c, eyeglass_twist(alpha, beta));
    return c;
}

namespace {

PiOneAuto eyeglass_power(const SurfaceGroup& G, const Letters& alpha, const Letters& beta, int e,
                         const std::function<PiOneAuto(const Letters&, int)>& twist) {
    if (e > 0) return compose(G, twist(concat(alpha, beta), -1), compose(G, twist(alpha, 1), twist(beta, 1)));
    return compose(G, twist(beta, -1), compose(G, twist(alpha, -1), twist(concat(alpha, beta), 1)));
}

}  // namespace

// Eyeglass on a1 and the band sum of b with b1 carrying b1 to b.
MCWord PowellEngine::orthogonal_special(const Letters& b, std::vector<std::string>& trace) const {
    const auto& G = M_.group();
    const Letters y1{Y(1)}, x1{X(1)};
    auto conj = [&](const Letters& u, const Letters& v) { return G.are_conjugate(u, v).has_value(); };
    if (conj(b, y1)) {
        trace.push_back("b is b1");
        return {};
    }
    auto twist = [&](const Letters& w, int e) {
        try {
            return dehn_twist(G, w, e);
        } catch (const NotSimple&) {
        }
        return dehn_twist(G, G.cyclic_dehn(w).core, e);
    };
    // band conjugators: reduced words of length <= 2, shortest first
    const int g = M_.genus();
    std::vector<Letters> zs{Letters{}};
    for (int len = 1; len <= 2; ++len) {
        std::vector<Letters> add;
        for (const auto& z : zs) {
            if (static_cast<int>(z.size()) != len - 1) continue;
            for (int l = 1; l <= 2 * g; ++l)
                for (int s : {l, -l}) {
                    if (!z.empty() && z.back() == -s) continue;
                    Letters n = z;
                    n.push_back(s);
                    add.push_back(n);
                }
        }
        zs.insert(zs.end(), add.begin(), add.end());
    }
    // the band runs along either side of a1: b1 as seen from the far side is x1 b1 x1^-1
    const std::vector<Letters> b1_views{y1, Letters{X(1), Y(1), -X(1)}, Letters{-X(1), Y(1), X(1)}};
    std::vector<Letters> bands;
    for (int side : {1, -1})
        for (const Letters& b1v : b1_views) {
            const Letters raw = free_reduce(band_sum(b, b1v, side));
            const Letters core = cyclic_reduce(G.cyclic_dehn(raw).core);
            bands.push_back(raw);
            if (core != raw) bands.push_back(core);
        }
    for (const Letters& bplus : bands)
        for (const Letters& z : zs) {
            Letters beta = free_reduce(concat({z, bplus, inverse(z)}));
            if (beta.empty() || !bounds_disk_in(Side::B, beta)) continue;
            for (const Letters& alpha : {x1, Letters{-X(1)}})
                for (int e : {1, -1}) {
                    PiOneAuto f;
                    try {
                        f = eyeglass_power(G, alpha, beta, e, twist);
                    } catch (const NotSimple&) {
                        continue;
                    }
                    Word img = M_.act_on_curve(f, Word{y1, true});
                    Word fix = M_.act_on_curve(f, Word{x1, true});
                    if (!conj(img.letters, b) || !conj(fix.letters, x1)) continue;
                    EyeglassFrame fr;
                    fr.lens_a.side = Side::A;
                    fr.lens_b.side = Side::B;
                    fr.lens_a.factors = lens_factors(alpha, Side::A);
                    fr.lens_b.factors = lens_factors(beta, Side::B);
                    trace.push_back("band sum b+ = " + format_letters(bplus) + "; eyeglass (" + format_letters(alpha) + ", " +
                                    format_letters(beta) + ")" + (e < 0 ? " inverted" : ""));
                    std::vector<std::string> sub;
                    MCWord w;
                    try {
                        w = factor_frame(fr, 0, sub);
                    } catch (const EngineError&) {
                        continue;
                    }
                    if (e < 0) w = inverse(w);
                    if (!M_.check_equal(M_.compile(w), f).holds()) continue;
                    trace.insert(trace.end(), sub.begin(), sub.end());
                    return w;
                }
        }
    throw SearchExhausted("no eyeglass on a1 and a band sum of b with b1 carries b1 to " + format_letters(b));
}

Certificate PowellEngine::orthogonal_replace(const OrthogonalInstance& inst) const {
    const int g = M_.genus();
    const auto& G = M_.group();
    auto orthogonal = [&](const Letters& b) {
        if (!bounds_disk_in(Side::B, b)) return false;
        return std::abs(pairing(homology(Letters{X(1)}, g), homology(b, g))) == 1;
    };
    if (!orthogonal(inst.b)) throw NotOrthogonal("b is not a disk of B meeting a1 once");
    Certificate c;
    c.engine = "orthogonal";
    c.input = "b = " + format_letters(inst.b);
    MCWord rho;
    Letters cur = inst.b;
    int step = 0;
    for (const auto& w : inst.surgery_witnesses) {
        if (++step > depth_cap_) throw DepthExceeded("orthogonal recursion exceeded depth cap");
        if (!orthogonal(w)) throw NotOrthogonal("surgery witness " + format_letters(w) + " is not orthogonal to a1");
        c.trace.push_back("surgery along outermost arc gives b' = " + format_letters(w));
        MCWord r0 = orthogonal_special(w, c.trace);
        cur = M_.act_on_curve(M_.compile(inverse(r0)), Word{cur, true}).letters;
        c.trace.push_back("b'' = " + format_letters(cur));
        rho = concat(rho, r0);
    }
    rho = concat(rho, orthogonal_special(cur, c.trace));
    c.output = rho;
    const PiOneAuto f = M_.compile(rho);
    const Letters img = M_.act_on_curve(f, Word{{Y(1)}, true}).letters;
    const Letters fix = M_.act_on_curve(f, Word{{X(1)}, true}).letters;
    HomologyClass hi = homology(img, g), hb = homology(inst.b, g);
    HomologyClass nb = hb;
    for (auto& v : nb) v = -v;
    c.h1_check = (hi == hb || hi == nb) && homology(fix, g) == homology(Letters{X(1)}, g);
    c.pi1_check = G.are_conjugate(img, inst.b).has_value() && G.are_conjugate(fix, Letters{X(1)}).has_value();
    c.trace.push_back(std::string("output carries b1 to b: ") + (c.pi1_check ? "yes" : "no"));
    return c;
}

SigmaReduction PowellEngine::sigma_reduce(const MixedWord& rho) const {
    for (const auto& l : rho) {
        if (l.family != 'a' && l.family != 'b' && l.family != 's') throw AlphabetError("unknown braid family");
        if (l.family != 's' && l.index < 1) throw AlphabetError("braid letter index must be positive");
        if (std::abs(l.power) != 1) throw AlphabetError("braid letters carry power +1 or -1");
    }
    SigmaReduction out;
    MixedWord cur = rho;
    int depth = 0;
    while (sigma_count(cur) > 0) {
        if (++depth > depth_cap_ && depth > static_cast<int>(rho.size())) throw DepthExceeded("sigma recursion exceeded depth cap");
        const int before = sigma_count(cur);
        auto it = std::find_if(cur.begin(), cur.end(), [](const MixedLetter& l) { return l.family == 's'; });
        MixedWord alpha, beta;
        for (auto p = cur.begin(); p != it; ++p) (p->family == 'a' ? alpha : beta).push_back(*p);
        SigmaFactor f;
        f.conjugator = alpha;
        f.conjugator.insert(f.conjugator.end(), beta.begin(), beta.end());
        f.factor = f.conjugator;
        f.factor.push_back(*it);
        MixedWord back = inverse(f.conjugator);
        f.factor.insert(f.factor.end(), back.begin(), back.end());
        f.remainder = f.conjugator;
        f.remainder.insert(f.remainder.end(), it + 1, cur.end());
        if (sigma_count(f.remainder) != before - 1) throw EngineError("sigma count did not decrease");
        cur = f.remainder;
        out.factors.push_back(std::move(f));
    }
    out.residual = cur;
    return out;
}

namespace {

bool adjacent_on_c(const std::vector<int>& positions, int p, int q, const std::vector<int>& among) {
    // p and q adjacent in the cyclic order of `among` on c
    std::vector<int> pts;
    for (int k : among) pts.push_back(positions[static_cast<std::size_t>(k)]);
    std::sort(pts.begin(), pts.end());
    int lo = std::min(p, q), hi = std::max(p, q);
    int inside = 0;
    for (int v : pts)
        if (v > lo && v < hi) ++inside;
    int outside = static_cast<int>(pts.size()) - 2 - inside;
    return inside == 0 || outside == 0;
}

}  // namespace

ShortEyeglassNode PowellEngine::short_eyeglass_reduce(const BridgeFrame& frame) const {
    const int k = frame.count();
    if (k % 2 == 0)
        throw ParityError("bridge meets c in " + std::to_string(k) + " points; lenses on opposite sides need an odd count");
    if (!frame.a_side_planar && !frame.b_side_planar) throw NotShort("bridge leaves the planar surface on both sides");
    ShortEyeglassNode node;
    node.frame = frame;
    node.role = "root";
    if (k == 1) return node;

    const bool on_a = frame.a_side_planar;
    // subarcs of v on the planar side, as pairs of consecutive crossings
    std::vector<int> among;
    std::vector<int> starts;
    if (on_a) {
        for (int i = 1; i + 1 < k; i += 2) starts.push_back(i);
        for (int i = 1; i < k; ++i) among.push_back(i);
    } else {
        for (int i = 0; i + 2 < k; i += 2) starts.push_back(i);
        for (int i = 0; i + 1 < k; ++i) among.push_back(i);
    }
    int pick = -1;
    for (int i : starts) {
        if (adjacent_on_c(frame.c_position, frame.c_position[static_cast<std::size_t>(i)],
                          frame.c_position[static_cast<std::size_t>(i + 1)], among)) {
            pick = i;
            break;
        }
    }
    if (pick < 0) throw NotShort("no outermost subarc of the bridge on the planar side");

    BridgeFrame lens_frame = frame, iso = frame;
    const auto& pos = frame.c_position;
    if (on_a) {
        lens_frame.c_position.assign(pos.begin() + pick + 1, pos.end());
    } else {
        lens_frame.c_position.assign(pos.begin(), pos.begin() + pick + 1);
    }
    iso.c_position.clear();
    for (int i = 0; i < k; ++i)
        if (i != pick && i != pick + 1) iso.c_position.push_back(pos[static_cast<std::size_t>(i)]);
    if (lens_frame.count() > k - 2 || iso.count() != k - 2) throw EngineError("short eyeglass step did not reduce |v ∩ c|");

    ShortEyeglassNode a = short_eyeglass_reduce(lens_frame);
    a.role = on_a ? "lens a_c" : "lens b_c";
    ShortEyeglassNode b = short_eyeglass_reduce(iso);
    b.role = "isotoped";
    node.children.push_back(std::move(a));
    node.children.push_back(std::move(b));
    return node;
}

}  // namespace pk
