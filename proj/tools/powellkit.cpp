#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "powellkit/genus3.hpp"
#include "powellkit/planar_checker.hpp"
#include "powellkit/powell_engine.hpp"
#include "powellkit/selftest.hpp"
#include "powellkit/two_complex.hpp"

using namespace pk;

namespace {

struct Options {
    int genus = 3;
    std::optional<std::string> table;
    int bound = 64;
    int jobs = 1;
    std::string format = "text";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Arguments are literals unless they name an existing file.
std::string read_arg(const std::string& s) {
    std::error_code ec;
    if (s.empty() || !std::filesystem::is_regular_file(s, ec)) return s;
    std::ifstream in(s);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

OutputFormat fmt(const Options& o) { return o.format == "structured" ? OutputFormat::Structured : OutputFormat::Text; }

GeneratorTable load_table(const Options& o) {
    GeneratorTable t = resolve_table(o.genus, o.table);
    if (o.table || std::getenv("POWELLKIT_TABLE")) t.validate(SurfaceGroup(o.genus), o.bound);
    return t;
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--genus", o.genus, "surface genus")->check(CLI::Range(2, 64));
    app->add_option("--table", o.table, "generator table file (default: $POWELLKIT_TABLE, then built-in)");
    app->add_option("--bound", o.bound, "candidate bound for conjugacy searches")->check(CLI::PositiveNumber);
    app->add_option("--jobs", o.jobs, "parallel jobs")->check(CLI::PositiveNumber);
    app->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
}

int emit(const Certificate& c, const Options& o) {
    std::cout << render(c, fmt(o));
    return c.passed() ? 0 : 1;
}

void print_tree(const ShortEyeglassNode& n, int depth) {
    std::cout << std::string(static_cast<std::size_t>(2 * depth), ' ') << n.role << ": |v ∩ c| = " << n.frame.count() << "  [";
    for (std::size_t i = 0; i < n.frame.c_position.size(); ++i) std::cout << (i ? " " : "") << n.frame.c_position[i];
    std::cout << "]\n";
    for (const auto& ch : n.children) print_tree(ch, depth + 1);
}

// check-path files: "vertex <A word> | <B word>" lines, plus optional
// "disjoint <u> | <v>" witnesses beyond the atlas.
int check_path(const std::string& text, const Options& o) {
    DisjointnessWitnesses W(o.genus);
    std::vector<TwoCVertex> path;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        auto sp = line.find(' ');
        std::string key = line.substr(0, sp);
        auto parts = split(sp == std::string::npos ? "" : line.substr(sp + 1), '|');
        if (parts.size() != 2) throw ParseError("expected '<word> | <word>' in: " + line);
        Letters u = parse_letters(parts[0], o.genus), v = parse_letters(parts[1], o.genus);
        if (key == "vertex")
            path.push_back({u, v});
        else if (key == "disjoint")
            W.add_explicit(u, v, true);
        else
            throw ParseError("unknown line: " + line);
    }
    if (path.empty()) throw ParseError("path has no vertices");
    bool ok = admissible_path_check(path, W);
    std::cout << (ok ? "admissible" : "not admissible") << " (" << path.size() << " vertices)\n";
    return ok ? 0 : 1;
}

int cases(const Options&, int only_model) {
    CrossingCatalog cat = CrossingCatalog::load(default_catalog_path());
    cat.validate();
    int bad = 0;
    for (const auto& m : cat.models) {
        if (only_model && m.id != only_model) continue;
        for (const CrossingCase& c : enumerate_cases(m)) {
            DisjointnessWitnesses W = case_witnesses(c, cat.genus);
            std::cout << c.name() << ": ";
            try {
                auto path = cloud_connect(c, W);
                bool ok = admissible_path_check(path, W);
                bad += !ok;
                std::cout << (ok ? "path" : "INVALID path");
                for (const auto& v : path) std::cout << " (" << format_letters(v.a) << " | " << format_letters(v.b) << ")";
                std::cout << "\n";
            } catch (const CaseExcluded& e) {
                std::cout << "excluded: " << e.what() << "\n";
            }
        }
    }
    return bad ? 1 : 0;
}

Genus3Instances instances(const std::optional<std::string>& file, bool expand, const MappingClasses& M) {
    Genus3Instances base = file ? Genus3Instances::parse(read_arg(*file), M) : Genus3Instances::load(default_genus3_path(), M);
    return expand ? base.expanded(M) : base;
}

int run(int argc, char** argv) {
    CLI::App app{"powellkit: Powell moves, Goeritz factorization and Heegaard splitting checks"};
    app.require_subcommand(1);
    Options o;
    int rc = 0;

    std::string w1, w2, mc, spec, extra;
    std::optional<std::string> opt1;
    std::vector<std::string> witnesses;
    int g1 = 1, model = 0;
    bool expand = false;

    auto* trivial = app.add_subcommand("trivial", "is the word trivial in pi1");
    trivial->add_option("word", w1)->required();
    add_common(trivial, o);
    trivial->callback([&] {
        SurfaceGroup G(o.genus);
        Letters w = parse_letters(read_arg(w1), o.genus);
        bool t = G.is_trivial(w);
        std::cout << (t ? "trivial" : "nontrivial: " + format_letters(G.dehn(w))) << "\n";
        rc = t ? 0 : 1;
    });

    auto* conj = app.add_subcommand("conjugate", "are two words conjugate in pi1");
    conj->add_option("w1", w1)->required();
    conj->add_option("w2", w2)->required();
    add_common(conj, o);
    conj->callback([&] {
        SurfaceGroup G(o.genus);
        auto r = G.are_conjugate(parse_letters(read_arg(w1), o.genus), parse_letters(read_arg(w2), o.genus));
        if (r) std::cout << "conjugate by " << format_letters(r->conjugator) << "\n";
        else std::cout << "not conjugate\n";
        rc = r ? 0 : 1;
    });

    auto* compose_cmd = app.add_subcommand("compose", "compile a move word to its pi1 automorphism");
    compose_cmd->add_option("moves", mc)->required();
    add_common(compose_cmd, o);
    compose_cmd->callback([&] {
        MappingClasses M(load_table(o), o.bound);
        PiOneAuto f = M.compile(parse_mcword(read_arg(mc), o.genus));
        for (int l = 1; l <= 2 * o.genus; ++l)
            std::cout << (is_x(l) ? "x" : "y") << handle_of(l) << " -> " << format_letters(f.image(l)) << "\n";
    });

    auto* act = app.add_subcommand("act", "image of a curve under a move word");
    act->add_option("moves", mc)->required();
    act->add_option("curve", w1)->required();
    add_common(act, o);
    act->callback([&] {
        MappingClasses M(load_table(o), o.bound);
        Word w = parse_word(read_arg(w1), o.genus);
        std::cout << format_word(M.act_on_curve(M.compile(parse_mcword(read_arg(mc), o.genus)), w)) << "\n";
    });

    auto* equal = app.add_subcommand("equal", "are two move words the same mapping class");
    equal->add_option("u", w1)->required();
    equal->add_option("v", w2)->required();
    add_common(equal, o);
    equal->callback([&] {
        MappingClasses M(load_table(o), o.bound);
        EqualityCheck c = M.check_equal(parse_mcword(read_arg(w1), o.genus), parse_mcword(read_arg(w2), o.genus));
        std::cout << "h1_check: " << (c.h1 ? "pass" : "fail") << "\npi1_check: " << (c.pi1 ? "pass" : "fail") << "\n";
        rc = c.holds() ? 0 : 1;
    });

    auto* fac = app.add_subcommand("factorize", "Powell factorizations with certificates");
    fac->require_subcommand(1);
    auto engine_cmd = [&](const std::string& name, const std::string& desc, std::function<Certificate(PowellEngine&)> body) {
        auto* sub = fac->add_subcommand(name, desc);
        add_common(sub, o);
        sub->callback([&o, &rc, body] {
            MappingClasses M(load_table(o), o.bound);
            PowellEngine E(M, o.bound);
            rc = emit(body(E), o);
        });
        return sub;
    };
    engine_cmd("braid", "bubble move spec, e.g. 'bubble 1; path b2'", [&](PowellEngine& E) {
        return E.braid_to_powell(parse_braid_spec(read_arg(spec), o.genus));
    })->add_option("spec", spec)->required();
    {
        auto* sub = engine_cmd("reducing", "carry a reducing curve onto c_g1", [&](PowellEngine& E) {
            std::optional<MCWord> b;
            if (opt1) b = parse_mcword(read_arg(*opt1), o.genus);
            return E.normalize_reducing_curve(parse_word(read_arg(spec), o.genus), g1, b);
        });
        sub->add_option("curve", spec)->required();
        sub->add_option("--g1", g1, "genus of the first summand");
        sub->add_option("--braid", opt1, "braid move word taking the curve to c_g1");
    }
    {
        auto* sub = engine_cmd("align", "align an orthogonal disk system", [&](PowellEngine& E) {
            std::vector<Letters> b;
            for (const auto& part : split(read_arg(extra), extra.find('\n') != std::string::npos ? '\n' : ';'))
                if (!part.empty()) b.push_back(parse_letters(part, o.genus));
            return E.orthogonal_system_align(ChordDiagram::parse(read_arg(spec)), b);
        });
        sub->add_option("diagram", spec)->required();
        sub->add_option("duals", extra, "dual disks b'_1 ... b'_g, ';' or newline separated")->required();
    }
    {
        auto* sub = engine_cmd("eyeglass", "factor an eyeglass twist", [&](PowellEngine& E) {
            std::optional<MCWord> p;
            if (opt1) p = parse_mcword(read_arg(*opt1), o.genus);
            return E.eyeglass_factor(EyeglassFrame::parse(read_arg(spec), o.genus), p);
        });
        sub->add_option("frame", spec)->required();
        sub->add_option("--provenance", opt1, "move word h with the eyeglass equal to h(standard)");
    }
    {
        auto* sub = engine_cmd("orthogonal", "Powell word fixing a1 and carrying b1 to b", [&](PowellEngine& E) {
            OrthogonalInstance inst;
            inst.b = parse_letters(read_arg(spec), o.genus);
            for (const auto& w : witnesses) inst.surgery_witnesses.push_back(parse_letters(read_arg(w), o.genus));
            return E.orthogonal_replace(inst);
        });
        sub->add_option("b", spec)->required();
        sub->add_option("--witness", witnesses, "outermost-arc surgery result, one per arc of b ∩ b1");
    }
    {
        auto* sub = fac->add_subcommand("sigma", "peel sigma factors off a mixed braid word");
        sub->add_option("word", spec)->required();
        add_common(sub, o);
        sub->callback([&] {
            MappingClasses M(load_table(o), o.bound);
            PowellEngine E(M, o.bound);
            SigmaReduction r = E.sigma_reduce(parse_mixed_word(read_arg(spec)));
            for (const auto& f : r.factors)
                std::cout << "factor: " << format_mixed_word(f.factor) << "\nremainder: " << format_mixed_word(f.remainder) << "\n";
            std::cout << "residual: " << format_mixed_word(r.residual) << "\n";
        });
    }
    {
        auto* sub = fac->add_subcommand("short-eyeglass", "reduce a short eyeglass bridge to |v ∩ c| = 1");
        sub->add_option("frame", spec)->required();
        add_common(sub, o);
        sub->callback([&] {
            MappingClasses M(load_table(o), o.bound);
            PowellEngine E(M, o.bound);
            print_tree(E.short_eyeglass_reduce(BridgeFrame::parse(read_arg(spec))), 0);
        });
    }

    auto* tc = app.add_subcommand("two-complex", "admissible paths in the two-complex");
    tc->require_subcommand(1);
    {
        auto* sub = tc->add_subcommand("check-path", "validate a path file");
        sub->add_option("file", spec)->required();
        add_common(sub, o);
        sub->callback([&] { rc = check_path(read_arg(spec), o); });
        auto* cs = tc->add_subcommand("cases", "run the crossing-case machine on the shipped catalog");
        cs->add_flag("--all", "every model (the default)");
        cs->add_option("--model", model, "only this model");
        add_common(cs, o);
        cs->callback([&] { rc = cases(o, model); });
    }

    auto* g3 = app.add_subcommand("genus3", "genus 3 disk classification");
    g3->require_subcommand(1);
    {
        auto* cl = g3->add_subcommand("classify", "assign a class to every vertex of an instance file");
        cl->add_option("file", opt1, "instance file (default: the shipped set)");
        cl->add_flag("--expand", expand, "include every transported copy");
        add_common(cl, o);
        cl->callback([&] {
            o.genus = 3;
            MappingClasses M(load_table(o), o.bound);
            Genus3Instances in = instances(opt1, expand, M);
            DisjointnessWitnesses W = (opt1 ? Genus3Instances::parse(read_arg(*opt1), M) : Genus3Instances::load(default_genus3_path(), M)).witnesses(M);
            for (const auto& v : in.vertices) {
                ClassAssignment c = assign_class(v.a, v.b, W);
                std::cout << v.name << ": " << c.target << " via " << c.rationale << " " << format_letters(c.anchor.curve) << "\n";
            }
        });
        auto* ec = g3->add_subcommand("edge-check", "fire edge_invariance and check agreement on every triple");
        ec->add_option("file", opt1, "instance file (default: the shipped set)");
        ec->add_flag("--expand", expand, "include every transported copy");
        add_common(ec, o);
        ec->callback([&] {
            o.genus = 3;
            MappingClasses M(load_table(o), o.bound);
            Genus3Instances in = instances(opt1, expand, M);
            DisjointnessWitnesses W = (opt1 ? Genus3Instances::parse(read_arg(*opt1), M) : Genus3Instances::load(default_genus3_path(), M)).witnesses(M);
            int bad = 0;
            for (const auto& t : in.triples) {
                EdgeBullet b = edge_invariance(t.single, t.d1, t.d2, W);
                EdgeAgreement a = edge_agreement(t, W, M);
                bad += !a.agree;
                std::cout << t.name << ": bullet " << b.bullet << " (" << b.evidence << "); classes " << (a.agree ? "agree" : "DISAGREE")
                          << " (" << a.how << ")\n";
            }
            rc = bad ? 1 : 0;
        });
    }

    int comps = 3, bounds = 6, handles = 3;
    bool unreduced = false;
    auto* pc = app.add_subcommand("planar-check", "enumerate handle attachments on planar surfaces");
    pc->add_option("--components", comps)->check(CLI::Range(1, 6));
    pc->add_option("--boundaries", bounds)->check(CLI::Range(1, 8));
    pc->add_option("--handles", handles)->check(CLI::Range(0, 4));
    pc->add_flag("--unreduced", unreduced, "skip the symmetry reduction");
    add_common(pc, o);
    pc->callback([&] {
        PlanarReport r = exhaustive_check(comps, bounds, handles, !unreduced, false);
        std::cout << "placements: " << r.placements << "\nunreduced: " << r.unreduced << "\ngenus_branch: " << r.genus_branch
                  << "\nnonseparating_branch: " << r.nonseparating_branch << "\ncounterexamples: " << r.counterexamples << "\n";
        for (const auto& f : r.failures) std::cout << "counterexample: " << f << "\n";
        rc = r.counterexamples ? 1 : 0;
    });

    std::vector<int> genera{2, 3}, only;
    std::uint64_t seed = SelftestConfig{}.seed;
    auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
    st->add_option("--genus", genera, "genera to test (repeatable)")->check(CLI::Range(2, 8));
    st->add_option("--table", o.table, "generator table replacing the built-in one at its genus");
    st->add_option("--bound", o.bound)->check(CLI::PositiveNumber);
    st->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
    st->add_option("--criterion", only, "run only these criteria (repeatable)")->check(CLI::Range(1, 11));
    st->add_option("--seed", seed);
    st->callback([&] {
        SelftestConfig cfg;
        cfg.genera = genera;
        cfg.table_path = o.table;
        if (!cfg.table_path)
            if (const char* env = std::getenv("POWELLKIT_TABLE"); env && *env) cfg.table_path = env;
        cfg.jobs = o.jobs;
        cfg.bound = o.bound;
        cfg.seed = seed;
        auto results = run_selftest(cfg, &std::cout, std::set<int>(only.begin(), only.end()));
        int failed = 0;
        for (const auto& r : results) failed += !r.pass;
        std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
        rc = failed ? 1 : 0;
    });

    auto* tab = app.add_subcommand("table", "print the generator table");
    add_common(tab, o);
    tab->callback([&] { std::cout << load_table(o).serialize(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CandidateBoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const AlphabetError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DiagramError& e) {
        std::cerr << "bad diagram: " << e.what() << "\n";
        return 2;
    } catch (const InvalidTableEntry& e) {
        std::cerr << "InvalidTableEntry: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "negative: " << e.what() << "\n";
        return 1;
    }
}
