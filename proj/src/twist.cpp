#include "powellkit/twist.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pk {

std::vector<int> polygon_sides(int genus) {
    std::vector<int> s;
    for (int i = genus; i >= 1; --i) {
        s.push_back(Y(i));
        s.push_back(-X(i));
        s.push_back(-Y(i));
        s.push_back(X(i));
    }
    return s;
}

namespace {

struct Strand {
    long k;
    int d;  // +1: sits at entry side of occurrence k; -1: at exit side of occurrence k
    bool operator==(const Strand&) const = default;
};

}  // namespace

ChordSystem polygon_chords(int genus, const Letters& input) {
    Letters c = cyclic_reduce(input);
    if (c.empty()) throw NotSimple("empty curve");
    const auto S = polygon_sides(genus);
    const long N = static_cast<long>(S.size());
    const long n = static_cast<long>(c.size());
    std::map<int, long> side_of;
    for (long k = 0; k < N; ++k) side_of[S[static_cast<std::size_t>(k)]] = k;
    std::vector<long> exit_side(static_cast<std::size_t>(n)), entry_side(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) {
        exit_side[static_cast<std::size_t>(k)] = side_of.at(c[static_cast<std::size_t>(k)]);
        entry_side[static_cast<std::size_t>(k)] = side_of.at(-c[static_cast<std::size_t>(k)]);
    }
    auto md = [](long a, long m) { return ((a % m) + m) % m; };
    auto other = [&](const Strand& s, long& side) {
        if (s.d == 1) {
            long k2 = md(s.k + 1, n);
            side = exit_side[static_cast<std::size_t>(k2)];
            return Strand{k2, -1};
        }
        long k2 = md(s.k - 1, n);
        side = entry_side[static_cast<std::size_t>(k2)];
        return Strand{k2, 1};
    };
    auto cmp = [&](Strand si, Strand sj, long side) {
        for (long it = 0; it < 4 * n + 4; ++it) {
            if (si == sj) return 0;
            long ti, tj;
            Strand ni = other(si, ti), nj = other(sj, tj);
            if (ti != tj) return md(ti - side, N) > md(tj - side, N) ? -1 : 1;
            side = side_of.at(-S[static_cast<std::size_t>(ti)]);
            si = Strand{ni.k, -ni.d};
            sj = Strand{nj.k, -nj.d};
        }
        throw NotSimple("strand comparison does not terminate");
    };

    std::map<std::pair<long, int>, double> pos;
    for (long s = 0; s < N; ++s) {
        std::vector<Strand> pts;
        for (long k = 0; k < n; ++k) {
            if (exit_side[static_cast<std::size_t>(k)] == s) pts.push_back({k, -1});
            if (entry_side[static_cast<std::size_t>(k)] == s) pts.push_back({k, 1});
        }
        // insertion sort: the comparator is only a total order for simple curves
        for (std::size_t i = 1; i < pts.size(); ++i)
            for (std::size_t j = i; j > 0 && cmp(pts[j], pts[j - 1], s) < 0; --j) std::swap(pts[j], pts[j - 1]);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (cmp(pts[i], pts[i + 1], s) >= 0) throw NotSimple("inconsistent endpoint order");
        const double m = static_cast<double>(pts.size());
        for (std::size_t r = 0; r < pts.size(); ++r)
            pos[{pts[r].k, pts[r].d}] = static_cast<double>(s) + (static_cast<double>(r) + 1) / (m + 1);
    }

    ChordSystem out{{}, c};
    for (long k = 0; k < n; ++k) out.chords.push_back({pos.at({k, 1}), pos.at({md(k + 1, n), -1})});
    auto inside = [](double x, double lo, double hi) { return lo < hi ? (lo < x && x < hi) : (x > lo || x < hi); };
    for (std::size_t i = 0; i < out.chords.size(); ++i)
        for (std::size_t j = i + 1; j < out.chords.size(); ++j) {
            auto [a, b] = out.chords[i];
            auto [p, q] = out.chords[j];
            if (inside(p, a, b) != inside(q, a, b)) throw NotSimple("chords cross");
        }
    for (long k = 0; k < n; ++k) {
        double pe = pos.at({k, -1}) - static_cast<double>(exit_side[static_cast<std::size_t>(k)]);
        double pf = pos.at({k, 1}) - static_cast<double>(entry_side[static_cast<std::size_t>(k)]);
        if (std::fabs(pe + pf - 1.0) > 1e-9) throw NotSimple("endpoint mismatch across paired sides");
    }
    return out;
}

bool is_polygon_simple(int genus, const Letters& w) {
    try {
        polygon_chords(genus, w);
        return true;
    } catch (const NotSimple&) {
        return false;
    }
}

namespace {

Letters excursion(const Letters& c, std::size_t h, bool right_to_left, int raw_sign) {
    const std::size_t n = c.size();
    Letters fwd;
    for (std::size_t t = 0; t < n; ++t) fwd.push_back(c[(h + 1 + t) % n]);
    bool go_fwd = !right_to_left;
    if (raw_sign < 0) go_fwd = !go_fwd;
    return go_fwd ? fwd : inverse(fwd);
}

PiOneAuto raw_twist(int genus, const ChordSystem& cs, int raw_sign) {
    const auto S = polygon_sides(genus);
    const Letters& c = cs.word;
    PiOneAuto f = identity_auto(genus);
    for (std::size_t k = 0; k < S.size(); ++k) {
        int a = S[k];
        if (a < 0) continue;
        std::size_t partner = 0;
        for (std::size_t t = 0; t < S.size(); ++t)
            if (S[t] == -a) partner = t;
        const double P = static_cast<double>(k) + 1e-6;
        const double Pp = static_cast<double>(partner) + 1 - 1e-6;
        Letters word;
        struct Hit {
            double u;
            std::size_t h;
            bool rl;
        };
        std::vector<Hit> hits;
        for (std::size_t h = 0; h < cs.chords.size(); ++h) {
            auto [q1, q2] = cs.chords[h];
            bool in1 = 0 < q1 && q1 < P, in2 = 0 < q2 && q2 < P;
            if (in1 != in2) hits.push_back({in1 ? q1 : q2, h, in1});
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.u < y.u; });
        for (const auto& hit : hits) {
            auto e = excursion(c, hit.h, hit.rl, raw_sign);
            word.insert(word.end(), e.begin(), e.end());
        }
        word.push_back(a);
        hits.clear();
        for (std::size_t h = 0; h < cs.chords.size(); ++h) {
            auto [q1, q2] = cs.chords[h];
            bool in1 = 0 < q1 && q1 < Pp, in2 = 0 < q2 && q2 < Pp;
            if (in1 != in2) hits.push_back({in1 ? q1 : q2, h, !in1});
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.u > y.u; });
        for (const auto& hit : hits) {
            auto e = excursion(c, hit.h, hit.rl, raw_sign);
            word.insert(word.end(), e.begin(), e.end());
        }
        f.images[static_cast<std::size_t>(a - 1)] = free_reduce(word);
    }
    return f;
}

}  // namespace

PiOneAuto dehn_twist(const SurfaceGroup& G, const Letters& w, int power) {
    const int g = G.genus();
    ChordSystem cs = polygon_chords(g, w);
    PiOneAuto step = raw_twist(g, cs, power >= 0 ? -1 : 1);
    for (auto& im : step.images) im = G.dehn(im);
    PiOneAuto f = identity_auto(g);
    for (int t = 0; t < std::abs(power); ++t) f = compose(G, f, step);
    return f;
}

}  // namespace pk
