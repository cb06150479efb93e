#include "powellkit/word_problem.hpp"

#include <algorithm>
#include <set>

namespace pk {

SurfaceGroup::SurfaceGroup(int genus) : g_(genus), r_(pk::relator(genus)) {
    check_genus(genus);
    const std::size_t n = r_.size();
    for (const Letters& base : {r_, inverse(r_)})
        for (std::size_t k = 0; k < n; ++k) sym_.push_back(rotate(base, k));
    by_first_.assign(4 * static_cast<std::size_t>(g_), {});
    for (std::size_t i = 0; i < sym_.size(); ++i) by_first_[slot(sym_[i][0], g_)].push_back(static_cast<int>(i));

    std::set<Letters> seen;
    auto add = [&](std::vector<Letters>& into, Letters z) {
        z = free_reduce(z);
        if (seen.insert(z).second) into.push_back(std::move(z));
    };
    add(short_conj_, {});
    for (int a = 1; a <= 2 * g_; ++a) {
        add(short_conj_, {a});
        add(short_conj_, {-a});
    }
    for (const auto& r : sym_)
        for (std::size_t L = 2; L <= n / 2 + 1; ++L) add(short_conj_, Letters(r.begin(), r.begin() + L));
    // Genus 2 is only C'(1/7); thicker annular diagrams need two-cell conjugators.
    if (g_ == 2)
        for (const auto& z1 : short_conj_)
            for (const auto& z2 : short_conj_) {
                Letters z = concat(z1, z2);
                if (!seen.count(z)) add(long_conj_, z);
            }
}

Letters SurfaceGroup::dehn(const Letters& input) const {
    Letters w = free_reduce(input);
    const std::size_t n = r_.size();
    std::size_t pos = 0;
    while (pos < w.size()) {
        bool replaced = false;
        for (int idx : by_first_[slot(w[pos], g_)]) {
            const Letters& r = sym_[static_cast<std::size_t>(idx)];
            std::size_t m = 0;
            while (m < n && pos + m < w.size() && w[pos + m] == r[m]) ++m;
            if (2 * m > n) {
                Letters out(w.begin(), w.begin() + static_cast<long>(pos));
                for (std::size_t t = n; t > m; --t) out.push_back(-r[t - 1]);
                out.insert(out.end(), w.begin() + static_cast<long>(pos + m), w.end());
                out = free_reduce(out);
                // free reduction may cancel far to the left; rescan from the first change
                std::size_t d = 0;
                while (d < out.size() && d < w.size() && out[d] == w[d]) ++d;
                w = std::move(out);
                pos = d > n ? d - n : 0;
                replaced = true;
                break;
            }
        }
        if (!replaced) ++pos;
    }
    return w;
}

bool SurfaceGroup::is_trivial(const Letters& w) const { return dehn(w).empty(); }

bool SurfaceGroup::equal(const Letters& u, const Letters& v) const {
    return is_trivial(concat(u, inverse(v)));
}

SurfaceGroup::CyclicForm SurfaceGroup::cyclic_dehn(const Letters& w) const {
    Letters p;
    Letters c = dehn(w);
    for (;;) {
        c = free_reduce(c);
        std::size_t lo = 0, hi = c.size();
        while (hi - lo > 1 && c[lo] == -c[hi - 1]) {
            p.push_back(c[lo]);
            ++lo;
            --hi;
        }
        c = Letters(c.begin() + static_cast<long>(lo), c.begin() + static_cast<long>(hi));
        bool done = true;
        for (std::size_t k = 1; k < c.size(); ++k) {
            Letters d = dehn(rotate(c, k));
            if (d.size() < c.size()) {
                p.insert(p.end(), c.begin(), c.begin() + static_cast<long>(k));
                c = d;
                done = false;
                break;
            }
        }
        if (done) return {free_reduce(p), c};
    }
}

std::optional<Letters> SurfaceGroup::search_conjugator(const Letters& cu, const Letters& cv,
                                                       const std::vector<Letters>& cands) const {
    // cu = z * rot_k(cv) * z^-1 and rot_k(cv) = pre^-1 * cv * pre with pre = cv[:k]
    const Letters icu = inverse(cu);
    for (std::size_t k = 0; k < cv.size(); ++k) {
        Letters rot = rotate(cv, k);
        for (const auto& z : cands) {
            if (is_trivial(concat({z, rot, inverse(z), icu}))) {
                Letters pre(cv.begin(), cv.begin() + static_cast<long>(k));
                return concat(z, inverse(pre));
            }
        }
    }
    return std::nullopt;
}

std::optional<ConjugacyWitness> SurfaceGroup::are_conjugate(const Letters& w1, const Letters& w2) const {
    auto fu = cyclic_dehn(w1);
    auto fv = cyclic_dehn(w2);
    if (fu.core.empty() && fv.core.empty()) return ConjugacyWitness{{}};
    if (fu.core.empty() || fv.core.empty()) return std::nullopt;
    auto z = search_conjugator(fu.core, fv.core, short_conj_);
    if (!z && !long_conj_.empty()) z = search_conjugator(fu.core, fv.core, long_conj_);
    if (!z) return std::nullopt;
    Letters full = dehn(concat({fu.conj, *z, inverse(fv.conj)}));
    if (!is_trivial(concat({full, w2, inverse(full), inverse(w1)})))
        throw std::logic_error("conjugacy witness failed re-verification");
    return ConjugacyWitness{full};
}

PiOneAuto identity_auto(int genus) {
    PiOneAuto f{genus, {}};
    for (int a = 1; a <= 2 * genus; ++a) f.images.push_back({a});
    return f;
}

Letters apply(const PiOneAuto& f, const Letters& w) {
    Letters out;
    for (int a : w) {
        const Letters& im = f.image(std::abs(a));
        if (a > 0)
            out.insert(out.end(), im.begin(), im.end());
        else
            for (auto it = im.rbegin(); it != im.rend(); ++it) out.push_back(-*it);
    }
    return free_reduce(out);
}

PiOneAuto compose(const SurfaceGroup& G, const PiOneAuto& f, const PiOneAuto& h) {
    PiOneAuto out{h.genus, {}};
    for (const auto& im : h.images) out.images.push_back(G.dehn(apply(f, im)));
    return out;
}

PiOneAuto inner_auto(const SurfaceGroup& G, const Letters& u) {
    PiOneAuto f = identity_auto(G.genus());
    for (auto& im : f.images) im = G.dehn(concat({u, im, inverse(u)}));
    return f;
}

IntMatrix h1_matrix(const PiOneAuto& f) {
    const std::size_t n = 2 * static_cast<std::size_t>(f.genus);
    IntMatrix m(n, std::vector<long>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        auto h = homology(f.images[j], f.genus);
        for (std::size_t i = 0; i < n; ++i) m[i][j] = h[i];
    }
    return m;
}

bool is_symplectic(const IntMatrix& m) {
    const std::size_t n = m.size();
    auto col = [&](std::size_t j) {
        HomologyClass c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = m[i][j];
        return c;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            HomologyClass ei(n, 0), ej(n, 0);
            ei[i] = 1;
            ej[j] = 1;
            if (pairing(col(i), col(j)) != pairing(ei, ej)) return false;
        }
    return true;
}

bool outer_equal(const SurfaceGroup& G, const PiOneAuto& f, const PiOneAuto& h, int bound) {
    if (f.genus != h.genus || f.genus != G.genus()) throw std::invalid_argument("genus mismatch");
    auto w = G.are_conjugate(f.images[0], h.images[0]);
    if (!w) return false;
    const Letters& r = h.images[0];
    const std::size_t n = f.images.size();
    for (int step = 0; step <= 2 * bound; ++step) {
        int k = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
        Letters u = concat(w->conjugator, power(r, k));
        Letters iu = inverse(u);
        bool ok = true;
        for (std::size_t z = 1; z < n && ok; ++z)
            ok = G.is_trivial(concat({u, h.images[z], iu, inverse(f.images[z])}));
        if (ok) return true;
    }
    // Inner automorphisms preserve every conjugacy class, so a class that moves
    // refutes equality. Test generators, then products of two generators.
    for (std::size_t z = 1; z < n; ++z)
        if (!G.are_conjugate(f.images[z], h.images[z])) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (int e : {1, -1}) {
                Letters fw = concat(f.images[i], power(f.images[j], e));
                Letters hw = concat(h.images[i], power(h.images[j], e));
                if (!G.are_conjugate(fw, hw)) return false;
            }
    throw CandidateBoundExceeded("outer_equal: no conjugator among " + std::to_string(2 * bound + 1) +
                                 " centralizer candidates");
}

}  // namespace pk
