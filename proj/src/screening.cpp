#include "powellkit/screening.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

namespace pk {

namespace {

Perm identity(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm mul(const Perm& a, const Perm& b) {
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
    return out;
}

Perm inv(const Perm& a) {
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint8_t>(i);
    return out;
}

std::vector<std::vector<int>> cycles(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> c;
        for (std::size_t i = s; !seen[i]; i = p[i]) {
            seen[i] = true;
            c.push_back(static_cast<int>(i));
        }
        out.push_back(std::move(c));
    }
    return out;
}

// sigma with sigma * x * sigma^-1 = t, when x and t have the same cycle type.
std::optional<Perm> conjugator(const Perm& x, const Perm& t, std::mt19937_64& rng) {
    auto cx = cycles(x), ct = cycles(t);
    std::map<std::size_t, std::vector<std::vector<int>>> by_len;
    for (auto& c : cx) by_len[c.size()].push_back(c);
    for (auto& [len, v] : by_len) std::shuffle(v.begin(), v.end(), rng);
    Perm sigma(x.size());
    for (const auto& c : ct) {
        auto& pool = by_len[c.size()];
        if (pool.empty()) return std::nullopt;
        std::vector<int> target = pool.back();
        pool.pop_back();
        std::size_t shift = std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng);
        // t maps c[k] to c[k+1]; x must map sigma(c[k]) to sigma(c[k+1]).
        for (std::size_t k = 0; k < c.size(); ++k)
            sigma[static_cast<std::size_t>(c[k])] = static_cast<std::uint8_t>(target[(k + shift) % c.size()]);
    }
    return sigma;
}

}  // namespace

FiniteQuotientScreen::FiniteQuotientScreen(int genus, int maps, std::uint64_t seed, int max_degree) : g_(genus) {
    check_genus(genus);
    if (max_degree < 3 || max_degree > 8) throw std::invalid_argument("screening degree must lie in 3..8");
    std::mt19937_64 rng(seed);
    const Letters rel = relator(genus);
    int attempts = 0;
    while (static_cast<int>(images_.size()) < maps) {
        if (++attempts > 1000 * std::max(1, maps)) throw std::runtime_error("screening: could not build homomorphisms");
        const int n = 3 + static_cast<int>(images_.size()) % (max_degree - 2);
        auto random_perm = [&] {
            Perm p = identity(n);
            std::shuffle(p.begin(), p.end(), rng);
            return p;
        };
        std::vector<Perm> img(static_cast<std::size_t>(2 * genus));
        Perm prod = identity(n);
        for (int i = 1; i < genus; ++i) {
            Perm x = random_perm(), y = random_perm();
            img[static_cast<std::size_t>(X(i) - 1)] = x;
            img[static_cast<std::size_t>(Y(i) - 1)] = y;
            prod = mul(prod, mul(mul(x, y), mul(inv(x), inv(y))));
        }
        // Need x y x^-1 y^-1 = c with c = prod^-1, i.e. y x^-1 y^-1 = x^-1 c.
        const Perm c = inv(prod);
        std::optional<Perm> y;
        Perm x;
        for (int tries = 0; tries < 64 && !y; ++tries) {
            x = random_perm();
            Perm xi = inv(x);
            y = conjugator(xi, mul(xi, c), rng);
        }
        if (!y) continue;
        img[static_cast<std::size_t>(X(genus) - 1)] = x;
        img[static_cast<std::size_t>(Y(genus) - 1)] = *y;
        images_.push_back(std::move(img));
        if (evaluate(images_.size() - 1, rel) != identity(n)) throw std::logic_error("screening map does not kill the relator");
    }
}

Perm FiniteQuotientScreen::evaluate(std::size_t k, const Letters& w) const {
    const auto& img = images_.at(k);
    Perm p = identity(static_cast<int>(img[0].size()));
    for (int l : w) {
        const Perm& q = img.at(static_cast<std::size_t>(std::abs(l) - 1));
        p = mul(p, l > 0 ? q : inv(q));
    }
    return p;
}

int FiniteQuotientScreen::witness(const Letters& w) const {
    for (std::size_t k = 0; k < images_.size(); ++k) {
        Perm p = evaluate(k, w);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != i) return static_cast<int>(k);
    }
    return -1;
}

}  // namespace pk
