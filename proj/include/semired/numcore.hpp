#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numbers.hpp"

namespace semired {

// Default ceiling for dense tables (membership sieves, gap lists). A table
// larger than this throws resource_error instead of exhausting memory.
inline constexpr std::size_t default_table_ceiling = std::size_t(1) << 28;

// Sorted, deduplicated list of positive generators.
class GeneratorSet {
public:
    GeneratorSet() = default;

    explicit GeneratorSet(std::vector<Nat> gens) : gens_(std::move(gens)) {
        for (const Nat& g : gens_)
            if (g <= 0)
                throw precondition_error("generator must be positive, got " + g.str());
        std::sort(gens_.begin(), gens_.end());
        gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
        if (gens_.empty())
            throw precondition_error("generator set must be nonempty");
    }

    const std::vector<Nat>& values() const { return gens_; }
    std::size_t size() const { return gens_.size(); }

    // Smallest generator (the multiplicity when the set is minimal).
    const Nat& least() const { return gens_.front(); }

    Nat gcd() const {
        Nat g = 0;
        for (const Nat& x : gens_) g = semired::gcd(g, x);
        return g;
    }

    bool operator==(const GeneratorSet& other) const = default;

private:
    std::vector<Nat> gens_;
};

// Sieve of membership in the monoid generated by `gens`: table[x] is true
// iff x is a nonnegative integer combination of the generators, 0 <= x <= bound.
inline std::vector<bool> membership_table(const GeneratorSet& gens, const Nat& bound,
                                          std::size_t ceiling = default_table_ceiling) {
    std::size_t n = to_size(bound, "membership table", ceiling - 1) + 1;
    std::vector<bool> table(n, false);
    table[0] = true;
    std::vector<std::size_t> small;
    for (const Nat& g : gens.values()) {
        if (g > bound) break;
        small.push_back(static_cast<std::size_t>(g));
    }
    for (std::size_t x = 1; x < n; ++x) {
        for (std::size_t g : small) {
            if (g > x) break;
            if (table[x - g]) {
                table[x] = true;
                break;
            }
        }
    }
    return table;
}

namespace detail {

// Shortest-path distances over residues modulo a: dist[r] is the least
// element of the generated monoid congruent to r. Requires gcd(gens) == 1
// so that every residue is reachable.
inline std::vector<Nat> residue_minima(const GeneratorSet& gens, const Nat& a,
                                       std::size_t ceiling) {
    std::size_t m = to_size(a, "apery table", ceiling);
    if (m == 0) throw precondition_error("apery: modulus must be positive");
    std::vector<std::size_t> steps;
    std::vector<Nat> lengths;
    for (const Nat& g : gens.values()) {
        Nat r = g % a;
        if (r == 0) continue; // stays in its class, can only grow
        steps.push_back(static_cast<std::size_t>(r));
        lengths.push_back(g);
    }
    std::vector<Nat> dist(m);
    std::vector<bool> done(m, false), seen(m, false);
    using Item = std::pair<Nat, std::size_t>;
    auto cmp = [](const Item& x, const Item& y) { return x.first > y.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
    queue.emplace(Nat(0), 0);
    seen[0] = true;
    std::size_t settled = 0;
    while (!queue.empty()) {
        auto [d, r] = queue.top();
        queue.pop();
        if (done[r]) continue;
        done[r] = true;
        dist[r] = d;
        ++settled;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            std::size_t s = r + steps[i];
            if (s >= m) s -= m;
            Nat nd = d + lengths[i];
            if (done[s]) continue;
            if (!seen[s] || nd < dist[s]) {
                seen[s] = true;
                dist[s] = nd;
                queue.emplace(std::move(nd), s);
            }
        }
    }
    if (settled != m)
        throw not_numerical_error("apery: " + std::to_string(m - settled) +
                                  " residue classes mod " + a.str() +
                                  " are unreachable (generators have gcd > 1)");
    return dist;
}

} // namespace detail

// Smallest element of <gens> in each residue class modulo a, indexed by
// residue. Entry 0 is always 0. Requires gcd(gens) == 1 and a >= 1.
inline std::vector<Nat> apery_oracle(const GeneratorSet& gens, const Nat& a,
                                     std::size_t ceiling = default_table_ceiling) {
    if (a < 1) throw precondition_error("apery: modulus must be positive");
    if (gens.gcd() != 1)
        throw not_numerical_error("apery: generators have gcd " + gens.gcd().str() +
                                  ", not a numerical semigroup");
    return detail::residue_minima(gens, a, ceiling);
}

// Exact membership of x in the monoid generated by `gens` (any gcd).
inline bool span_contains(const GeneratorSet& gens, const Nat& x,
                          std::size_t ceiling = default_table_ceiling) {
    if (x < 0) return false;
    if (x == 0) return true;
    Nat g = gens.gcd();
    if (x % g != 0) return false;
    std::vector<Nat> reduced;
    reduced.reserve(gens.size());
    for (const Nat& v : gens.values()) reduced.push_back(v / g);
    GeneratorSet rs(std::move(reduced));
    Nat y = x / g;
    const Nat& a = rs.least();
    std::vector<Nat> ap = detail::residue_minima(rs, a, ceiling);
    return y >= ap[static_cast<std::size_t>(y % a)];
}

// Largest integer not in the semigroup; -1 when the semigroup is all of N.
inline Int frobenius_oracle(const GeneratorSet& gens,
                            std::size_t ceiling = default_table_ceiling) {
    std::vector<Nat> ap = apery_oracle(gens, gens.least(), ceiling);
    Nat best = 0;
    for (const Nat& x : ap) best = std::max(best, x);
    return Int(best) - Int(gens.least());
}

struct GapData {
    std::vector<Nat> gaps; // ascending
    Int frobenius = -1;
    Nat genus = 0;
};

// All positive integers outside the semigroup, with their count and maximum.
inline GapData gaps_oracle(const GeneratorSet& gens,
                           std::size_t ceiling = default_table_ceiling) {
    const Nat& a = gens.least();
    std::vector<Nat> ap = apery_oracle(gens, a, ceiling);
    GapData data;
    Nat best = 0;
    for (const Nat& x : ap) {
        data.genus += x / a;
        best = std::max(best, x);
    }
    data.frobenius = Int(best) - Int(a);
    to_size(data.genus, "gap list", ceiling);
    data.gaps.reserve(static_cast<std::size_t>(data.genus));
    for (const Nat& x : ap)
        for (Nat j = x / a; j > 0; --j) data.gaps.push_back(x - j * a);
    std::sort(data.gaps.begin(), data.gaps.end());
    return data;
}

// Sums of p-th powers of the gaps for p = 0..pmax, without materializing the
// gap list. Index p of the result holds sum(gap^p); index 0 is the genus.
inline std::vector<Nat> power_sum_oracle(const GeneratorSet& gens, unsigned long pmax,
                                         std::size_t ceiling = default_table_ceiling) {
    const Nat& a = gens.least();
    std::vector<Nat> ap = apery_oracle(gens, a, ceiling);
    std::vector<Nat> sums(pmax + 1, Nat(0));
    for (const Nat& x : ap) {
        // The gaps in the class of x are x - ja for j = 1..floor(x/a),
        // walked here in ascending order starting from x mod a.
        for (Nat gap = x % a; gap < x; gap += a) {
            Nat pw = 1;
            sums[0] += 1;
            for (unsigned long p = 1; p <= pmax; ++p) {
                pw *= gap;
                sums[p] += pw;
            }
        }
    }
    return sums;
}

// Minimal generating set of the numerical semigroup spanned by `gens`.
inline GeneratorSet minimal_generators(const GeneratorSet& gens,
                                       std::size_t ceiling = default_table_ceiling) {
    const Nat& a = gens.least();
    if (a == 1) return GeneratorSet({Nat(1)});
    std::vector<Nat> ap = apery_oracle(gens, a, ceiling);
    std::size_t m = static_cast<std::size_t>(a);
    // Candidates are the multiplicity and the nonzero apery values; x fails
    // to be minimal exactly when it splits as u + v with u, v nonzero members,
    // which reduces to a check over residue pairs using class minima.
    std::vector<Nat> out;
    auto splits = [&](const Nat& x) {
        std::size_t rx = static_cast<std::size_t>(x % a);
        for (std::size_t r1 = 0; r1 < m; ++r1) {
            std::size_t r2 = (rx + m - r1) % m;
            const Nat u = (r1 == 0) ? Nat(a) : ap[r1];
            const Nat v = (r2 == 0) ? Nat(a) : ap[r2];
            if (u + v <= x) return true;
        }
        return false;
    };
    if (!splits(a)) out.push_back(a);
    for (std::size_t r = 1; r < m; ++r)
        if (!splits(ap[r])) out.push_back(ap[r]);
    return GeneratorSet(std::move(out));
}

enum class Symmetry { symmetric, pseudo_symmetric, neither };

inline const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::symmetric: return "symmetric";
        case Symmetry::pseudo_symmetric: return "pseudo-symmetric";
        default: return "neither";
    }
}

// 2g - F - 1: zero exactly for symmetric semigroups, one for pseudo-symmetric.
inline Int asymmetry_value(const Int& frobenius, const Nat& genus) {
    return 2 * Int(genus) - frobenius - 1;
}

inline Symmetry classify_symmetry(const Int& frobenius, const Nat& genus) {
    Int a = asymmetry_value(frobenius, genus);
    if (a == 0) return Symmetry::symmetric;
    if (a == 1) return Symmetry::pseudo_symmetric;
    return Symmetry::neither;
}

} // namespace semired
