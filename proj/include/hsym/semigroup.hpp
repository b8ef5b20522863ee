#pragma once

// Factorization lengths in numerical semigroups <m_1, ..., m_n> and their
// limiting distribution F(x; 1/m_n, ..., 1/m_1).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hsym/bspline.hpp"
#include "hsym/numerics.hpp"

namespace hsym {

class GeneratorSet {
public:
    explicit GeneratorSet(std::vector<long> gens) : gens_(std::move(gens)) {
        if (gens_.size() < 2) throw DomainError("generators: need at least two");
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i] <= 0) throw DomainError("generators must be positive");
            if (i > 0 && gens_[i] <= gens_[i - 1]) throw DomainError("generators must be strictly increasing");
        }
        long g = 0;
        for (long m : gens_) g = std::gcd(g, m);
        if (g != 1) throw DomainError("gcd must be 1");
    }
    GeneratorSet(std::initializer_list<long> gens) : GeneratorSet(std::vector<long>(gens)) {}

    const std::vector<long>& gens() const { return gens_; }
    int size() const { return static_cast<int>(gens_.size()); }
    long smallest() const { return gens_.front(); }
    long largest() const { return gens_.back(); }

private:
    std::vector<long> gens_;
};

/// Multiset of lengths x_1 + ... + x_n over all m = x_1 m_1 + ... + x_n m_n.
struct LengthDistribution {
    long element = 0;
    std::map<long, std::uint64_t> counts;
    std::uint64_t total = 0;

    bool empty() const { return total == 0; }
};

struct SemigroupLimits {
    long max_element = 100000;
    std::uint64_t max_table_entries = 64'000'000;
};

/// Exact length counts by dynamic programming over N[value][length], adding
/// one generator at a time. Row v stores only lengths in [v/m_n, v/m_1].
inline LengthDistribution length_multiset(long m, const GeneratorSet& gs, const SemigroupLimits& lim = {}) {
    if (m < 0) throw DomainError("length_multiset: m must be nonnegative");
    if (m > lim.max_element)
        throw CapacityError("length_multiset: m = " + std::to_string(m) + " exceeds the cap " + std::to_string(lim.max_element));
    const auto& g = gs.gens();
    const long lo_gen = g.front(), hi_gen = g.back();
    // rows for values 0..m; row v covers lengths [v / hi_gen, v / lo_gen]
    std::vector<long> first(static_cast<std::size_t>(m) + 1);
    std::vector<std::size_t> offset(static_cast<std::size_t>(m) + 2, 0);
    for (long v = 0; v <= m; ++v) {
        first[v] = v / hi_gen;
        offset[v + 1] = offset[v] + static_cast<std::size_t>(v / lo_gen - first[v] + 1);
    }
    if (offset.back() > lim.max_table_entries)
        throw CapacityError("length_multiset: table of " + std::to_string(offset.back()) + " entries exceeds the cap");
    std::vector<std::uint64_t> table(offset.back(), 0);
    auto at = [&](long v, long len) -> std::uint64_t* {
        if (len < first[v] || len > v / lo_gen) return nullptr;
        return &table[offset[v] + static_cast<std::size_t>(len - first[v])];
    };
    *at(0, 0) = 1;
    for (long gen : g) {
        // unbounded use of gen: N[v][l] += N[v - gen][l - 1], v ascending
        for (long v = gen; v <= m; ++v) {
            const long lmax = v / lo_gen;
            for (long len = std::max(first[v], 1L); len <= lmax; ++len) {
                const std::uint64_t* src = at(v - gen, len - 1);
                if (src && *src) *at(v, len) += *src;
            }
        }
    }
    LengthDistribution out;
    out.element = m;
    for (long len = first[m]; len <= m / lo_gen; ++len) {
        const std::uint64_t c = *at(m, len);
        if (c) {
            out.counts[len] = c;
            out.total += c;
        }
    }
    return out;
}

/// Knots (1/m_n, ..., 1/m_1) of the limiting length density.
inline KnotVector limit_density(const GeneratorSet& gs) {
    std::vector<double> k;
    for (auto it = gs.gens().rbegin(); it != gs.gens().rend(); ++it) k.push_back(1.0 / double(*it));
    return KnotVector(std::move(k));
}

/// sup |empirical CDF of l/m - limit CDF|, taken over both sides of every atom.
inline double compare_to_limit(const LengthDistribution& dist, const GeneratorSet& gs) {
    if (dist.empty()) throw DomainError("compare_to_limit: empty distribution");
    const KnotVector kv = limit_density(gs);
    const double total = static_cast<double>(dist.total);
    double below = 0.0, sup = 0.0;
    for (const auto& [len, count] : dist.counts) {
        const double u = static_cast<double>(len) / static_cast<double>(dist.element);
        const double limit = cdf(u, kv);
        sup = std::max(sup, std::fabs(below / total - limit));
        below += static_cast<double>(count);
        sup = std::max(sup, std::fabs(below / total - limit));
    }
    return sup;
}

inline double compare_to_limit(long m, const GeneratorSet& gs, const SemigroupLimits& lim = {}) {
    const auto dist = length_multiset(m, gs, lim);
    if (dist.empty()) throw DomainError("compare_to_limit: m = " + std::to_string(m) + " is not representable");
    return compare_to_limit(dist, gs);
}

}  // namespace hsym
