#pragma once

// Reproducible random point tuples. Each draw gets its own generator derived
// from (seed, draw index), so results do not depend on evaluation order.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hsym {

inline constexpr std::uint64_t kDefaultSeed = 20240229ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

enum class Region { All, NonNegative, NonPositive };

inline const char* to_string(Region r) {
    switch (r) {
        case Region::All: return "R^n";
        case Region::NonNegative: return "[0,inf)^n";
        case Region::NonPositive: return "(-inf,0]^n";
    }
    return "?";
}

struct TupleOptions {
    Region region = Region::All;
    double zero_probability = 0.0;  // chance that one coordinate is set to exactly 0
    bool unit_sphere = false;
    double min_separation = 1e-8;
};

/// i.i.d. standard normal (half-normal on orthants) coordinates, redrawn when
/// two coordinates are closer than min_separation.
inline std::vector<double> draw_tuple(std::mt19937_64& rng, int n, const TupleOptions& opt = {}) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(n));
    while (true) {
        for (auto& v : a) {
            v = normal(rng);
            if (opt.region == Region::NonNegative) v = std::fabs(v);
            if (opt.region == Region::NonPositive) v = -std::fabs(v);
        }
        if (opt.zero_probability > 0.0 && unit(rng) < opt.zero_probability) {
            const auto k = static_cast<std::size_t>(unit(rng) * n) % a.size();
            a[k] = 0.0;
        }
        if (opt.unit_sphere) {
            double norm = 0.0;
            for (double v : a) norm += v * v;
            norm = std::sqrt(norm);
            if (norm == 0.0) continue;
            for (auto& v : a) v /= norm;
        }
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i)
            for (std::size_t k = i + 1; k < a.size(); ++k)
                if (std::fabs(a[i] - a[k]) < opt.min_separation) {
                    ok = false;
                    break;
                }
        if (ok) return a;
    }
}

}  // namespace hsym
