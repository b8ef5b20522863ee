#pragma once

// Randomized identity suites shared by the command-line tool and the tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hsym/analysis.hpp"
#include "hsym/bspline.hpp"
#include "hsym/chs.hpp"
#include "hsym/sampling.hpp"
#include "hsym/schur.hpp"

namespace hsym {

struct SuiteCase {
    std::string label;
    int samples = 0;
    int skipped = 0;
    int violations = 0;
    double worst = 0.0;  // largest residual / tolerance ratio seen
    std::string witness;

    bool passed() const { return violations == 0; }
    double skipped_fraction() const { return samples ? double(skipped) / samples : 0.0; }

    void record(double residual, double tol, const std::string& where) {
        const double ratio = residual / tol;
        if (ratio > worst || std::isnan(ratio)) worst = std::isnan(ratio) ? INFINITY : ratio;
        if (!(residual <= tol)) {
            if (violations == 0) witness = where;
            ++violations;
        }
    }
};

namespace detail {

inline std::string tuple_string(std::span<const double> v) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", v[i]);
        s += (i ? "," : "") + std::string(buf);
    }
    return s + ")";
}

}  // namespace detail

/// h_fractional against the integral representation for random (z, knots):
/// Re z in (-0.9, 4), Im z in {0, 1, -1}, n in 2..6, knots i.i.d. normal.
inline SuiteCase verify_theorem1(int sample_count, std::uint64_t seed = kDefaultSeed) {
    SuiteCase c;
    c.label = "theorem1";
    for (int i = 0; i < sample_count; ++i) {
        auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<int> nd(2, 6), imd(-1, 1);
        std::uniform_real_distribution<double> red(-0.9, 4.0);
        const int n = nd(rng);
        const ComplexDegree z(red(rng), double(imd(rng)));
        auto pts = draw_tuple(rng, n);
        std::sort(pts.begin(), pts.end());
        ++c.samples;
        const auto h = h_fractional(z, pts);
        if (h.condition_estimate > kConditionLimit) {
            ++c.skipped;
            continue;
        }
        const std::string where = "z=" + std::to_string(z.re) + (z.im >= 0 ? "+" : "") + std::to_string(z.im) +
                                  "i knots=" + detail::tuple_string(pts);
        try {
            const cplx q = h_via_integral(z, KnotVector(pts));
            c.record(std::abs(h.value - q), 1e-7 * (1.0 + std::abs(h.value)), where);
        } catch (const QuadratureError& e) {
            c.record(INFINITY, 1.0, where + " quadrature: " + e.what());
        }
    }
    return c;
}

/// Peano residuals for x^3, exp and a constant on the given knots.
inline std::vector<SuiteCase> verify_peano(const KnotVector& kv) {
    const int k = kv.size() - 1;  // derivative order
    auto cube_deriv = [k](double x) {
        if (k > 3) return 0.0;
        double coef = 1.0;
        for (int i = 0; i < k; ++i) coef *= 3 - i;
        return coef * detail::ipow(x, 3 - k);
    };
    const std::vector<std::pair<std::string, SampledFunction>> fns{
        {"x^3", {[](double x) { return x * x * x; }, cube_deriv}},
        {"exp", {[](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }}},
        {"const", {[](double) { return 2.5; }, [](double) { return 0.0; }}},
    };
    std::vector<SuiteCase> out;
    for (const auto& [name, fn] : fns) {
        SuiteCase c;
        c.label = "peano " + name;
        c.samples = 1;
        c.record(peano_check(fn, kv), 1e-8, "knots=" + detail::tuple_string(kv.knots()));
        out.push_back(c);
    }
    return out;
}

/// h_{-z} through Schur polynomials for z = 1..2n on random nonzero points of both signs.
inline std::vector<SuiteCase> verify_ex1(int n, int sample_count, std::uint64_t seed = kDefaultSeed) {
    std::vector<SuiteCase> out;
    for (int z = 1; z <= 2 * n; ++z) {
        SuiteCase c;
        c.label = "ex1 n=" + std::to_string(n) + " z=" + std::to_string(z);
        for (int i = 0; i < sample_count; ++i) {
            auto rng = stream_for(seed, static_cast<std::uint64_t>(z) * 1000003ULL + static_cast<std::uint64_t>(i));
            const auto pts = draw_tuple(rng, n);
            ++c.samples;
            const auto r = check_prop_negative(z, pts);
            const double scale = std::max(std::abs(r.lhs), std::fabs(r.rhs));
            c.record(r.residual, 1e-9 * (1.0 + scale), "points=" + detail::tuple_string(pts));
        }
        out.push_back(c);
    }
    return out;
}

/// h_{p/q} through a Schur polynomial at q-th roots, random positive points.
inline SuiteCase verify_ex2(int p, int q, int n, int sample_count, std::uint64_t seed = kDefaultSeed) {
    SuiteCase c;
    c.label = "ex2 p=" + std::to_string(p) + " q=" + std::to_string(q) + " n=" + std::to_string(n);
    TupleOptions opt;
    opt.region = Region::NonNegative;
    for (int i = 0; i < sample_count; ++i) {
        auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
        auto pts = draw_tuple(rng, n, opt);
        ++c.samples;
        if (*std::min_element(pts.begin(), pts.end()) <= 0.0) {
            ++c.skipped;
            continue;
        }
        const auto r = check_prop_rational(p, q, pts);
        const double scale = std::max(std::abs(r.lhs), std::fabs(r.rhs));
        c.record(r.residual, 1e-7 * (1.0 + scale), "points=" + detail::tuple_string(pts));
    }
    return c;
}

}  // namespace hsym
