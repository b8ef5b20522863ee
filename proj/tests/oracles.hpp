#pragma once

// Test-only reference implementations shared by the unit tests and the
// acceptance binary.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "hsym/analysis.hpp"
#include "hsym/verify.hpp"

namespace oracles {

using namespace hsym;

inline double draw_in(std::mt19937_64& rng, const Interval& iv) {
    std::normal_distribution<double> nd;
    if (std::isinf(iv.lo) && std::isinf(iv.hi)) return 3.0 * nd(rng);
    if (std::isinf(iv.hi)) return iv.lo + std::fabs(3.0 * nd(rng));
    if (std::isinf(iv.lo)) return iv.hi - std::fabs(3.0 * nd(rng));
    return std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
}

// independent decision: candidate rational roots by the rational root theorem,
// approximate real roots from the companion matrix, and exact sign probes at
// points separating them
inline bool oracle_positive(const RationalPoly& P, const Interval& iv) {
    if (P.is_zero()) return false;
    using boost::multiprecision::cpp_int;
    cpp_int den = 1;
    for (const auto& c : P.coeffs()) den = boost::multiprecision::lcm(den, denominator(c));
    std::vector<cpp_int> ic;
    for (const auto& c : P.coeffs()) ic.push_back(numerator(Rational(c * den)));

    std::vector<Rational> probes;
    auto divisors = [](cpp_int v) {
        std::vector<cpp_int> d;
        v = abs(v);
        for (cpp_int k = 1; k <= v; ++k)
            if (v % k == 0) d.push_back(k);
        return d;
    };
    const int low = P.low_order();
    if (low > 0) probes.emplace_back(0);
    const cpp_int c0 = ic[static_cast<std::size_t>(low)], cn = ic.back();
    for (const auto& a : divisors(c0))
        for (const auto& b : divisors(cn))
            for (int s : {1, -1}) probes.emplace_back(Rational(s * a, b));

    if (P.degree() >= 1) {
        const int d = P.degree();
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
        for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) C(i, d - 1) = -static_cast<double>(P.coeff(i) / P.lead());
        const Eigen::VectorXcd ev = C.eigenvalues();
        for (int i = 0; i < d; ++i)
            if (std::fabs(ev[i].imag()) < 1e-7) probes.push_back(to_rational(ev[i].real()));
    }
    for (double x : {iv.lo, iv.hi})
        if (std::isfinite(x)) probes.push_back(to_rational(x));
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

    std::vector<Rational> tests = probes;
    for (std::size_t i = 0; i + 1 < probes.size(); ++i) tests.push_back((probes[i] + probes[i + 1]) / 2);
    if (!probes.empty()) {
        tests.push_back(probes.front() - 1);
        tests.push_back(probes.back() + 1);
    }
    tests.emplace_back(Rational(1, 7));
    tests.emplace_back(Rational(-1, 7));
    for (const auto& t : tests) {
        const double td = static_cast<double>(t);
        if (t == 0 || !(iv.lo < td && td < iv.hi)) continue;
        if (sign(P(t)) <= 0) return false;
    }
    return true;
}

// small-coefficient H = sum c_j h_j, m <= 6, n <= 4, on one of four intervals
inline CHSCombination random_linear_combination(std::uint64_t seed, int i) {
    static const std::array<Interval, 4> intervals{Interval{}, Interval{0.0, INFINITY}, Interval{-INFINITY, 0.0},
                                                   Interval{-1.0, 2.0}};
    auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
    std::uniform_int_distribution<int> md(0, 6), nd(1, 4), cd(-3, 3), id(0, 3);
    const int m = md(rng), n = nd(rng);
    std::vector<double> c(static_cast<std::size_t>(m) + 1);
    for (auto& v : c) v = cd(rng);
    if (i % 3 == 0) c[0] = std::fabs(c[0]) + 1.0;  // bias toward positive constants
    if (m % 2 == 0 && i % 2 == 0) c[m] = std::fabs(c[m]) + 1.0;
    return CHSCombination::make_linear(c, n, intervals[id(rng)]);
}

}  // namespace oracles
