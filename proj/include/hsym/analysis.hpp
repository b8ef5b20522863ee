#pragma once

// Positivity of fractional-degree h_mu (sign classification by cos(mu pi),
// Hunter-type lower bounds, imaginary-part signs, spirals for complex degree)
// and positivity of linear / product combinations of classical h_j.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hsym/chs.hpp"
#include "hsym/exact_poly.hpp"
#include "hsym/numerics.hpp"
#include "hsym/sampling.hpp"

namespace hsym {

// ---------------------------------------------------------------------------
// Sign classification of real degrees

enum class MuCase { CosPositive, CosNegative, CosZero };

inline const char* to_string(MuCase c) {
    switch (c) {
        case MuCase::CosPositive: return "CosPositive";
        case MuCase::CosNegative: return "CosNegative";
        case MuCase::CosZero: return "CosZero";
    }
    return "?";
}

/// anchor is p with |mu - 2p| < 1/2 (CosPositive), |mu - (2p-1)| < 1/2
/// (CosNegative) or |mu - p| = 1/2 (CosZero, p = mu + 1/2).
struct MuClass {
    MuCase kind = MuCase::CosPositive;
    int anchor = 0;
    double cos_mu_pi = 1.0;
};

inline constexpr double kHalfIntegerTol = 1e-12;

inline MuClass classify_mu(double mu) {
    if (!(mu > -1.0)) throw DomainError("classify_mu: requires mu > -1");
    const double twice = std::round(2.0 * mu);
    if (std::fmod(std::fabs(twice), 2.0) == 1.0 && std::fabs(mu - 0.5 * twice) < kHalfIntegerTol)
        return {MuCase::CosZero, static_cast<int>(std::lround(0.5 * twice + 0.5)), 0.0};
    const auto k = static_cast<long>(std::lround(mu));
    const double c = detail::cospi(mu);
    if (k % 2 == 0) return {MuCase::CosPositive, static_cast<int>(k / 2), c};
    return {MuCase::CosNegative, static_cast<int>((k + 1) / 2), c};
}

// ---------------------------------------------------------------------------
// Sampling reports

struct SignCheckReport {
    std::string label;
    int samples = 0;
    int skipped = 0;  // condition estimate above the threshold
    int checked = 0;
    int violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();  // min of signed value / |h|
    std::vector<double> witness;
    std::string detail;

    bool passed() const { return violations == 0; }

    void record(double margin, const std::vector<double>& pts, bool ok, const std::string& why) {
        ++checked;
        worst_margin = std::min(worst_margin, margin);
        if (!ok) {
            if (violations == 0) {
                witness = pts;
                detail = why;
            }
            ++violations;
        }
    }
};

inline constexpr double kConditionLimit = 1e8;

struct Theorem2Report {
    double mu = 0.0;
    int n = 0;
    MuClass cls;
    std::vector<SignCheckReport> regions;

    bool passed() const {
        return std::all_of(regions.begin(), regions.end(), [](const SignCheckReport& r) { return r.passed(); });
    }
};

/// Samples R^n, [0,inf)^n and (-inf,0]^n and checks the sign pattern of Re h_mu
/// implied by the sign of cos(mu pi).
inline Theorem2Report verify_theorem2(double mu, int n, int sample_count, std::uint64_t seed = kDefaultSeed,
                                      double zero_tol = 1e-9) {
    Theorem2Report rep;
    rep.mu = mu;
    rep.n = n;
    rep.cls = classify_mu(mu);
    if (n < 1) throw DomainError("verify_theorem2: n must be >= 1");
    const std::array<Region, 3> regions{Region::All, Region::NonNegative, Region::NonPositive};
    for (std::size_t r = 0; r < regions.size(); ++r) {
        SignCheckReport sr;
        sr.label = to_string(regions[r]);
        TupleOptions opt;
        opt.region = regions[r];
        opt.zero_probability = n >= 2 ? 0.1 : 0.0;
        for (int i = 0; i < sample_count; ++i) {
            auto rng = stream_for(seed, static_cast<std::uint64_t>(r) * 1000003ULL + static_cast<std::uint64_t>(i));
            const auto pts = draw_tuple(rng, n, opt);
            ++sr.samples;
            const auto h = h_fractional(mu, pts);
            const double re = h.value.real();
            const double scale = std::max(std::abs(h.value), std::numeric_limits<double>::min());
            switch (rep.cls.kind) {
                case MuCase::CosPositive:
                    if (h.condition_estimate > kConditionLimit) {
                        ++sr.skipped;
                        continue;
                    }
                    sr.record(re / scale, pts, re > 0.0, "Re h <= 0");
                    break;
                case MuCase::CosNegative:
                    if (regions[r] == Region::All) continue;
                    if (h.condition_estimate > kConditionLimit) {
                        ++sr.skipped;
                        continue;
                    }
                    if (regions[r] == Region::NonNegative)
                        sr.record(re / scale, pts, re > 0.0, "Re h <= 0 on the nonnegative orthant");
                    else
                        sr.record(-re / scale, pts, re < 0.0, "Re h >= 0 on the nonpositive orthant");
                    break;
                case MuCase::CosZero: {
                    const double tol = zero_tol * (1.0 + std::abs(h.value));
                    if (regions[r] == Region::NonPositive)
                        sr.record(-std::fabs(re), pts, std::fabs(re) < tol, "Re h != 0 on the nonpositive orthant");
                    else {
                        if (h.condition_estimate > kConditionLimit) {
                            ++sr.skipped;
                            continue;
                        }
                        sr.record(re / scale, pts, re >= -tol, "Re h < 0");
                    }
                    break;
                }
            }
        }
        rep.regions.push_back(std::move(sr));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Lower bounds on the unit sphere

namespace detail {

// (mu+n-1)(mu+n-2)...(mu+1)
inline double rising_product(double mu, int n) {
    double r = 1.0;
    for (int j = 1; j <= n - 1; ++j) r *= mu + j;
    return r;
}

inline double two_pow_factorial(int q) {  // 2^q q!
    double r = 1.0;
    for (int i = 1; i <= q; ++i) r *= 2.0 * i;
    return r;
}

}  // namespace detail

/// Lower bound for Re h_mu on a_1^2 + ... + a_n^2 = 1 when |mu - 2p| < 1/2:
/// [(mu+n-1)...(mu+1) / ((2q+n-1)...(2q+1))] cos(mu pi) / (2^q q!), where 2q is
/// the smallest even integer >= mu.
inline double hunter_lower_bound(double mu, int n) {
    const MuClass c = classify_mu(mu);
    if (c.kind != MuCase::CosPositive) throw DomainError("hunter_lower_bound: requires |mu - 2p| < 1/2");
    if (n < 1) throw DomainError("hunter_lower_bound: n must be >= 1");
    const int p = c.anchor;
    const int q = mu <= 2.0 * p ? p : p + 1;
    return detail::rising_product(mu, n) / detail::rising_product(2.0 * q, n) * c.cos_mu_pi /
           detail::two_pow_factorial(q);
}

struct HunterReport {
    double mu = 0.0;
    int n = 0;
    int samples = 0;
    int skipped = 0;
    int violations = 0;
    double bound = 0.0;
    double min_value = std::numeric_limits<double>::infinity();
    std::vector<double> argmin;
    std::vector<double> witness;

    bool passed() const { return violations == 0; }
    /// min_value / bound; close to 1 when the bound is nearly attained.
    double tightness() const { return min_value / bound; }
};

/// Re h_mu over random unit-sphere tuples against hunter_lower_bound.
inline HunterReport verify_hunter(double mu, int n, int sample_count, std::uint64_t seed = kDefaultSeed,
                                  double slack = 1e-9) {
    HunterReport rep;
    rep.mu = mu;
    rep.n = n;
    rep.bound = hunter_lower_bound(mu, n);
    const bool integer = std::floor(mu) == mu;
    TupleOptions opt;
    opt.unit_sphere = true;
    for (int i = 0; i < sample_count; ++i) {
        auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
        const auto pts = draw_tuple(rng, n, opt);
        ++rep.samples;
        double value;
        if (integer) {
            value = h_classical(static_cast<int>(mu), pts);
        } else {
            const auto h = h_fractional(mu, pts);
            if (h.condition_estimate > kConditionLimit) {
                ++rep.skipped;
                continue;
            }
            value = h.value.real();
        }
        if (value < rep.min_value) {
            rep.min_value = value;
            rep.argmin = pts;
        }
        if (value < rep.bound - slack) {
            if (rep.violations == 0) rep.witness = pts;
            ++rep.violations;
        }
    }
    return rep;
}

struct ImSignReport {
    double mu = 0.0;
    int n = 0;
    double sphere_bound = 0.0;
    SignCheckReport mixed;   // R^n: Im h >= 0, and > 0 once some coordinate is negative
    SignCheckReport sphere;  // (-inf,0]^n on the unit sphere: Im h >= sphere_bound

    bool passed() const { return mixed.passed() && sphere.passed(); }
};

/// Lower bound for Im h_mu on the unit sphere of the nonpositive orthant when
/// 2p < mu < 2p+1: [(mu+n-1)...(mu+1) / ((2p+n+1)...(2p+3))] sin(mu pi) / (2^q q!), q = p+1.
inline double im_lower_bound(double mu, int n) {
    const double p = std::floor(mu / 2.0);
    if (!(2.0 * p < mu && mu < 2.0 * p + 1.0)) throw DomainError("im_lower_bound: requires 2p < mu < 2p+1");
    const int q = static_cast<int>(p) + 1;
    return detail::rising_product(mu, n) / detail::rising_product(2.0 * q, n) * detail::sinpi(mu) /
           detail::two_pow_factorial(q);
}

inline ImSignReport check_im_sign(double mu, int n, int sample_count, std::uint64_t seed = kDefaultSeed,
                                  double tol = 1e-9) {
    ImSignReport rep;
    rep.mu = mu;
    rep.n = n;
    rep.sphere_bound = im_lower_bound(mu, n);
    rep.mixed.label = "R^n";
    rep.sphere.label = "(-inf,0]^n, unit sphere";
    for (int i = 0; i < sample_count; ++i) {
        auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
        const auto pts = draw_tuple(rng, n);
        ++rep.mixed.samples;
        const auto h = h_fractional(mu, pts);
        if (h.condition_estimate > kConditionLimit) {
            ++rep.mixed.skipped;
            continue;
        }
        const double im = h.value.imag();
        const double scale = std::max(std::abs(h.value), std::numeric_limits<double>::min());
        const bool has_negative = *std::min_element(pts.begin(), pts.end()) < 0.0;
        if (has_negative)
            rep.mixed.record(im / scale, pts, im > 0.0, "Im h <= 0 with a negative coordinate");
        else
            rep.mixed.record(0.0, pts, std::fabs(im) <= tol * (1.0 + std::abs(h.value)),
                             "Im h != 0 on the nonnegative orthant");
    }
    TupleOptions opt;
    opt.region = Region::NonPositive;
    opt.unit_sphere = true;
    for (int i = 0; i < sample_count; ++i) {
        auto rng = stream_for(seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(i));
        const auto pts = draw_tuple(rng, n, opt);
        ++rep.sphere.samples;
        const auto h = h_fractional(mu, pts);
        if (h.condition_estimate > kConditionLimit) {
            ++rep.sphere.skipped;
            continue;
        }
        const double im = h.value.imag();
        rep.sphere.record(im - rep.sphere_bound, pts, im >= rep.sphere_bound - tol, "Im h below the sine bound");
    }
    return rep;
}

/// On (-inf,0]^n, h_mu lands in the quadrant given by the signs of cos(mu pi)
/// and sin(mu pi); a zero cosine or sine pins that component to 0.
inline SignCheckReport check_negative_orthant_quadrant(double mu, int n, int sample_count,
                                                       std::uint64_t seed = kDefaultSeed, double tol = 1e-9) {
    if (!(mu > -1.0)) throw DomainError("check_negative_orthant_quadrant: requires mu > -1");
    SignCheckReport rep;
    rep.label = "(-inf,0]^n quadrant";
    const double c = detail::cospi(mu), s = detail::sinpi(mu);
    auto sgn = [](double v) { return (v > 0) - (v < 0); };
    TupleOptions opt;
    opt.region = Region::NonPositive;
    opt.zero_probability = n >= 2 ? 0.1 : 0.0;
    for (int i = 0; i < sample_count; ++i) {
        auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
        const auto pts = draw_tuple(rng, n, opt);
        ++rep.samples;
        const auto h = h_fractional(mu, pts);
        if (h.condition_estimate > kConditionLimit) {
            ++rep.skipped;
            continue;
        }
        const double zt = tol * (1.0 + std::abs(h.value));
        auto matches = [&](double v, int expected) {
            if (expected == 0) return std::fabs(v) < zt;
            return sgn(v) == expected;
        };
        const bool ok = matches(h.value.real(), sgn(c)) && matches(h.value.imag(), sgn(s));
        const double scale = std::max(std::abs(h.value), std::numeric_limits<double>::min());
        const double margin =
            std::min(sgn(c) == 0 ? 0.0 : sgn(c) * h.value.real(), sgn(s) == 0 ? 0.0 : sgn(s) * h.value.imag()) / scale;
        rep.record(margin, pts, ok, "h outside the expected quadrant");
    }
    return rep;
}

/// Four positive scalars a_k with h_z(a_k, ..., a_k) in the four open quadrants,
/// ordered (+,+), (-,+), (-,-), (+,-).
inline std::array<double, 4> spiral_witness(ComplexDegree z, int n) {
    if (z.im == 0.0) throw DomainError("spiral_witness: requires Im z != 0");
    if (!(z.re > -1.0)) throw DomainError("spiral_witness: requires Re z > -1");
    const double width = 2.0 * std::numbers::pi / std::fabs(z.im) * 1.5;
    constexpr int steps = 720;
    std::array<double, 4> out{};
    std::array<bool, 4> found{};
    for (int i = 0; i <= steps; ++i) {
        const double t = -0.5 * width + width * i / steps;
        const double a = std::exp(t);
        const cplx h = h_equal(z, a, n);
        const double re = h.real(), im = h.imag();
        if (re == 0.0 || im == 0.0) continue;
        const int quadrant = re > 0 ? (im > 0 ? 0 : 3) : (im > 0 ? 1 : 2);
        if (!found[quadrant]) {
            found[quadrant] = true;
            out[quadrant] = a;
        }
    }
    if (!std::all_of(found.begin(), found.end(), [](bool b) { return b; }))
        throw DomainError("spiral_witness: scan did not reach all four quadrants");
    return out;
}

// ---------------------------------------------------------------------------
// Combinations of classical h_j

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return lo < x && x < hi; }
};

struct CHSCombination {
    enum class Kind { Linear, Product };
    Kind kind = Kind::Linear;
    std::vector<double> linear;                // c_0 .. c_m
    std::vector<std::vector<double>> product;  // c_{jk}, j,k = 0 .. m
    int n = 1;
    Interval interval;

    static CHSCombination make_linear(std::vector<double> c, int n, Interval iv = {}) {
        CHSCombination comb;
        comb.kind = Kind::Linear;
        comb.linear = std::move(c);
        comb.n = n;
        comb.interval = iv;
        comb.validate();
        return comb;
    }

    static CHSCombination make_product(std::vector<std::vector<double>> c, int n, Interval iv = {}) {
        CHSCombination comb;
        comb.kind = Kind::Product;
        comb.product = std::move(c);
        comb.n = n;
        comb.interval = iv;
        comb.validate();
        return comb;
    }

    void validate() const {
        if (n < 1) throw DomainError("CHSCombination: n must be >= 1");
        if (!(interval.lo < interval.hi)) throw DomainError("CHSCombination: interval must be nonempty");
        if (kind == Kind::Linear && linear.empty()) throw DomainError("CHSCombination: need at least c_0");
        if (kind == Kind::Product) {
            if (product.empty()) throw DomainError("CHSCombination: empty coefficient matrix");
            for (const auto& row : product)
                if (row.size() != product.size()) throw DomainError("CHSCombination: coefficient matrix must be square");
        }
        auto finite = [](double v) { return std::isfinite(v); };
        if (!std::all_of(linear.begin(), linear.end(), finite)) throw DomainError("CHSCombination: coefficients must be finite");
        for (const auto& row : product)
            if (!std::all_of(row.begin(), row.end(), finite)) throw DomainError("CHSCombination: coefficients must be finite");
    }
};

enum class PositivityStatus { Positive, NotPositive, NotFalsified, Falsified };

inline const char* to_string(PositivityStatus s) {
    switch (s) {
        case PositivityStatus::Positive: return "Positive";
        case PositivityStatus::NotPositive: return "NotPositive";
        case PositivityStatus::NotFalsified: return "NotFalsified";
        case PositivityStatus::Falsified: return "Falsified";
    }
    return "?";
}

struct PositivityVerdict {
    PositivityStatus status = PositivityStatus::Positive;
    std::vector<double> witness;  // x for linear, (x, y) for product
    std::string witness_exact;    // rational witness of the exact decision, if any
    std::string detail;
    std::optional<double> sampled_min;
    std::optional<PositivityStatus> diagonal;
};

/// binomial(j+n-1, n-1) exactly.
inline Rational binom_exact(int j, int n) {
    Rational r = 1;
    for (int i = 1; i <= n - 1; ++i) r = r * (j + i) / i;
    return r;
}

/// P(x) = H(x, ..., x) = sum_j binomial(j+n-1, n-1) c_j x^j, exactly.
inline RationalPoly reduce_linear(const CHSCombination& comb) {
    if (comb.kind != CHSCombination::Kind::Linear) throw DomainError("reduce_linear: linear combination required");
    std::vector<Rational> c;
    for (std::size_t j = 0; j < comb.linear.size(); ++j)
        c.push_back(binom_exact(static_cast<int>(j), comb.n) * to_rational(comb.linear[j]));
    return RationalPoly(std::move(c));
}

/// Coefficients of P(x, y) = sum c_{jk} binomial(j+n-1,n-1) binomial(k+n-1,n-1) x^j y^k.
inline std::vector<std::vector<double>> reduce_product(const CHSCombination& comb) {
    if (comb.kind != CHSCombination::Kind::Product) throw DomainError("reduce_product: product combination required");
    const std::size_t m = comb.product.size();
    std::vector<std::vector<double>> p(m, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            p[j][k] = comb.product[j][k] * binom_shifted(double(j), comb.n).real() *
                      binom_shifted(double(k), comb.n).real();
    return p;
}

/// Diagonal P(a, a) = H(a, ..., a) of a product combination, exactly.
inline RationalPoly reduce_product_diagonal(const CHSCombination& comb) {
    if (comb.kind != CHSCombination::Kind::Product) throw DomainError("reduce_product_diagonal: product combination required");
    const std::size_t m = comb.product.size();
    std::vector<Rational> c(2 * m, Rational(0));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            c[j + k] += to_rational(comb.product[j][k]) * binom_exact(static_cast<int>(j), comb.n) *
                        binom_exact(static_cast<int>(k), comb.n);
    return RationalPoly(std::move(c));
}

inline double eval_bivariate(const std::vector<std::vector<double>>& p, double x, double y) {
    double acc = 0.0;
    for (auto j = p.size(); j-- > 0;) {
        double row = 0.0;
        for (auto k = p[j].size(); k-- > 0;) row = row * y + p[j][k];
        acc = acc * x + row;
    }
    return acc;
}

namespace detail {

inline Bound to_bound(double v) {
    if (v == -std::numeric_limits<double>::infinity()) return Bound::neg_inf();
    if (v == std::numeric_limits<double>::infinity()) return Bound::pos_inf();
    return Bound::finite(to_rational(v));
}

inline Rational point_between(const Bound& lo, const Bound& hi) {
    if (lo.is_finite() && hi.is_finite()) return (*lo.value + *hi.value) / 2;
    if (lo.is_finite()) return *lo.value + 1;
    if (hi.is_finite()) return *hi.value - 1;
    return Rational(1);
}

inline PositivityVerdict not_positive(const Rational& x, std::string why) {
    PositivityVerdict v;
    v.status = PositivityStatus::NotPositive;
    v.witness = {static_cast<double>(x)};
    v.witness_exact = x.str();
    v.detail = std::move(why);
    return v;
}

}  // namespace detail

/// Exact decision of P(x) > 0 for all x in (lo, hi) \ {0}.
inline PositivityVerdict decide_positive(const RationalPoly& P, const Interval& iv) {
    if (!(iv.lo < iv.hi)) throw DomainError("decide_positive: empty interval");
    std::vector<std::pair<Bound, Bound>> parts;
    if (iv.lo < 0.0 && 0.0 < iv.hi) {
        parts.emplace_back(detail::to_bound(iv.lo), Bound::finite(0));
        parts.emplace_back(Bound::finite(0), detail::to_bound(iv.hi));
    } else {
        parts.emplace_back(detail::to_bound(iv.lo), detail::to_bound(iv.hi));
    }
    if (P.is_zero()) return detail::not_positive(detail::point_between(parts[0].first, parts[0].second), "P is identically zero");

    for (const auto& [lo, hi] : parts) {
        auto roots = isolate_roots(P, lo, hi);
        // shrink isolating intervals off the piece boundary so both sides get sampled
        const RationalPoly sq_part = squarefree_part(P);
        for (auto& r : roots)
            while (!r.exact && ((lo.is_finite() && r.lo == *lo.value) || (hi.is_finite() && r.hi == *hi.value)))
                refine(sq_part, r, (r.hi - r.lo) / 2);
        if (roots.empty()) {
            const Rational t = detail::point_between(lo, hi);
            if (sign(P(t)) > 0) continue;
            return detail::not_positive(t, "P < 0 throughout a root-free piece");
        }
        // P has constant sign between consecutive roots; sample every gap
        std::vector<Rational> events;
        for (const auto& r : roots) {
            events.push_back(r.lo);
            if (!r.exact) events.push_back(r.hi);
        }
        std::vector<Rational> samples;
        for (const auto& r : roots)
            if (!r.exact) {
                samples.push_back(r.lo);
                samples.push_back(r.hi);
            }
        for (std::size_t i = 0; i + 1 < events.size(); ++i) samples.push_back((events[i] + events[i + 1]) / 2);
        samples.push_back(detail::point_between(lo, Bound::finite(events.front())));
        samples.push_back(detail::point_between(Bound::finite(events.back()), hi));
        for (const auto& s : samples) {
            if ((lo.is_finite() && s <= *lo.value) || (hi.is_finite() && s >= *hi.value)) continue;
            if (sign(P(s)) < 0) return detail::not_positive(s, "P < 0 at the witness");
        }
        // only roots of even multiplicity: P touches zero
        IsolatedRoot r = roots.front();
        if (r.exact) return detail::not_positive(r.lo, "P = 0 at the witness");
        refine(sq_part, r, Rational(1) / Rational(boost::multiprecision::cpp_int(1) << 64));
        if (r.exact) return detail::not_positive(r.lo, "P = 0 at the witness");
        return detail::not_positive((r.lo + r.hi) / 2, "P touches zero at an irrational point; witness within 2^-64 of it");
    }
    PositivityVerdict v;
    v.status = PositivityStatus::Positive;
    v.detail = "no sign change and no zero of P on the interval";
    return v;
}

/// H = sum c_j h_j is positive on (r,s)^n \ {0} iff P(x) = H(x,...,x) > 0 on (r,s) \ {0}.
inline PositivityVerdict theorem3_check(const CHSCombination& comb) {
    const RationalPoly P = reduce_linear(comb);
    PositivityVerdict v = decide_positive(P, comb.interval);
    v.detail = "P(x) = " + P.to_string() + "; " + v.detail;
    return v;
}

struct FalsificationOptions {
    int grid = 201;
    int refine_iters = 50;
    std::uint64_t seed = kDefaultSeed;
};

namespace detail {

// (-1,1) -> interval, monotone
inline double uncompactify(double t, const Interval& iv) {
    const bool lo_inf = std::isinf(iv.lo), hi_inf = std::isinf(iv.hi);
    const double half_pi = 0.5 * std::numbers::pi;
    if (!lo_inf && !hi_inf) return iv.lo + (iv.hi - iv.lo) * 0.5 * (t + 1.0);
    if (lo_inf && hi_inf) return std::tan(half_pi * t);
    if (!lo_inf) return iv.lo + std::tan(half_pi * 0.5 * (t + 1.0));
    return iv.hi - std::tan(half_pi * 0.5 * (1.0 - t));
}

}  // namespace detail

/// Searches (r,s)^2 for P(x, y) < 0 (grid on a compactified square plus local
/// pattern-search refinement), then decides the diagonal exactly.
/// NotFalsified is not a proof of P >= 0.
inline PositivityVerdict theorem4_check(const CHSCombination& comb, const FalsificationOptions& opt = {}) {
    const auto P = reduce_product(comb);
    const Interval iv = comb.interval;
    auto value_at = [&](double s, double t) -> std::optional<double> {
        if (!(s > -1.0 && s < 1.0 && t > -1.0 && t < 1.0)) return std::nullopt;
        const double x = detail::uncompactify(s, iv), y = detail::uncompactify(t, iv);
        if (!iv.contains(x) || !iv.contains(y) || (x == 0.0 && y == 0.0)) return std::nullopt;
        const double v = eval_bivariate(P, x, y);
        if (!std::isfinite(v)) return std::nullopt;
        return v;
    };

    struct Candidate {
        double value, s, t;
    };
    std::vector<Candidate> grid;
    const int g = std::max(opt.grid, 2);
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k) {
            const double s = -1.0 + (2.0 * i + 1.0) / g, t = -1.0 + (2.0 * k + 1.0) / g;
            if (auto v = value_at(s, t)) grid.push_back({*v, s, t});
        }
    std::sort(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

    std::vector<Candidate> starts(grid.begin(), grid.begin() + std::min<std::size_t>(5, grid.size()));
    auto rng = stream_for(opt.seed, 0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const double s = uni(rng), t = uni(rng);
        if (auto v = value_at(s, t)) starts.push_back({*v, s, t});
    }

    Candidate best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (auto c : starts) {
        double step = 1.0 / g;
        for (int it = 0; it < opt.refine_iters; ++it) {
            bool improved = false;
            const std::array<std::pair<double, double>, 8> dirs{
                {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
            for (auto [ds, dt] : dirs) {
                if (auto v = value_at(c.s + step * ds, c.t + step * dt); v && *v < c.value) {
                    c = {*v, c.s + step * ds, c.t + step * dt};
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        if (c.value < best.value) best = c;
    }

    PositivityVerdict v;
    v.sampled_min = best.value;
    const double bx = detail::uncompactify(best.s, iv), by = detail::uncompactify(best.t, iv);
    const auto diag = decide_positive(reduce_product_diagonal(comb), iv);
    v.diagonal = diag.status;
    if (best.value < 0.0) {
        // report the negative point closest to the origin; descent tends to run off to infinity
        double wx = bx, wy = by;
        auto radius = [](double x, double y) { return std::max(std::fabs(x), std::fabs(y)); };
        for (const auto& c : grid) {
            if (c.value >= 0.0) break;
            const double x = detail::uncompactify(c.s, iv), y = detail::uncompactify(c.t, iv);
            if (radius(x, y) < radius(wx, wy)) wx = x, wy = y;
        }
        v.status = PositivityStatus::Falsified;
        v.witness = {wx, wy};
        v.detail = "P(x,y) < 0 at the witness; the product criterion gives nothing";
    } else if (diag.status != PositivityStatus::Positive) {
        v.status = PositivityStatus::NotPositive;
        v.witness = diag.witness;
        v.witness_exact = diag.witness_exact;
        v.detail = "diagonal H(a,...,a) fails: " + diag.detail;
    } else {
        v.status = PositivityStatus::NotFalsified;
        v.detail = "no negative value of P found by sampling (not a proof); diagonal positive";
    }
    return v;
}

/// H at pts through h_classical.
inline double eval_combination(const CHSCombination& comb, std::span<const double> pts) {
    if (comb.kind == CHSCombination::Kind::Linear) {
        double acc = 0.0;
        for (std::size_t j = 0; j < comb.linear.size(); ++j)
            if (comb.linear[j] != 0.0) acc += comb.linear[j] * h_classical(static_cast<int>(j), pts);
        return acc;
    }
    const std::size_t m = comb.product.size();
    std::vector<double> h(m);
    for (std::size_t j = 0; j < m; ++j) h[j] = h_classical(static_cast<int>(j), pts);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) acc += comb.product[j][k] * h[j] * h[k];
    return acc;
}

}  // namespace hsym
