#pragma once

// Curry-Schoenberg B-splines F(x; a_1..a_n): unit-integral piecewise
// polynomial densities of degree n-2 supported on [a_1, a_n].
//
// All evaluation forms are right-continuous at the knots.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsym/numerics.hpp"

namespace hsym {

class KnotVector {
public:
    enum class Multiplicity { Distinct, Allowed };

    explicit KnotVector(std::vector<double> knots, Multiplicity mult = Multiplicity::Distinct)
        : knots_(std::move(knots)), mult_(mult) {
        const std::size_t n = knots_.size();
        if (n < 2) throw DomainError("knots: at least two knots required");
        for (double a : knots_)
            if (!std::isfinite(a)) throw DomainError("knots must be finite");
        for (std::size_t i = 1; i < n; ++i) {
            if (knots_[i] < knots_[i - 1]) throw DomainError("knots must be nondecreasing");
            if (knots_[i] == knots_[i - 1] && mult_ == Multiplicity::Distinct)
                throw DomainError("knots must be strictly increasing");
        }
        if (!(knots_.front() < knots_.back())) throw DomainError("knots must not all be equal (need a_1 < a_n)");
        std::size_t run = 1;
        strict_ = true;
        for (std::size_t i = 1; i < n; ++i) {
            run = (knots_[i] == knots_[i - 1]) ? run + 1 : 1;
            if (run > 1) strict_ = false;
            if (run >= n) throw DomainError("knot multiplicity must be less than n");
        }
    }

    KnotVector(std::initializer_list<double> knots, Multiplicity mult = Multiplicity::Distinct)
        : KnotVector(std::vector<double>(knots), mult) {}

    std::span<const double> knots() const { return knots_; }
    const std::vector<double>& vec() const { return knots_; }
    int size() const { return static_cast<int>(knots_.size()); }
    double operator[](std::size_t i) const { return knots_[i]; }
    double front() const { return knots_.front(); }
    double back() const { return knots_.back(); }
    double range() const { return knots_.back() - knots_.front(); }
    bool is_strict() const { return strict_; }
    Multiplicity multiplicity() const { return mult_; }

    /// Distinct knot values, increasing.
    std::vector<double> breakpoints() const {
        std::vector<double> bp(knots_);
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        return bp;
    }

private:
    std::vector<double> knots_;
    Multiplicity mult_;
    bool strict_ = true;
};

/// f and optionally its (n-1)-th derivative.
struct SampledFunction {
    std::function<double(double)> f;
    std::function<double(double)> derivative;  // f^{(n-1)}, may be empty
};

namespace detail {

inline void require_strict(const KnotVector& kv, const char* who) {
    if (!kv.is_strict()) throw DomainError(std::string(who) + ": knots must be strictly increasing");
}

// prod_{k != j} (a_j - a_k)
inline double node_product(std::span<const double> a, std::size_t j) {
    double p = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (k != j) p *= a[j] - a[k];
    return p;
}

inline double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace detail

/// (n-1)/2 * sum_j |a_j - x| (a_j - x)^{n-3} / prod_{k != j}(a_j - a_k), n >= 3.
/// The alternating sum cancels near and outside the support, so it is
/// accumulated in long double.
inline double eval_symmetric(double x, const KnotVector& kv) {
    detail::require_strict(kv, "eval_symmetric");
    const int n = kv.size();
    if (n < 3) throw DomainError("eval_symmetric: n = 2 has exponent -1; use eval_truncated");
    const auto a = kv.knots();
    long double s = 0.0L;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const long double d = static_cast<long double>(a[j]) - x;
        long double term = std::fabs(d);
        for (int i = 0; i < n - 3; ++i) term *= d;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (k != j) term /= static_cast<long double>(a[j]) - a[k];
        s += term;
    }
    return static_cast<double>(0.5L * (n - 1) * s);
}

/// (n-1) * sum_j (a_j - x)_+^{n-2} / prod_{k != j}(a_j - a_k).
///
/// The full sum over j vanishes identically (divided difference of a degree
/// n-2 polynomial), so the terms with a_j <= x can be used instead, negated.
/// Whichever side has fewer terms is summed.
inline double eval_truncated(double x, const KnotVector& kv) {
    detail::require_strict(kv, "eval_truncated");
    const int n = kv.size();
    const auto a = kv.knots();
    if (x < a.front() || x >= a.back()) return 0.0;
    const auto right = static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), x) - a.begin());
    const std::size_t above = a.size() - right;  // indices with a_j > x
    double s = 0.0;
    if (above <= right) {
        for (std::size_t j = right; j < a.size(); ++j)
            s += detail::ipow(a[j] - x, n - 2) / detail::node_product(a, j);
    } else {
        for (std::size_t j = 0; j < right; ++j) s -= detail::ipow(a[j] - x, n - 2) / detail::node_product(a, j);
    }
    return (n - 1) * s;
}

/// (n-1)/(2 V) * det[1, a, ..., a^{n-2}, |a-x|(a-x)^{n-3}], expanded along the
/// last column with each minor evaluated by the Vandermonde product formula
/// (long double, as for the symmetric form).
inline double eval_determinant(double x, const KnotVector& kv) {
    detail::require_strict(kv, "eval_determinant");
    const int n = kv.size();
    if (n < 3) throw DomainError("eval_determinant: requires n >= 3");
    const auto a = kv.knots();
    auto vandermonde = [&](std::size_t skip) {
        long double v = 1.0L;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == skip) continue;
            for (std::size_t k = i + 1; k < a.size(); ++k)
                if (k != skip) v *= static_cast<long double>(a[k]) - a[i];
        }
        return v;
    };
    const long double full = vandermonde(a.size());
    long double det = 0.0L;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const long double d = static_cast<long double>(a[j]) - x;
        long double last = std::fabs(d);
        for (int i = 0; i < n - 3; ++i) last *= d;
        const long double sign = ((n + static_cast<int>(j) + 1) % 2 == 0) ? 1.0L : -1.0L;  // (-1)^{n+j}, j 1-based
        det += sign * (vandermonde(j) / full) * last;
    }
    return static_cast<double>(0.5L * (n - 1) * det);
}

/// Cox-de Boor recurrence with 0/0 := 0, scaled by (n-1)/(a_n - a_1) to unit
/// integral. Accepts repeated knots.
inline double eval_recurrence(double x, const KnotVector& kv) {
    const auto t = kv.knots();
    const int n = kv.size();
    if (!(t.front() < t.back())) throw DomainError("eval_recurrence: all knots equal");
    if (x < t.front() || x >= t.back()) return 0.0;
    // order-1 pieces N_{i,1}, i = 0..n-2
    std::vector<double> N(static_cast<std::size_t>(n - 1), 0.0);
    for (int i = 0; i + 1 < n; ++i) N[i] = (t[i] <= x && x < t[i + 1]) ? 1.0 : 0.0;
    auto ratio = [](double num, double den) { return den == 0.0 ? 0.0 : num / den; };
    for (int k = 2; k <= n - 1; ++k) {
        for (int i = 0; i + k < n; ++i) {
            N[i] = ratio(x - t[i], t[i + k - 1] - t[i]) * N[i] + ratio(t[i + k] - x, t[i + k] - t[i + 1]) * N[i + 1];
        }
    }
    return (n - 1) / (t.back() - t.front()) * N[0];
}

enum class BsplineForm { Symmetric, Truncated, Determinant, Recurrence };

inline double eval_bspline(double x, const KnotVector& kv, BsplineForm form) {
    switch (form) {
        case BsplineForm::Symmetric: return eval_symmetric(x, kv);
        case BsplineForm::Truncated: return eval_truncated(x, kv);
        case BsplineForm::Determinant: return eval_determinant(x, kv);
        case BsplineForm::Recurrence: return eval_recurrence(x, kv);
    }
    return 0.0;
}

struct DividedDifference {
    double value = 0.0;         // Newton table result
    double explicit_sum = 0.0;  // sum_j f(a_j) / prod_{k != j}(a_j - a_k)
    bool paths_agree = true;
    bool ill_conditioned = false;  // min knot gap < 1e-6 * range
};

/// f[a_1, ..., a_n] by the Newton table, cross-checked against the explicit sum.
inline DividedDifference divided_difference(std::span<const double> values, const KnotVector& kv,
                                            double agreement_tol = 1e-8) {
    detail::require_strict(kv, "divided_difference");
    const auto a = kv.knots();
    if (values.size() != a.size()) throw DomainError("divided_difference: need one value per knot");
    DividedDifference out;

    double min_gap = kv.range();
    for (std::size_t i = 1; i < a.size(); ++i) min_gap = std::min(min_gap, a[i] - a[i - 1]);
    out.ill_conditioned = min_gap < 1e-6 * kv.range();

    double scale = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double term = values[j] / detail::node_product(a, j);
        out.explicit_sum += term;
        scale += std::fabs(term);
    }

    std::vector<double> table(values.begin(), values.end());
    for (std::size_t level = 1; level < a.size(); ++level)
        for (std::size_t i = a.size() - 1; i >= level; --i)
            table[i] = (table[i] - table[i - 1]) / (a[i] - a[i - level]);
    out.value = table.back();

    out.paths_agree = std::fabs(out.value - out.explicit_sum) <= agreement_tol * std::max(1.0, scale);
    return out;
}

inline DividedDifference divided_difference(const std::function<double(double)>& f, const KnotVector& kv) {
    std::vector<double> v;
    v.reserve(kv.knots().size());
    for (double a : kv.knots()) v.push_back(f(a));
    return divided_difference(std::span<const double>(v), kv);
}

namespace detail {

inline double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

}  // namespace detail

/// |f[a_1..a_n] - (1/(n-1)!) * int f^{(n-1)}(x) F(x; a) dx|.
inline double peano_check(const SampledFunction& fn, const KnotVector& kv, const QuadratureSpec& spec = {}) {
    detail::require_strict(kv, "peano_check");
    if (!fn.f || !fn.derivative) throw DomainError("peano_check: function and derivative required");
    const double lhs = divided_difference(fn.f, kv).value;
    const auto integrand = [&](double x) { return fn.derivative(x) * eval_truncated(x, kv); };
    const auto bp = kv.breakpoints();
    const auto q = integrate_piecewise(integrand, std::span<const double>(bp), {}, spec);
    const double rhs = q.value.real() / detail::factorial(kv.size() - 1);
    return std::fabs(lhs - rhs);
}

/// int x^p F(x; a) dx.
inline double moments(const KnotVector& kv, int p, const QuadratureSpec& spec = {}) {
    detail::require_strict(kv, "moments");
    if (p < 0) throw DomainError("moments: p must be nonnegative");
    const auto integrand = [&](double x) { return detail::ipow(x, p) * eval_truncated(x, kv); };
    const auto bp = kv.breakpoints();
    return integrate_piecewise(integrand, std::span<const double>(bp), {}, spec).value.real();
}

/// int_{-inf}^{x} F(t; a) dt in closed form: sum_{a_j <= x} (a_j - x)^{n-1} / prod_{k != j}(a_j - a_k).
inline double cdf(double x, const KnotVector& kv) {
    detail::require_strict(kv, "cdf");
    const auto a = kv.knots();
    const int n = kv.size();
    if (x <= a.front()) return 0.0;
    if (x >= a.back()) return 1.0;
    const auto right = static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), x) - a.begin());
    double below = 0.0, above = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double term = detail::ipow(a[j] - x, n - 1) / detail::node_product(a, j);
        (j < right ? below : above) += term;
    }
    // both sides are exact; below is better conditioned near a_1, 1 - above near a_n
    return right <= a.size() - right ? below : 1.0 - above;
}

}  // namespace hsym
