#pragma once

// Branch-consistent real-base powers, shifted binomial coefficients and
// piecewise quadrature (Gauss-Legendre with adaptive bisection, tanh-sinh on
// pieces whose endpoints carry an integrable algebraic singularity).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsym {

using cplx = std::complex<double>;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// Complex degree z = re + i*im.
struct ComplexDegree {
    double re = 0.0;
    double im = 0.0;

    constexpr ComplexDegree() = default;
    constexpr ComplexDegree(double r, double i = 0.0) : re(r), im(i) {}
    ComplexDegree(cplx z) : re(z.real()), im(z.imag()) {}

    cplx value() const { return {re, im}; }
    bool is_real() const { return im == 0.0; }
    bool is_integer() const { return im == 0.0 && std::floor(re) == re; }
    bool is_nonnegative_integer() const { return is_integer() && re >= 0.0; }

    friend ComplexDegree operator+(ComplexDegree z, double s) { return {z.re + s, z.im}; }
    friend ComplexDegree operator-(ComplexDegree z) { return {-z.re, -z.im}; }
};

namespace detail {

// cos(pi t) and sin(pi t) with exact values at multiples of 1/2.
inline double cospi(double t) {
    double r = std::fmod(t, 2.0);
    if (r < 0) r += 2.0;
    if (r == 0.0) return 1.0;
    if (r == 0.5 || r == 1.5) return 0.0;
    if (r == 1.0) return -1.0;
    return std::cos(std::numbers::pi * r);
}

inline double sinpi(double t) {
    double r = std::fmod(t, 2.0);
    if (r < 0) r += 2.0;
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r == 0.5) return 1.0;
    if (r == 1.5) return -1.0;
    return std::sin(std::numbers::pi * r);
}

}  // namespace detail

/// x^z on real x with log x = ln|x| + i*pi for x < 0 (cut along the negative
/// imaginary axis, log 1 = 0). 0^z = 0 when Re z > 0.
inline cplx branch_power(double x, ComplexDegree z) {
    if (x == 0.0) {
        if (z.re > 0.0) return {0.0, 0.0};
        throw DomainError("branch_power: 0^z requires Re z > 0");
    }
    const double mag = std::fabs(x);
    if (x > 0.0) {
        if (z.is_real()) return {std::pow(mag, z.re), 0.0};
        return std::exp(z.value() * std::log(mag));
    }
    // |x|^z * e^{i pi z}, with e^{i pi (mu + i nu)} = e^{-pi nu} (cos pi mu + i sin pi mu)
    const cplx modulus_part = z.is_real() ? cplx(std::pow(mag, z.re), 0.0) : std::exp(z.value() * std::log(mag));
    const double damp = std::exp(-std::numbers::pi * z.im);
    const cplx phase(damp * detail::cospi(z.re), damp * detail::sinpi(z.re));
    return modulus_part * phase;
}

/// (z+n-1)(z+n-2)...(z+1)/(n-1)!, i.e. binomial(z+n-1, n-1).
inline cplx binom_shifted(ComplexDegree z, int n) {
    if (n < 1) throw DomainError("binom_shifted: n must be >= 1");
    cplx acc(1.0, 0.0);
    for (int j = 1; j <= n - 1; ++j) acc *= (z.value() + double(j)) / double(j);
    return acc;
}

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_refinement_level = 12;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw DomainError("QuadratureSpec: tolerances must be strictly positive");
        if (max_refinement_level < 1) throw DomainError("QuadratureSpec: max_refinement_level must be >= 1");
    }
};

struct QuadratureResult {
    cplx value;
    double error_estimate = 0.0;
    int evaluations = 0;
};

namespace detail {

struct GaussRule {
    static constexpr int order = 15;
    std::array<double, order> nodes{};
    std::array<double, order> weights{};
};

// Nodes/weights on [-1,1] by Newton iteration on P_15.
inline const GaussRule& gauss_legendre_15() {
    static const GaussRule rule = [] {
        GaussRule g;
        constexpr int n = GaussRule::order;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            g.nodes[i] = x;
            g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return g;
    }();
    return rule;
}

template <class F>
cplx gauss_piece(const F& f, double a, double b, int& evals) {
    const auto& g = gauss_legendre_15();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc(0.0, 0.0);
    for (int i = 0; i < GaussRule::order; ++i) acc += g.weights[i] * cplx(f(mid + half * g.nodes[i]));
    evals += GaussRule::order;
    return acc * half;
}

template <class F>
struct AdaptiveGauss {
    const F& f;
    double tol_density;  // tolerance per unit length
    int max_level;
    int evals = 0;
    bool converged = true;

    cplx run(double a, double b, cplx whole, int level, double& err) {
        const double mid = 0.5 * (a + b);
        const cplx left = gauss_piece(f, a, mid, evals);
        const cplx right = gauss_piece(f, mid, b, evals);
        const cplx sum = left + right;
        const double diff = std::abs(sum - whole);
        const double local_tol = tol_density * (b - a);
        if (diff <= local_tol) {
            err += diff;
            return sum;
        }
        if (level >= max_level) {
            converged = false;
            err += diff;
            return sum;
        }
        return run(a, mid, left, level + 1, err) + run(mid, b, right, level + 1, err);
    }
};

// tanh-sinh on [a,b]; abscissae are measured from the nearer endpoint so that
// x - a (or b - x) keeps full relative precision near the ends.
template <class F>
cplx tanh_sinh_piece(const F& f, double a, double b, const QuadratureSpec& spec, double& err, int& evals,
                     bool& converged) {
    constexpr double t_max = 6.1;
    const double len = b - a;
    const double half_pi = 0.5 * std::numbers::pi;
    auto term = [&](double t) -> cplx {
        const double u = half_pi * std::sinh(t);
        const double w = half_pi * std::cosh(t) / (std::cosh(u) * std::cosh(u));  // d/dt of tanh(u), halved below
        // sigma = distance from nearer endpoint as a fraction of len
        const double sigma = 1.0 / (1.0 + std::exp(2.0 * std::fabs(u)));
        if (sigma <= 0.0) return {0.0, 0.0};
        const double x = (t < 0) ? a + len * sigma : b - len * sigma;
        if (x <= a || x >= b) return {0.0, 0.0};
        ++evals;
        return cplx(f(x)) * (0.5 * len * w);
    };

    double h = 1.0;
    cplx sum = term(0.0);
    for (double t = h; t <= t_max; t += h) sum += term(t) + term(-t);
    cplx estimate = sum * h;
    for (int level = 1; level <= spec.max_refinement_level; ++level) {
        h *= 0.5;
        cplx added(0.0, 0.0);
        for (double t = h; t <= t_max; t += 2.0 * h) added += term(t) + term(-t);
        sum += added;
        const cplx next = sum * h;
        const double diff = std::abs(next - estimate);
        estimate = next;
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(estimate));
        if (level >= 3 && diff <= tol) {
            err += std::max(diff, 16.0 * std::numeric_limits<double>::epsilon() * std::abs(estimate));
            return estimate;
        }
    }
    converged = false;
    err += std::abs(estimate) * spec.rel_tol * 10.0;
    return estimate;
}

}  // namespace detail

/// Sum of per-piece integrals over [breakpoints[i], breakpoints[i+1]].
/// Pieces touching a breakpoint listed in singular_endpoints are integrated by
/// tanh-sinh; all others by adaptive 15-point Gauss-Legendre.
template <class F>
QuadratureResult integrate_piecewise(const F& f, std::span<const double> breakpoints,
                                     std::span<const double> singular_endpoints = {},
                                     const QuadratureSpec& spec = {}) {
    spec.validate();
    if (breakpoints.size() < 2) throw DomainError("integrate_piecewise: need at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw DomainError("integrate_piecewise: breakpoints must be strictly increasing");

    auto is_singular = [&](double x) {
        return std::find(singular_endpoints.begin(), singular_endpoints.end(), x) != singular_endpoints.end();
    };

    QuadratureResult out;
    bool converged = true;
    const double total_len = breakpoints.back() - breakpoints.front();

    // coarse pass fixes the absolute tolerance scale for the adaptive pieces
    int scratch = 0;
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        if (!is_singular(a) && !is_singular(b)) scale += std::abs(detail::gauss_piece(f, a, b, scratch));
    }

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        double err = 0.0;
        if (is_singular(a) || is_singular(b)) {
            out.value += detail::tanh_sinh_piece(f, a, b, spec, err, out.evaluations, converged);
        } else {
            const double tol = std::max(spec.abs_tol, spec.rel_tol * scale);
            detail::AdaptiveGauss<F> ag{f, tol / total_len, spec.max_refinement_level};
            const cplx whole = detail::gauss_piece(f, a, b, ag.evals);
            const cplx v = ag.run(a, b, whole, 1, err);
            out.value += v;
            out.evaluations += ag.evals;
            converged = converged && ag.converged;
            err = std::max(err, 16.0 * std::numeric_limits<double>::epsilon() * std::abs(v));
        }
        out.error_estimate += err;
    }
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    if (!converged && out.error_estimate > target)
        throw QuadratureError("integrate_piecewise: tolerance not met at max refinement level", out.error_estimate);
    return out;
}

template <class F>
QuadratureResult integrate_piecewise(const F& f, std::initializer_list<double> breakpoints,
                                     std::initializer_list<double> singular_endpoints = {},
                                     const QuadratureSpec& spec = {}) {
    const std::vector<double> bp(breakpoints), se(singular_endpoints);
    return integrate_piecewise(f, std::span<const double>(bp), std::span<const double>(se), spec);
}

}  // namespace hsym
