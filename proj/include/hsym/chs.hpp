#pragma once

// Complete homogeneous symmetric polynomials h_p for integer p, and their
// fractional/complex-degree extension h_z through the bialternant
// (equivalently, the divided difference of x -> x^{z+n-1}).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "hsym/bspline.hpp"
#include "hsym/numerics.hpp"

namespace hsym {

enum class CHSPath { MonomialSum, Recurrence, Bialternant, Integral, AllEqualFormula };

inline const char* to_string(CHSPath p) {
    switch (p) {
        case CHSPath::MonomialSum: return "monomial";
        case CHSPath::Recurrence: return "recurrence";
        case CHSPath::Bialternant: return "bialternant";
        case CHSPath::Integral: return "integral";
        case CHSPath::AllEqualFormula: return "all-equal";
    }
    return "?";
}

struct CHSResult {
    cplx value;
    CHSPath path = CHSPath::Bialternant;
    double condition_estimate = 1.0;
};

/// Number of degree-p monomials in n variables, binomial(p+n-1, n-1), as a double.
inline double monomial_count(int p, int n) {
    if (n <= 0) return p == 0 ? 1.0 : 0.0;
    double c = 1.0;
    for (int j = 1; j <= n - 1; ++j) c = c * (p + j) / j;
    return std::round(c);
}

/// Sum over all multisets j_1 <= ... <= j_p of a_{j_1} ... a_{j_p}.
inline double h_classical_monomial(int p, std::span<const double> pts) {
    if (p < 0) throw DomainError("h_classical: p must be nonnegative");
    if (p == 0) return 1.0;
    const std::size_t n = pts.size();
    if (n == 0) return 0.0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
    double total = 0.0;
    while (true) {
        double term = 1.0;
        for (std::size_t i : idx) term *= pts[i];
        total += term;
        // next nondecreasing index tuple
        int k = p - 1;
        while (k >= 0 && idx[k] == n - 1) --k;
        if (k < 0) break;
        const std::size_t v = idx[k] + 1;
        for (int i = k; i < p; ++i) idx[i] = v;
    }
    return total;
}

/// h_p(a_1..a_k) = h_p(a_1..a_{k-1}) + a_k h_{p-1}(a_1..a_k).
inline double h_classical_recurrence(int p, std::span<const double> pts) {
    if (p < 0) throw DomainError("h_classical: p must be nonnegative");
    std::vector<double> h(static_cast<std::size_t>(p) + 1, 0.0);
    h[0] = 1.0;
    for (double a : pts)
        for (int q = 1; q <= p; ++q) h[q] += a * h[q - 1];
    return h[p];
}

inline constexpr double kMonomialLimit = 1e6;

/// Classical h_p. Enumerates monomials when there are at most 1e6 of them,
/// otherwise uses the recurrence.
inline double h_classical(int p, std::span<const double> pts) {
    if (monomial_count(p, static_cast<int>(pts.size())) <= kMonomialLimit) return h_classical_monomial(p, pts);
    return h_classical_recurrence(p, pts);
}

inline double h_classical(int p, std::initializer_list<double> pts) {
    return h_classical(p, std::span<const double>(pts.begin(), pts.size()));
}

namespace detail {

inline void validate_fractional_points(std::span<const double> pts) {
    if (pts.empty()) throw DomainError("h_fractional: need at least one point");
    int zeros = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!std::isfinite(pts[i])) throw DomainError("h_fractional: points must be finite");
        if (pts[i] == 0.0) ++zeros;
        for (std::size_t k = i + 1; k < pts.size(); ++k)
            if (pts[i] == pts[k]) throw DomainError("h_fractional: points must be pairwise distinct");
    }
    if (zeros > 1) throw DomainError("h_fractional: at most one point may be zero");
}

}  // namespace detail

/// h_z(a_1..a_n) = sum_j a_j^{z+n-1} / prod_{k != j}(a_j - a_k), with 0^{z+n-1} := 0.
///
/// Any z is accepted for nonzero points; a zero point needs Re z > -1.
/// condition_estimate is sum_j |term_j| / |value| (>= 1); it measures the
/// cancellation in the alternating sum.
inline CHSResult h_fractional(ComplexDegree z, std::span<const double> pts) {
    detail::validate_fractional_points(pts);
    const bool has_zero = std::find(pts.begin(), pts.end(), 0.0) != pts.end();
    if (has_zero && !(z.re > -1.0)) throw DomainError("h_fractional: a zero point requires Re z > -1");
    const int n = static_cast<int>(pts.size());
    const ComplexDegree shifted = z + double(n - 1);
    CHSResult out;
    out.path = CHSPath::Bialternant;
    double magnitude = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const cplx term = branch_power(pts[j], shifted) / detail::node_product(pts, j);
        out.value += term;
        magnitude += std::abs(term);
    }
    const double v = std::abs(out.value);
    out.condition_estimate = v > 0.0 ? std::max(1.0, magnitude / v) : std::numeric_limits<double>::infinity();
    if (magnitude == 0.0) out.condition_estimate = 1.0;
    return out;
}

inline CHSResult h_fractional(ComplexDegree z, std::initializer_list<double> pts) {
    return h_fractional(z, std::span<const double>(pts.begin(), pts.size()));
}

/// h_z(a, ..., a) = binomial(z+n-1, n-1) a^z.
inline cplx h_equal(ComplexDegree z, double a, int n) {
    if (a == 0.0) throw DomainError("h_equal: a must be nonzero");
    if (n < 1) throw DomainError("h_equal: n must be >= 1");
    return binom_shifted(z, n) * branch_power(a, z);
}

/// binomial(z+n-1, n-1) * int x^z F(x; a) dx. Breakpoints at the knots and at 0;
/// 0 is treated as a singular endpoint unless z is a nonnegative integer.
inline cplx h_via_integral(ComplexDegree z, const KnotVector& kv, const QuadratureSpec& spec = {}) {
    if (!(z.re > -1.0)) throw DomainError("h_via_integral: requires Re z > -1");
    detail::require_strict(kv, "h_via_integral");
    std::vector<double> bp = kv.breakpoints();
    std::vector<double> singular;
    const bool zero_inside = kv.front() <= 0.0 && 0.0 <= kv.back();
    if (zero_inside) {
        if (kv.front() < 0.0 && 0.0 < kv.back() && !std::binary_search(bp.begin(), bp.end(), 0.0)) {
            bp.push_back(0.0);
            std::sort(bp.begin(), bp.end());
        }
        if (!z.is_nonnegative_integer()) singular.push_back(0.0);
    }
    const auto integrand = [&](double x) -> cplx {
        // x = 0 is a breakpoint, so it is only ever reached as a measure-zero node
        if (x == 0.0) return (z.re == 0.0 && z.im == 0.0) ? cplx(eval_truncated(x, kv)) : cplx(0.0);
        return branch_power(x, z) * eval_truncated(x, kv);
    };
    const auto q = integrate_piecewise(integrand, std::span<const double>(bp), std::span<const double>(singular), spec);
    return binom_shifted(z, kv.size()) * q.value;
}

/// Dispatches on the shape of the point tuple: all-equal formula, bialternant
/// for distinct points, or the classical polynomial for repeated points at a
/// nonnegative integer degree.
inline CHSResult h_evaluate(ComplexDegree z, std::span<const double> pts) {
    if (pts.empty()) throw DomainError("h: need at least one point");
    const bool all_equal = std::all_of(pts.begin(), pts.end(), [&](double a) { return a == pts[0]; });
    if (all_equal && pts.size() > 1) {
        if (z.is_nonnegative_integer())
            return {cplx(h_classical(static_cast<int>(z.re), pts)), CHSPath::MonomialSum, 1.0};
        return {h_equal(z, pts[0], static_cast<int>(pts.size())), CHSPath::AllEqualFormula, 1.0};
    }
    std::vector<double> sorted(pts.begin(), pts.end());
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (!distinct) {
        if (z.is_nonnegative_integer())
            return {cplx(h_classical(static_cast<int>(z.re), pts)), CHSPath::MonomialSum, 1.0};
        throw DomainError("h: repeated but not all-equal points are only supported for nonnegative integer degree");
    }
    return h_fractional(z, pts);
}

}  // namespace hsym
