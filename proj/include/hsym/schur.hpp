#pragma once

// Schur polynomials by the bialternant, and the identities expressing h_{-z}
// (z a positive integer) and h_{p/q} through Schur polynomials.

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hsym/chs.hpp"
#include "hsym/numerics.hpp"

namespace hsym {

class Partition {
public:
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw DomainError("Partition: parts must be nonnegative");
            if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("Partition: parts must be nonincreasing");
        }
    }
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int operator[](std::size_t i) const { return parts_[i]; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + ")";
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// s_lambda(a) = det[a_i^{lambda_{n-c} + c}]_{i,c} / V(a). The alternant is
/// row-equilibrated and factored with complete pivoting in long double.
inline double schur_eval(const Partition& lam, std::span<const double> pts) {
    const int n = lam.length();
    if (static_cast<int>(pts.size()) != n) throw DomainError("schur_eval: partition length must match number of points");
    if (n == 0) return 1.0;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            if (pts[i] == pts[k]) throw DomainError("schur_eval: points must be pairwise distinct");

    // extended precision: the alternant loses about log10(kappa(V)) digits for nearby points
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    Mat A(n, n);
    long double log_scale = 0.0L;
    long double vandermonde = 1.0L;
    for (int i = 0; i < n; ++i) {
        long double row_max = 0.0L;
        for (int c = 0; c < n; ++c) {
            const int e = lam[static_cast<std::size_t>(n - 1 - c)] + c;
            long double v = 1.0L;
            for (int k = 0; k < e; ++k) v *= pts[i];
            A(i, c) = v;
            row_max = std::max(row_max, std::fabs(v));
        }
        if (row_max == 0.0L) return 0.0;
        A.row(i) /= row_max;
        log_scale += std::log(row_max);
        for (int k = i + 1; k < n; ++k) vandermonde *= static_cast<long double>(pts[k]) - pts[i];
    }
    const long double det = Eigen::FullPivLU<Mat>(A).determinant();
    return static_cast<double>(det * std::exp(log_scale) / vandermonde);
}

inline double schur_eval(const Partition& lam, std::initializer_list<double> pts) {
    return schur_eval(lam, std::span<const double>(pts.begin(), pts.size()));
}

struct IdentityCheck {
    double residual = 0.0;
    cplx lhs;           // h_z from the bialternant sum
    double rhs = 0.0;   // Schur-side expression
    Partition lambda{};
};

/// h_{-z} = 0 for 1 <= z <= n-1, and
/// h_{-z} = (-1)^{n-1} (a_1...a_n)^{n-1-z} s_{(z-n,...,z-n,0)} for z >= n.
inline IdentityCheck check_prop_negative(int z, std::span<const double> pts) {
    if (z < 1) throw DomainError("check_prop_negative: z must be a positive integer");
    const int n = static_cast<int>(pts.size());
    for (double a : pts)
        if (a == 0.0) throw DomainError("check_prop_negative: points must be nonzero");
    IdentityCheck out;
    out.lhs = h_fractional(-double(z), pts).value;
    if (z <= n - 1) {
        out.rhs = 0.0;
        out.residual = std::abs(out.lhs);
        return out;
    }
    std::vector<int> parts(static_cast<std::size_t>(n), z - n);
    parts.back() = 0;
    out.lambda = Partition(parts);
    double prod = 1.0;
    for (double a : pts) prod *= a;
    const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    out.rhs = sign * std::pow(prod, n - 1 - z) * schur_eval(out.lambda, pts);
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

/// h_{p/q}(a) = prod_{i<j} 1/(sum_{t=0}^{q-1} a_i^{(q-1-t)/q} a_j^{t/q}) * s_lambda(a^{1/q})
/// with lambda = (p + (n-1)(q-1), (n-2)(q-1), ..., q-1, 0). Positive points only.
inline IdentityCheck check_prop_rational(int p, int q, std::span<const double> pts) {
    if (p < 1 || q < 2) throw DomainError("check_prop_rational: requires p >= 1 and q >= 2");
    if (std::gcd(p, q) != 1) throw DomainError("check_prop_rational: requires gcd(p, q) = 1");
    for (double a : pts)
        if (!(a > 0.0)) throw DomainError("check_prop_rational: points must be positive");
    const int n = static_cast<int>(pts.size());
    std::vector<int> parts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parts[i] = (n - 1 - i) * (q - 1);
    parts[0] += p;
    IdentityCheck out;
    out.lambda = Partition(parts);

    std::vector<double> roots(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) roots[i] = std::pow(pts[i], 1.0 / q);
    double factor = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (int t = 0; t < q; ++t) s += detail::ipow(roots[i], q - 1 - t) * detail::ipow(roots[j], t);
            factor /= s;
        }
    out.rhs = factor * schur_eval(out.lambda, roots);
    out.lhs = h_fractional(double(p) / q, pts).value;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace hsym
