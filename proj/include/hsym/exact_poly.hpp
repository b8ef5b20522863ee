#pragma once

// Univariate polynomials over exact rationals, Sturm sequences and real-root
// isolation on open (possibly unbounded) intervals.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace hsym {

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational value of a finite double.
inline Rational to_rational(double x) {
    if (!std::isfinite(x)) throw std::domain_error("to_rational: value must be finite");
    return Rational(x);
}

inline int sign(const Rational& q) { return q.sign(); }

class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// Coefficients, constant term first.
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
    const Rational& lead() const { return c_.back(); }
    Rational coeff(int k) const { return k < static_cast<int>(c_.size()) && k >= 0 ? c_[k] : Rational(0); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double eval(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + static_cast<double>(*it);
        return acc;
    }

    RationalPoly derivative() const {
        std::vector<Rational> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
        return RationalPoly(std::move(d));
    }

    /// Index of the lowest nonzero coefficient (multiplicity of the root x = 0).
    int low_order() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) return static_cast<int>(k);
        return -1;
    }

    RationalPoly monic() const {
        if (is_zero()) return *this;
        std::vector<Rational> m(c_);
        const Rational l = lead();
        for (auto& v : m) v /= l;
        return RationalPoly(std::move(m));
    }

    friend RationalPoly operator-(const RationalPoly& p) {
        std::vector<Rational> m(p.c_);
        for (auto& v : m) v = -v;
        return RationalPoly(std::move(m));
    }

    /// (quotient, remainder) of this / d.
    std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& d) const {
        if (d.is_zero()) throw std::domain_error("RationalPoly: division by zero polynomial");
        std::vector<Rational> r(c_);
        const int dd = d.degree();
        std::vector<Rational> q(std::max(0, degree() - dd + 1));
        for (int k = degree(); k >= dd; --k) {
            const Rational f = r[k] / d.lead();
            q[k - dd] = f;
            for (int i = 0; i <= dd; ++i) r[k - dd + i] -= f * d.c_[i];
        }
        r.resize(static_cast<std::size_t>(std::max(0, dd)));
        return {RationalPoly(std::move(q)), RationalPoly(std::move(r))};
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            if (c_[k] == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[k].str() + ")";
            if (k >= 1) s += "x";
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline RationalPoly gcd(RationalPoly a, RationalPoly b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// p / gcd(p, p'): same real roots, all simple.
inline RationalPoly squarefree_part(const RationalPoly& p) {
    if (p.degree() <= 0) return p;
    const RationalPoly g = gcd(p, p.derivative());
    return p.divmod(g).first;
}

/// An interval endpoint: a finite rational or -inf / +inf.
struct Bound {
    std::optional<Rational> value;
    int infinity = 0;  // -1 or +1 when value is empty

    static Bound finite(Rational v) { return {std::move(v), 0}; }
    static Bound neg_inf() { return {std::nullopt, -1}; }
    static Bound pos_inf() { return {std::nullopt, +1}; }
    bool is_finite() const { return value.has_value(); }
};

class SturmSequence {
public:
    explicit SturmSequence(const RationalPoly& squarefree) {
        if (squarefree.is_zero()) throw std::domain_error("SturmSequence: zero polynomial");
        seq_.push_back(squarefree);
        if (squarefree.degree() == 0) return;
        seq_.push_back(squarefree.derivative());
        while (true) {
            auto r = seq_[seq_.size() - 2].divmod(seq_.back()).second;
            if (r.is_zero()) break;
            seq_.push_back(-r);
        }
    }

    const RationalPoly& base() const { return seq_.front(); }

    /// Sign changes at a point (zeros dropped).
    int variations(const Bound& at) const {
        int changes = 0, prev = 0;
        for (const auto& p : seq_) {
            int s;
            if (at.is_finite()) {
                s = sign(p(*at.value));
            } else {
                s = sign(p.lead());
                if (at.infinity < 0 && p.degree() % 2 == 1) s = -s;
            }
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }

    /// Distinct real roots of the base polynomial strictly inside (lo, hi).
    int count_open(const Bound& lo, const Bound& hi) const {
        const int at_hi_root = hi.is_finite() && sign(base()(*hi.value)) == 0 ? 1 : 0;
        return variations(lo) - variations(hi) - at_hi_root;
    }

private:
    std::vector<RationalPoly> seq_;
};

/// 1 + max |c_k / c_lead|: every real root lies strictly inside (-B, B).
inline Rational cauchy_bound(const RationalPoly& p) {
    Rational m = 0;
    for (int k = 0; k < p.degree(); ++k) {
        Rational v = abs(p.coeff(k) / p.lead());
        if (v > m) m = v;
    }
    return m + 1;
}

/// A real root either known exactly or isolated in an open interval (lo, hi)
/// whose endpoints are not roots.
struct IsolatedRoot {
    Rational lo, hi;
    bool exact = false;  // lo == hi == root
};

namespace detail {

inline void isolate_rec(const SturmSequence& s, const Rational& a, const Rational& b, std::vector<IsolatedRoot>& out) {
    const int c = s.count_open(Bound::finite(a), Bound::finite(b));
    if (c == 0) return;
    if (c == 1 && sign(s.base()(a)) != 0 && sign(s.base()(b)) != 0) {
        out.push_back({a, b, false});
        return;
    }
    const Rational m = (a + b) / 2;
    isolate_rec(s, a, m, out);
    if (sign(s.base()(m)) == 0) out.push_back({m, m, true});
    isolate_rec(s, m, b, out);
}

}  // namespace detail

/// Isolates every distinct real root of p inside the open interval (lo, hi).
inline std::vector<IsolatedRoot> isolate_roots(const RationalPoly& p, const Bound& lo, const Bound& hi) {
    std::vector<IsolatedRoot> out;
    const RationalPoly sq = squarefree_part(p);
    if (sq.degree() <= 0) return out;
    const SturmSequence s(sq);
    const Rational B = cauchy_bound(sq);
    Rational a = lo.is_finite() ? *lo.value : -B;
    Rational b = hi.is_finite() ? *hi.value : B;
    if (lo.is_finite() && *lo.value < -B) a = -B;
    if (hi.is_finite() && *hi.value > B) b = B;
    if (!(a < b)) return out;
    detail::isolate_rec(s, a, b, out);
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
    return out;
}

/// Halves an isolating interval keeping the root, until hi - lo <= width.
inline void refine(const RationalPoly& squarefree, IsolatedRoot& r, const Rational& width) {
    while (!r.exact && r.hi - r.lo > width) {
        const Rational m = (r.lo + r.hi) / 2;
        const int sm = sign(squarefree(m));
        if (sm == 0) {
            r = {m, m, true};
            return;
        }
        if (sign(squarefree(r.lo)) != sm)
            r.hi = m;
        else
            r.lo = m;
    }
}

}  // namespace hsym
