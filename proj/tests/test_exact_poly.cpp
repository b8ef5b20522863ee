#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>

#include "hsym/exact_poly.hpp"
#include "hsym/sampling.hpp"

using namespace hsym;

namespace {

RationalPoly poly(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return RationalPoly(std::move(v));
}

RationalPoly multiply(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t k = 0; k < b.coeffs().size(); ++k) c[i + k] += a.coeffs()[i] * b.coeffs()[k];
    return RationalPoly(std::move(c));
}

// real roots from the companion matrix, deduplicated
std::vector<double> companion_real_roots(const RationalPoly& p) {
    const int d = p.degree();
    if (d < 1) return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -static_cast<double>(p.coeff(i) / p.lead());
    const Eigen::VectorXcd ev = C.eigenvalues();
    std::vector<double> out;
    for (int i = 0; i < d; ++i)
        if (std::fabs(ev[i].imag()) < 1e-6) out.push_back(ev[i].real());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::fabs(a - b) < 1e-4; }), out.end());
    return out;
}

}  // namespace

TEST(RationalPoly, Arithmetic) {
    const auto p = poly({-2, 0, 1});  // x^2 - 2
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p(Rational(3)), Rational(7));
    EXPECT_EQ(p.derivative().coeffs(), poly({0, 2}).coeffs());
    const auto [q, r] = poly({-1, 0, 0, 1}).divmod(poly({-1, 1}));  // (x^3-1)/(x-1)
    EXPECT_EQ(q.coeffs(), poly({1, 1, 1}).coeffs());
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(poly({0, 0, 5}).low_order(), 2);
    EXPECT_TRUE(poly({0, 0}).is_zero());
    EXPECT_EQ(RationalPoly().degree(), -1);
    EXPECT_THROW(p.divmod(RationalPoly()), std::domain_error);
    EXPECT_EQ(to_rational(0.5), Rational(1, 2));
    EXPECT_THROW(to_rational(NAN), std::domain_error);
}

TEST(RationalPoly, GcdAndSquarefree) {
    const auto a = multiply(poly({-1, 1}), poly({-1, 1}));  // (x-1)^2
    const auto p = multiply(a, poly({2, 1}));               // (x-1)^2 (x+2)
    EXPECT_EQ(gcd(p, p.derivative()).coeffs(), poly({-1, 1}).coeffs());
    EXPECT_EQ(squarefree_part(p).monic().coeffs(), poly({-2, 1, 1}).coeffs());
}

TEST(Sturm, CountsExamples) {
    const SturmSequence s(poly({-2, 0, 1}));
    EXPECT_EQ(s.count_open(Bound::neg_inf(), Bound::pos_inf()), 2);
    EXPECT_EQ(s.count_open(Bound::finite(0), Bound::pos_inf()), 1);
    EXPECT_EQ(s.count_open(Bound::finite(Rational(3, 2)), Bound::finite(2)), 0);
    EXPECT_EQ(s.count_open(Bound::finite(1), Bound::finite(Rational(3, 2))), 1);

    const SturmSequence none(poly({1, 0, 1}));
    EXPECT_EQ(none.count_open(Bound::neg_inf(), Bound::pos_inf()), 0);

    // (x-1)x(x+1): root at an endpoint is excluded from the open interval
    const SturmSequence three(poly({0, -1, 0, 1}));
    EXPECT_EQ(three.count_open(Bound::finite(-1), Bound::finite(1)), 1);
    EXPECT_EQ(three.count_open(Bound::finite(-2), Bound::finite(1)), 2);
}

TEST(Isolation, ExactAndIrrationalRoots) {
    const auto roots = isolate_roots(multiply(poly({-2, 0, 1}), poly({-1, 2})), Bound::neg_inf(), Bound::pos_inf());
    ASSERT_EQ(roots.size(), 3u);
    const auto sq = squarefree_part(multiply(poly({-2, 0, 1}), poly({-1, 2})));
    std::vector<double> centers;
    for (auto r : roots) {
        refine(sq, r, Rational(1, 1 << 30));
        centers.push_back(static_cast<double>((r.lo + r.hi) / 2));
    }
    EXPECT_NEAR(centers[0], -std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(centers[1], 0.5, 1e-8);
    EXPECT_NEAR(centers[2], std::sqrt(2.0), 1e-8);

    // 2x^2 - x on (-1, 1): bisection lands on 0 and then on 1/2, both reported exactly
    const auto hit = isolate_roots(poly({0, -1, 2}), Bound::finite(-1), Bound::finite(1));
    ASSERT_EQ(hit.size(), 2u);
    EXPECT_TRUE(hit[0].exact && hit[1].exact);
    EXPECT_EQ(hit[0].lo, Rational(0));
    EXPECT_EQ(hit[1].lo, Rational(1, 2));
    // x - 1/3 on (-1, 1) is isolated by an interval
    const auto third = isolate_roots(RationalPoly({Rational(-1, 3), Rational(1)}), Bound::finite(-1), Bound::finite(1));
    ASSERT_EQ(third.size(), 1u);
    EXPECT_FALSE(third[0].exact);
    EXPECT_LT(third[0].lo, Rational(1, 3));
    EXPECT_GT(third[0].hi, Rational(1, 3));
}

TEST(Isolation, CauchyBound) {
    const auto p = poly({-6, 11, -6, 1});  // roots 1, 2, 3
    EXPECT_GT(cauchy_bound(p), Rational(3));
    EXPECT_EQ(isolate_roots(p, Bound::neg_inf(), Bound::pos_inf()).size(), 3u);
    EXPECT_EQ(isolate_roots(p, Bound::finite(Rational(3, 2)), Bound::pos_inf()).size(), 2u);
}

// Random products of rational linear factors and irreducible quadratics: the
// number of distinct real roots is known by construction and matches the
// companion-matrix eigenvalues.
TEST(Isolation, PropertyMatchesConstructionAndCompanion) {
    for (int i = 0; i < 200; ++i) {
        auto rng = stream_for(31, i);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 4), nlin(0, 3), nquad(0, 2), mult(1, 2);
        RationalPoly p = poly({1});
        std::vector<Rational> expected;
        for (int k = nlin(rng); k > 0; --k) {
            const Rational r(num(rng), den(rng));
            for (int m = mult(rng); m > 0; --m) p = multiply(p, RationalPoly({-r, Rational(1)}));
            expected.push_back(r);
        }
        for (int k = nquad(rng); k > 0; --k) p = multiply(p, poly({std::abs(num(rng)) + 1, num(rng) % 2, 1}));
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        if (p.degree() < 1) continue;

        const auto roots = isolate_roots(p, Bound::neg_inf(), Bound::pos_inf());
        ASSERT_EQ(roots.size(), expected.size()) << p.to_string();
        for (std::size_t k = 0; k < roots.size(); ++k) {
            EXPECT_LE(roots[k].lo, expected[k]);
            EXPECT_GE(roots[k].hi, expected[k]);
        }
        // the quadratic factors x^2 + b x + c with |b| <= 1 < c have no real roots
        const auto comp = companion_real_roots(squarefree_part(p));
        EXPECT_EQ(comp.size(), expected.size()) << p.to_string();
    }
}
