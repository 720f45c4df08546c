#include "vvp/error.hpp"
#include "vvp/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace vvp;

namespace {

double integrate(const QuadratureRule& rule, int a, int b)
{
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        s += rule.weights[q] * std::pow(rule.points[q].x(), a) * std::pow(rule.points[q].y(), b);
    }
    return s;
}

// int_T x^a y^b = a! b! / (a + b + 2)!
double monomial_integral(int a, int b)
{
    return std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 3.0));
}

}  // namespace

TEST(Quadrature, DegreeOneIntegratesArea)
{
    EXPECT_NEAR(integrate(quadrature(1), 0, 0), 0.5, 1e-15);
}

TEST(Quadrature, DegreeTwoIntegratesLinear)
{
    const QuadratureRule r = quadrature(2);
    EXPECT_NEAR(integrate(r, 1, 0) + integrate(r, 0, 1), 1.0 / 3.0, 1e-15);
}

TEST(Quadrature, DegreeFourMonomial)
{
    EXPECT_NEAR(integrate(quadrature(4), 2, 2), 1.0 / 180.0, 1e-15);
}

TEST(Quadrature, ExactForAllMonomialsUpToDegree)
{
    for (int degree = 0; degree <= kMaxQuadratureDegree; ++degree) {
        const QuadratureRule r = quadrature(degree);
        EXPECT_GE(r.degree, degree);
        for (int a = 0; a <= degree; ++a) {
            for (int b = 0; a + b <= degree; ++b) {
                const double exact = monomial_integral(a, b);
                EXPECT_NEAR(integrate(r, a, b), exact, 1e-14 * std::max(1.0, exact))
                    << "degree " << degree << " monomial x^" << a << " y^" << b;
            }
        }
    }
}

TEST(Quadrature, PositiveWeightsInsideTriangle)
{
    for (int degree = 0; degree <= kMaxQuadratureDegree; ++degree) {
        const QuadratureRule r = quadrature(degree);
        EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 0.5, 1e-14);
        for (std::size_t q = 0; q < r.size(); ++q) {
            EXPECT_GT(r.weights[q], 0.0);
            EXPECT_GE(r.points[q].x(), 0.0);
            EXPECT_GE(r.points[q].y(), 0.0);
            EXPECT_LE(r.points[q].x() + r.points[q].y(), 1.0 + 1e-15);
        }
    }
}

TEST(Quadrature, UnsupportedDegreeThrows)
{
    EXPECT_THROW(quadrature(-1), CapabilityError);
    EXPECT_THROW(quadrature(kMaxQuadratureDegree + 1), CapabilityError);
}

TEST(Quadrature, GaussLegendreOnUnitInterval)
{
    std::vector<double> x, w;
    for (int n = 1; n <= 12; ++n) {
        gauss_legendre_01(n, x, w);
        ASSERT_EQ(x.size(), static_cast<std::size_t>(n));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], p);
            EXPECT_NEAR(s, 1.0 / (p + 1), 1e-14) << "n " << n << " p " << p;
        }
    }
}
