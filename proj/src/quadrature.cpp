#include "vvp/quadrature.hpp"

#include "vvp/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace vvp {

namespace {

void add_orbit3(QuadratureRule& q, double a, double w)
{
    const double b = 1.0 - 2.0 * a;
    // barycentric (b, a, a) and its rotations, mapped to (x, y) = (l1, l2)
    q.points.emplace_back(a, a);
    q.points.emplace_back(b, a);
    q.points.emplace_back(a, b);
    for (int i = 0; i < 3; ++i) q.weights.push_back(0.5 * w);
}

QuadratureRule collapsed_product(int degree)
{
    const int n = (degree + 3) / 2;
    std::vector<double> s, ws;
    gauss_legendre_01(n, s, ws);
    QuadratureRule q;
    q.degree = degree;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            const double x = s[ui];
            const double y = s[uj] * (1.0 - s[ui]);
            q.points.emplace_back(x, y);
            q.weights.push_back(ws[ui] * ws[uj] * (1.0 - s[ui]));
        }
    }
    return q;
}

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    // P_n(x) and its derivative by the three-term recurrence
    const auto legendre = [n](double x) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };

    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(x).second;
        const auto ui = static_cast<std::size_t>(n - 1 - i);
        nodes[ui] = 0.5 * (x + 1.0);
        weights[ui] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

QuadratureRule quadrature(int degree)
{
    if (degree < 0 || degree > kMaxQuadratureDegree) {
        throw CapabilityError("quadrature: unsupported degree " + std::to_string(degree));
    }
    QuadratureRule q;
    if (degree <= 1) {
        q.degree = 1;
        q.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
        q.weights.push_back(0.5);
    } else if (degree == 2) {
        q.degree = 2;
        add_orbit3(q, 1.0 / 6.0, 1.0 / 3.0);
    } else if (degree <= 5) {
        // Radon's seven-point rule
        q.degree = 5;
        const double r15 = std::sqrt(15.0);
        q.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
        q.weights.push_back(0.5 * 9.0 / 40.0);
        add_orbit3(q, (6.0 - r15) / 21.0, (155.0 - r15) / 1200.0);
        add_orbit3(q, (6.0 + r15) / 21.0, (155.0 + r15) / 1200.0);
    } else {
        q = collapsed_product(degree);
    }
    return q;
}

}  // namespace vvp
