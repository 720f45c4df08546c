#pragma once

#include "vvp/mesh.hpp"

#include <vector>

namespace vvp {

/// Quadrature on the reference triangle {(0,0),(1,0),(0,1)}. Weights sum to 1/2.
struct QuadratureRule {
    std::vector<Point> points;
    std::vector<double> weights;
    int degree = 0;

    std::size_t size() const { return weights.size(); }
};

inline constexpr int kMaxQuadratureDegree = 40;

/// Positive-weight rule exact for polynomials of total degree `degree`.
/// Degrees up to 5 use fully symmetric rules; higher degrees use a collapsed
/// Gauss-Legendre product rule.
QuadratureRule quadrature(int degree);

/// n-point Gauss-Legendre rule on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace vvp
