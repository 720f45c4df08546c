#pragma once

#include "vvp/assembly.hpp"
#include "vvp/coefficients.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vvp {

using MatrixFunction = std::function<Mat2(const Point&)>;

/// Closed-form solution with all first derivatives. Rows of grad_u are the
/// gradients of the velocity components.
struct ManufacturedCase {
    std::string name;
    Rect domain;
    VectorFunction u;
    MatrixFunction grad_u;
    ScalarFunction p;
    VectorFunction grad_p;
    ScalarFunction omega;
    VectorFunction grad_omega;
    ScalarFunction nu;
    VectorFunction grad_nu;
    ScalarFunction sigma;
    double nu0 = 0.0, nu1 = 0.0, sigma0 = 0.0, sigma1 = 0.0;
    double kappa1 = 0.0, kappa2 = 0.0;
    double pressure_mean = 0.0;  // integral of p over the domain
    VectorFunction f;            // synthesized from the momentum equation
};

/// f = sigma u + nu curl(omega) + (u . grad) u - 2 eps(u) grad nu + grad p,
/// with curl(omega) = (d omega/dy, -d omega/dx).
Vec2 forcing_from_momentum(const ManufacturedCase& c, const Point& x);

/// Unit-square case with u = (cos(pi x) sin(pi y), -sin(pi x) cos(pi y)),
/// p = sin(pi x) sin(pi y), nu = nu0 + (nu1 - nu0) cos^2(pi x y) and
/// sigma = nu / permeability. kappa1 sits just below 2/3 nu0, kappa2 = nu0 / 2.
ManufacturedCase example1_case_2d(double nu0 = 0.1, double nu1 = 1.0, double permeability = 0.1);

ProblemCoefficients case_coefficients(const ManufacturedCase& c);
BoundaryFunction case_boundary(const ManufacturedCase& c);

struct ErrorNorms {
    double velocity = 0.0;   // ||| u - u_h |||_1
    double vorticity = 0.0;  // || omega - omega_h ||_0
    double pressure = 0.0;   // || p - p_h ||_0
};

/// Errors against the analytic solution; quadrature_degree 0 selects the
/// assembly degree + 3.
ErrorNorms error_norms(const FieldTriple& fields, const ManufacturedCase& c, int quadrature_degree = 0);

/// Rates log(e_i / e_{i+1}) / log(h_i / h_{i+1}); NaN where an error is zero.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

double l2_norm(const DiscreteField& field, int quadrature_degree = 0);
double div_l2_norm(const DiscreteField& velocity, int quadrature_degree = 0);

}  // namespace vvp
