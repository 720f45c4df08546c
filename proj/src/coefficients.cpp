#include "vvp/coefficients.hpp"

#include "vvp/error.hpp"
#include "vvp/quadrature.hpp"

#include <fmt/format.h>

#include <cmath>

namespace vvp {

void ProblemCoefficients::validate() const
{
    if (!nu || !grad_nu || !sigma || !f) {
        throw ConfigurationError("ProblemCoefficients: nu, grad_nu, sigma and f must all be set");
    }
    if (!(nu0 > 0.0) || nu1 < nu0) {
        throw ConfigurationError(fmt::format("ProblemCoefficients: need 0 < nu0 <= nu1 (nu0 = {}, nu1 = {})", nu0, nu1));
    }
    if (!enforce_kappa_bounds) return;
    if (!(kappa1 > 0.0) || !(kappa1 < kappa1_upper_bound(nu0))) {
        throw ConfigurationError(fmt::format(
            "ProblemCoefficients: kappa1 = {} must satisfy 0 < kappa1 < 2/3 nu0 = {}", kappa1,
            kappa1_upper_bound(nu0)));
    }
    if (!(kappa2 > 0.0)) {
        throw ConfigurationError(fmt::format("ProblemCoefficients: kappa2 = {} must be positive", kappa2));
    }
}

void check_viscosity_bounds(const ProblemCoefficients& coeffs, const Mesh& mesh, int degree)
{
    const QuadratureRule q = quadrature(degree);
    constexpr double slack = 1e-12;
    for (int c = 0; c < static_cast<int>(mesh.n_cells()); ++c) {
        for (const Point& ref : q.points) {
            const Point x = map_to_physical(mesh, c, ref);
            const double v = coeffs.nu(x);
            if (v < coeffs.nu0 - slack || v > coeffs.nu1 + slack) {
                throw ConfigurationError(fmt::format("viscosity {} at ({}, {}) outside [{}, {}]", v, x.x(),
                                                     x.y(), coeffs.nu0, coeffs.nu1));
            }
        }
    }
}

double grad_nu_lr_norm(const ProblemCoefficients& coeffs, const Mesh& mesh, double r, int degree)
{
    const QuadratureRule q = quadrature(degree);
    double sum = 0.0;
    for (int c = 0; c < static_cast<int>(mesh.n_cells()); ++c) {
        const double det = cell_geometry(mesh, c).det;
        for (std::size_t k = 0; k < q.size(); ++k) {
            const Point x = map_to_physical(mesh, c, q.points[k]);
            sum += q.weights[k] * det * std::pow(coeffs.grad_nu(x).norm(), r);
        }
    }
    return std::pow(sum, 1.0 / r);
}

double forcing_l2_norm(const ProblemCoefficients& coeffs, const Mesh& mesh, int degree)
{
    const QuadratureRule q = quadrature(degree);
    double sum = 0.0;
    for (int c = 0; c < static_cast<int>(mesh.n_cells()); ++c) {
        const double det = cell_geometry(mesh, c).det;
        for (std::size_t k = 0; k < q.size(); ++k) {
            sum += q.weights[k] * det * coeffs.f(map_to_physical(mesh, c, q.points[k])).squaredNorm();
        }
    }
    return std::sqrt(sum);
}

}  // namespace vvp
