#pragma once

#include "vvp/field.hpp"

namespace vvp {

/// Data of the momentum equation. The viscosity gradient is supplied
/// analytically alongside the viscosity.
struct ProblemCoefficients {
    ScalarFunction nu;
    VectorFunction grad_nu;
    ScalarFunction sigma;
    VectorFunction f;
    double kappa1 = 0.0;  // weight of the constitutive residual curl u - omega
    double kappa2 = 0.0;  // weight of the divergence residual
    double nu0 = 0.0;
    double nu1 = 0.0;
    double sigma0 = 0.0;
    double sigma1 = 0.0;
    /// When false the augmentation-parameter check is skipped (used for
    /// assembling individual terms with kappa = 0).
    bool enforce_kappa_bounds = true;

    /// Throws ConfigurationError unless 0 < kappa1 < 2/3 nu0 and kappa2 > 0.
    void validate() const;
};

/// Largest admissible kappa1 is strictly below this value.
inline double kappa1_upper_bound(double nu0) { return 2.0 * nu0 / 3.0; }

/// Checks nu0 <= nu <= nu1 (slack 1e-12) at every quadrature point of the
/// mesh; throws ConfigurationError on violation.
void check_viscosity_bounds(const ProblemCoefficients& coeffs, const Mesh& mesh, int quadrature_degree);

/// (int |grad nu|^r)^(1/r) by quadrature.
double grad_nu_lr_norm(const ProblemCoefficients& coeffs, const Mesh& mesh, double r, int quadrature_degree = 10);

/// ||f||_{0} by quadrature.
double forcing_l2_norm(const ProblemCoefficients& coeffs, const Mesh& mesh, int quadrature_degree = 10);

}  // namespace vvp
