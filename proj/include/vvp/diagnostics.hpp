#pragma once

#include "vvp/coefficients.hpp"

#include <string>

namespace vvp {

/// Inputs of the small-data conditions. The embedding constants are not
/// computable here and default to 1; results are advisory.
struct DiagnosticsConfig {
    double C_r = 1.0;
    double C_4 = 1.0;
    double r = 4.0;  // exponent in (2, inf) for d = 2
    double grad_nu_Lrstar = 0.0;  // ||grad nu||_{0, r*}
    double delta = 1.0;           // radius of the fixed-point ball
    int dim = 2;

    double r_star() const { return 2.0 * r / (r - 2.0); }
    void validate() const;
};

/// Fills grad_nu_Lrstar by quadrature on the mesh.
DiagnosticsConfig make_diagnostics_config(const ProblemCoefficients& coeffs, const Mesh& mesh, double C_r = 1.0,
                                          double C_4 = 1.0, double r = 4.0, double delta = 1.0);

struct SmallDataDiagnostics {
    double kappa = 0.0;         // min(kappa1, kappa2)
    double min_term = 0.0;      // min(sigma0, kappa2/2, kappa1 - 3 kappa1^2 / (4 nu0))
    double subtrahend = 0.0;    // C_r^2 d^((r-2)/r) ||grad nu||^2 (1/kappa + 3/nu0)
    double alpha = 0.0;         // min_term - subtrahend
    double alpha_bar = 0.0;     // min(nu0/3, alpha)
    double delta_bound = 0.0;   // alpha_bar / (C_4^2 sqrt(d))
    double data_bound = 0.0;    // alpha_bar delta / 2
    double f_norm = 0.0;
    bool ellipticity = false;   // subtrahend < min_term
    bool delta_admissible = false;
    bool data_small = false;
};

SmallDataDiagnostics check_small_data(const ProblemCoefficients& coeffs, const DiagnosticsConfig& diag, double f_norm);

/// Human-readable report, ending with the advisory caveat.
std::string format_diagnostics(const SmallDataDiagnostics& d, const DiagnosticsConfig& diag);

}  // namespace vvp
