#include "vvp/diagnostics.hpp"

#include "vvp/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace vvp {

void DiagnosticsConfig::validate() const
{
    if (!(r > 2.0)) throw ConfigurationError("DiagnosticsConfig: r must exceed 2");
    if (!(delta > 0.0)) throw ConfigurationError("DiagnosticsConfig: delta must be positive");
    if (dim < 2 || dim > 3) throw ConfigurationError("DiagnosticsConfig: dim must be 2 or 3");
}

DiagnosticsConfig make_diagnostics_config(const ProblemCoefficients& coeffs, const Mesh& mesh, double C_r,
                                          double C_4, double r, double delta)
{
    DiagnosticsConfig d;
    d.C_r = C_r;
    d.C_4 = C_4;
    d.r = r;
    d.delta = delta;
    d.validate();
    d.grad_nu_Lrstar = grad_nu_lr_norm(coeffs, mesh, d.r_star());
    return d;
}

SmallDataDiagnostics check_small_data(const ProblemCoefficients& k, const DiagnosticsConfig& diag, double f_norm)
{
    diag.validate();
    SmallDataDiagnostics d;
    const double dim = diag.dim;
    d.kappa = std::min(k.kappa1, k.kappa2);
    d.min_term = std::min({k.sigma0, k.kappa2 / 2.0, k.kappa1 - 3.0 * k.kappa1 * k.kappa1 / (4.0 * k.nu0)});
    const double g = diag.grad_nu_Lrstar;
    d.subtrahend = g == 0.0 ? 0.0
                            : diag.C_r * diag.C_r * std::pow(dim, (diag.r - 2.0) / diag.r) * g * g *
                                  (1.0 / d.kappa + 3.0 / k.nu0);
    d.alpha = d.min_term - d.subtrahend;
    d.alpha_bar = std::min(k.nu0 / 3.0, d.alpha);
    d.delta_bound = d.alpha_bar / (diag.C_4 * diag.C_4 * std::sqrt(dim));
    d.data_bound = 0.5 * d.alpha_bar * diag.delta;
    d.f_norm = f_norm;
    d.ellipticity = d.subtrahend < d.min_term;
    d.delta_admissible = diag.delta > 0.0 && diag.delta < d.delta_bound;
    d.data_small = f_norm < d.data_bound;
    return d;
}

std::string format_diagnostics(const SmallDataDiagnostics& d, const DiagnosticsConfig& diag)
{
    const auto yes = [](bool b) { return b ? "yes" : "no"; };
    std::string s;
    s += fmt::format("kappa = min(kappa1, kappa2)      = {:.6g}\n", d.kappa);
    s += fmt::format("||grad nu||_(0,r*), r = {:g}      = {:.6g}\n", diag.r, diag.grad_nu_Lrstar);
    s += fmt::format("ellipticity margin min-term      = {:.6g}\n", d.min_term);
    s += fmt::format("viscosity-gradient subtrahend    = {:.6g}\n", d.subtrahend);
    s += fmt::format("alpha                            = {:.6g}\n", d.alpha);
    s += fmt::format("alpha_bar = min(nu0/3, alpha)    = {:.6g}\n", d.alpha_bar);
    s += fmt::format("||f||_0                          = {:.6g}\n", d.f_norm);
    s += fmt::format("ellipticity condition holds      : {}\n", yes(d.ellipticity));
    s += fmt::format("delta = {:g} < {:.6g}             : {}\n", diag.delta, d.delta_bound, yes(d.delta_admissible));
    s += fmt::format("||f||_0 < alpha_bar delta / 2 = {:.6g} : {}\n", d.data_bound, yes(d.data_small));
    s += fmt::format("advisory: C_r = {:g} and C_4 = {:g} are user estimates of the embedding constants;\n"
                     "the solver runs whether or not these conditions hold.\n",
                     diag.C_r, diag.C_4);
    return s;
}

}  // namespace vvp
