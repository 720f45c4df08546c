#pragma once

#include "vvp/solver.hpp"

#include <optional>

namespace vvp {

/// Wide lid-driven cavity on (0,2)x(0,1) with nu = nu0 (1 + xy/2), zero
/// force and a unit lid velocity on the top edge.
struct CavityParameters {
    int nx = 64;
    int ny = 32;
    double nu0 = 0.002;
    double permeability = 0.1;  // sigma = nu / permeability
    std::optional<double> kappa1;  // default: just below 2/3 nu0
    std::optional<double> kappa2;  // default: nu0 / 2
    NonlinearSettings settings;
    /// Picard steps run before handing the iterate to the configured method.
    int picard_warmup = 0;
    int threads = 1;
};

struct CavityResult {
    SpaceTriple spaces;
    Eigen::VectorXd solution;
    SolveReport report;  // of the final solve; warm-up steps are not included
    int warmup_iterations = 0;
    double pressure_integral = 0.0;
    double pressure_l2 = 0.0;
    double divergence_l2 = 0.0;

    FieldTriple fields() const { return split_solution(spaces, solution); }
};

ProblemCoefficients cavity_coefficients(const CavityParameters& params);
BoundaryFunction cavity_lid();

/// Solves with MINI velocity, continuous P1 vorticity and P1 pressure;
/// pressure mean fixed to zero.
CavityResult run_cavity(const CavityParameters& params);

}  // namespace vvp
