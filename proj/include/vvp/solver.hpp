#pragma once

#include "vvp/assembly.hpp"

#include <optional>
#include <vector>

namespace vvp {

struct LinearSolveStats {
    int factorizations = 0;
    long nonzeros = 0;  // nonzeros of the last matrix factorised
    double seconds = 0.0;
};

/// Sparse direct solve with iterative refinement. Throws SolverFailure when
/// the factorisation breaks down (with the failing column when known) or the
/// bound ||Ax - b||_inf <= 1e-10 (||A||_inf ||x||_inf + ||b||_inf) is not met.
Eigen::VectorXd solve_linear(const AssembledSystem& system);
Eigen::VectorXd solve_linear(const AssembledSystem& system, LinearSolveStats* stats);

enum class NonlinearMethod { Picard, Newton };

struct NonlinearSettings {
    NonlinearMethod method = NonlinearMethod::Newton;
    double tol = 1e-8;  // absolute or relative (to the initial residual) l-infinity tolerance
    int max_iters = 25;
    /// Starting iterate over the full block layout; zero when absent.
    std::optional<Eigen::VectorXd> initial_guess;

    void validate() const;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;  // l-infinity; entry 0 is the initial residual
    /// Coefficient l-infinity norm of successive velocity updates.
    std::vector<double> update_history;
    bool converged = false;
    LinearSolveStats linear;
};

/// Discrete Navier-Stokes problem: spaces, data, boundary values and the
/// prescribed pressure mean.
struct Problem {
    SpaceTriple spaces;
    ProblemCoefficients coeffs;
    BoundaryFunction boundary;
    double pressure_mean = 0.0;
    int quadrature_degree = 0;
    int threads = 1;

    AssemblyOptions assembly_options() const;
};

struct SolveResult {
    Eigen::VectorXd solution;
    SolveReport report;

    FieldTriple fields(const SpaceTriple& spaces) const { return split_solution(spaces, solution); }
};

/// l-infinity norm of the nonlinear residual, including the mismatch of the
/// boundary values at the constrained DOFs.
double residual_norm(const Problem& problem, const Eigen::VectorXd& x);

/// Fixed-point iteration on the Oseen map beta -> u(beta).
SolveResult solve_picard(const Problem& problem, const NonlinearSettings& settings);

/// Newton's method on the assembled residual, without damping.
SolveResult solve_newton(const Problem& problem, const NonlinearSettings& settings);

/// Dispatches on settings.method.
SolveResult solve(const Problem& problem, const NonlinearSettings& settings);

}  // namespace vvp
