#pragma once

#include "vvp/manufactured.hpp"
#include "vvp/solver.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace vvp {

struct ConvergenceLevel {
    int n = 0;  // subdivisions per side
    double h = 0.0;
    int dofs = 0;
    ErrorNorms errors;
    SolveReport report;
};

struct ConvergenceRates {
    double velocity = 0.0;
    double vorticity = 0.0;
    double pressure = 0.0;
};

struct ConvergenceReport {
    ElementSelection family;
    std::vector<ConvergenceLevel> levels;
    std::vector<ConvergenceRates> rates;  // one per consecutive pair of levels
    /// First level whose nonlinear solve did not converge, if any.
    std::optional<int> failed_level;

    bool partial() const { return failed_level.has_value(); }
};

/// Called after each level completes, e.g. for progress output.
using LevelCallback = std::function<void(const ConvergenceLevel&)>;

/// Solves the manufactured case on n = 2, 4, ..., 2^levels subdivisions of
/// its domain with the pressure mean fixed to that of the exact pressure.
/// A non-converged level is recorded and marks the report partial; later
/// levels are still computed.
ConvergenceReport run_convergence(const ElementSelection& family, int levels, const ManufacturedCase& c,
                                  const NonlinearSettings& settings = {}, int threads = 1,
                                  const LevelCallback& on_level = {});

}  // namespace vvp
