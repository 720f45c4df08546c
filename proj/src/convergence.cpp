#include "vvp/convergence.hpp"

#include "vvp/error.hpp"

#include <memory>

namespace vvp {

ConvergenceReport run_convergence(const ElementSelection& family, int levels, const ManufacturedCase& c,
                                  const NonlinearSettings& settings, int threads, const LevelCallback& on_level)
{
    if (levels < 2) throw InvalidArgument("run_convergence: at least two levels are required");
    settings.validate();

    ConvergenceReport report;
    report.family = family;
    const ProblemCoefficients coeffs = case_coefficients(c);
    const BoundaryFunction boundary = case_boundary(c);

    for (int level = 0; level < levels; ++level) {
        const int n = 2 << level;
        auto mesh = std::make_shared<const Mesh>(build_structured(n, n, c.domain));

        Problem problem;
        problem.spaces = build_spaces(mesh, family);
        problem.coeffs = coeffs;
        problem.boundary = boundary;
        problem.pressure_mean = c.pressure_mean;
        problem.threads = threads;

        const SolveResult result = solve(problem, settings);

        ConvergenceLevel entry;
        entry.n = n;
        entry.h = mesh->h();
        entry.dofs = problem.spaces.total_dofs();
        entry.errors = error_norms(result.fields(problem.spaces), c);
        entry.report = result.report;
        if (!entry.report.converged && !report.failed_level) report.failed_level = level;
        if (on_level) on_level(entry);
        report.levels.push_back(std::move(entry));
    }

    std::vector<double> hs, eu, ew, ep;
    for (const auto& l : report.levels) {
        hs.push_back(l.h);
        eu.push_back(l.errors.velocity);
        ew.push_back(l.errors.vorticity);
        ep.push_back(l.errors.pressure);
    }
    const auto ru = eoc(eu, hs), rw = eoc(ew, hs), rp = eoc(ep, hs);
    for (std::size_t i = 0; i < ru.size(); ++i) report.rates.push_back({ru[i], rw[i], rp[i]});
    return report;
}

}  // namespace vvp
