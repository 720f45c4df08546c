#include "vvp/cavity.hpp"

#include "vvp/error.hpp"
#include "vvp/manufactured.hpp"

#include <memory>

namespace vvp {

ProblemCoefficients cavity_coefficients(const CavityParameters& p)
{
    const double nu0 = p.nu0;
    const double perm = p.permeability;
    ProblemCoefficients k;
    k.nu = [nu0](const Point& x) { return nu0 * (1.0 + 0.5 * x.x() * x.y()); };
    k.grad_nu = [nu0](const Point& x) { return Vec2(0.5 * nu0 * x.y(), 0.5 * nu0 * x.x()); };
    k.sigma = [nu0, perm](const Point& x) { return nu0 * (1.0 + 0.5 * x.x() * x.y()) / perm; };
    k.f = [](const Point&) { return Vec2::Zero().eval(); };
    k.nu0 = nu0;
    k.nu1 = 2.0 * nu0;
    k.sigma0 = nu0 / perm;
    k.sigma1 = 2.0 * nu0 / perm;
    k.kappa1 = p.kappa1.value_or(0.999 * kappa1_upper_bound(nu0));
    k.kappa2 = p.kappa2.value_or(0.5 * nu0);
    return k;
}

BoundaryFunction cavity_lid()
{
    return [](const Point&, BoundaryTag tag) {
        return tag == BoundaryTag::Top ? Vec2(1.0, 0.0) : Vec2(0.0, 0.0);
    };
}

CavityResult run_cavity(const CavityParameters& params)
{
    if (params.nx < 8 || params.ny < 8) throw InvalidArgument("run_cavity: nx and ny must be at least 8");
    if (!(params.nu0 > 0.0) || !(params.permeability > 0.0)) {
        throw InvalidArgument("run_cavity: nu0 and permeability must be positive");
    }
    if (params.picard_warmup < 0) throw InvalidArgument("run_cavity: picard_warmup must be non-negative");
    params.settings.validate();

    auto mesh = std::make_shared<const Mesh>(build_structured(params.nx, params.ny, Rect{0.0, 0.0, 2.0, 1.0}));
    Problem problem;
    problem.spaces = build_spaces(mesh, {VelocityElement::Mini, VorticitySpace::CG1});
    problem.coeffs = cavity_coefficients(params);
    problem.boundary = cavity_lid();
    problem.pressure_mean = 0.0;
    problem.threads = params.threads;

    CavityResult out;
    out.spaces = problem.spaces;

    NonlinearSettings settings = params.settings;
    if (params.picard_warmup > 0) {
        NonlinearSettings warm = params.settings;
        warm.method = NonlinearMethod::Picard;
        warm.max_iters = params.picard_warmup;
        const SolveResult w = solve(problem, warm);
        out.warmup_iterations = w.report.iterations;
        settings.initial_guess = w.solution;
    }

    const SolveResult r = solve(problem, settings);
    out.solution = r.solution;
    out.report = r.report;
    const FieldTriple f = out.fields();
    out.pressure_integral = vvp::pressure_integral(f.pressure);
    out.pressure_l2 = l2_norm(f.pressure);
    out.divergence_l2 = div_l2_norm(f.velocity);
    return out;
}

}  // namespace vvp
