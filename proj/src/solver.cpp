#include "vvp/solver.hpp"

#include "vvp/error.hpp"

#include <Eigen/SparseLU>
#ifdef VVP_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <regex>

namespace vvp {

namespace {

double inf_norm(const SparseMatrix& a)
{
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(a.rows());
    for (int col = 0; col < a.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(a, col); it; ++it) row_sums[it.row()] += std::abs(it.value());
    }
    return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

[[noreturn]] void throw_factorisation_failure(const SparseMatrix& a)
{
    // SparseLU reports the failing column in its message
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    std::string msg = lu.info() == Eigen::Success ? "numerically singular matrix" : lu.lastErrorMessage();
    long pivot = -1;
    std::smatch m;
    if (std::regex_search(msg, m, std::regex("(\\d+)\\s*$"))) pivot = std::stol(m[1]);
    throw SolverFailure("solve_linear: factorisation failed: " + msg, pivot);
}

template <class Factorisation>
Eigen::VectorXd refine_solve(const Factorisation& lu, const AssembledSystem& sys)
{
    const SparseMatrix& a = sys.matrix;
    const Eigen::VectorXd& b = sys.rhs;
    const double anorm = inf_norm(a);
    const double bnorm = inf_norm(b);
    Eigen::VectorXd x = lu.solve(b);
    for (int it = 0;; ++it) {
        if (!x.allFinite()) throw SolverFailure("solve_linear: non-finite solution");
        const Eigen::VectorXd r = b - a * x;
        const double bound = 1e-10 * (anorm * inf_norm(x) + bnorm);
        if (inf_norm(r) <= bound) return x;
        if (it == 3) {
            throw SolverFailure(fmt::format("solve_linear: residual {:.3e} exceeds bound {:.3e}", inf_norm(r), bound));
        }
        x += lu.solve(r);
    }
}

}  // namespace

Eigen::VectorXd solve_linear(const AssembledSystem& sys, LinearSolveStats* stats)
{
    if (!sys.bc_applied) throw UsageError("solve_linear: boundary conditions not applied");
    if (sys.matrix.rows() != sys.matrix.cols() || sys.matrix.rows() != sys.rhs.size()) {
        throw UsageError("solve_linear: dimension mismatch");
    }
    const auto t0 = std::chrono::steady_clock::now();
    Eigen::VectorXd x;
#ifdef VVP_HAVE_UMFPACK
    Eigen::UmfPackLU<SparseMatrix> lu;
    lu.compute(sys.matrix);
    if (lu.info() != Eigen::Success) throw_factorisation_failure(sys.matrix);
    x = refine_solve(lu, sys);
#else
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    // Preferring the diagonal keeps the fill of the column ordering; the
    // refinement loop recovers the accuracy lost to weaker pivoting.
    lu.setPivotThreshold(0.01);
    lu.analyzePattern(sys.matrix);
    lu.factorize(sys.matrix);
    if (lu.info() != Eigen::Success) throw_factorisation_failure(sys.matrix);
    x = refine_solve(lu, sys);
#endif
    if (stats) {
        ++stats->factorizations;
        stats->nonzeros = sys.matrix.nonZeros();
        stats->seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return x;
}

Eigen::VectorXd solve_linear(const AssembledSystem& sys) { return solve_linear(sys, nullptr); }

void NonlinearSettings::validate() const
{
    if (!(tol > 0.0)) throw ConfigurationError("NonlinearSettings: tol must be positive");
    if (max_iters < 1) throw ConfigurationError("NonlinearSettings: max_iters must be >= 1");
}

AssemblyOptions Problem::assembly_options() const
{
    AssemblyOptions o;
    o.quadrature_degree = quadrature_degree;
    o.pressure_mean = pressure_mean;
    o.threads = threads;
    return o;
}

namespace {

std::vector<std::pair<int, double>> boundary_values(const Problem& p)
{
    if (!p.boundary) return p.spaces.velocity->boundary_values([](const Point&, BoundaryTag) { return Vec2::Zero(); });
    return p.spaces.velocity->boundary_values(p.boundary);
}

// residual with the constrained rows replaced by the boundary mismatch g - x
double constrained_norm(Eigen::VectorXd r, const std::vector<std::pair<int, double>>& bc, const Eigen::VectorXd& x)
{
    for (const auto& [d, g] : bc) r[d] = g - x[d];
    return inf_norm(r);
}

Eigen::VectorXd initial_iterate(const Problem& p, const NonlinearSettings& s)
{
    const int n = p.spaces.total_dofs();
    if (!s.initial_guess) return Eigen::VectorXd::Zero(n);
    if (s.initial_guess->size() != n) throw UsageError("initial guess has wrong length");
    return *s.initial_guess;
}

bool converged(double r, double r0, double tol) { return r <= tol || r <= tol * r0; }

}  // namespace

double residual_norm(const Problem& p, const Eigen::VectorXd& x)
{
    return constrained_norm(nonlinear_residual(p.spaces, p.coeffs, x, p.assembly_options()), boundary_values(p), x);
}

SolveResult solve_picard(const Problem& p, const NonlinearSettings& settings)
{
    settings.validate();
    const auto bc = boundary_values(p);
    const int nu = p.spaces.velocity->n_dofs();
    const AssemblyOptions opts = p.assembly_options();

    SolveResult res;
    Eigen::VectorXd x = initial_iterate(p, settings);
    double r0 = 0.0;
    for (int k = 0;; ++k) {
        const DiscreteField beta(p.spaces.velocity, x.head(nu));
        AssembledSystem sys = assemble_oseen(p.spaces, p.coeffs, &beta, opts);
        // the Oseen operator with beta = u_k evaluates the residual at x_k
        Eigen::VectorXd r = sys.rhs - sys.matrix * x;
        for (int d : p.spaces.velocity->dirichlet_dofs()) r[d] = 0.0;
        const double rn = constrained_norm(r, bc, x);
        res.report.residual_history.push_back(rn);
        if (k == 0) {
            r0 = rn;
        } else {
            res.report.iterations = k;
            if (converged(rn, r0, settings.tol)) {
                res.report.converged = true;
                break;
            }
            if (!std::isfinite(rn) || k == settings.max_iters) break;
        }
        apply_dirichlet(sys, bc);
        Eigen::VectorXd next;
        try {
            next = solve_linear(sys, &res.report.linear);
        } catch (const SolverFailure&) {
            break;
        }
        res.report.update_history.push_back(inf_norm(Eigen::VectorXd(next.head(nu) - x.head(nu))));
        x = std::move(next);
    }
    res.solution = std::move(x);
    return res;
}

SolveResult solve_newton(const Problem& p, const NonlinearSettings& settings)
{
    settings.validate();
    const auto bc = boundary_values(p);
    const int nu = p.spaces.velocity->n_dofs();
    const AssemblyOptions opts = p.assembly_options();

    SolveResult res;
    Eigen::VectorXd x = initial_iterate(p, settings);
    double r0 = 0.0;
    for (int k = 0;; ++k) {
        NewtonSystem ns = assemble_newton(p.spaces, p.coeffs, x, opts);
        const double rn = constrained_norm(ns.residual, bc, x);
        res.report.residual_history.push_back(rn);
        if (k == 0) {
            r0 = rn;
        } else {
            res.report.iterations = k;
            if (converged(rn, r0, settings.tol)) {
                res.report.converged = true;
                break;
            }
            if (!std::isfinite(rn) || k == settings.max_iters) break;
        }
        std::vector<std::pair<int, double>> increments;
        increments.reserve(bc.size());
        for (const auto& [d, g] : bc) increments.emplace_back(d, g - x[d]);
        apply_dirichlet(ns.jacobian, increments);
        Eigen::VectorXd dx;
        try {
            dx = solve_linear(ns.jacobian, &res.report.linear);
        } catch (const SolverFailure&) {
            break;
        }
        res.report.update_history.push_back(inf_norm(Eigen::VectorXd(dx.head(nu))));
        x += dx;
    }
    res.solution = std::move(x);
    return res;
}

SolveResult solve(const Problem& p, const NonlinearSettings& settings)
{
    return settings.method == NonlinearMethod::Picard ? solve_picard(p, settings) : solve_newton(p, settings);
}

}  // namespace vvp
