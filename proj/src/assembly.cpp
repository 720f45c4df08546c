#include "vvp/assembly.hpp"

#include "vvp/error.hpp"
#include "vvp/quadrature.hpp"

#include <algorithm>
#include <thread>

namespace vvp {

BlockIndex block_index(const SpaceTriple& s)
{
    BlockIndex b;
    b.velocity = 0;
    b.vorticity = s.velocity->n_dofs();
    b.pressure = b.vorticity + s.vorticity->n_dofs();
    b.multiplier = b.pressure + s.pressure->n_dofs();
    b.size = b.multiplier + 1;
    return b;
}

namespace {

using Triplet = Eigen::Triplet<double>;

struct Contribution {
    std::vector<Triplet> triplets;
    std::vector<std::pair<int, double>> rhs;
    std::vector<std::pair<int, double>> convection;  // N(u_h; u_h, v) when linearising
};

struct KernelInput {
    const SpaceTriple* spaces = nullptr;
    const ProblemCoefficients* coeffs = nullptr;
    const Eigen::VectorXd* beta = nullptr;      // advecting velocity coefficients
    const Eigen::VectorXd* linearise = nullptr; // velocity at which N is differentiated
    const QuadratureRule* rule = nullptr;
    BlockIndex blocks;
    unsigned terms = term::All;
};

bool has(unsigned terms, unsigned t) { return (terms & t) != 0; }

void check_spaces(const SpaceTriple& s)
{
    if (!s.velocity || !s.vorticity || !s.pressure) throw UsageError("assembly: incomplete space triple");
    if (s.velocity->mesh_ptr() != s.vorticity->mesh_ptr() || s.velocity->mesh_ptr() != s.pressure->mesh_ptr()) {
        throw UsageError("assembly: spaces live on different meshes");
    }
    if (s.velocity->n_components() != 2 || s.vorticity->n_components() != 1 || s.pressure->n_components() != 1) {
        throw UsageError("assembly: velocity must be vector-valued, vorticity and pressure scalar");
    }
}

void assemble_range(const KernelInput& in, int begin, int end, Contribution& out)
{
    const SpaceTriple& s = *in.spaces;
    const ProblemCoefficients& k = *in.coeffs;
    const QuadratureRule& rule = *in.rule;
    const Mesh& mesh = s.velocity->mesh();
    const unsigned t = in.terms;

    const int nV = s.velocity->dofs_per_cell();
    const int nW = s.vorticity->dofs_per_cell();
    const int nQ = s.pressure->dofs_per_cell();
    const int n = nV + nW + nQ;

    CellBasis bv, bw, bq;
    Eigen::MatrixXd local(n, n);
    Eigen::VectorXd local_rhs(n);
    Eigen::VectorXd local_mean(nQ);
    Eigen::VectorXd local_conv(nV);
    std::vector<int> gdofs(static_cast<std::size_t>(n));

    const bool need_nu = has(t, term::ViscousCoupling | term::VorticityMass);
    const bool need_grad_nu = has(t, term::StrainGradNu | term::CrossGradNu);
    const bool conv = has(t, term::Convection) && in.beta != nullptr;
    const bool lin = has(t, term::Convection) && in.linearise != nullptr;

    for (int c = begin; c < end; ++c) {
        s.velocity->tabulate(c, rule.points, bv);
        s.vorticity->tabulate(c, rule.points, bw);
        s.pressure->tabulate(c, rule.points, bq);
        const double det = cell_geometry(mesh, c).det;
        const auto dv = s.velocity->cell_dofs(c);
        const auto dw = s.vorticity->cell_dofs(c);
        const auto dq = s.pressure->cell_dofs(c);
        for (int i = 0; i < nV; ++i) gdofs[static_cast<std::size_t>(i)] = in.blocks.velocity + dv[static_cast<std::size_t>(i)];
        for (int i = 0; i < nW; ++i) gdofs[static_cast<std::size_t>(nV + i)] = in.blocks.vorticity + dw[static_cast<std::size_t>(i)];
        for (int i = 0; i < nQ; ++i) gdofs[static_cast<std::size_t>(nV + nW + i)] = in.blocks.pressure + dq[static_cast<std::size_t>(i)];

        local.setZero();
        local_rhs.setZero();
        local_mean.setZero();
        local_conv.setZero();

        for (int q = 0; q < static_cast<int>(rule.size()); ++q) {
            const double w = rule.weights[static_cast<std::size_t>(q)] * det;
            const Point x = map_to_physical(mesh, c, rule.points[static_cast<std::size_t>(q)]);
            const double nu = need_nu ? k.nu(x) : 0.0;
            const Vec2 gnu = need_grad_nu ? k.grad_nu(x) : Vec2::Zero();
            const double sigma = has(t, term::Mass) ? k.sigma(x) : 0.0;

            Vec2 beta = Vec2::Zero();
            if (conv) {
                for (int j = 0; j < nV; ++j) {
                    const double bj = (*in.beta)[dv[static_cast<std::size_t>(j)]];
                    beta.x() += bj * bv.value(q, j, 0);
                    beta.y() += bj * bv.value(q, j, 1);
                }
            }
            Mat2 gu = Mat2::Zero();  // row c: gradient of component c
            Vec2 uq = Vec2::Zero();
            if (lin) {
                for (int j = 0; j < nV; ++j) {
                    const double uj = (*in.linearise)[dv[static_cast<std::size_t>(j)]];
                    gu.row(0) += uj * bv.gradient(q, j, 0).transpose();
                    gu.row(1) += uj * bv.gradient(q, j, 1).transpose();
                    uq.x() += uj * bv.value(q, j, 0);
                    uq.y() += uj * bv.value(q, j, 1);
                }
            }
            const Vec2 uq_conv = gu * uq;

            for (int i = 0; i < nV; ++i) {
                const Vec2 vi(bv.value(q, i, 0), bv.value(q, i, 1));
                const double curl_i = bv.curl(q, i);
                const double div_i = bv.div(q, i);

                for (int j = 0; j < nV; ++j) {
                    const Vec2 vj(bv.value(q, j, 0), bv.value(q, j, 1));
                    const Vec2& gj0 = bv.gradient(q, j, 0);
                    const Vec2& gj1 = bv.gradient(q, j, 1);
                    double a = 0.0;
                    if (has(t, term::Mass)) a += sigma * vj.dot(vi);
                    if (has(t, term::CurlAugment)) a += k.kappa1 * bv.curl(q, j) * curl_i;
                    if (has(t, term::DivAugment)) a += k.kappa2 * bv.div(q, j) * div_i;
                    if (has(t, term::StrainGradNu)) {
                        // eps(v_j) grad nu
                        const double e00 = gj0.x(), e11 = gj1.y();
                        const double e01 = 0.5 * (gj0.y() + gj1.x());
                        const Vec2 eg(e00 * gnu.x() + e01 * gnu.y(), e01 * gnu.x() + e11 * gnu.y());
                        a -= 2.0 * eg.dot(vi);
                    }
                    if (conv) {
                        const Vec2 adv(gj0.dot(beta), gj1.dot(beta));
                        a += adv.dot(vi);
                    }
                    if (lin) a += (gu * vj).dot(vi);
                    local(i, j) += w * a;
                }

                for (int m = 0; m < nW; ++m) {
                    const double th = bw.value(q, m);
                    if (has(t, term::ViscousCoupling)) {
                        const double vc = w * nu * th * curl_i;
                        local(i, nV + m) += vc;
                        local(nV + m, i) += -vc;
                    }
                    double a = 0.0;
                    if (has(t, term::CurlAugment)) a -= k.kappa1 * th * curl_i;
                    if (has(t, term::CrossGradNu)) a += th * (gnu.x() * vi.y() - gnu.y() * vi.x());
                    if (a != 0.0) local(i, nV + m) += w * a;
                }

                if (has(t, term::Pressure)) {
                    for (int m = 0; m < nQ; ++m) {
                        const double b = -w * bq.value(q, m) * div_i;
                        local(i, nV + nW + m) += b;
                        local(nV + nW + m, i) += b;
                    }
                }

                if (has(t, term::Load)) local_rhs[i] += w * k.f(x).dot(vi);
                if (lin) local_conv[i] += w * uq_conv.dot(vi);
            }

            if (has(t, term::VorticityMass)) {
                for (int m = 0; m < nW; ++m) {
                    for (int l = 0; l < nW; ++l) {
                        local(nV + m, nV + l) += w * nu * bw.value(q, m) * bw.value(q, l);
                    }
                }
            }
            if (has(t, term::Multiplier)) {
                for (int m = 0; m < nQ; ++m) local_mean[m] += w * bq.value(q, m);
            }
        }

        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                out.triplets.emplace_back(gdofs[static_cast<std::size_t>(i)], gdofs[static_cast<std::size_t>(j)], local(i, j));
            }
        }
        if (has(t, term::Multiplier)) {
            for (int m = 0; m < nQ; ++m) {
                const int row = gdofs[static_cast<std::size_t>(nV + nW + m)];
                out.triplets.emplace_back(row, in.blocks.multiplier, local_mean[m]);
                out.triplets.emplace_back(in.blocks.multiplier, row, local_mean[m]);
            }
        }
        if (has(t, term::Load)) {
            for (int i = 0; i < nV; ++i) out.rhs.emplace_back(gdofs[static_cast<std::size_t>(i)], local_rhs[i]);
        }
        if (lin) {
            for (int i = 0; i < nV; ++i) out.convection.emplace_back(gdofs[static_cast<std::size_t>(i)], local_conv[i]);
        }
    }
}

AssembledSystem assemble_impl(const SpaceTriple& spaces, const ProblemCoefficients& coeffs,
                              const Eigen::VectorXd* beta, const Eigen::VectorXd* linearise,
                              const AssemblyOptions& options, Eigen::VectorXd* convection = nullptr)
{
    check_spaces(spaces);
    coeffs.validate();

    const int degree = options.quadrature_degree > 0 ? options.quadrature_degree : default_quadrature_degree(spaces);
    const QuadratureRule rule = quadrature(degree);

    KernelInput in;
    in.spaces = &spaces;
    in.coeffs = &coeffs;
    in.beta = beta;
    in.linearise = linearise;
    in.rule = &rule;
    in.blocks = block_index(spaces);
    in.terms = options.terms;

    const int n_cells = static_cast<int>(spaces.velocity->mesh().n_cells());
    const int n_workers = std::clamp(options.threads, 1, std::max(1, n_cells));
    std::vector<Contribution> parts(static_cast<std::size_t>(n_workers));
    if (n_workers == 1) {
        assemble_range(in, 0, n_cells, parts[0]);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < n_workers; ++w) {
            const int b = static_cast<int>(static_cast<long>(n_cells) * w / n_workers);
            const int e = static_cast<int>(static_cast<long>(n_cells) * (w + 1) / n_workers);
            workers.emplace_back(assemble_range, std::cref(in), b, e, std::ref(parts[static_cast<std::size_t>(w)]));
        }
        for (auto& th : workers) th.join();
    }

    // merge in cell order so that the result does not depend on the worker count
    std::size_t nt = 0;
    for (const auto& p : parts) nt += p.triplets.size();
    std::vector<Triplet> triplets;
    triplets.reserve(nt);
    for (const auto& p : parts) triplets.insert(triplets.end(), p.triplets.begin(), p.triplets.end());

    AssembledSystem sys;
    sys.blocks = in.blocks;
    sys.matrix.resize(sys.blocks.size, sys.blocks.size);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.rhs = Eigen::VectorXd::Zero(sys.blocks.size);
    for (const auto& p : parts) {
        for (const auto& [row, v] : p.rhs) sys.rhs[row] += v;
    }
    if (convection) {
        *convection = Eigen::VectorXd::Zero(sys.blocks.size);
        for (const auto& p : parts) {
            for (const auto& [row, v] : p.convection) (*convection)[row] += v;
        }
    }
    if (has(options.terms, term::Multiplier)) {
        sys.rhs[sys.blocks.multiplier] = options.pressure_mean;
        // keep the multiplier column/row structurally present
        sys.matrix.coeffRef(sys.blocks.multiplier, sys.blocks.multiplier) += 0.0;
    }
    sys.matrix.makeCompressed();
    return sys;
}

Eigen::VectorXd velocity_part(const SpaceTriple& spaces, const Eigen::VectorXd& x)
{
    return x.head(spaces.velocity->n_dofs());
}

}  // namespace

AssembledSystem assemble_oseen(const SpaceTriple& spaces, const ProblemCoefficients& coeffs,
                               const DiscreteField* beta, const AssemblyOptions& options)
{
    if (beta && beta->space_ptr() != spaces.velocity) {
        throw UsageError("assemble_oseen: advecting field must live in the velocity space");
    }
    return assemble_impl(spaces, coeffs, beta ? &beta->coefficients() : nullptr, nullptr, options);
}

Eigen::VectorXd nonlinear_residual(const SpaceTriple& spaces, const ProblemCoefficients& coeffs,
                                   const Eigen::VectorXd& iterate, const AssemblyOptions& options)
{
    if (iterate.size() != spaces.total_dofs()) throw UsageError("nonlinear_residual: iterate has wrong length");
    const Eigen::VectorXd u = velocity_part(spaces, iterate);
    const AssembledSystem k = assemble_impl(spaces, coeffs, &u, nullptr, options);
    Eigen::VectorXd r = k.rhs - k.matrix * iterate;
    for (int d : spaces.velocity->dirichlet_dofs()) r[d] = 0.0;
    return r;
}

NewtonSystem assemble_newton(const SpaceTriple& spaces, const ProblemCoefficients& coeffs,
                             const Eigen::VectorXd& iterate, const AssemblyOptions& options)
{
    if (iterate.size() != spaces.total_dofs()) throw UsageError("assemble_newton: iterate has wrong length");
    const Eigen::VectorXd u = velocity_part(spaces, iterate);
    NewtonSystem ns;
    Eigen::VectorXd conv;
    ns.jacobian = assemble_impl(spaces, coeffs, &u, &u, options, &conv);
    // K(u) x = J x - ((x_u . grad) u, v) and the latter equals N(u; u, v)
    ns.residual = ns.jacobian.rhs - ns.jacobian.matrix * iterate + conv;
    for (int d : spaces.velocity->dirichlet_dofs()) ns.residual[d] = 0.0;
    ns.jacobian.rhs = ns.residual;
    return ns;
}

void apply_dirichlet(AssembledSystem& sys, const std::vector<std::pair<int, double>>& values)
{
    if (sys.bc_applied) throw UsageError("apply_dirichlet: boundary conditions already applied");
    const int n = static_cast<int>(sys.matrix.rows());
    std::vector<char> constrained(static_cast<std::size_t>(n), 0);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    for (const auto& [d, v] : values) {
        const int row = sys.blocks.velocity + d;
        constrained[static_cast<std::size_t>(row)] = 1;
        g[row] = v;
    }

    SparseMatrix& a = sys.matrix;
    for (int col = 0; col < a.outerSize(); ++col) {
        const bool ccol = constrained[static_cast<std::size_t>(col)];
        for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
            const bool crow = constrained[static_cast<std::size_t>(it.row())];
            if (ccol && !crow) sys.rhs[it.row()] -= it.value() * g[col];
            if (ccol || crow) it.valueRef() = 0.0;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!constrained[static_cast<std::size_t>(i)]) continue;
        a.coeffRef(i, i) = 1.0;
        sys.rhs[i] = g[i];
    }
    a.prune(0.0);
    a.makeCompressed();
    sys.bc_applied = true;
}

void apply_dirichlet(AssembledSystem& sys, const FunctionSpace& velocity, const BoundaryFunction& g)
{
    apply_dirichlet(sys, velocity.boundary_values(g));
}

SparseMatrix assemble_gram_X(const SpaceTriple& spaces, int degree)
{
    check_spaces(spaces);
    if (degree <= 0) degree = default_quadrature_degree(spaces);
    const QuadratureRule rule = quadrature(degree);
    const Mesh& mesh = spaces.velocity->mesh();
    const int nu = spaces.velocity->n_dofs();
    const int nV = spaces.velocity->dofs_per_cell();
    const int nW = spaces.vorticity->dofs_per_cell();

    std::vector<Triplet> trip;
    CellBasis bv, bw;
    for (int c = 0; c < static_cast<int>(mesh.n_cells()); ++c) {
        spaces.velocity->tabulate(c, rule.points, bv);
        spaces.vorticity->tabulate(c, rule.points, bw);
        const double det = cell_geometry(mesh, c).det;
        const auto dv = spaces.velocity->cell_dofs(c);
        const auto dw = spaces.vorticity->cell_dofs(c);
        Eigen::MatrixXd kv = Eigen::MatrixXd::Zero(nV, nV);
        Eigen::MatrixXd kw = Eigen::MatrixXd::Zero(nW, nW);
        for (int q = 0; q < static_cast<int>(rule.size()); ++q) {
            const double w = rule.weights[static_cast<std::size_t>(q)] * det;
            for (int i = 0; i < nV; ++i) {
                for (int j = 0; j < nV; ++j) {
                    kv(i, j) += w * (bv.value(q, i, 0) * bv.value(q, j, 0) + bv.value(q, i, 1) * bv.value(q, j, 1) +
                                     bv.curl(q, i) * bv.curl(q, j) + bv.div(q, i) * bv.div(q, j));
                }
            }
            for (int i = 0; i < nW; ++i) {
                for (int j = 0; j < nW; ++j) kw(i, j) += w * bw.value(q, i) * bw.value(q, j);
            }
        }
        for (int i = 0; i < nV; ++i) {
            for (int j = 0; j < nV; ++j) trip.emplace_back(dv[static_cast<std::size_t>(i)], dv[static_cast<std::size_t>(j)], kv(i, j));
        }
        for (int i = 0; i < nW; ++i) {
            for (int j = 0; j < nW; ++j) trip.emplace_back(nu + dw[static_cast<std::size_t>(i)], nu + dw[static_cast<std::size_t>(j)], kw(i, j));
        }
    }
    const int n = nu + spaces.vorticity->n_dofs();
    SparseMatrix g(n, n);
    g.setFromTriplets(trip.begin(), trip.end());
    return g;
}

FieldTriple split_solution(const SpaceTriple& spaces, const Eigen::VectorXd& x)
{
    const BlockIndex b = block_index(spaces);
    if (x.size() != b.size) throw UsageError("split_solution: vector has wrong length");
    return FieldTriple{DiscreteField(spaces.velocity, x.segment(b.velocity, spaces.velocity->n_dofs())),
                       DiscreteField(spaces.vorticity, x.segment(b.vorticity, spaces.vorticity->n_dofs())),
                       DiscreteField(spaces.pressure, x.segment(b.pressure, spaces.pressure->n_dofs())),
                       x[b.multiplier]};
}

double pressure_integral(const DiscreteField& p)
{
    const FunctionSpace& s = p.space();
    const QuadratureRule rule = quadrature(2);
    CellBasis b;
    double sum = 0.0;
    for (int c = 0; c < static_cast<int>(s.mesh().n_cells()); ++c) {
        s.tabulate(c, rule.points, b);
        const double det = cell_geometry(s.mesh(), c).det;
        const auto dofs = s.cell_dofs(c);
        for (int q = 0; q < b.n_points; ++q) {
            double v = 0.0;
            for (int i = 0; i < b.n_basis; ++i) v += p.coefficients()[dofs[static_cast<std::size_t>(i)]] * b.value(q, i);
            sum += rule.weights[static_cast<std::size_t>(q)] * det * v;
        }
    }
    return sum;
}

}  // namespace vvp
