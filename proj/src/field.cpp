#include "vvp/field.hpp"

#include "vvp/error.hpp"
#include "vvp/quadrature.hpp"

#include <array>

namespace vvp {

DiscreteField::DiscreteField(std::shared_ptr<const FunctionSpace> space)
    : space_(std::move(space)), coefficients_(Eigen::VectorXd::Zero(space_->n_dofs()))
{
}

DiscreteField::DiscreteField(std::shared_ptr<const FunctionSpace> space, Eigen::VectorXd coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients))
{
    if (coefficients_.size() != space_->n_dofs()) {
        throw InvalidArgument("DiscreteField: coefficient length does not match the space");
    }
}

Point map_to_physical(const Mesh& mesh, int cell, const Point& ref)
{
    const auto v = mesh.cell_vertices(cell);
    return v[0] + ref.x() * (v[1] - v[0]) + ref.y() * (v[2] - v[0]);
}

PointEval eval_cell(const DiscreteField& field, int cell, const Point& ref)
{
    const FunctionSpace& space = field.space();
    CellBasis basis;
    space.tabulate(cell, std::span<const Point>(&ref, 1), basis);
    const auto dofs = space.cell_dofs(cell);
    const auto& x = field.coefficients();

    PointEval r;
    r.components = space.n_components();
    for (int i = 0; i < basis.n_basis; ++i) {
        const double xi = x[dofs[static_cast<std::size_t>(i)]];
        for (int c = 0; c < r.components; ++c) {
            r.value[c] += xi * basis.value(0, i, c);
            r.gradient.row(c) += xi * basis.gradient(0, i, c).transpose();
        }
    }
    if (r.components == 2) {
        r.curl = r.gradient(1, 0) - r.gradient(0, 1);
        r.div = r.gradient(0, 0) + r.gradient(1, 1);
    }
    return r;
}

double curl2d(const DiscreteField& field, int cell, const Point& ref)
{
    if (field.space().n_components() != 2) throw UsageError("curl2d: field is scalar");
    return *eval_cell(field, cell, ref).curl;
}

double div2d(const DiscreteField& field, int cell, const Point& ref)
{
    if (field.space().n_components() != 2) throw UsageError("div2d: field is scalar");
    return *eval_cell(field, cell, ref).div;
}

namespace {

// Coefficients of the scalar shape functions of one cell for a point function.
void local_scalar_interpolant(Family family, const Mesh& mesh, int cell,
                              const std::function<double(const Point&)>& fn, double* out)
{
    const auto nodes = reference_nodes(family);
    for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = fn(map_to_physical(mesh, cell, nodes[i]));
    if (family == Family::P1Bubble) {
        // bubble equals 1/27 at the centroid where the P1 part is the vertex mean
        out[3] = 27.0 * (out[3] - (out[0] + out[1] + out[2]) / 3.0);
    }
}

}  // namespace

DiscreteField interpolate(std::shared_ptr<const FunctionSpace> space, const ScalarFunction& fn)
{
    if (space->n_components() != 1) throw UsageError("interpolate: space is vector-valued");
    DiscreteField f(space);
    const Mesh& mesh = space->mesh();
    double local[6];
    for (int c = 0; c < static_cast<int>(mesh.n_cells()); ++c) {
        local_scalar_interpolant(space->family().tag, mesh, c, fn, local);
        const auto dofs = space->cell_dofs(c);
        for (std::size_t i = 0; i < dofs.size(); ++i) f.coefficients()[dofs[i]] = local[i];
    }
    return f;
}

DiscreteField interpolate_vector(std::shared_ptr<const FunctionSpace> space, const VectorFunction& fn)
{
    if (space->n_components() != 2) throw UsageError("interpolate_vector: space is scalar");
    DiscreteField f(space);
    const Mesh& mesh = space->mesh();
    const Family tag = space->family().tag;
    const Family scalar_tag = tag == Family::BernardiRaugel ? Family::P1 : tag;
    const int ns = tag == Family::BernardiRaugel ? 3 : space->family().n_shape();
    double local[6];
    for (int c = 0; c < static_cast<int>(mesh.n_cells()); ++c) {
        const auto dofs = space->cell_dofs(c);
        for (int comp = 0; comp < 2; ++comp) {
            local_scalar_interpolant(scalar_tag, mesh, c, [&](const Point& p) { return fn(p)[comp]; }, local);
            for (int i = 0; i < ns; ++i) {
                f.coefficients()[dofs[static_cast<std::size_t>(comp * ns + i)]] = local[i];
            }
        }
    }

    if (tag == Family::BernardiRaugel) {
        std::vector<double> s, w;
        gauss_legendre_01(6, s, w);
        const int nv = static_cast<int>(mesh.n_vertices());
        auto& x = f.coefficients();
        for (int e = 0; e < static_cast<int>(mesh.n_edges()); ++e) {
            const Edge& edge = mesh.edge(e);
            const int a = edge.vertices[0], b = edge.vertices[1];
            const Vec2 ua(x[a], x[nv + a]);
            const Vec2 ub(x[b], x[nv + b]);
            const Vec2 n = space->edge_normal(e);
            double flux = 0.0;
            for (std::size_t q = 0; q < s.size(); ++q) {
                const Point p = (1.0 - s[q]) * mesh.vertex(a) + s[q] * mesh.vertex(b);
                flux += w[q] * (fn(p) - ((1.0 - s[q]) * ua + s[q] * ub)).dot(n);
            }
            x[2 * nv + e] = 6.0 * flux;
        }
    }
    return f;
}

}  // namespace vvp
