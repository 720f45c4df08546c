#include "vvp/space.hpp"

#include "vvp/error.hpp"
#include "vvp/quadrature.hpp"

#include <algorithm>
#include <map>

namespace vvp {

FunctionSpace::FunctionSpace(std::shared_ptr<const Mesh> mesh, ElementFamily family)
    : mesh_(std::move(mesh)), family_(family)
{
    if (!mesh_) throw InvalidArgument("FunctionSpace: null mesh");
    if (family_.tag == Family::BernardiRaugel && family_.value_rank != ValueRank::Vector2) {
        throw InvalidArgument("FunctionSpace: Bernardi-Raugel is vector-valued");
    }

    const Mesh& m = *mesh_;
    const int nv = static_cast<int>(m.n_vertices());
    const int nc = static_cast<int>(m.n_cells());
    const int ne = static_cast<int>(m.n_edges());
    const int ncomp = family_.n_components();
    dofs_per_cell_ = family_.local_dofs();
    cell_dofs_.resize(static_cast<std::size_t>(nc * dofs_per_cell_));

    // scalar node numbering of one component, local order as in scalar_shape
    std::vector<int> nodes;
    const auto cell_nodes = [&](int c) {
        const auto& t = m.cell(c);
        const auto& ce = m.cell_edges(c);
        nodes.clear();
        switch (family_.tag) {
        case Family::P1:
            nodes = {t[0], t[1], t[2]};
            break;
        case Family::P2:
            nodes = {t[0], t[1], t[2], nv + ce[0], nv + ce[1], nv + ce[2]};
            break;
        case Family::P1Bubble:
            nodes = {t[0], t[1], t[2], nv + c};
            break;
        case Family::DG0:
            nodes = {c};
            break;
        case Family::DG1:
            nodes = {3 * c, 3 * c + 1, 3 * c + 2};
            break;
        case Family::BernardiRaugel:
            nodes = {t[0], t[1], t[2]};
            break;
        }
    };

    switch (family_.tag) {
    case Family::P1: n_nodes_ = nv; break;
    case Family::P2: n_nodes_ = nv + ne; break;
    case Family::P1Bubble: n_nodes_ = nv + nc; break;
    case Family::DG0: n_nodes_ = nc; break;
    case Family::DG1: n_nodes_ = 3 * nc; break;
    case Family::BernardiRaugel: n_nodes_ = nv; break;
    }

    for (int c = 0; c < nc; ++c) {
        cell_nodes(c);
        int* out = cell_dofs_.data() + static_cast<std::size_t>(c * dofs_per_cell_);
        const int ns = static_cast<int>(nodes.size());
        for (int comp = 0; comp < ncomp; ++comp) {
            for (int i = 0; i < ns; ++i) {
                out[comp * ns + i] = comp * n_nodes_ + nodes[static_cast<std::size_t>(i)];
            }
        }
        if (family_.tag == Family::BernardiRaugel) {
            for (int k = 0; k < 3; ++k) out[6 + k] = 2 * nv + m.cell_edges(c)[static_cast<std::size_t>(k)];
        }
    }
    n_dofs_ = ncomp * n_nodes_ + (family_.tag == Family::BernardiRaugel ? ne : 0);

    if (family_.value_rank == ValueRank::Vector2) {
        std::vector<char> flag(static_cast<std::size_t>(n_dofs_), 0);
        for (int e = 0; e < ne; ++e) {
            const Edge& edge = m.edge(e);
            if (!edge.on_boundary()) continue;
            for (int comp = 0; comp < 2; ++comp) {
                for (int v : edge.vertices) flag[static_cast<std::size_t>(comp * n_nodes_ + v)] = 1;
                if (family_.tag == Family::P2) flag[static_cast<std::size_t>(comp * n_nodes_ + nv + e)] = 1;
            }
            if (family_.tag == Family::BernardiRaugel) flag[static_cast<std::size_t>(2 * nv + e)] = 1;
        }
        for (int d = 0; d < n_dofs_; ++d) {
            if (flag[static_cast<std::size_t>(d)]) dirichlet_dofs_.push_back(d);
        }
    }
}

Vec2 FunctionSpace::edge_normal(int e) const
{
    const Edge& edge = mesh_->edge(e);
    const Vec2 t = (mesh_->vertex(edge.vertices[1]) - mesh_->vertex(edge.vertices[0])).normalized();
    return {t.y(), -t.x()};
}

std::vector<std::pair<int, double>> FunctionSpace::boundary_values(const BoundaryFunction& g) const
{
    if (family_.value_rank != ValueRank::Vector2) {
        throw UsageError("boundary_values: Dirichlet data applies to vector spaces only");
    }
    const Mesh& m = *mesh_;
    const int nv = static_cast<int>(m.n_vertices());
    std::map<int, double> values;
    for (BoundaryTag tag : kDirichletTagOrder) {
        for (int e = 0; e < static_cast<int>(m.n_edges()); ++e) {
            const Edge& edge = m.edge(e);
            if (!edge.tag || *edge.tag != tag) continue;
            for (int v : edge.vertices) {
                const Vec2 gv = g(m.vertex(v), tag);
                values[v] = gv.x();
                values[n_nodes_ + v] = gv.y();
            }
            if (family_.tag == Family::P2) {
                const Point mid = 0.5 * (m.vertex(edge.vertices[0]) + m.vertex(edge.vertices[1]));
                const Vec2 gm = g(mid, tag);
                values[nv + e] = gm.x();
                values[n_nodes_ + nv + e] = gm.y();
            }
        }
    }

    if (family_.tag == Family::BernardiRaugel) {
        // bubble coefficient matches the edge flux of g: the bubble integrates to |e|/6
        std::vector<double> s, w;
        gauss_legendre_01(6, s, w);
        for (BoundaryTag tag : kDirichletTagOrder) {
            for (int e = 0; e < static_cast<int>(m.n_edges()); ++e) {
                const Edge& edge = m.edge(e);
                if (!edge.tag || *edge.tag != tag) continue;
                const int a = edge.vertices[0], b = edge.vertices[1];
                const Point& pa = m.vertex(a);
                const Point& pb = m.vertex(b);
                const Vec2 n = edge_normal(e);
                const Vec2 ua(values[a], values[n_nodes_ + a]);
                const Vec2 ub(values[b], values[n_nodes_ + b]);
                double flux = 0.0;
                for (std::size_t q = 0; q < s.size(); ++q) {
                    const Point x = (1.0 - s[q]) * pa + s[q] * pb;
                    const Vec2 lin = (1.0 - s[q]) * ua + s[q] * ub;
                    flux += w[q] * (g(x, tag) - lin).dot(n);
                }
                values[2 * nv + e] = 6.0 * flux;  // flux already carries the 1/|e| scaling
            }
        }
    }
    return {values.begin(), values.end()};
}

void FunctionSpace::tabulate(int cell, std::span<const Point> pts, CellBasis& out) const
{
    const CellGeometry geo = cell_geometry(*mesh_, cell);
    const Mat2& jit = geo.inverse_transpose;
    const int ncomp = n_components();
    out.n_points = static_cast<int>(pts.size());
    out.n_basis = dofs_per_cell_;
    out.components = ncomp;
    out.values.assign(static_cast<std::size_t>(out.n_points * out.n_basis * ncomp), 0.0);
    out.gradients.assign(out.values.size(), Vec2::Zero());

    double sv[9];
    Vec2 sg[9];
    if (family_.tag != Family::BernardiRaugel) {
        const int ns = family_.n_shape();
        for (int q = 0; q < out.n_points; ++q) {
            scalar_shape(family_.tag, pts[static_cast<std::size_t>(q)], sv, sg);
            for (int comp = 0; comp < ncomp; ++comp) {
                for (int i = 0; i < ns; ++i) {
                    const auto idx = out.index(q, comp * ns + i, comp);
                    out.values[idx] = sv[i];
                    out.gradients[idx] = jit * sg[i];
                }
            }
        }
        return;
    }

    std::array<Vec2, 3> normals;
    for (int k = 0; k < 3; ++k) {
        normals[static_cast<std::size_t>(k)] = edge_normal(mesh_->cell_edges(cell)[static_cast<std::size_t>(k)]);
    }
    for (int q = 0; q < out.n_points; ++q) {
        scalar_shape(Family::P1, pts[static_cast<std::size_t>(q)], sv, sg);
        Vec2 pg[3];
        for (int i = 0; i < 3; ++i) pg[i] = jit * sg[i];
        for (int comp = 0; comp < 2; ++comp) {
            for (int i = 0; i < 3; ++i) {
                const auto idx = out.index(q, 3 * comp + i, comp);
                out.values[idx] = sv[i];
                out.gradients[idx] = pg[i];
            }
        }
        for (int k = 0; k < 3; ++k) {
            const int a = (k + 1) % 3, b = (k + 2) % 3;
            const double bub = sv[a] * sv[b];
            const Vec2 gbub = sv[b] * pg[a] + sv[a] * pg[b];
            const Vec2& n = normals[static_cast<std::size_t>(k)];
            for (int comp = 0; comp < 2; ++comp) {
                const auto idx = out.index(q, 6 + k, comp);
                out.values[idx] = bub * n[comp];
                out.gradients[idx] = gbub * n[comp];
            }
        }
    }
}

std::shared_ptr<const FunctionSpace> build_space(std::shared_ptr<const Mesh> mesh, ElementFamily family)
{
    return std::make_shared<const FunctionSpace>(std::move(mesh), family);
}

SpaceTriple build_spaces(std::shared_ptr<const Mesh> mesh, const ElementSelection& sel)
{
    SpaceTriple s;
    switch (sel.velocity) {
    case VelocityElement::TaylorHood:
        s.velocity = build_space(mesh, ElementFamily::vector(Family::P2));
        s.pressure = build_space(mesh, ElementFamily::scalar(Family::P1));
        break;
    case VelocityElement::Mini:
        s.velocity = build_space(mesh, ElementFamily::vector(Family::P1Bubble));
        s.pressure = build_space(mesh, ElementFamily::scalar(Family::P1));
        break;
    case VelocityElement::BernardiRaugel:
        s.velocity = build_space(mesh, ElementFamily::vector(Family::BernardiRaugel));
        s.pressure = build_space(mesh, ElementFamily::scalar(Family::DG0));
        break;
    }
    switch (sel.vorticity) {
    case VorticitySpace::CG1: s.vorticity = build_space(mesh, ElementFamily::scalar(Family::P1)); break;
    case VorticitySpace::DG0: s.vorticity = build_space(mesh, ElementFamily::scalar(Family::DG0)); break;
    case VorticitySpace::DG1: s.vorticity = build_space(mesh, ElementFamily::scalar(Family::DG1)); break;
    }
    return s;
}

int default_quadrature_degree(const SpaceTriple& spaces)
{
    return 2 * spaces.velocity->family().polynomial_degree() + 2;
}

}  // namespace vvp
