#pragma once

#include "vvp/element.hpp"
#include "vvp/mesh.hpp"

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace vvp {

/// Boundary datum; receives the tag of the boundary edge being processed so
/// that discontinuous data (a moving lid) can be expressed.
using BoundaryFunction = std::function<Vec2(const Point&, BoundaryTag)>;

/// Basis functions of one cell mapped to physical coordinates at a set of
/// points. Entry (q, i, c): point q, local basis function i, component c.
struct CellBasis {
    int n_points = 0;
    int n_basis = 0;
    int components = 1;
    std::vector<double> values;
    std::vector<Vec2> gradients;

    std::size_t index(int q, int i, int c) const
    {
        return static_cast<std::size_t>((q * n_basis + i) * components + c);
    }
    double value(int q, int i, int c = 0) const { return values[index(q, i, c)]; }
    const Vec2& gradient(int q, int i, int c = 0) const { return gradients[index(q, i, c)]; }

    /// dv_1/dx - dv_0/dy of a vector basis function.
    double curl(int q, int i) const { return gradient(q, i, 1).x() - gradient(q, i, 0).y(); }
    double div(int q, int i) const { return gradient(q, i, 0).x() + gradient(q, i, 1).y(); }
};

/// Global finite element space: element family on a mesh with a global DOF
/// numbering. Immutable after construction.
///
/// Numbering: vertex nodes first, then edge nodes (P2) or cell bubbles
/// (P1Bubble); vector Lagrange spaces are blocked by component. Bernardi-Raugel
/// numbers the two P1 components followed by one normal bubble per edge,
/// oriented by the global edge direction (lower to higher vertex index).
class FunctionSpace {
public:
    FunctionSpace(std::shared_ptr<const Mesh> mesh, ElementFamily family);

    const Mesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
    const ElementFamily& family() const { return family_; }
    int n_dofs() const { return n_dofs_; }
    int dofs_per_cell() const { return dofs_per_cell_; }
    int n_components() const { return family_.n_components(); }

    std::span<const int> cell_dofs(int cell) const
    {
        return {cell_dofs_.data() + static_cast<std::size_t>(cell * dofs_per_cell_),
                static_cast<std::size_t>(dofs_per_cell_)};
    }

    /// Sorted DOFs with nonzero boundary trace (vector spaces only).
    const std::vector<int>& dirichlet_dofs() const { return dirichlet_dofs_; }

    /// Unit normal used by the Bernardi-Raugel bubble of a global edge.
    Vec2 edge_normal(int edge) const;

    /// Values of the constrained DOFs for boundary data g. Boundary edges are
    /// visited tag by tag in kDirichletTagOrder; later tags win at corners.
    std::vector<std::pair<int, double>> boundary_values(const BoundaryFunction& g) const;

    void tabulate(int cell, std::span<const Point> ref_points, CellBasis& out) const;

private:
    std::shared_ptr<const Mesh> mesh_;
    ElementFamily family_;
    int n_dofs_ = 0;
    int dofs_per_cell_ = 0;
    int n_nodes_ = 0;  // scalar node count of a componentwise space
    std::vector<int> cell_dofs_;
    std::vector<int> dirichlet_dofs_;
};

std::shared_ptr<const FunctionSpace> build_space(std::shared_ptr<const Mesh> mesh, ElementFamily family);

/// Velocity, vorticity and pressure spaces on one mesh.
struct SpaceTriple {
    std::shared_ptr<const FunctionSpace> velocity;
    std::shared_ptr<const FunctionSpace> vorticity;
    std::shared_ptr<const FunctionSpace> pressure;

    /// Size of the full system [u | omega | p | multiplier].
    int total_dofs() const { return velocity->n_dofs() + vorticity->n_dofs() + pressure->n_dofs() + 1; }
};

enum class VelocityElement { TaylorHood, Mini, BernardiRaugel };
enum class VorticitySpace { CG1, DG0, DG1 };

struct ElementSelection {
    VelocityElement velocity = VelocityElement::TaylorHood;
    VorticitySpace vorticity = VorticitySpace::DG1;

    bool operator==(const ElementSelection&) const = default;
};

/// Lowest-order members of the Taylor-Hood (P2/P1), MINI (P1+bubble/P1) and
/// Bernardi-Raugel (P1+edge bubbles/P0) pairs with the chosen vorticity space.
SpaceTriple build_spaces(std::shared_ptr<const Mesh> mesh, const ElementSelection& selection);

/// Default quadrature degree for forms: 2 * velocity degree + 2.
int default_quadrature_degree(const SpaceTriple& spaces);

}  // namespace vvp
