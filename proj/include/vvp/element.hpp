#pragma once

#include "vvp/mesh.hpp"

#include <string>
#include <vector>

namespace vvp {

enum class Family { P1, P2, P1Bubble, BernardiRaugel, DG0, DG1 };
enum class Continuity { Continuous, Discontinuous };
enum class ValueRank { Scalar, Vector2 };

/// Local element on a triangle. Lagrange-type families (P1, P2, P1Bubble,
/// DG0, DG1) are used componentwise when value_rank is Vector2;
/// BernardiRaugel is always vector-valued.
struct ElementFamily {
    Family tag = Family::P1;
    ValueRank value_rank = ValueRank::Scalar;

    static ElementFamily scalar(Family f) { return {f, ValueRank::Scalar}; }
    static ElementFamily vector(Family f) { return {f, ValueRank::Vector2}; }

    Continuity continuity() const
    {
        return (tag == Family::DG0 || tag == Family::DG1) ? Continuity::Discontinuous
                                                         : Continuity::Continuous;
    }
    int n_components() const { return value_rank == ValueRank::Vector2 ? 2 : 1; }
    /// Number of scalar shape functions per cell (for BernardiRaugel: the vector basis).
    int n_shape() const;
    int local_dofs() const;
    /// Highest polynomial degree present in the local space.
    int polynomial_degree() const;

    bool operator==(const ElementFamily&) const = default;
};

std::string to_string(Family f);

/// Barycentric coordinates (l0, l1, l2) = (1 - x - y, x, y) of a reference point.
std::array<double, 3> barycentric(const Point& ref);

/// Values and reference-coordinate gradients of all local basis functions at
/// one point. Entry (i, c) is component c of basis function i.
struct BasisValues {
    int size = 0;
    int components = 1;
    std::vector<double> values;
    std::vector<Vec2> gradients;

    double value(int i, int c = 0) const { return values[static_cast<std::size_t>(i * components + c)]; }
    const Vec2& gradient(int i, int c = 0) const
    {
        return gradients[static_cast<std::size_t>(i * components + c)];
    }
};

/// Reference basis at a point of the closed reference triangle. Lagrange-type
/// families return their scalar shape functions; BernardiRaugel returns its
/// nine vector functions (componentwise P1 followed by the edge-normal bubbles
/// built on the reference outward normals). Throws DomainError outside the
/// triangle.
BasisValues reference_basis(const ElementFamily& family, const Point& point);

/// Scalar shape functions of a Lagrange-type family, without the domain check.
void scalar_shape(Family family, const Point& point, double* values, Vec2* gradients);

/// Reference coordinates of the Lagrange nodes (P1, P2, DG1) or the centroid
/// (DG0). The P1Bubble bubble is associated with the centroid.
std::vector<Point> reference_nodes(Family family);

}  // namespace vvp
