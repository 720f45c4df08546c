#pragma once

#include "vvp/space.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>

namespace vvp {

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Vec2(const Point&)>;

/// Coefficient vector bound to a function space.
class DiscreteField {
public:
    explicit DiscreteField(std::shared_ptr<const FunctionSpace> space);
    DiscreteField(std::shared_ptr<const FunctionSpace> space, Eigen::VectorXd coefficients);

    const FunctionSpace& space() const { return *space_; }
    const std::shared_ptr<const FunctionSpace>& space_ptr() const { return space_; }
    const Eigen::VectorXd& coefficients() const { return coefficients_; }
    Eigen::VectorXd& coefficients() { return coefficients_; }

private:
    std::shared_ptr<const FunctionSpace> space_;
    Eigen::VectorXd coefficients_;
};

/// Value and derivatives of a field at one point of a cell. Row c of
/// `gradient` is the gradient of component c; curl and div are set for
/// vector fields only.
struct PointEval {
    int components = 1;
    Vec2 value = Vec2::Zero();
    Mat2 gradient = Mat2::Zero();
    std::optional<double> curl;
    std::optional<double> div;

    double scalar() const { return value.x(); }
};

PointEval eval_cell(const DiscreteField& field, int cell, const Point& ref_point);

/// curl2d (dv_1/dx - dv_0/dy); throws UsageError on scalar fields.
double curl2d(const DiscreteField& field, int cell, const Point& ref_point);
/// div2d; throws UsageError on scalar fields.
double div2d(const DiscreteField& field, int cell, const Point& ref_point);

/// Nodal interpolation into a scalar space; DG0 takes the centroid value and
/// the P1Bubble bubble matches the centroid value.
DiscreteField interpolate(std::shared_ptr<const FunctionSpace> space, const ScalarFunction& fn);

/// Interpolation into a vector space; the Bernardi-Raugel bubbles match the
/// normal flux of fn over each edge.
DiscreteField interpolate_vector(std::shared_ptr<const FunctionSpace> space, const VectorFunction& fn);

/// Physical coordinates of a reference point in a cell.
Point map_to_physical(const Mesh& mesh, int cell, const Point& ref_point);

}  // namespace vvp
