#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace vvp {

using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 1.0;
    double y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool operator==(const Rect&) const = default;
};

enum class BoundaryTag { Bottom, Right, Top, Left };

/// Order in which boundary data is applied; later tags overwrite earlier ones
/// at shared corners.
inline constexpr std::array<BoundaryTag, 4> kDirichletTagOrder{
    BoundaryTag::Bottom, BoundaryTag::Right, BoundaryTag::Left, BoundaryTag::Top};

struct Edge {
    std::array<int, 2> vertices;        // global vertex indices, vertices[0] < vertices[1]
    std::array<int, 2> cells{-1, -1};   // incident cells; cells[1] == -1 on the boundary
    std::optional<BoundaryTag> tag;

    bool on_boundary() const { return cells[1] < 0; }
};

/// Affine reference-to-physical map of one triangle.
struct CellGeometry {
    Mat2 jacobian;
    Mat2 inverse_transpose;
    double det = 0.0;
    double area = 0.0;
};

/// Geometry of the triangle with the given vertices; throws GeometryError
/// for degenerate or clockwise triangles.
CellGeometry triangle_geometry(const std::array<Point, 3>& vertices);

/// Structured triangulation of a rectangle. Every sub-rectangle is split along
/// its lower-left to upper-right diagonal. Immutable after construction.
class Mesh {
public:
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    const Rect& rect() const { return rect_; }
    double h() const { return h_; }

    std::size_t n_vertices() const { return vertices_.size(); }
    std::size_t n_cells() const { return cells_.size(); }
    std::size_t n_edges() const { return edges_.size(); }

    const Point& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
    const std::vector<Point>& vertices() const { return vertices_; }

    /// Counterclockwise vertex triple of a cell.
    const std::array<int, 3>& cell(int c) const { return cells_[static_cast<std::size_t>(c)]; }
    const std::vector<std::array<int, 3>>& cells() const { return cells_; }

    /// Local edge k of a cell is opposite local vertex k.
    const std::array<int, 3>& cell_edges(int c) const { return cell_edges_[static_cast<std::size_t>(c)]; }

    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::array<Point, 3> cell_vertices(int c) const;
    double signed_area(int c) const;

    friend Mesh build_structured(int nx, int ny, const Rect& rect);

private:
    Mesh() = default;

    int nx_ = 0;
    int ny_ = 0;
    Rect rect_;
    double h_ = 0.0;
    std::vector<Point> vertices_;
    std::vector<std::array<int, 3>> cells_;
    std::vector<std::array<int, 3>> cell_edges_;
    std::vector<Edge> edges_;
};

Mesh build_structured(int nx, int ny, const Rect& rect = Rect{});

/// Halves the mesh spacing in both directions.
Mesh refine_uniform(const Mesh& mesh);

CellGeometry cell_geometry(const Mesh& mesh, int cell);

}  // namespace vvp
