#include "vvp/mesh.hpp"

#include "vvp/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace vvp {

CellGeometry triangle_geometry(const std::array<Point, 3>& v)
{
    CellGeometry g;
    g.jacobian.col(0) = v[1] - v[0];
    g.jacobian.col(1) = v[2] - v[0];
    g.det = g.jacobian.determinant();
    const double scale = (v[1] - v[0]).squaredNorm() + (v[2] - v[0]).squaredNorm();
    if (!(g.det > 1e-14 * scale)) {
        throw GeometryError("triangle_geometry: degenerate or clockwise cell (det J = " +
                            std::to_string(g.det) + ")");
    }
    g.area = 0.5 * g.det;
    g.inverse_transpose = g.jacobian.inverse().transpose();
    return g;
}

std::array<Point, 3> Mesh::cell_vertices(int c) const
{
    const auto& t = cell(c);
    return {vertex(t[0]), vertex(t[1]), vertex(t[2])};
}

double Mesh::signed_area(int c) const
{
    const auto v = cell_vertices(c);
    const Vec2 a = v[1] - v[0];
    const Vec2 b = v[2] - v[0];
    return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Mesh build_structured(int nx, int ny, const Rect& rect)
{
    if (nx < 1 || ny < 1) {
        throw InvalidArgument("build_structured: subdivisions must be >= 1");
    }
    if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0)) {
        throw InvalidArgument("build_structured: degenerate rectangle");
    }

    Mesh m;
    m.nx_ = nx;
    m.ny_ = ny;
    m.rect_ = rect;

    const auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    m.vertices_.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const double x = i == nx ? rect.x1 : rect.x0 + rect.width() * i / nx;
            const double y = j == ny ? rect.y1 : rect.y0 + rect.height() * j / ny;
            m.vertices_.emplace_back(x, y);
        }
    }

    m.cells_.reserve(static_cast<std::size_t>(2 * nx * ny));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            m.cells_.push_back({v00, v10, v11});
            m.cells_.push_back({v00, v11, v01});
        }
    }

    // Edges numbered in order of first appearance over the cells.
    std::map<std::pair<int, int>, int> lookup;
    m.cell_edges_.resize(m.cells_.size());
    for (int c = 0; c < static_cast<int>(m.cells_.size()); ++c) {
        const auto& t = m.cells_[static_cast<std::size_t>(c)];
        for (int k = 0; k < 3; ++k) {
            const int a = t[static_cast<std::size_t>((k + 1) % 3)];
            const int b = t[static_cast<std::size_t>((k + 2) % 3)];
            const auto key = std::minmax(a, b);
            auto [it, inserted] = lookup.try_emplace({key.first, key.second},
                                                     static_cast<int>(m.edges_.size()));
            if (inserted) {
                Edge e;
                e.vertices = {key.first, key.second};
                e.cells[0] = c;
                m.edges_.push_back(e);
            } else {
                m.edges_[static_cast<std::size_t>(it->second)].cells[1] = c;
            }
            m.cell_edges_[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] = it->second;
        }
    }

    for (auto& e : m.edges_) {
        if (!e.on_boundary()) continue;
        const Point& a = m.vertices_[static_cast<std::size_t>(e.vertices[0])];
        const Point& b = m.vertices_[static_cast<std::size_t>(e.vertices[1])];
        if (a.y() == rect.y0 && b.y() == rect.y0) e.tag = BoundaryTag::Bottom;
        else if (a.y() == rect.y1 && b.y() == rect.y1) e.tag = BoundaryTag::Top;
        else if (a.x() == rect.x0 && b.x() == rect.x0) e.tag = BoundaryTag::Left;
        else if (a.x() == rect.x1 && b.x() == rect.x1) e.tag = BoundaryTag::Right;
    }

    double h = 0.0;
    for (int c = 0; c < static_cast<int>(m.cells_.size()); ++c) {
        const auto v = m.cell_vertices(c);
        for (int k = 0; k < 3; ++k) {
            h = std::max(h, (v[static_cast<std::size_t>((k + 1) % 3)] -
                             v[static_cast<std::size_t>(k)]).norm());
        }
    }
    m.h_ = h;
    return m;
}

Mesh refine_uniform(const Mesh& mesh)
{
    return build_structured(2 * mesh.nx(), 2 * mesh.ny(), mesh.rect());
}

CellGeometry cell_geometry(const Mesh& mesh, int cell)
{
    if (cell < 0 || cell >= static_cast<int>(mesh.n_cells())) {
        throw InvalidArgument("cell_geometry: cell index out of range");
    }
    return triangle_geometry(mesh.cell_vertices(cell));
}

}  // namespace vvp
