#include "vvp/element.hpp"

#include "vvp/error.hpp"

#include <cmath>

namespace vvp {

int ElementFamily::n_shape() const
{
    switch (tag) {
    case Family::P1: return 3;
    case Family::P2: return 6;
    case Family::P1Bubble: return 4;
    case Family::BernardiRaugel: return 9;
    case Family::DG0: return 1;
    case Family::DG1: return 3;
    }
    return 0;
}

int ElementFamily::local_dofs() const
{
    if (tag == Family::BernardiRaugel) return 9;
    return n_shape() * n_components();
}

int ElementFamily::polynomial_degree() const
{
    switch (tag) {
    case Family::P1: return 1;
    case Family::P2: return 2;
    case Family::P1Bubble: return 3;
    case Family::BernardiRaugel: return 2;
    case Family::DG0: return 0;
    case Family::DG1: return 1;
    }
    return 0;
}

std::string to_string(Family f)
{
    switch (f) {
    case Family::P1: return "P1";
    case Family::P2: return "P2";
    case Family::P1Bubble: return "P1Bubble";
    case Family::BernardiRaugel: return "BernardiRaugel";
    case Family::DG0: return "DG0";
    case Family::DG1: return "DG1";
    }
    return "?";
}

std::array<double, 3> barycentric(const Point& p)
{
    return {1.0 - p.x() - p.y(), p.x(), p.y()};
}

namespace {

const std::array<Vec2, 3> kBaryGrad{Vec2(-1.0, -1.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};

}  // namespace

void scalar_shape(Family family, const Point& p, double* val, Vec2* grad)
{
    const auto l = barycentric(p);
    switch (family) {
    case Family::DG0:
        val[0] = 1.0;
        grad[0] = Vec2::Zero();
        return;
    case Family::P1:
    case Family::DG1:
        for (int i = 0; i < 3; ++i) {
            val[i] = l[static_cast<std::size_t>(i)];
            grad[i] = kBaryGrad[static_cast<std::size_t>(i)];
        }
        return;
    case Family::P1Bubble:
        for (int i = 0; i < 3; ++i) {
            val[i] = l[static_cast<std::size_t>(i)];
            grad[i] = kBaryGrad[static_cast<std::size_t>(i)];
        }
        val[3] = l[0] * l[1] * l[2];
        grad[3] = l[1] * l[2] * kBaryGrad[0] + l[0] * l[2] * kBaryGrad[1] + l[0] * l[1] * kBaryGrad[2];
        return;
    case Family::P2:
        for (int i = 0; i < 3; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            val[i] = l[ui] * (2.0 * l[ui] - 1.0);
            grad[i] = (4.0 * l[ui] - 1.0) * kBaryGrad[ui];
        }
        // midpoint node of local edge k (opposite vertex k)
        for (int k = 0; k < 3; ++k) {
            const auto a = static_cast<std::size_t>((k + 1) % 3);
            const auto b = static_cast<std::size_t>((k + 2) % 3);
            val[3 + k] = 4.0 * l[a] * l[b];
            grad[3 + k] = 4.0 * (l[b] * kBaryGrad[a] + l[a] * kBaryGrad[b]);
        }
        return;
    case Family::BernardiRaugel:
        break;
    }
    throw UsageError("scalar_shape: BernardiRaugel has no scalar shape set");
}

BasisValues reference_basis(const ElementFamily& family, const Point& p)
{
    constexpr double tol = 1e-12;
    if (p.x() < -tol || p.y() < -tol || p.x() + p.y() > 1.0 + tol) {
        throw DomainError("reference_basis: point outside the reference triangle");
    }
    BasisValues b;
    if (family.tag != Family::BernardiRaugel) {
        b.size = family.n_shape();
        b.components = 1;
        b.values.resize(static_cast<std::size_t>(b.size));
        b.gradients.resize(static_cast<std::size_t>(b.size));
        scalar_shape(family.tag, p, b.values.data(), b.gradients.data());
        return b;
    }

    b.size = 9;
    b.components = 2;
    b.values.assign(18, 0.0);
    b.gradients.assign(18, Vec2::Zero());
    double lv[3];
    Vec2 lg[3];
    scalar_shape(Family::P1, p, lv, lg);
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < 3; ++i) {
            const auto idx = static_cast<std::size_t>((3 * c + i) * 2 + c);
            b.values[idx] = lv[i];
            b.gradients[idx] = lg[i];
        }
    }
    const double s = 1.0 / std::sqrt(2.0);
    const std::array<Vec2, 3> normals{Vec2(s, s), Vec2(-1.0, 0.0), Vec2(0.0, -1.0)};
    for (int k = 0; k < 3; ++k) {
        const int a = (k + 1) % 3, c = (k + 2) % 3;
        const double bub = lv[a] * lv[c];
        const Vec2 gbub = lv[c] * lg[a] + lv[a] * lg[c];
        for (int comp = 0; comp < 2; ++comp) {
            const auto idx = static_cast<std::size_t>((6 + k) * 2 + comp);
            b.values[idx] = bub * normals[static_cast<std::size_t>(k)][comp];
            b.gradients[idx] = gbub * normals[static_cast<std::size_t>(k)][comp];
        }
    }
    return b;
}

std::vector<Point> reference_nodes(Family family)
{
    const std::vector<Point> vertices{Point(0, 0), Point(1, 0), Point(0, 1)};
    switch (family) {
    case Family::P1:
    case Family::DG1:
        return vertices;
    case Family::P2:
        return {Point(0, 0), Point(1, 0), Point(0, 1), Point(0.5, 0.5), Point(0, 0.5), Point(0.5, 0)};
    case Family::P1Bubble:
        return {Point(0, 0), Point(1, 0), Point(0, 1), Point(1.0 / 3.0, 1.0 / 3.0)};
    case Family::DG0:
        return {Point(1.0 / 3.0, 1.0 / 3.0)};
    case Family::BernardiRaugel:
        break;
    }
    throw UsageError("reference_nodes: BernardiRaugel has no nodal point set");
}

}  // namespace vvp
