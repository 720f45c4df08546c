#include "test_util.hpp"

#include "vvp/element.hpp"
#include "vvp/error.hpp"

#include <gtest/gtest.h>

using namespace vvp;
using vvp::testing::random_reference_point;

namespace {

const std::vector<ElementFamily> kAllFamilies = {
    ElementFamily::scalar(Family::P1),  ElementFamily::scalar(Family::P2),
    ElementFamily::scalar(Family::P1Bubble), ElementFamily::vector(Family::BernardiRaugel),
    ElementFamily::scalar(Family::DG0), ElementFamily::scalar(Family::DG1)};

}  // namespace

TEST(Element, P1IsNodalAtOrigin)
{
    const BasisValues b = reference_basis(ElementFamily::scalar(Family::P1), Point(0, 0));
    ASSERT_EQ(b.size, 3);
    EXPECT_EQ(b.value(0), 1.0);
    EXPECT_EQ(b.value(1), 0.0);
    EXPECT_EQ(b.value(2), 0.0);
}

TEST(Element, BubbleAtCentroid)
{
    const BasisValues b = reference_basis(ElementFamily::scalar(Family::P1Bubble), Point(1.0 / 3, 1.0 / 3));
    ASSERT_EQ(b.size, 4);
    EXPECT_NEAR(b.value(3), 1.0 / 27.0, 1e-16);
}

TEST(Element, LagrangeFamiliesAreNodal)
{
    for (Family f : {Family::P1, Family::P2, Family::DG1}) {
        const auto nodes = reference_nodes(f);
        const BasisValues probe = reference_basis(ElementFamily::scalar(f), nodes[0]);
        ASSERT_EQ(static_cast<std::size_t>(probe.size), nodes.size());
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const BasisValues b = reference_basis(ElementFamily::scalar(f), nodes[j]);
            for (int i = 0; i < b.size; ++i) {
                EXPECT_NEAR(b.value(i), static_cast<std::size_t>(i) == j ? 1.0 : 0.0, 1e-15)
                    << to_string(f) << " basis " << i << " node " << j;
            }
        }
    }
}

TEST(Element, PartitionOfUnity)
{
    std::mt19937 rng(7);
    for (int k = 0; k < 50; ++k) {
        const Point p = random_reference_point(rng);
        for (Family f : {Family::P1, Family::P2, Family::DG1, Family::DG0}) {
            const BasisValues b = reference_basis(ElementFamily::scalar(f), p);
            double sum = 0.0;
            Vec2 grad = Vec2::Zero();
            for (int i = 0; i < b.size; ++i) {
                sum += b.value(i);
                grad += b.gradient(i);
            }
            EXPECT_NEAR(sum, 1.0, 1e-13);
            EXPECT_NEAR(grad.norm(), 0.0, 1e-12);
        }
    }
}

TEST(Element, GradientsMatchFiniteDifferences)
{
    std::mt19937 rng(11);
    const double eps = 1e-6;
    for (const auto& fam : kAllFamilies) {
        for (int k = 0; k < 10; ++k) {
            // keep the stencil inside the triangle
            const Point p = 0.9 * random_reference_point(rng) + Point(0.03, 0.03);
            const BasisValues b = reference_basis(fam, p);
            const BasisValues bx1 = reference_basis(fam, p + Point(eps, 0));
            const BasisValues bx0 = reference_basis(fam, p - Point(eps, 0));
            const BasisValues by1 = reference_basis(fam, p + Point(0, eps));
            const BasisValues by0 = reference_basis(fam, p - Point(0, eps));
            for (int i = 0; i < b.size; ++i) {
                for (int c = 0; c < b.components; ++c) {
                    const Vec2 fd((bx1.value(i, c) - bx0.value(i, c)) / (2 * eps),
                                  (by1.value(i, c) - by0.value(i, c)) / (2 * eps));
                    EXPECT_NEAR((fd - b.gradient(i, c)).norm(), 0.0, 1e-8) << to_string(fam.tag) << " " << i;
                }
            }
        }
    }
}

TEST(Element, OutsidePointThrows)
{
    for (const auto& fam : kAllFamilies) {
        EXPECT_THROW(reference_basis(fam, Point(0.7, 0.7)), DomainError);
        EXPECT_THROW(reference_basis(fam, Point(-0.1, 0.2)), DomainError);
    }
}

TEST(Element, LocalSizes)
{
    EXPECT_EQ(ElementFamily::scalar(Family::P2).local_dofs(), 6);
    EXPECT_EQ(ElementFamily::vector(Family::P2).local_dofs(), 12);
    EXPECT_EQ(ElementFamily::vector(Family::P1Bubble).local_dofs(), 8);
    EXPECT_EQ(ElementFamily::vector(Family::BernardiRaugel).local_dofs(), 9);
    EXPECT_EQ(ElementFamily::scalar(Family::DG0).local_dofs(), 1);
    EXPECT_EQ(ElementFamily::scalar(Family::DG1).continuity(), Continuity::Discontinuous);
    EXPECT_EQ(ElementFamily::vector(Family::P1Bubble).continuity(), Continuity::Continuous);
}

TEST(Element, BernardiRaugelEdgeBubbles)
{
    const ElementFamily br = ElementFamily::vector(Family::BernardiRaugel);
    const std::array<Point, 3> v{Point(0, 0), Point(1, 0), Point(0, 1)};
    const BasisValues first = reference_basis(br, v[0]);
    ASSERT_EQ(first.size, 9);
    for (const Point& p : v) {
        const BasisValues b = reference_basis(br, p);
        for (int i = 6; i < 9; ++i) {
            EXPECT_EQ(b.value(i, 0), 0.0);
            EXPECT_EQ(b.value(i, 1), 0.0);
        }
    }
    // along edge k (opposite vertex k) the bubble is normal with magnitude l_j l_k
    for (int k = 0; k < 3; ++k) {
        const Point a = v[static_cast<std::size_t>((k + 1) % 3)];
        const Point c = v[static_cast<std::size_t>((k + 2) % 3)];
        const Vec2 t = (c - a).normalized();
        for (double s : {0.1, 0.35, 0.5, 0.8}) {
            const Point p = (1 - s) * a + s * c;
            const BasisValues b = reference_basis(br, p);
            const Vec2 w(b.value(6 + k, 0), b.value(6 + k, 1));
            EXPECT_NEAR(w.dot(t), 0.0, 1e-15);
            EXPECT_NEAR(w.norm(), s * (1 - s), 1e-15);
        }
    }
}

TEST(Element, BarycentricCoordinates)
{
    const auto l = barycentric(Point(0.2, 0.3));
    EXPECT_DOUBLE_EQ(l[0], 0.5);
    EXPECT_DOUBLE_EQ(l[1], 0.2);
    EXPECT_DOUBLE_EQ(l[2], 0.3);
}
