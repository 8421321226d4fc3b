#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "lnl/cover.hpp"

using namespace lnl;
using lnl::testing::grid_1d;
using lnl::testing::grid_2d;

namespace {

Partition standard_1d(double radius = 0.2)
{
    return grid_1d(-0.5, 1.5, 0.1, {interval(0.0, 0.5)}, {interval(0.5, 1.0)}, radius);
}

}  // namespace

TEST(BuildGrid, ClassifiesCellsByCenter)
{
    const Partition p = standard_1d();
    EXPECT_EQ(p.cell_count(), 20);
    EXPECT_EQ(p.count(CellClass::Local), 5);
    EXPECT_EQ(p.count(CellClass::Nonlocal), 5);
    const auto collar = p.cells_of(CellClass::Collar);
    ASSERT_EQ(collar.size(), 3u);
    for (int c : collar) {
        const double x = p.cell_center(c)[0];
        EXPECT_GT(x, 1.0);
        EXPECT_LE(x, 1.3);
    }
    EXPECT_EQ(p.dof_count(), 10);
}

TEST(BuildGrid, EmptyNonlocalRegionHasNoCollar)
{
    const Partition p = grid_1d(-0.5, 1.5, 0.1, {interval(0.0, 1.0)}, {}, 0.2);
    EXPECT_EQ(p.count(CellClass::Nonlocal), 0);
    EXPECT_EQ(p.count(CellClass::Collar), 0);
    EXPECT_EQ(p.count(CellClass::Local), 10);
}

TEST(BuildGrid, RejectsOverlappingRegions)
{
    EXPECT_THROW(grid_1d(-0.5, 1.5, 0.1, {interval(0.0, 0.6)}, {interval(0.4, 1.0)}, 0.2), std::invalid_argument);
}

TEST(BuildGrid, RejectsRegionOutsideBox)
{
    EXPECT_THROW(grid_1d(0.0, 1.0, 0.1, {interval(-0.2, 0.5)}, {}, 0.2), std::invalid_argument);
}

TEST(BuildGrid, RejectsEmptyDomain)
{
    EXPECT_THROW(grid_1d(0.0, 1.0, 0.1, {}, {}, 0.2), std::invalid_argument);
}

TEST(BuildGrid, RejectsSpacingThatDoesNotDivideTheBox)
{
    EXPECT_THROW(grid_1d(0.0, 1.0, 0.3, {interval(0.0, 0.6)}, {}, 0.2), std::invalid_argument);
    EXPECT_THROW(grid_1d(0.0, 1.0, -0.1, {interval(0.0, 0.5)}, {}, 0.2), std::invalid_argument);
}

TEST(BuildGrid, FacesSplitIntoDirichletAndNeumann)
{
    const Partition p = standard_1d();
    // Left end of the local region touches the exterior; right end touches Omega_nl.
    ASSERT_EQ(p.dirichlet_faces().size(), 1u);
    ASSERT_EQ(p.neumann_faces().size(), 1u);
    EXPECT_EQ(p.dirichlet_faces()[0].side, -1);
    EXPECT_EQ(p.neumann_faces()[0].side, 1);
    EXPECT_EQ(p.local_edges().size(), 4u);
    for (const Face& d : p.dirichlet_faces()) {
        for (const Face& n : p.neumann_faces()) EXPECT_FALSE(d == n);
    }
}

TEST(BuildGrid, ClassCountsAreExhaustive)
{
    const Partition p = grid_2d(-0.5, 1.5, 0.125, {rectangle(0.0, 0.5, 0.0, 1.0)}, {rectangle(0.5, 1.0, 0.0, 1.0)}, 0.25);
    int sum = 0;
    for (auto c : {CellClass::Local, CellClass::Nonlocal, CellClass::Collar, CellClass::Outside}) sum += p.count(c);
    EXPECT_EQ(sum, p.cell_count());
}

TEST(BuildGrid, CollarReachesRadiusPlusSpacing)
{
    const Partition p = grid_2d(-0.5, 1.5, 0.125, {rectangle(0.0, 0.5, 0.0, 1.0)}, {rectangle(0.5, 1.0, 0.0, 1.0)}, 0.25);
    const auto nl = p.cells_of(CellClass::Nonlocal);
    for (int c = 0; c < p.cell_count(); ++c) {
        const auto cls = p.cell_class(c);
        if (cls != CellClass::Collar && cls != CellClass::Outside) continue;
        double d = INFINITY;
        for (int n : nl) d = std::min(d, center_distance(p, c, n));
        if (cls == CellClass::Collar) EXPECT_LE(d, 0.375 + 1e-12);
        if (cls == CellClass::Outside) EXPECT_GT(d, 0.375 - 1e-12);
    }
}

TEST(DeltaCover, ExhaustsAdjacentRegions)
{
    const Partition p = standard_1d();
    const DeltaCover cov = delta_cover(p, 0.25);
    EXPECT_TRUE(cov.exhausted);
    EXPECT_GE(cov.layers.size(), 2u);
    EXPECT_EQ(cov.covered(), 5u);
    // 0.55 and 0.65 are within 0.25 of the last local center 0.45.
    EXPECT_EQ(cov.layers[0].size(), 2u);
}

TEST(DeltaCover, StopsAtGapWiderThanDelta)
{
    const Partition p = grid_1d(-0.5, 2.0, 0.1, {interval(0.0, 0.5)}, {interval(0.5, 0.7), interval(1.2, 1.4)}, 0.2);
    const DeltaCover cov = delta_cover(p, 0.3);
    EXPECT_FALSE(cov.exhausted);
    EXPECT_EQ(cov.covered(), 2u);
}

TEST(DeltaCover, EmptyNonlocalSetIsExhausted)
{
    const Partition p = grid_1d(-0.5, 1.5, 0.1, {interval(0.0, 1.0)}, {}, 0.2);
    const DeltaCover cov = delta_cover(p, 0.1);
    EXPECT_TRUE(cov.exhausted);
    EXPECT_TRUE(cov.layers.empty());
}

TEST(DeltaCover, RejectsNonPositiveDelta)
{
    EXPECT_THROW(delta_cover(standard_1d(), 0.0), std::invalid_argument);
}

TEST(DeltaCover, LayersAreDisjointAndWithinDelta)
{
    const Partition p = grid_2d(-0.5, 1.5, 0.0625, {rectangle(0.0, 0.5, 0.0, 1.0)}, {rectangle(0.5, 1.0, 0.0, 1.0)}, 0.2);
    const double delta = 0.15;
    const DeltaCover cov = delta_cover(p, delta);
    std::set<int> seen;
    std::vector<int> previous = p.cells_of(CellClass::Local);
    for (const auto& layer : cov.layers) {
        for (int c : layer) {
            EXPECT_TRUE(seen.insert(c).second);
            EXPECT_EQ(p.cell_class(c), CellClass::Nonlocal);
            double d = INFINITY;
            for (int q : previous) d = std::min(d, center_distance(p, c, q));
            EXPECT_LT(d, delta);
        }
        previous.insert(previous.end(), layer.begin(), layer.end());
    }
    EXPECT_TRUE(cov.exhausted);
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(p.count(CellClass::Nonlocal)));
}

TEST(DeltaCover, MonotoneInDelta)
{
    const Partition p = grid_1d(-0.5, 2.5, 0.05, {interval(0.0, 0.5)},
                                {interval(0.5, 0.8), interval(1.0, 1.3), interval(1.7, 2.0)}, 0.3);
    bool before = false;
    for (double d = 0.01; d < 0.8; d += 0.01) {
        const bool now = delta_cover(p, d).exhausted;
        if (before) EXPECT_TRUE(now) << "delta " << d;
        before = now;
    }
    EXPECT_TRUE(before);
}

TEST(Assumptions, AdjacentRegionsPass)
{
    const AssumptionReport r = check_assumptions(standard_1d(), 0.2);
    EXPECT_TRUE(r.local_connected);
    EXPECT_TRUE(r.nonlocal_delta_connected);
    EXPECT_TRUE(r.interface_within_delta);
    EXPECT_TRUE(r.all_passed());
    EXPECT_TRUE(r.violations.empty());
}

TEST(Assumptions, DistantRegionsFailInterfaceCheck)
{
    const Partition p = grid_1d(-0.5, 2.0, 0.1, {interval(0.0, 0.5)}, {interval(1.0, 1.5)}, 0.2);
    const AssumptionReport r = check_assumptions(p, 0.4);
    EXPECT_FALSE(r.interface_within_delta);
    EXPECT_NEAR(r.adjusted_distance, 0.5, 1e-12);
    bool listed = false;
    for (const auto& v : r.violations) listed = listed || v.assumption == 3;
    EXPECT_TRUE(listed);
}

TEST(Assumptions, SplitNonlocalRegionFailsCover)
{
    const Partition p = grid_1d(-0.5, 2.0, 0.1, {interval(0.0, 0.5)}, {interval(0.5, 0.7), interval(1.0, 1.2)}, 0.2);
    const AssumptionReport r = check_assumptions(p, 0.25);
    EXPECT_FALSE(r.nonlocal_delta_connected);
    EXPECT_FALSE(r.all_passed());
    bool listed = false;
    for (const auto& v : r.violations) listed = listed || v.assumption == 2;
    EXPECT_TRUE(listed);
}

TEST(Assumptions, DisconnectedLocalSetFailsFirstCheck)
{
    const Partition p = grid_1d(-0.5, 2.0, 0.1, {interval(0.0, 0.3), interval(1.2, 1.5)}, {interval(0.3, 1.2)}, 0.2);
    const AssumptionReport r = check_assumptions(p, 0.2);
    EXPECT_FALSE(r.local_connected);
    EXPECT_EQ(r.local_components, 2);
    EXPECT_TRUE(r.nonlocal_delta_connected);
}

TEST(Assumptions, InterfaceVacuousWithoutNonlocalRegion)
{
    const Partition p = grid_1d(0.0, 1.0, 0.1, {interval(0.0, 1.0)}, {}, 0.05);
    const AssumptionReport r = check_assumptions(p, 0.1);
    EXPECT_TRUE(r.interface_vacuous);
    EXPECT_TRUE(r.all_passed());
}

TEST(Distances, SymmetricOnRandomSets)
{
    const Partition p = grid_2d(0.0, 1.0, 0.0625, {rectangle(0.0, 1.0, 0.0, 1.0)}, {}, 0.1);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, p.cell_count() - 1);
    for (int t = 0; t < 50; ++t) {
        std::vector<int> a(3), b(4);
        for (auto& x : a) x = pick(rng);
        for (auto& x : b) x = pick(rng);
        EXPECT_EQ(set_distance(p, a, b), set_distance(p, b, a));
    }
}

TEST(Distances, CenterDistanceTracksBoxDistance)
{
    // Grid-aligned boxes A and B: the distance between their cell-center sets
    // differs from the continuum box distance by at most h sqrt(dim).
    const double h = 0.0625;
    const Partition p = grid_2d(0.0, 2.0, h, {rectangle(0.0, 2.0, 0.0, 2.0)}, {}, 0.1);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> corner(0, 28);
    std::uniform_int_distribution<int> span(1, 4);
    for (int t = 0; t < 200; ++t) {
        int a0[2], a1[2], b0[2], b1[2];
        for (int ax = 0; ax < 2; ++ax) {
            a0[ax] = corner(rng);
            a1[ax] = a0[ax] + span(rng);
            b0[ax] = corner(rng);
            b1[ax] = b0[ax] + span(rng);
        }
        std::vector<int> ca, cb;
        for (int c = 0; c < p.cell_count(); ++c) {
            const auto k = p.coords(c);
            if (k[0] >= a0[0] && k[0] < a1[0] && k[1] >= a0[1] && k[1] < a1[1]) ca.push_back(c);
            if (k[0] >= b0[0] && k[0] < b1[0] && k[1] >= b0[1] && k[1] < b1[1]) cb.push_back(c);
        }
        double g2 = 0.0;
        for (int ax = 0; ax < 2; ++ax) {
            const double gap = std::max({0.0, (b0[ax] - a1[ax]) * h, (a0[ax] - b1[ax]) * h});
            g2 += gap * gap;
        }
        const double cont = std::sqrt(g2);
        const double disc = set_distance(p, ca, cb);
        EXPECT_GE(disc + 1e-12, cont);
        EXPECT_LE(disc - cont, h * std::sqrt(2.0) + 1e-12);
    }
}
