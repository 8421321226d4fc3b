#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lnl/grid.hpp"
#include "lnl/kernel.hpp"
#include "lnl/model.hpp"
#include "lnl/problem.hpp"

namespace lnl::testing {

inline Partition grid_1d(double lo, double hi, double h, std::vector<Box> local, std::vector<Box> nonlocal,
                         double radius)
{
    GridSpec g;
    g.dimension = 1;
    g.bounding_box = interval(lo, hi);
    g.h = h;
    return build_grid(g, RegionSpec{std::move(local), std::move(nonlocal)}, radius);
}

inline Partition grid_2d(double lo, double hi, double h, std::vector<Box> local, std::vector<Box> nonlocal,
                         double radius)
{
    GridSpec g;
    g.dimension = 2;
    g.bounding_box = rectangle(lo, hi, lo, hi);
    g.h = h;
    return build_grid(g, RegionSpec{std::move(local), std::move(nonlocal)}, radius);
}

inline KernelProfile indicator(double radius, double amplitude = 1.0)
{
    return KernelProfile{KernelShape::Indicator, amplitude, radius, 2};
}

/// Plain union-find, independent of the library's graph code.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

/// All-pairs enumeration of kernel neighbours of nonlocal cells.
inline std::size_t brute_force_pair_count(const Partition& part, const KernelProfile& k)
{
    std::size_t n = 0;
    for (int i = 0; i < part.cell_count(); ++i) {
        if (part.cell_class(i) != CellClass::Nonlocal) continue;
        for (int j = 0; j < part.cell_count(); ++j) {
            if (i == j || part.cell_class(j) == CellClass::Outside) continue;
            if (k(part.cell_center(i), part.cell_center(j), part.dimension()) > 0.0) ++n;
        }
    }
    return n;
}

/// Components of nonlocal cells whose centers are within `radius`, by
/// all-pairs union-find.
inline int brute_force_components(const Partition& part, double radius)
{
    UnionFind uf(part.cell_count());
    const auto nl = part.cells_of(CellClass::Nonlocal);
    for (int a : nl) {
        for (int b : nl) {
            if (a < b && center_distance(part, a, b) <= radius * (1 + 1e-12)) uf.unite(a, b);
        }
    }
    std::vector<int> roots;
    for (int a : nl) roots.push_back(uf.find(a));
    std::sort(roots.begin(), roots.end());
    return static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
}

/// 1D brute force: sort local and nonlocal cell centers, split them into
/// clusters wherever consecutive centers are >= delta apart.  The delta-cover
/// from the local cells is exhaustive iff every cluster holding a nonlocal
/// cell also holds a local one.
inline bool brute_force_exhausted_1d(const Partition& part, double delta)
{
    struct Item {
        double x;
        bool local;
    };
    std::vector<Item> items;
    for (int c = 0; c < part.cell_count(); ++c) {
        const auto cls = part.cell_class(c);
        if (cls == CellClass::Local || cls == CellClass::Nonlocal) {
            items.push_back({part.cell_center(c)[0], cls == CellClass::Local});
        }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.x < b.x; });
    bool has_local = false;
    bool has_nonlocal = false;
    for (std::size_t k = 0; k <= items.size(); ++k) {
        const bool split = k == items.size() || (k > 0 && items[k].x - items[k - 1].x >= delta * (1 - 1e-12));
        if (split) {
            if (has_nonlocal && !has_local) return false;
            has_local = has_nonlocal = false;
        }
        if (k == items.size()) break;
        (items[k].local ? has_local : has_nonlocal) = true;
    }
    return true;
}

inline double max_abs_diff(const Field& a, const Field& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace lnl::testing
