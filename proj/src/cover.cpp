#include "lnl/cover.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace lnl {

namespace {

// Strict "distance < delta" on integer offsets, robust to delta being an
// exact multiple of h.
bool strictly_within(long offset2, double delta, double h)
{
    const double r = delta / h;
    return static_cast<double>(offset2) < r * r * (1.0 - 1e-12) - 1e-12;
}

template <class Visit>
void for_each_in_window(const Partition& part, int cell, int reach, Visit&& visit)
{
    const auto c = part.coords(cell);
    const int ry = part.dimension() > 1 ? reach : 0;
    for (int dy = -ry; dy <= ry; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
            const int o = part.index({c[0] + dx, c[1] + dy});
            if (o >= 0) visit(o, static_cast<long>(dx) * dx + static_cast<long>(dy) * dy);
        }
    }
}

DeltaCover expand(const Partition& part, double delta, std::vector<int> layer0, std::vector<char>& covered)
{
    DeltaCover cover;
    cover.delta = delta;
    const int reach = static_cast<int>(std::ceil(delta / part.h()));
    std::vector<int> frontier = std::move(layer0);
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int cell : frontier) {
            for_each_in_window(part, cell, reach, [&](int o, long off2) {
                if (covered[static_cast<std::size_t>(o)]) return;
                if (part.cell_class(o) != CellClass::Nonlocal) return;
                if (!strictly_within(off2, delta, part.h())) return;
                covered[static_cast<std::size_t>(o)] = 1;
                next.push_back(o);
            });
        }
        cover.layers.push_back(std::move(frontier));
        frontier = std::move(next);
    }
    cover.exhausted = cover.covered() == static_cast<std::size_t>(part.count(CellClass::Nonlocal));
    return cover;
}

}  // namespace

std::size_t DeltaCover::covered() const
{
    std::size_t n = 0;
    for (const auto& l : layers) n += l.size();
    return n;
}

DeltaCover delta_cover(const Partition& partition, double delta)
{
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const int reach = static_cast<int>(std::ceil(delta / partition.h()));
    std::vector<char> covered(static_cast<std::size_t>(partition.cell_count()), 0);
    std::vector<int> layer0;
    for (int c = 0; c < partition.cell_count(); ++c) {
        if (partition.cell_class(c) != CellClass::Nonlocal) continue;
        bool near_local = false;
        for_each_in_window(partition, c, reach, [&](int o, long off2) {
            if (!near_local && partition.cell_class(o) == CellClass::Local &&
                strictly_within(off2, delta, partition.h())) {
                near_local = true;
            }
        });
        if (near_local) {
            covered[static_cast<std::size_t>(c)] = 1;
            layer0.push_back(c);
        }
    }
    return expand(partition, delta, std::move(layer0), covered);
}

DeltaCover delta_cover_from(const Partition& partition, double delta, std::span<const int> seeds)
{
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    std::vector<char> covered(static_cast<std::size_t>(partition.cell_count()), 0);
    std::vector<int> layer0;
    for (int s : seeds) {
        if (partition.cell_class(s) == CellClass::Nonlocal && !covered[static_cast<std::size_t>(s)]) {
            covered[static_cast<std::size_t>(s)] = 1;
            layer0.push_back(s);
        }
    }
    return expand(partition, delta, std::move(layer0), covered);
}

int local_component_count(const Partition& partition)
{
    std::vector<char> seen(static_cast<std::size_t>(partition.cell_count()), 0);
    int components = 0;
    for (int c = 0; c < partition.cell_count(); ++c) {
        if (partition.cell_class(c) != CellClass::Local || seen[static_cast<std::size_t>(c)]) continue;
        ++components;
        std::queue<int> q;
        q.push(c);
        seen[static_cast<std::size_t>(c)] = 1;
        while (!q.empty()) {
            const auto cc = partition.coords(q.front());
            q.pop();
            for (int axis = 0; axis < partition.dimension(); ++axis) {
                for (int side : {-1, 1}) {
                    auto nc = cc;
                    nc[axis] += side;
                    const int o = partition.index(nc);
                    if (o < 0 || seen[static_cast<std::size_t>(o)] || partition.cell_class(o) != CellClass::Local) continue;
                    seen[static_cast<std::size_t>(o)] = 1;
                    q.push(o);
                }
            }
        }
    }
    return components;
}

AssumptionReport check_assumptions(const Partition& partition, double delta)
{
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    AssumptionReport r;
    const auto local = partition.cells_of(CellClass::Local);
    const auto nonlocal = partition.cells_of(CellClass::Nonlocal);

    r.local_components = local_component_count(partition);
    r.local_connected = r.local_components <= 1;
    if (!r.local_connected) {
        std::ostringstream m;
        m << "local region has " << r.local_components << " face-connected components";
        r.violations.push_back({1, m.str(), static_cast<double>(r.local_components)});
    }

    // With no local cells the cover has nothing to grow from; test
    // delta-connectedness of the nonlocal set alone.
    const DeltaCover cover = local.empty() && !nonlocal.empty()
                                 ? delta_cover_from(partition, delta, std::span<const int>(nonlocal.data(), 1))
                                 : delta_cover(partition, delta);
    r.layers = cover.layers.size();
    r.uncovered_cells = nonlocal.size() - cover.covered();
    r.nonlocal_delta_connected = cover.exhausted;
    if (!r.nonlocal_delta_connected) {
        std::ostringstream m;
        m << r.uncovered_cells << " nonlocal cells are not reached by the delta-cover (delta = " << delta << ")";
        r.violations.push_back({2, m.str(), static_cast<double>(r.uncovered_cells)});
    }

    if (local.empty() || nonlocal.empty()) {
        r.interface_vacuous = true;
        r.interface_within_delta = true;
        r.adjusted_distance = 0.0;
    } else {
        const double d = set_distance(partition, local, nonlocal);
        r.adjusted_distance = std::max(0.0, d - partition.h());
        r.interface_within_delta = r.adjusted_distance < delta;
        if (!r.interface_within_delta) {
            std::ostringstream m;
            m << "distance between local and nonlocal regions " << r.adjusted_distance << " is not below delta = " << delta;
            r.violations.push_back({3, m.str(), r.adjusted_distance});
        }
    }
    return r;
}

}  // namespace lnl
