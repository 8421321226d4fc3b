#include "lnl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace lnl {

namespace {

bool within_radius(long offset2, double radius, double h)
{
    const double r = radius / h;
    return static_cast<double>(offset2) <= r * r * (1.0 + 1e-12) + 1e-12;
}

template <class Visit>
void for_each_offset(const Partition& part, int cell, int reach, Visit&& visit)
{
    const auto c = part.coords(cell);
    const int ry = part.dimension() > 1 ? reach : 0;
    for (int dy = -ry; dy <= ry; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
            visit(part.index({c[0] + dx, c[1] + dy}), static_cast<long>(dx) * dx + static_cast<long>(dy) * dy);
        }
    }
}

int window_reach(const KernelProfile& profile, double h)
{
    return static_cast<int>(std::ceil(profile.support_radius / h - 1e-12));
}

}  // namespace

const char* to_string(KernelShape s)
{
    return s == KernelShape::Indicator ? "indicator" : "polynomial_bump";
}

double KernelProfile::radial(double r) const
{
    if (r > support_radius) return 0.0;
    if (shape == KernelShape::Indicator) return amplitude;
    const double t = 1.0 - (r * r) / (support_radius * support_radius);
    return amplitude * std::pow(std::max(t, 0.0), bump_exponent);
}

double KernelProfile::operator()(const Point& x, const Point& y, int dimension) const
{
    double s = 0.0;
    for (int a = 0; a < dimension; ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
    return radial(std::sqrt(s));
}

void KernelProfile::validate() const
{
    if (!(amplitude > 0.0)) throw std::invalid_argument("kernel amplitude must be positive");
    if (!(support_radius > 0.0)) throw std::invalid_argument("kernel support radius must be positive");
    if (shape == KernelShape::PolynomialBump && bump_exponent < 1) {
        throw std::invalid_argument("bump exponent must be a positive integer");
    }
}

ValidationResult validate_j1(const KernelProfile& profile, double delta)
{
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    ValidationResult res;
    // j is non-increasing, so its minimum on [0, 2 delta] sits at 2 delta.
    const double reach = 2.0 * delta;
    res.constant = profile.radial(reach);
    const bool support_ok = profile.shape == KernelShape::Indicator ? profile.support_radius >= reach
                                                                     : profile.support_radius > reach;
    if (!support_ok || !(res.constant > 0.0)) {
        res.passed = false;
        std::ostringstream m;
        m << "kernel vanishes within 2*delta = " << reach << " (support radius " << profile.support_radius << ")";
        res.violations.push_back(m.str());
        res.constant = 0.0;
    }
    return res;
}

std::span<const NeighborTable::Entry> NeighborTable::row(std::size_t r) const
{
    return {entries.data() + row_start[r], row_start[r + 1] - row_start[r]};
}

std::span<const NeighborTable::Entry> NeighborTable::domain_row(std::size_t r) const
{
    return {entries.data() + row_start[r], domain_end[r] - row_start[r]};
}

int NeighborTable::row_of_cell(int cell) const
{
    if (cell < 0 || static_cast<std::size_t>(cell) >= cell_row.size()) return -1;
    return cell_row[static_cast<std::size_t>(cell)];
}

NeighborTable build_neighbors(const Partition& partition, const KernelProfile& profile)
{
    profile.validate();
    NeighborTable t;
    const double h = partition.h();
    const double w_scale = std::pow(h, 2 * partition.dimension());
    const int reach = window_reach(profile, h);
    t.cell_row.assign(static_cast<std::size_t>(partition.cell_count()), -1);
    t.row_start.push_back(0);
    std::vector<NeighborTable::Entry> collar;
    for (int c = 0; c < partition.cell_count(); ++c) {
        if (partition.cell_class(c) != CellClass::Nonlocal) continue;
        t.cell_row[static_cast<std::size_t>(c)] = static_cast<int>(t.rows.size());
        t.rows.push_back(c);
        collar.clear();
        for_each_offset(partition, c, reach, [&](int o, long off2) {
            if (o < 0 || o == c || !within_radius(off2, profile.support_radius, h)) return;
            const CellClass cls = partition.cell_class(o);
            if (cls == CellClass::Outside) return;
            const double w = profile.radial(h * std::sqrt(static_cast<double>(off2))) * w_scale;
            if (!(w > 0.0)) return;
            if (cls == CellClass::Collar) {
                collar.push_back({o, w});
            } else {
                t.entries.push_back({o, w});
            }
        });
        t.domain_end.push_back(t.entries.size());
        t.entries.insert(t.entries.end(), collar.begin(), collar.end());
        t.row_start.push_back(t.entries.size());
    }
    return t;
}

double CollarMass::at_cell(int cell) const
{
    const auto it = std::lower_bound(cells.begin(), cells.end(), cell);
    if (it == cells.end() || *it != cell) return 0.0;
    return psi[static_cast<std::size_t>(it - cells.begin())];
}

CollarMass collar_mass(const Partition& partition, const KernelProfile& profile)
{
    profile.validate();
    if (profile.support_radius > partition.kernel_radius() * (1.0 + 1e-12) + 1e-15) {
        throw std::logic_error("collar band of the partition is narrower than the kernel support");
    }
    CollarMass m;
    const double h = partition.h();
    const double vol = partition.cell_volume();
    const int reach = window_reach(profile, h);
    for (int c = 0; c < partition.cell_count(); ++c) {
        if (partition.cell_class(c) != CellClass::Nonlocal) continue;
        double psi = 0.0;
        for_each_offset(partition, c, reach, [&](int o, long off2) {
            if (!within_radius(off2, profile.support_radius, h)) return;
            if (o < 0) {
                throw std::logic_error("kernel support of a nonlocal cell extends past the bounding box");
            }
            if (partition.cell_class(o) == CellClass::Outside) {
                throw std::logic_error("outside cell within the kernel support of a nonlocal cell");
            }
            if (partition.cell_class(o) == CellClass::Collar) {
                psi += profile.radial(h * std::sqrt(static_cast<double>(off2))) * vol;
            }
        });
        m.cells.push_back(c);
        m.psi.push_back(psi);
    }
    return m;
}

std::vector<std::vector<int>> ComponentLabels::members() const
{
    std::vector<std::vector<int>> out(static_cast<std::size_t>(count));
    for (std::size_t c = 0; c < label.size(); ++c) {
        if (label[c] >= 0) out[static_cast<std::size_t>(label[c])].push_back(static_cast<int>(c));
    }
    return out;
}

ComponentLabels kernel_components(const Partition& partition, const NeighborTable& table)
{
    ComponentLabels out;
    out.label.assign(static_cast<std::size_t>(partition.cell_count()), -1);
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        const int seed = table.rows[r];
        if (out.label[static_cast<std::size_t>(seed)] >= 0) continue;
        const int id = out.count++;
        std::queue<int> q;
        q.push(seed);
        out.label[static_cast<std::size_t>(seed)] = id;
        while (!q.empty()) {
            const int cell = q.front();
            q.pop();
            const int row = table.row_of_cell(cell);
            for (const auto& e : table.domain_row(static_cast<std::size_t>(row))) {
                if (partition.cell_class(e.cell) != CellClass::Nonlocal) continue;
                if (out.label[static_cast<std::size_t>(e.cell)] >= 0) continue;
                out.label[static_cast<std::size_t>(e.cell)] = id;
                q.push(e.cell);
            }
        }
    }
    return out;
}

}  // namespace lnl
