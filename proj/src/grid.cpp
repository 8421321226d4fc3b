#include "lnl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lnl {

namespace {

constexpr double kSideTolerance = 1e-12;

// Radius comparisons are done on integer offsets; the slack absorbs the
// rounding in R/h for radii that are exact multiples of h.
bool within_radius(long offset2, double radius, double h)
{
    const double r = radius / h;
    return static_cast<double>(offset2) <= r * r * (1.0 + 1e-12) + 1e-12;
}

}  // namespace

bool Box::contains(const Point& x, int dimension) const
{
    for (int a = 0; a < dimension; ++a) {
        if (!(x[a] > lo[a] && x[a] < hi[a])) return false;
    }
    return true;
}

bool Box::interiors_overlap(const Box& other, int dimension) const
{
    for (int a = 0; a < dimension; ++a) {
        if (std::min(hi[a], other.hi[a]) <= std::max(lo[a], other.lo[a])) return false;
    }
    return true;
}

bool Box::inside(const Box& outer, int dimension) const
{
    for (int a = 0; a < dimension; ++a) {
        if (lo[a] < outer.lo[a] || hi[a] > outer.hi[a]) return false;
    }
    return true;
}

void GridSpec::validate() const
{
    if (dimension != 1 && dimension != 2) {
        throw std::invalid_argument("grid dimension must be 1 or 2");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("grid spacing h must be positive");
    }
    for (int a = 0; a < dimension; ++a) {
        const double side = bounding_box.hi[a] - bounding_box.lo[a];
        if (!(side > 0.0)) {
            throw std::invalid_argument("bounding box sides must have positive length");
        }
        const double n = std::round(side / h);
        if (n < 1.0 || std::abs(n * h - side) > kSideTolerance * side) {
            std::ostringstream msg;
            msg << "bounding box side " << side << " on axis " << a
                << " is not an integer multiple of h = " << h;
            throw std::invalid_argument(msg.str());
        }
    }
}

std::array<int, kMaxDim> GridSpec::cells_per_axis() const
{
    std::array<int, kMaxDim> n{1, 1};
    for (int a = 0; a < dimension; ++a) {
        n[a] = static_cast<int>(std::lround((bounding_box.hi[a] - bounding_box.lo[a]) / h));
    }
    return n;
}

const char* to_string(CellClass c)
{
    switch (c) {
    case CellClass::Local: return "local";
    case CellClass::Nonlocal: return "nonlocal";
    case CellClass::Collar: return "collar";
    case CellClass::Outside: return "outside";
    }
    return "unknown";
}

Partition::Partition(GridSpec grid, double kernel_radius)
    : grid_(std::move(grid)), kernel_radius_(kernel_radius)
{
    grid_.validate();
    n_ = grid_.cells_per_axis();
    cell_class_.assign(static_cast<std::size_t>(n_[0]) * static_cast<std::size_t>(n_[1]),
                       CellClass::Outside);
}

double Partition::cell_volume() const
{
    return std::pow(grid_.h, grid_.dimension);
}

std::array<int, kMaxDim> Partition::coords(int cell) const
{
    return {cell % n_[0], cell / n_[0]};
}

int Partition::index(const std::array<int, kMaxDim>& c) const
{
    if (c[0] < 0 || c[0] >= n_[0] || c[1] < 0 || c[1] >= n_[1]) return -1;
    return c[0] + n_[0] * c[1];
}

Point Partition::cell_center(int cell) const
{
    const auto c = coords(cell);
    Point x{0.0, 0.0};
    for (int a = 0; a < grid_.dimension; ++a) {
        x[a] = grid_.bounding_box.lo[a] + (c[a] + 0.5) * grid_.h;
    }
    return x;
}

int Partition::count(CellClass c) const
{
    return static_cast<int>(std::count(cell_class_.begin(), cell_class_.end(), c));
}

std::vector<int> Partition::cells_of(CellClass c) const
{
    std::vector<int> out;
    for (int i = 0; i < cell_count(); ++i) {
        if (cell_class_[static_cast<std::size_t>(i)] == c) out.push_back(i);
    }
    return out;
}

long offset_norm2(const Partition& partition, int a, int b)
{
    const auto ca = partition.coords(a);
    const auto cb = partition.coords(b);
    long s = 0;
    for (int k = 0; k < partition.dimension(); ++k) {
        const long d = ca[k] - cb[k];
        s += d * d;
    }
    return s;
}

double center_distance(const Partition& partition, int a, int b)
{
    return partition.h() * std::sqrt(static_cast<double>(offset_norm2(partition, a, b)));
}

double set_distance(const Partition& partition, std::span<const int> a, std::span<const int> b)
{
    long best = std::numeric_limits<long>::max();
    for (int i : a) {
        for (int j : b) best = std::min(best, offset_norm2(partition, i, j));
    }
    if (best == std::numeric_limits<long>::max()) return std::numeric_limits<double>::infinity();
    return partition.h() * std::sqrt(static_cast<double>(best));
}

Partition build_grid(const GridSpec& spec, const RegionSpec& regions, double kernel_radius)
{
    if (!(kernel_radius >= 0.0)) throw std::invalid_argument("kernel radius must be >= 0");
    Partition part(spec, kernel_radius);
    const int dim = spec.dimension;

    for (const auto& box : regions.local_boxes) {
        if (!box.inside(spec.bounding_box, dim)) throw std::invalid_argument("local box exceeds the bounding box");
    }
    for (const auto& box : regions.nonlocal_boxes) {
        if (!box.inside(spec.bounding_box, dim)) throw std::invalid_argument("nonlocal box exceeds the bounding box");
    }
    for (const auto& lb : regions.local_boxes) {
        for (const auto& nb : regions.nonlocal_boxes) {
            if (lb.interiors_overlap(nb, dim)) throw std::invalid_argument("local and nonlocal boxes overlap");
        }
    }

    const int n_cells = part.cell_count();
    for (int c = 0; c < n_cells; ++c) {
        const Point x = part.cell_center(c);
        auto& cls = part.cell_class_[static_cast<std::size_t>(c)];
        if (std::any_of(regions.local_boxes.begin(), regions.local_boxes.end(),
                        [&](const Box& b) { return b.contains(x, dim); })) {
            cls = CellClass::Local;
        } else if (std::any_of(regions.nonlocal_boxes.begin(), regions.nonlocal_boxes.end(),
                               [&](const Box& b) { return b.contains(x, dim); })) {
            cls = CellClass::Nonlocal;
        }
    }
    if (part.count(CellClass::Local) + part.count(CellClass::Nonlocal) == 0) {
        throw std::invalid_argument("domain contains no cells");
    }

    // Collar band: outside cells within R + h of some nonlocal cell.
    const double band = kernel_radius + spec.h;
    const int reach = static_cast<int>(std::ceil(band / spec.h - 1e-12));
    for (int c = 0; c < n_cells; ++c) {
        if (part.cell_class_[static_cast<std::size_t>(c)] != CellClass::Nonlocal) continue;
        const auto cc = part.coords(c);
        const int ry = dim > 1 ? reach : 0;
        for (int dy = -ry; dy <= ry; ++dy) {
            for (int dx = -reach; dx <= reach; ++dx) {
                const int o = part.index({cc[0] + dx, cc[1] + dy});
                if (o < 0) continue;
                auto& cls = part.cell_class_[static_cast<std::size_t>(o)];
                if (cls != CellClass::Outside) continue;
                if (within_radius(static_cast<long>(dx) * dx + static_cast<long>(dy) * dy, band, spec.h)) {
                    cls = CellClass::Collar;
                }
            }
        }
    }

    part.dof_of_cell_.assign(static_cast<std::size_t>(n_cells), -1);
    for (int c = 0; c < n_cells; ++c) {
        const auto cls = part.cell_class_[static_cast<std::size_t>(c)];
        if (cls == CellClass::Local || cls == CellClass::Nonlocal) {
            part.dof_of_cell_[static_cast<std::size_t>(c)] = static_cast<int>(part.cell_of_dof_.size());
            part.cell_of_dof_.push_back(c);
        }
    }

    // Faces of local cells.  A face to a missing cell (grid edge) lies on the
    // boundary of the domain.
    for (int c = 0; c < n_cells; ++c) {
        if (part.cell_class_[static_cast<std::size_t>(c)] != CellClass::Local) continue;
        const auto cc = part.coords(c);
        for (int axis = 0; axis < dim; ++axis) {
            for (int side : {-1, 1}) {
                auto nc = cc;
                nc[axis] += side;
                const int o = part.index(nc);
                const CellClass other = o < 0 ? CellClass::Outside : part.cell_class_[static_cast<std::size_t>(o)];
                const Face face{c, axis, side};
                switch (other) {
                case CellClass::Local:
                    if (side > 0) {
                        part.local_edges_.push_back({part.dof_of_cell(c), part.dof_of_cell(o)});
                    }
                    break;
                case CellClass::Nonlocal:
                    part.neumann_faces_.push_back(face);
                    break;
                case CellClass::Collar:
                case CellClass::Outside:
                    part.dirichlet_faces_.push_back(face);
                    break;
                }
            }
        }
    }
    return part;
}

}  // namespace lnl
