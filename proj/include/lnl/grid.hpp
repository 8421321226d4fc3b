#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lnl {

inline constexpr int kMaxDim = 2;

using Point = std::array<double, kMaxDim>;

/// Axis-aligned box; only the first `dimension` axes are meaningful.
struct Box {
    Point lo{0.0, 0.0};
    Point hi{0.0, 0.0};

    /// Open-box membership of a point.
    bool contains(const Point& x, int dimension) const;
    bool interiors_overlap(const Box& other, int dimension) const;
    bool inside(const Box& outer, int dimension) const;
};

/// Uniform Cartesian mesh of a bounding box with spacing h on every axis.
struct GridSpec {
    int dimension = 1;
    Box bounding_box;
    double h = 0.1;

    /// Throws std::invalid_argument when h or the box sides are inconsistent.
    void validate() const;
    std::array<int, kMaxDim> cells_per_axis() const;
};

struct RegionSpec {
    std::vector<Box> local_boxes;
    std::vector<Box> nonlocal_boxes;
};

enum class CellClass : std::uint8_t { Local, Nonlocal, Collar, Outside };

const char* to_string(CellClass c);

/// A face of a grid cell: the side (-1 or +1) of the cell along `axis`.
struct Face {
    int cell = 0;
    int axis = 0;
    int side = 1;

    friend bool operator==(const Face&, const Face&) = default;
};

/// Classified grid. Cells of class Local or Nonlocal carry degrees of freedom
/// (dofs) numbered in increasing cell order; all other cells hold u = 0.
class Partition {
public:
    const GridSpec& grid() const { return grid_; }
    int dimension() const { return grid_.dimension; }
    double h() const { return grid_.h; }
    double cell_volume() const;
    double kernel_radius() const { return kernel_radius_; }

    int cell_count() const { return static_cast<int>(cell_class_.size()); }
    const std::array<int, kMaxDim>& cells_per_axis() const { return n_; }
    std::array<int, kMaxDim> coords(int cell) const;
    /// Linear index of integer coordinates, or -1 if outside the grid.
    int index(const std::array<int, kMaxDim>& c) const;
    Point cell_center(int cell) const;

    CellClass cell_class(int cell) const { return cell_class_[static_cast<std::size_t>(cell)]; }
    std::span<const CellClass> cell_classes() const { return cell_class_; }
    int count(CellClass c) const;

    int dof_count() const { return static_cast<int>(cell_of_dof_.size()); }
    int dof_of_cell(int cell) const { return dof_of_cell_[static_cast<std::size_t>(cell)]; }
    int cell_of_dof(int dof) const { return cell_of_dof_[static_cast<std::size_t>(dof)]; }
    bool is_local_dof(int dof) const { return cell_class(cell_of_dof(dof)) == CellClass::Local; }

    std::span<const Face> dirichlet_faces() const { return dirichlet_faces_; }
    std::span<const Face> neumann_faces() const { return neumann_faces_; }
    /// Local-Local face pairs as dof pairs, each face listed once.
    std::span<const std::array<int, 2>> local_edges() const { return local_edges_; }

    std::vector<int> cells_of(CellClass c) const;

private:
    friend Partition build_grid(const GridSpec&, const RegionSpec&, double);
    Partition(GridSpec grid, double kernel_radius);

    GridSpec grid_;
    double kernel_radius_ = 0.0;
    std::array<int, kMaxDim> n_{1, 1};
    std::vector<CellClass> cell_class_;
    std::vector<int> dof_of_cell_;
    std::vector<int> cell_of_dof_;
    std::vector<Face> dirichlet_faces_;
    std::vector<Face> neumann_faces_;
    std::vector<std::array<int, 2>> local_edges_;
};

/// Classify every cell of the grid by its center.  Outside cells within
/// kernel_radius + h of a Nonlocal cell become Collar.
Partition build_grid(const GridSpec& spec, const RegionSpec& regions, double kernel_radius);

/// Squared integer offset length between two cells, in units of h^2.
long offset_norm2(const Partition& partition, int a, int b);
double center_distance(const Partition& partition, int a, int b);

/// Minimum cell-center distance between two cell sets; +inf if either is empty.
double set_distance(const Partition& partition, std::span<const int> a, std::span<const int> b);

}  // namespace lnl
