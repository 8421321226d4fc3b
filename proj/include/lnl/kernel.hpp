#pragma once

#include <span>
#include <string>
#include <vector>

#include "lnl/grid.hpp"

namespace lnl {

enum class KernelShape { Indicator, PolynomialBump };

/// Radial kernel J(x, y) = j(|x - y|) with compact support radius R.
struct KernelProfile {
    KernelShape shape = KernelShape::Indicator;
    double amplitude = 1.0;
    double support_radius = 0.2;
    int bump_exponent = 2;

    /// j(r); zero for r > R.
    double radial(double r) const;
    double operator()(const Point& x, const Point& y, int dimension) const;
    void validate() const;
};

const char* to_string(KernelShape s);

/// Outcome of a hypothesis check.  `constant` carries the bound attained
/// (the kernel lower bound for the kernel check).
struct ValidationResult {
    bool passed = true;
    std::vector<std::string> violations;
    double constant = 0.0;
};

/// Positivity of the kernel on [0, 2 delta].
ValidationResult validate_j1(const KernelProfile& profile, double delta);

/// Interaction pairs of every nonlocal cell, CSR layout.  Within a row the
/// entries that reference domain cells (local or nonlocal) come first and
/// collar entries follow.
struct NeighborTable {
    struct Entry {
        int cell = 0;
        double weight = 0.0;  // J(x_i, x_j) h^(2 dim)
    };

    std::vector<int> rows;                // nonlocal cell of each row
    std::vector<std::size_t> row_start;   // size rows.size() + 1
    std::vector<std::size_t> domain_end;  // end of the domain entries of each row
    std::vector<Entry> entries;

    std::size_t row_count() const { return rows.size(); }
    std::span<const Entry> row(std::size_t r) const;
    std::span<const Entry> domain_row(std::size_t r) const;
    std::size_t pair_count() const { return entries.size(); }
    /// Row of a nonlocal cell, or -1.
    int row_of_cell(int cell) const;

    std::vector<int> cell_row;            // cell -> row, -1 elsewhere
};

NeighborTable build_neighbors(const Partition& partition, const KernelProfile& profile);

/// Exterior kernel mass psi_i = sum over collar cells of J(x_i, x_j) h^dim,
/// one value per nonlocal cell in cell order.
struct CollarMass {
    std::vector<int> cells;
    std::vector<double> psi;

    /// psi of a nonlocal cell, 0 for any other cell.
    double at_cell(int cell) const;
};

/// Throws std::logic_error if the collar band cannot hold the kernel support.
CollarMass collar_mass(const Partition& partition, const KernelProfile& profile);

/// Connected components of the graph on nonlocal cells whose edges are the
/// nonlocal-nonlocal pairs of the table.
struct ComponentLabels {
    std::vector<int> label;  // per cell; -1 for non-nonlocal cells
    int count = 0;

    std::vector<std::vector<int>> members() const;
};

ComponentLabels kernel_components(const Partition& partition, const NeighborTable& table);

}  // namespace lnl
