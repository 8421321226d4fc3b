#pragma once

#include <span>
#include <string>
#include <vector>

#include "lnl/grid.hpp"

namespace lnl {

/// Layered exhaustion of the nonlocal cells by delta-neighbourhoods, starting
/// from the local cells.
struct DeltaCover {
    double delta = 0.0;
    std::vector<std::vector<int>> layers;  // cell indices
    bool exhausted = false;

    std::size_t covered() const;
};

DeltaCover delta_cover(const Partition& partition, double delta);

/// Same layering seeded from an arbitrary cell set instead of the local cells.
DeltaCover delta_cover_from(const Partition& partition, double delta, std::span<const int> seeds);

struct AssumptionViolation {
    int assumption = 0;  // 1, 2 or 3
    std::string message;
    double measurement = 0.0;
};

struct AssumptionReport {
    bool local_connected = false;       // (1)
    bool nonlocal_delta_connected = false;  // (2)
    bool interface_within_delta = false;    // (3)
    bool interface_vacuous = false;
    int local_components = 0;
    std::size_t layers = 0;
    std::size_t uncovered_cells = 0;
    double adjusted_distance = 0.0;
    std::vector<AssumptionViolation> violations;

    bool all_passed() const { return local_connected && nonlocal_delta_connected && interface_within_delta; }
};

AssumptionReport check_assumptions(const Partition& partition, double delta);

/// Number of face-connected components of the local cell set.
int local_component_count(const Partition& partition);

}  // namespace lnl
