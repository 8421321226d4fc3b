#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lnl/grid.hpp"
#include "lnl/kernel.hpp"
#include "lnl/source.hpp"

namespace lnl {

/// Cell-valued function with one value per dof (local or nonlocal cell);
/// every other cell holds 0.
class Field {
public:
    Field() = default;
    explicit Field(std::size_t n, double value = 0.0) : values_(n, value) {}
    explicit Field(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& vector() const { return values_; }

    /// Value at any grid cell; exactly 0 off the domain.
    double at_cell(const Partition& partition, int cell) const;
    double max_abs() const;
    bool all_finite() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::vector<double> values_;
};

/// Dof-indexed interaction structure derived from a partition and its
/// neighbor table.
struct Stencil {
    struct Link {
        int dof = 0;
        double weight = 0.0;
        double multiplicity = 1.0;
    };

    std::vector<int> ghosts;               // local dof per Dirichlet face
    std::vector<std::size_t> local_start;  // CSR over dofs: face neighbours
    std::vector<int> local_nbrs;
    std::vector<int> ghost_count;
    // Rows of nonlocal dofs hold their table pairs (multiplicity 2 towards
    // nonlocal partners, 1 towards local ones); rows of local dofs hold the
    // pairs in which they appear as the partner of a nonlocal cell.
    std::vector<std::size_t> pair_start;
    std::vector<Link> pairs;
    std::vector<double> psi_volume;  // psi_i h^dim per dof, 0 for local dofs
};

struct ModelConfig {
    std::shared_ptr<const Partition> partition;
    std::shared_ptr<const NeighborTable> neighbors;
    std::shared_ptr<const CollarMass> collar;
    std::shared_ptr<const Stencil> stencil;
    SourceModel source;
    double p = 2.0;
    double regularization = 0.0;

    std::size_t dofs() const { return static_cast<std::size_t>(partition->dof_count()); }
    double cell_volume() const { return partition->cell_volume(); }
    ModelConfig with_source(SourceModel s) const;
    ModelConfig with_p(double new_p) const;
};

/// Smallest admissible exponent; values at or below are rejected.
inline constexpr double kMinExponent = 1.1;

void validate_exponent(double p);

ModelConfig make_model(Partition partition, const KernelProfile& profile, SourceModel source, double p,
                       double regularization = 0.0);

/// Assemble a model from an explicit table and collar mass.
ModelConfig make_model(std::shared_ptr<const Partition> partition, NeighborTable table, CollarMass collar,
                       SourceModel source, double p, double regularization = 0.0);

struct EnergyBreakdown {
    double local_term = 0.0;
    double nonlocal_term = 0.0;
    double source_term = 0.0;
    double total = 0.0;
};

enum class Terms { All, WithoutSource };

EnergyBreakdown eval_energy(const ModelConfig& cfg, const Field& u);

/// E(u + step) - E(u), summed term by term without cancellation.
EnergyBreakdown energy_change(const ModelConfig& cfg, const Field& u, const Field& step);

Field eval_gradient(const ModelConfig& cfg, const Field& u, Terms terms = Terms::All);

/// Double sum of w_ij |u_i - u_j|^p over table pairs with both cells in `cells`.
double eval_seminorm(const ModelConfig& cfg, const Field& u, std::span<const int> cells);

struct Residual {
    Field values;
    double max_norm = 0.0;
};

/// Gradient divided by the cell volume: the discrete strong-form defect.
Residual strong_residual(const ModelConfig& cfg, const Field& u);

/// sum_i |u_i|^p h^dim.
double lp_norm_p(const ModelConfig& cfg, const Field& u);
/// (sum_i |u_i - v_i|^p h^dim)^(1/p).
double lp_distance(const ModelConfig& cfg, const Field& u, const Field& v);

}  // namespace lnl
