#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "lnl/model.hpp"
#include "lnl/problem.hpp"
#include "lnl/solver.hpp"

namespace lnl {

// ---------------------------------------------------------------------------
// Coercivity constant: inf of F_p(u) over the discrete unit L^p sphere.
// ---------------------------------------------------------------------------

struct SphereRun {
    std::string start;  // "random:<k>" or "component:<k>" or "local"
    double value = 0.0;
    long iterations = 0;
    SolveStatus status = SolveStatus::MaxIters;
};

struct CoercivityEstimate {
    double c_est = 0.0;
    Field minimizer;
    int n_starts = 0;
    std::vector<SphereRun> runs;
    bool conclusive = false;
};

/// Projected descent of F_p on {sum |u_i|^p h^dim = 1} from `n_random`
/// random starts plus one start per nonlocal kernel component and one on the
/// local cells.  The source of `cfg` is ignored.
CoercivityEstimate coercivity_constant(const ModelConfig& cfg, int n_random, const SolveOptions& opts);

/// Single projected-descent run; `start` need not be normalized.
SolveResult minimize_on_sphere(const ModelConfig& cfg, const SolveOptions& opts, const Field& start);

/// F_p / ||u||_p^p at u (u != 0).
double rayleigh_quotient(const ModelConfig& cfg, const Field& u);

// ---------------------------------------------------------------------------
// p = 2 linear system.
// ---------------------------------------------------------------------------

struct LinearSystem {
    Eigen::SparseMatrix<double> matrix;  // Hessian of F_2
    Eigen::VectorXd rhs;                 // g_i h^dim
};

/// Assembled from the partition, neighbor table and collar mass directly.
LinearSystem assemble_p2_system(const ModelConfig& cfg);

struct OracleSolution {
    std::optional<Field> solution;
    bool singular = false;
    double pivot_ratio = 0.0;  // min |D| / max |D| of the LDL^T factorization
};

/// Direct solve of the p = 2 Euler-Lagrange system for an affine source.
OracleSolution p2_linear_oracle(const ModelConfig& cfg);

/// Smallest eigenvalue of the p = 2 Hessian mapped to the Rayleigh-quotient
/// scale: lambda_min / (2 h^dim).
double p2_coercivity_eigen(const ModelConfig& cfg);

/// Smallest eigenvalue of the p = 2 Hessian.
double p2_min_eigenvalue(const ModelConfig& cfg);

// ---------------------------------------------------------------------------
// Null space of the nonlocal seminorm.
// ---------------------------------------------------------------------------

struct NullspaceReport {
    int component_count = 0;
    int component_count_cross_check = 0;
    double constant_seminorm = 0.0;  // seminorm of a per-component constant field
    double min_perturbed_seminorm = 0.0;  // smallest seminorm after perturbing one cell
    int perturbations = 0;
    bool passed = false;
};

NullspaceReport nullspace_check(const ModelConfig& cfg, std::span<const int> cells, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Finite-difference gradient check.
// ---------------------------------------------------------------------------

struct GradientCheckReport {
    double max_relative_error = 0.0;
    int n_fields = 0;
    double step = 0.0;
};

/// Random field whose pairwise differences, and differences to the zero
/// exterior, are at least 0.4 * 2 / (n + 1) in magnitude.
Field tie_avoiding_field(std::size_t n, std::uint64_t seed, std::uint64_t stream);

GradientCheckReport gradient_check(const ModelConfig& cfg, int n_fields, std::uint64_t seed, bool tie_avoiding = false);

// ---------------------------------------------------------------------------
// Refinement studies.
// ---------------------------------------------------------------------------

enum class ConvergenceCase { LocalSine, NonlocalP2, CoupledP3 };

const char* to_string(ConvergenceCase c);
ConvergenceCase convergence_case_from_string(const std::string& s);

struct RateRow {
    int n = 0;
    double h = 0.0;
    double error = 0.0;
    double tolerance = 0.0;  // NonlocalP2 only: rigorous solver error bound
    std::optional<double> order;
    SolveStatus status = SolveStatus::MaxIters;
};

struct RateTable {
    ConvergenceCase which = ConvergenceCase::LocalSine;
    std::vector<RateRow> rows;
    bool passed = false;
    std::string criterion;
};

/// `grids` lists cells per unit length, each twice the previous.
RateTable convergence_study(ConvergenceCase which, std::span<const int> grids, const SolveOptions& opts);

}  // namespace lnl
