#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lnl/model.hpp"

namespace lnl {

enum class StepRule { ArmijoBacktracking, BarzilaiBorweinSafeguarded };
enum class SolveStatus { Converged, MaxIters, LineSearchStall };

const char* to_string(StepRule r);
const char* to_string(SolveStatus s);

struct SolveOptions {
    /// Max-norm gradient threshold; unset means 1e-8 h^dim.
    std::optional<double> grad_tol;
    long max_iters = 200000;
    StepRule step_rule = StepRule::BarzilaiBorweinSafeguarded;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double initial_step = 1.0;
    std::uint64_t seed = 0;
    /// Record every n-th iterate in the history (the last one always).
    long history_every = 10;

    double resolved_grad_tol(const ModelConfig& cfg) const;
    void validate() const;
};

/// Smallest step the line search may try before giving up.
inline constexpr double kMinStep = 1e-18;

struct HistoryEntry {
    long iteration = 0;
    double energy = 0.0;
    double grad_norm = 0.0;
};

struct SolveReport {
    long iterations = 0;
    std::vector<HistoryEntry> energy_history;
    double final_gradient_norm = 0.0;
    double final_energy = 0.0;
    SolveStatus status = SolveStatus::MaxIters;
    double wall_time = 0.0;
    double grad_tol = 0.0;
};

struct SolveResult {
    Field solution;
    SolveReport report;
};

/// Monotone descent with Armijo backtracking, optionally seeded by
/// Barzilai-Borwein step lengths.
SolveResult minimize(const ModelConfig& cfg, const SolveOptions& opts, const Field& start);

/// Uniform(-1, 1) field, deterministic in (seed, stream).
Field random_field(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

struct UniquenessReport {
    std::vector<Field> minimizers;
    std::vector<SolveReport> runs;
    double spread = 0.0;  // max pairwise discrete L^p distance
    bool conclusive = false;
};

UniquenessReport uniqueness_probe(const ModelConfig& cfg, const SolveOptions& opts, int n_starts);

}  // namespace lnl
