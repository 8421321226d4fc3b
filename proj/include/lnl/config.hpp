#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnl/analysis.hpp"
#include "lnl/problem.hpp"
#include "lnl/solver.hpp"

namespace lnl {

/// Malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class StartKind { Zero, Random };

struct OutputOptions {
    std::string dir = "out";
    bool history = true;
    bool psi = false;
};

struct CoercivityOptions {
    int n_random = 8;
    double threshold = 1e-8;  // c_est must exceed this
};

struct ConvergenceOptions {
    ConvergenceCase which = ConvergenceCase::LocalSine;
    std::vector<int> grids{32, 64, 128, 256};
};

struct GradcheckOptions {
    int n_fields = 20;
    std::vector<double> exponents{1.5, 2.0, 3.0, 4.5};
    double tolerance = 1e-6;
    double low_p_tolerance = 1e-5;  // for p < 2, with tie-avoiding fields
};

struct RunConfig {
    ProblemSpec problem;
    SolveOptions solve;
    StartKind start = StartKind::Zero;
    OutputOptions output;
    CoercivityOptions coercivity;
    ConvergenceOptions convergence;
    GradcheckOptions gradcheck;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration, defaults included; parse_config(to_json(c))
/// reproduces c.
nlohmann::json to_json(const RunConfig& c);

}  // namespace lnl
