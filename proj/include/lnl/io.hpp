#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnl/analysis.hpp"
#include "lnl/cover.hpp"
#include "lnl/kernel.hpp"
#include "lnl/model.hpp"
#include "lnl/solver.hpp"

namespace lnl {

/// Output could not be written, or an input file could not be read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Creates `dir` if needed and checks that files can be created in it.
void prepare_output_dir(const std::filesystem::path& dir);

/// cell_index,x[,y],<column> for every dof cell, in dof order.
void write_field_csv(const std::filesystem::path& path, const Partition& partition, const Field& u,
                     const std::string& column = "value");

/// Reads a file written by write_field_csv back into a dof-ordered field.
Field read_field_csv(const std::filesystem::path& path, const Partition& partition);

/// iter,energy,grad_norm
void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryEntry>& history);

/// cell_index,x[,y],psi for every nonlocal cell.
void write_psi_csv(const std::filesystem::path& path, const Partition& partition, const CollarMass& collar);

/// n,h,error,tolerance,order,status
void write_rate_csv(const std::filesystem::path& path, const RateTable& table);

/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const EnergyBreakdown& e);
nlohmann::json to_json(const AssumptionReport& r);
nlohmann::json to_json(const ValidationResult& r);
nlohmann::json to_json(const CoercivityEstimate& e);
nlohmann::json to_json(const NullspaceReport& r);
nlohmann::json to_json(const RateTable& t);

}  // namespace lnl
