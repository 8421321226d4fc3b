#include "lnl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lnl {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) throw IoError("error while writing " + path.string());
}

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_coords(std::ostream& out, const Partition& part, int cell)
{
    const Point x = part.cell_center(cell);
    out << cell << ',' << g17(x[0]);
    if (part.dimension() > 1) out << ',' << g17(x[1]);
}

std::string coord_header(const Partition& part)
{
    return part.dimension() > 1 ? "cell_index,x,y" : "cell_index,x";
}

json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

}  // namespace

void prepare_output_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
    const auto probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) throw IoError("output directory " + dir.string() + " is not writable");
    }
    std::filesystem::remove(probe, ec);
}

void write_field_csv(const std::filesystem::path& path, const Partition& partition, const Field& u,
                     const std::string& column)
{
    if (u.size() != static_cast<std::size_t>(partition.dof_count())) {
        throw std::invalid_argument("field does not match the partition");
    }
    auto out = open_out(path);
    out << coord_header(partition) << ',' << column << '\n';
    for (int d = 0; d < partition.dof_count(); ++d) {
        write_coords(out, partition, partition.cell_of_dof(d));
        out << ',' << g17(u[static_cast<std::size_t>(d)]) << '\n';
    }
    finish(out, path);
}

Field read_field_csv(const std::filesystem::path& path, const Partition& partition)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + " is empty");
    Field u(static_cast<std::size_t>(partition.dof_count()));
    std::vector<char> seen(u.size(), 0);
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (cols.size() != static_cast<std::size_t>(partition.dimension()) + 2) {
            throw IoError(path.string() + ": wrong column count on line " + std::to_string(row));
        }
        int cell = 0;
        double value = 0.0;
        try {
            cell = std::stoi(cols.front());
            value = std::stod(cols.back());
        } catch (const std::exception&) {
            throw IoError(path.string() + ": unreadable number on line " + std::to_string(row));
        }
        if (cell < 0 || cell >= partition.cell_count() || partition.dof_of_cell(cell) < 0) {
            throw IoError(path.string() + ": cell " + std::to_string(cell) + " is not a dof");
        }
        const auto d = static_cast<std::size_t>(partition.dof_of_cell(cell));
        u[d] = value;
        seen[d] = 1;
    }
    for (char s : seen) {
        if (!s) throw IoError(path.string() + " does not cover every dof");
    }
    return u;
}

void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryEntry>& history)
{
    auto out = open_out(path);
    out << "iter,energy,grad_norm\n";
    for (const auto& h : history) out << h.iteration << ',' << g17(h.energy) << ',' << g17(h.grad_norm) << '\n';
    finish(out, path);
}

void write_psi_csv(const std::filesystem::path& path, const Partition& partition, const CollarMass& collar)
{
    auto out = open_out(path);
    out << coord_header(partition) << ",psi\n";
    for (std::size_t k = 0; k < collar.cells.size(); ++k) {
        write_coords(out, partition, collar.cells[k]);
        out << ',' << g17(collar.psi[k]) << '\n';
    }
    finish(out, path);
}

void write_rate_csv(const std::filesystem::path& path, const RateTable& table)
{
    auto out = open_out(path);
    out << "n,h,error,tolerance,order,status\n";
    for (const auto& r : table.rows) {
        out << r.n << ',' << g17(r.h) << ',' << g17(r.error) << ',' << g17(r.tolerance) << ','
            << (r.order ? g17(*r.order) : std::string()) << ',' << to_string(r.status) << '\n';
    }
    finish(out, path);
}

void write_json(const std::filesystem::path& path, const json& j)
{
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

json to_json(const SolveReport& r)
{
    json hist = json::array();
    for (const auto& h : r.energy_history) hist.push_back({h.iteration, h.energy, h.grad_norm});
    return {{"status", to_string(r.status)},
            {"iterations", r.iterations},
            {"final_gradient_norm", r.final_gradient_norm},
            {"final_energy", r.final_energy},
            {"grad_tol", r.grad_tol},
            {"wall_time", r.wall_time},
            {"energy_history", {{"columns", {"iter", "energy", "grad_norm"}}, {"rows", hist}}}};
}

json to_json(const EnergyBreakdown& e)
{
    return {{"local_term", e.local_term},
            {"nonlocal_term", e.nonlocal_term},
            {"source_term", e.source_term},
            {"total", e.total}};
}

json to_json(const AssumptionReport& r)
{
    json v = json::array();
    for (const auto& x : r.violations) {
        v.push_back({{"assumption", x.assumption}, {"message", x.message}, {"measurement", finite_or_null(x.measurement)}});
    }
    return {{"passed", r.all_passed()},
            {"local_connected", r.local_connected},
            {"nonlocal_delta_connected", r.nonlocal_delta_connected},
            {"interface_within_delta", r.interface_within_delta},
            {"interface_vacuous", r.interface_vacuous},
            {"local_components", r.local_components},
            {"cover_layers", r.layers},
            {"uncovered_cells", r.uncovered_cells},
            {"adjusted_distance", finite_or_null(r.adjusted_distance)},
            {"violations", v}};
}

json to_json(const ValidationResult& r)
{
    return {{"passed", r.passed}, {"violations", r.violations}, {"constant", r.constant}};
}

json to_json(const CoercivityEstimate& e)
{
    json runs = json::array();
    for (const auto& r : e.runs) {
        runs.push_back({{"start", r.start}, {"value", r.value}, {"iterations", r.iterations}, {"status", to_string(r.status)}});
    }
    return {{"c_est", e.c_est}, {"n_starts", e.n_starts}, {"conclusive", e.conclusive}, {"runs", runs}};
}

json to_json(const NullspaceReport& r)
{
    return {{"passed", r.passed},
            {"component_count", r.component_count},
            {"component_count_cross_check", r.component_count_cross_check},
            {"constant_seminorm", r.constant_seminorm},
            {"min_perturbed_seminorm", r.min_perturbed_seminorm},
            {"perturbations", r.perturbations}};
}

json to_json(const RateTable& t)
{
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"n", r.n},
                        {"h", r.h},
                        {"error", r.error},
                        {"tolerance", r.tolerance},
                        {"order", r.order ? json(*r.order) : json(nullptr)},
                        {"status", to_string(r.status)}});
    }
    return {{"case", to_string(t.which)}, {"criterion", t.criterion}, {"passed", t.passed}, {"rows", rows}};
}

}  // namespace lnl
