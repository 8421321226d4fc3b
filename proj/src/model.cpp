#include "lnl/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lnl/parallel.hpp"
#include "lnl/power.hpp"

namespace lnl {

double Field::at_cell(const Partition& partition, int cell) const
{
    const int dof = partition.dof_of_cell(cell);
    return dof < 0 ? 0.0 : values_[static_cast<std::size_t>(dof)];
}

double Field::max_abs() const
{
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool Field::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

Stencil build_stencil(const Partition& part, const NeighborTable& table, const CollarMass& collar)
{
    Stencil s;
    const std::size_t n = static_cast<std::size_t>(part.dof_count());

    for (const auto& f : part.dirichlet_faces()) s.ghosts.push_back(part.dof_of_cell(f.cell));
    s.ghost_count.assign(n, 0);
    for (int g : s.ghosts) ++s.ghost_count[static_cast<std::size_t>(g)];

    std::vector<std::vector<int>> adj(n);
    for (const auto& e : part.local_edges()) {
        adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
        adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    s.local_start.push_back(0);
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        s.local_nbrs.insert(s.local_nbrs.end(), row.begin(), row.end());
        s.local_start.push_back(s.local_nbrs.size());
    }

    std::vector<std::vector<Stencil::Link>> links(n);
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        const int i = part.dof_of_cell(table.rows[r]);
        for (const auto& e : table.domain_row(r)) {
            const int j = part.dof_of_cell(e.cell);
            if (j < 0) throw std::logic_error("neighbor table references a cell without a dof");
            const bool partner_local = part.is_local_dof(j);
            links[static_cast<std::size_t>(i)].push_back({j, e.weight, partner_local ? 1.0 : 2.0});
            if (partner_local) links[static_cast<std::size_t>(j)].push_back({i, e.weight, 1.0});
        }
    }
    s.pair_start.push_back(0);
    for (auto& row : links) {
        s.pairs.insert(s.pairs.end(), row.begin(), row.end());
        s.pair_start.push_back(s.pairs.size());
    }

    s.psi_volume.assign(n, 0.0);
    const double vol = part.cell_volume();
    for (std::size_t k = 0; k < collar.cells.size(); ++k) {
        const int dof = part.dof_of_cell(collar.cells[k]);
        if (dof >= 0) s.psi_volume[static_cast<std::size_t>(dof)] = collar.psi[k] * vol;
    }
    return s;
}

void check_shape(const ModelConfig& cfg, const Field& u)
{
    if (u.size() != cfg.dofs()) {
        std::ostringstream m;
        m << "field has " << u.size() << " values, model has " << cfg.dofs() << " dofs";
        throw std::invalid_argument(m.str());
    }
}

}  // namespace

void validate_exponent(double p)
{
    if (!(p > kMinExponent) || !std::isfinite(p)) {
        std::ostringstream m;
        m << "exponent p = " << p << " must exceed " << kMinExponent;
        throw std::invalid_argument(m.str());
    }
}

ModelConfig ModelConfig::with_source(SourceModel s) const
{
    if (s.size() != dofs()) throw std::invalid_argument("source size does not match the number of dofs");
    ModelConfig c = *this;
    c.source = std::move(s);
    return c;
}

ModelConfig ModelConfig::with_p(double new_p) const
{
    validate_exponent(new_p);
    ModelConfig c = *this;
    c.p = new_p;
    return c;
}

ModelConfig make_model(Partition partition, const KernelProfile& profile, SourceModel source, double p,
                       double regularization)
{
    auto part = std::make_shared<const Partition>(std::move(partition));
    NeighborTable table = build_neighbors(*part, profile);
    CollarMass collar = collar_mass(*part, profile);
    return make_model(std::move(part), std::move(table), std::move(collar), std::move(source), p, regularization);
}

ModelConfig make_model(std::shared_ptr<const Partition> partition, NeighborTable table, CollarMass collar,
                       SourceModel source, double p, double regularization)
{
    validate_exponent(p);
    if (!(regularization >= 0.0)) throw std::invalid_argument("regularization must be >= 0");
    if (source.size() != static_cast<std::size_t>(partition->dof_count())) {
        throw std::invalid_argument("source size does not match the number of dofs");
    }
    ModelConfig cfg;
    cfg.stencil = std::make_shared<const Stencil>(build_stencil(*partition, table, collar));
    cfg.neighbors = std::make_shared<const NeighborTable>(std::move(table));
    cfg.collar = std::make_shared<const CollarMass>(std::move(collar));
    cfg.partition = std::move(partition);
    cfg.source = std::move(source);
    cfg.p = p;
    cfg.regularization = regularization;
    return cfg;
}

EnergyBreakdown eval_energy(const ModelConfig& cfg, const Field& u)
{
    check_shape(cfg, u);
    const auto& part = *cfg.partition;
    const auto& st = *cfg.stencil;
    const double p = cfg.p;
    const double eps = cfg.regularization;
    const double h = part.h();
    const double vol = part.cell_volume();
    const auto edges = part.local_edges();

    EnergyBreakdown e;
    const double edge_sum = chunked_sum(edges.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t k = b; k < end; ++k) {
            s += abs_power((u[static_cast<std::size_t>(edges[k][0])] - u[static_cast<std::size_t>(edges[k][1])]) / h, p, eps);
        }
        return s;
    });
    const double ghost_sum = chunked_sum(st.ghosts.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t k = b; k < end; ++k) s += abs_power(u[static_cast<std::size_t>(st.ghosts[k])] / h, p, eps);
        return s;
    });
    e.local_term = (edge_sum + ghost_sum) * vol / p;

    e.nonlocal_term = chunked_sum(u.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t i = b; i < end; ++i) {
            if (part.is_local_dof(static_cast<int>(i))) continue;
            for (std::size_t k = st.pair_start[i]; k < st.pair_start[i + 1]; ++k) {
                const auto& l = st.pairs[k];
                s += l.weight * abs_power(u[i] - u[static_cast<std::size_t>(l.dof)], p, eps);
            }
            s += st.psi_volume[i] * abs_power(u[i], p, eps);
        }
        return s;
    }) / p;

    e.source_term = chunked_sum(u.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t i = b; i < end; ++i) s += cfg.source.antiderivative(i, u[i]);
        return s;
    }) * vol;

    e.total = e.local_term + e.nonlocal_term - e.source_term;
    return e;
}

EnergyBreakdown energy_change(const ModelConfig& cfg, const Field& u, const Field& step)
{
    check_shape(cfg, u);
    check_shape(cfg, step);
    const auto& part = *cfg.partition;
    const auto& st = *cfg.stencil;
    const double p = cfg.p;
    const double eps = cfg.regularization;
    const double h = part.h();
    const double vol = part.cell_volume();
    const auto edges = part.local_edges();

    EnergyBreakdown e;
    const double edge_sum = chunked_sum(edges.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t k = b; k < end; ++k) {
            const auto i = static_cast<std::size_t>(edges[k][0]);
            const auto j = static_cast<std::size_t>(edges[k][1]);
            s += power_change((u[i] - u[j]) / h, (step[i] - step[j]) / h, p, eps);
        }
        return s;
    });
    const double ghost_sum = chunked_sum(st.ghosts.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t k = b; k < end; ++k) {
            const auto i = static_cast<std::size_t>(st.ghosts[k]);
            s += power_change(u[i] / h, step[i] / h, p, eps);
        }
        return s;
    });
    e.local_term = (edge_sum + ghost_sum) * vol / p;

    e.nonlocal_term = chunked_sum(u.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t i = b; i < end; ++i) {
            if (part.is_local_dof(static_cast<int>(i))) continue;
            for (std::size_t k = st.pair_start[i]; k < st.pair_start[i + 1]; ++k) {
                const auto& l = st.pairs[k];
                const auto j = static_cast<std::size_t>(l.dof);
                s += l.weight * power_change(u[i] - u[j], step[i] - step[j], p, eps);
            }
            s += st.psi_volume[i] * power_change(u[i], step[i], p, eps);
        }
        return s;
    }) / p;

    e.source_term = chunked_sum(u.size(), [&](std::size_t b, std::size_t end) {
        double s = 0.0;
        for (std::size_t i = b; i < end; ++i) s += cfg.source.antiderivative_change(i, u[i], step[i]);
        return s;
    }) * vol;

    e.total = e.local_term + e.nonlocal_term - e.source_term;
    return e;
}

Field eval_gradient(const ModelConfig& cfg, const Field& u, Terms terms)
{
    check_shape(cfg, u);
    const auto& part = *cfg.partition;
    const auto& st = *cfg.stencil;
    const double p = cfg.p;
    const double eps = cfg.regularization;
    const double h = part.h();
    const double vol = part.cell_volume();
    const double face_scale = vol / h;

    Field g(u.size());
    parallel_for(u.size(), [&](std::size_t i) {
        double local = 0.0;
        for (std::size_t k = st.local_start[i]; k < st.local_start[i + 1]; ++k) {
            local += signed_power((u[i] - u[static_cast<std::size_t>(st.local_nbrs[k])]) / h, p, eps);
        }
        if (st.ghost_count[i] > 0) local += st.ghost_count[i] * signed_power(u[i] / h, p, eps);

        double nonlocal = 0.0;
        for (std::size_t k = st.pair_start[i]; k < st.pair_start[i + 1]; ++k) {
            const auto& l = st.pairs[k];
            nonlocal += l.multiplicity * l.weight * signed_power(u[i] - u[static_cast<std::size_t>(l.dof)], p, eps);
        }
        nonlocal += st.psi_volume[i] * signed_power(u[i], p, eps);

        double v = local * face_scale + nonlocal;
        if (terms == Terms::All) v -= cfg.source.f(i, u[i]) * vol;
        g[i] = v;
    });
    return g;
}

double eval_seminorm(const ModelConfig& cfg, const Field& u, std::span<const int> cells)
{
    check_shape(cfg, u);
    const auto& part = *cfg.partition;
    const auto& table = *cfg.neighbors;
    std::vector<char> member(static_cast<std::size_t>(part.cell_count()), 0);
    for (int c : cells) {
        if (part.cell_class(c) != CellClass::Nonlocal) {
            throw std::invalid_argument("seminorm restriction must contain nonlocal cells only");
        }
        member[static_cast<std::size_t>(c)] = 1;
    }
    double s = 0.0;
    for (int c : cells) {
        const int row = table.row_of_cell(c);
        const double ui = u[static_cast<std::size_t>(part.dof_of_cell(c))];
        for (const auto& e : table.domain_row(static_cast<std::size_t>(row))) {
            if (!member[static_cast<std::size_t>(e.cell)]) continue;
            s += e.weight * abs_power(ui - u[static_cast<std::size_t>(part.dof_of_cell(e.cell))], cfg.p);
        }
    }
    return s;
}

Residual strong_residual(const ModelConfig& cfg, const Field& u)
{
    Residual r;
    r.values = eval_gradient(cfg, u);
    const double vol = cfg.cell_volume();
    for (auto& v : r.values.values()) v /= vol;
    r.max_norm = r.values.max_abs();
    return r;
}

double lp_norm_p(const ModelConfig& cfg, const Field& u)
{
    check_shape(cfg, u);
    return chunked_sum(u.size(), [&](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += std::pow(std::abs(u[i]), cfg.p);
        return s;
    }) * cfg.cell_volume();
}

double lp_distance(const ModelConfig& cfg, const Field& u, const Field& v)
{
    check_shape(cfg, v);
    Field d(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - v[i];
    return std::pow(lp_norm_p(cfg, d), 1.0 / cfg.p);
}

}  // namespace lnl
