#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lnl/analysis.hpp"
#include "lnl/parallel.hpp"
#include "lnl/power.hpp"

namespace lnl {

namespace {

double dirichlet_energy(const ModelConfig& cfg, const Field& u)
{
    const EnergyBreakdown e = eval_energy(cfg, u);
    return e.local_term + e.nonlocal_term;
}

void normalize(const ModelConfig& cfg, Field& u)
{
    const double n = lp_norm_p(cfg, u);
    if (!(n > 0.0)) throw std::invalid_argument("cannot normalize the zero field");
    const double s = std::pow(n, -1.0 / cfg.p);
    for (auto& v : u.values()) v *= s;
}

// Tangential gradient of F_p / N_p at a point with N_p(u) = 1.
Field sphere_gradient(const ModelConfig& cfg, const Field& u, double value)
{
    Field g = eval_gradient(cfg, u, Terms::WithoutSource);
    const double scale = value * cfg.p * cfg.cell_volume();
    for (std::size_t i = 0; i < u.size(); ++i) g[i] -= scale * signed_power(u[i], cfg.p);
    return g;
}

}  // namespace

double rayleigh_quotient(const ModelConfig& cfg, const Field& u)
{
    const double n = lp_norm_p(cfg, u);
    if (!(n > 0.0)) throw std::invalid_argument("Rayleigh quotient of the zero field");
    return dirichlet_energy(cfg, u) / n;
}

SolveResult minimize_on_sphere(const ModelConfig& cfg, const SolveOptions& opts, const Field& start)
{
    opts.validate();
    if (start.size() != cfg.dofs()) throw std::invalid_argument("start field does not match the model");
    const auto t0 = std::chrono::steady_clock::now();
    const double vol = cfg.cell_volume();
    const double p = cfg.p;

    SolveResult out;
    SolveReport& rep = out.report;
    rep.grad_tol = opts.resolved_grad_tol(cfg);

    Field u = start;
    normalize(cfg, u);
    double value = dirichlet_energy(cfg, u);
    Field g = sphere_gradient(cfg, u, value);
    double bb_alpha = 0.0;
    double alpha_prev = opts.initial_step;
    Field step(u.size());
    long it = 0;
    double gnorm = 0.0;

    while (true) {
        gnorm = g.max_abs();
        if (gnorm <= rep.grad_tol) {
            rep.status = SolveStatus::Converged;
            break;
        }
        if (it >= opts.max_iters) {
            rep.status = SolveStatus::MaxIters;
            break;
        }
        if (it % opts.history_every == 0) rep.energy_history.push_back({it, value, gnorm});

        double alpha = bb_alpha > 0.0 && opts.step_rule == StepRule::BarzilaiBorweinSafeguarded
                           ? bb_alpha
                           : (it == 0 ? opts.initial_step : alpha_prev / opts.backtrack_factor);
        double gg = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) gg += g[i] * g[i];

        double d_value = 0.0;
        bool accepted = false;
        while (alpha >= kMinStep) {
            for (std::size_t i = 0; i < u.size(); ++i) step[i] = -alpha * g[i];
            const EnergyBreakdown ch = energy_change(cfg, u, step);
            const double d_f = ch.local_term + ch.nonlocal_term;
            const double d_n = chunked_sum(u.size(), [&](std::size_t b, std::size_t e) {
                double s = 0.0;
                for (std::size_t i = b; i < e; ++i) s += power_change(u[i], step[i], p);
                return s;
            }) * vol;
            // Quotient change after rescaling u + step back onto the sphere.
            d_value = (d_f - value * d_n) / (1.0 + d_n);
            if (std::isfinite(d_value) && d_value <= -opts.armijo_c * alpha * gg) {
                accepted = true;
                break;
            }
            alpha *= opts.backtrack_factor;
        }
        if (!accepted) {
            rep.status = SolveStatus::LineSearchStall;
            break;
        }

        Field next(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) next[i] = u[i] + step[i];
        normalize(cfg, next);
        value += d_value;
        Field g_next = sphere_gradient(cfg, next, value);

        double ss = 0.0;
        double sy = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double s = next[i] - u[i];
            ss += s * s;
            sy += s * (g_next[i] - g[i]);
        }
        bb_alpha = sy > 0.0 && ss > 0.0 ? std::clamp(ss / sy, 1e-12 * opts.initial_step, 1e12 * opts.initial_step)
                                        : alpha / opts.backtrack_factor;
        u = std::move(next);
        g = std::move(g_next);
        alpha_prev = alpha;
        ++it;
    }

    rep.iterations = it;
    rep.final_gradient_norm = gnorm;
    rep.final_energy = rayleigh_quotient(cfg, u);
    rep.energy_history.push_back({it, rep.final_energy, gnorm});
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.solution = std::move(u);
    return out;
}

CoercivityEstimate coercivity_constant(const ModelConfig& cfg, int n_random, const SolveOptions& opts)
{
    if (n_random < 0) throw std::invalid_argument("number of random starts must be >= 0");
    const auto& part = *cfg.partition;

    std::vector<std::pair<std::string, Field>> starts;
    for (int k = 0; k < n_random; ++k) {
        starts.emplace_back("random:" + std::to_string(k),
                            random_field(cfg.dofs(), opts.seed, 1000 + static_cast<std::uint64_t>(k)));
    }
    const ComponentLabels comps = kernel_components(part, *cfg.neighbors);
    const auto members = comps.members();
    for (std::size_t k = 0; k < members.size(); ++k) {
        Field f(cfg.dofs());
        for (int cell : members[k]) f[static_cast<std::size_t>(part.dof_of_cell(cell))] = 1.0;
        starts.emplace_back("component:" + std::to_string(k), std::move(f));
    }
    if (part.count(CellClass::Local) > 0) {
        Field f(cfg.dofs());
        for (int d = 0; d < part.dof_count(); ++d) {
            if (part.is_local_dof(d)) f[static_cast<std::size_t>(d)] = 1.0;
        }
        starts.emplace_back("local", std::move(f));
    }
    if (starts.empty()) throw std::invalid_argument("coercivity estimate needs at least one start");

    CoercivityEstimate est;
    est.n_starts = static_cast<int>(starts.size());
    est.c_est = std::numeric_limits<double>::infinity();
    for (auto& [name, start] : starts) {
        SolveResult r = minimize_on_sphere(cfg, opts, start);
        est.runs.push_back({name, r.report.final_energy, r.report.iterations, r.report.status});
        if (r.report.status == SolveStatus::Converged) est.conclusive = true;
        if (r.report.final_energy < est.c_est) {
            est.c_est = r.report.final_energy;
            est.minimizer = std::move(r.solution);
        }
    }
    return est;
}

}  // namespace lnl
