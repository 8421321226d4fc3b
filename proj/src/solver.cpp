#include "lnl/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lnl {

const char* to_string(StepRule r)
{
    return r == StepRule::ArmijoBacktracking ? "armijo_backtracking" : "barzilai_borwein_safeguarded";
}

const char* to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIters: return "max_iters";
    case SolveStatus::LineSearchStall: return "line_search_stall";
    }
    return "unknown";
}

double SolveOptions::resolved_grad_tol(const ModelConfig& cfg) const
{
    return grad_tol ? *grad_tol : 1e-8 * cfg.cell_volume();
}

void SolveOptions::validate() const
{
    if (grad_tol && !(*grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
    if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
    if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw std::invalid_argument("armijo_c must lie in (0, 1)");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
        throw std::invalid_argument("backtrack_factor must lie in (0, 1)");
    }
    if (!(initial_step > 0.0)) throw std::invalid_argument("initial_step must be positive");
    if (history_every < 1) throw std::invalid_argument("history_every must be >= 1");
}

namespace {

double dot(const Field& a, const Field& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Barzilai-Borwein lengths are clamped to this band around the scale of the
// first trial step.
constexpr double kBBLower = 1e-12;
constexpr double kBBUpper = 1e12;

}  // namespace

Field random_field(std::size_t n, std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = dist(rng);
    return f;
}

SolveResult minimize(const ModelConfig& cfg, const SolveOptions& opts, const Field& start)
{
    opts.validate();
    if (start.size() != cfg.dofs()) throw std::invalid_argument("start field does not match the model");
    const auto t0 = std::chrono::steady_clock::now();

    SolveResult out;
    SolveReport& rep = out.report;
    rep.grad_tol = opts.resolved_grad_tol(cfg);

    Field u = start;
    Field g = eval_gradient(cfg, u);
    double energy = eval_energy(cfg, u).total;
    double alpha_prev = opts.initial_step;
    double bb_alpha = 0.0;  // 0 until a curvature pair is available

    Field step(u.size());
    Field u_next(u.size());
    long it = 0;
    double gnorm = g.max_abs();
    auto record = [&](bool force) {
        if (force || it % opts.history_every == 0) rep.energy_history.push_back({it, energy, gnorm});
    };

    while (true) {
        gnorm = g.max_abs();
        if (!std::isfinite(gnorm)) throw std::runtime_error("gradient is not finite");
        if (gnorm <= rep.grad_tol) {
            rep.status = SolveStatus::Converged;
            break;
        }
        if (it >= opts.max_iters) {
            rep.status = SolveStatus::MaxIters;
            break;
        }
        record(false);

        double alpha;
        if (opts.step_rule == StepRule::BarzilaiBorweinSafeguarded && bb_alpha > 0.0) {
            alpha = bb_alpha;
        } else if (it == 0) {
            alpha = opts.initial_step;
        } else {
            alpha = alpha_prev / opts.backtrack_factor;
        }

        const double gg = dot(g, g);
        double d_energy = 0.0;
        bool accepted = false;
        while (alpha >= kMinStep) {
            for (std::size_t i = 0; i < u.size(); ++i) step[i] = -alpha * g[i];
            d_energy = energy_change(cfg, u, step).total;
            if (std::isfinite(d_energy) && d_energy <= -opts.armijo_c * alpha * gg) {
                accepted = true;
                break;
            }
            alpha *= opts.backtrack_factor;
        }
        if (!accepted) {
            rep.status = SolveStatus::LineSearchStall;
            break;
        }

        for (std::size_t i = 0; i < u.size(); ++i) u_next[i] = u[i] + step[i];
        Field g_next = eval_gradient(cfg, u_next);

        double ss = 0.0;
        double sy = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double s = u_next[i] - u[i];
            const double y = g_next[i] - g[i];
            ss += s * s;
            sy += s * y;
        }
        if (sy > 0.0 && ss > 0.0) {
            bb_alpha = std::clamp(ss / sy, kBBLower * opts.initial_step, kBBUpper * opts.initial_step);
        } else {
            bb_alpha = alpha / opts.backtrack_factor;
        }

        std::swap(u, u_next);
        g = std::move(g_next);
        energy += d_energy;
        alpha_prev = alpha;
        ++it;
    }

    rep.iterations = it;
    rep.final_gradient_norm = gnorm;
    rep.final_energy = energy;
    record(true);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.solution = std::move(u);
    return out;
}

UniquenessReport uniqueness_probe(const ModelConfig& cfg, const SolveOptions& opts, int n_starts)
{
    if (n_starts < 2) throw std::invalid_argument("uniqueness probe needs at least two starts");
    UniquenessReport rep;
    rep.conclusive = true;
    for (int k = 0; k < n_starts; ++k) {
        const Field start = random_field(cfg.dofs(), opts.seed, static_cast<std::uint64_t>(k) + 1);
        SolveResult r = minimize(cfg, opts, start);
        if (r.report.status != SolveStatus::Converged) rep.conclusive = false;
        rep.minimizers.push_back(std::move(r.solution));
        rep.runs.push_back(std::move(r.report));
    }
    for (std::size_t a = 0; a < rep.minimizers.size(); ++a) {
        for (std::size_t b = a + 1; b < rep.minimizers.size(); ++b) {
            rep.spread = std::max(rep.spread, lp_distance(cfg, rep.minimizers[a], rep.minimizers[b]));
        }
    }
    return rep;
}

}  // namespace lnl
