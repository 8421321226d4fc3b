#include "lnl/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "lnl/analysis.hpp"
#include "lnl/config.hpp"
#include "lnl/cover.hpp"
#include "lnl/io.hpp"
#include "lnl/parallel.hpp"

namespace lnl::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config;
    std::optional<std::string> out;
    std::optional<long> seed;
    std::optional<int> threads;
};

struct Context {
    RunConfig config;
    fs::path out;
    json resolved;
};

/// Validation outcome shared by every command.
struct Checks {
    AssumptionReport assumptions;
    ValidationResult j1;
    ValidationResult growth;
    bool passed() const { return assumptions.all_passed() && j1.passed && growth.passed; }
    json to_json() const
    {
        return {{"passed", passed()},
                {"assumptions", lnl::to_json(assumptions)},
                {"j1", lnl::to_json(j1)},
                {"growth", lnl::to_json(growth)}};
    }
};

void apply_threads(const std::optional<int>& flag)
{
    if (flag) {
        if (*flag < 1) throw ConfigError("--threads must be >= 1");
        set_thread_count(*flag);
        return;
    }
    if (const char* env = std::getenv("LNL_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n < 1) throw ConfigError("LNL_THREADS must be a positive integer");
        set_thread_count(static_cast<int>(n));
    }
}

Context load(const Flags& f)
{
    Context ctx;
    ctx.config = load_config(f.config);
    if (f.out) ctx.config.output.dir = *f.out;
    if (f.seed) {
        if (*f.seed < 0) throw ConfigError("--seed must be >= 0");
        ctx.config.solve.seed = static_cast<std::uint64_t>(*f.seed);
    }
    apply_threads(f.threads);
    ctx.out = ctx.config.output.dir;
    ctx.resolved = to_json(ctx.config);
    return ctx;
}

ModelConfig build(const Context& ctx)
{
    try {
        return build_model(ctx.config.problem);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::logic_error& e) {
        throw ConfigError(e.what());
    }
}

Checks run_checks(const Context& ctx, const ModelConfig& model)
{
    Checks c;
    c.assumptions = check_assumptions(*model.partition, ctx.config.problem.delta);
    c.j1 = validate_j1(ctx.config.problem.kernel, ctx.config.problem.delta);
    c.growth = validate_growth(model.source, model.p);
    return c;
}

json report_head(const Context& ctx, const char* command)
{
    return {{"command", command}, {"config", ctx.resolved}, {"threads", thread_count()}};
}

void print_checks(const Checks& c)
{
    for (const auto& v : c.assumptions.violations) std::cout << "assumption (" << v.assumption << "): " << v.message << '\n';
    for (const auto& v : c.j1.violations) std::cout << "kernel: " << v << '\n';
    for (const auto& v : c.growth.violations) std::cout << "source: " << v << '\n';
}

int cmd_check(const Context& ctx)
{
    const ModelConfig model = build(ctx);
    const Checks checks = run_checks(ctx, model);
    prepare_output_dir(ctx.out);
    json rep = report_head(ctx, "check");
    rep["checks"] = checks.to_json();
    rep["cells"] = {{"local", model.partition->count(CellClass::Local)},
                    {"nonlocal", model.partition->count(CellClass::Nonlocal)},
                    {"collar", model.partition->count(CellClass::Collar)},
                    {"outside", model.partition->count(CellClass::Outside)}};
    write_json(ctx.out / "report.json", rep);
    print_checks(checks);
    std::cout << "check: " << (checks.passed() ? "passed" : "failed") << '\n';
    return checks.passed() ? kExitOk : kExitFailure;
}

int cmd_solve(const Context& ctx)
{
    const ModelConfig model = build(ctx);
    const Checks checks = run_checks(ctx, model);
    prepare_output_dir(ctx.out);
    json rep = report_head(ctx, "solve");
    rep["checks"] = checks.to_json();
    if (!checks.passed()) {
        rep["status"] = "validation_failed";
        write_json(ctx.out / "report.json", rep);
        print_checks(checks);
        std::cout << "solve: validation failed, no solve attempted\n";
        return kExitFailure;
    }

    const SolveOptions& opts = ctx.config.solve;
    const Field start = ctx.config.start == StartKind::Zero ? Field(model.dofs()) : random_field(model.dofs(), opts.seed);
    const SolveResult res = minimize(model, opts, start);
    const Residual resid = strong_residual(model, res.solution);

    write_field_csv(ctx.out / "solution.csv", *model.partition, res.solution);
    write_field_csv(ctx.out / "residual.csv", *model.partition, resid.values, "residual");
    if (ctx.config.output.history) write_history_csv(ctx.out / "history.csv", res.report.energy_history);
    if (ctx.config.output.psi) write_psi_csv(ctx.out / "psi.csv", *model.partition, *model.collar);

    rep["status"] = to_string(res.report.status);
    rep["solve"] = to_json(res.report);
    rep["energy"] = to_json(eval_energy(model, res.solution));
    rep["residual_max_norm"] = resid.max_norm;
    write_json(ctx.out / "report.json", rep);

    std::cout << "solve: " << to_string(res.report.status) << " after " << res.report.iterations
              << " iterations, energy " << res.report.final_energy << ", gradient " << res.report.final_gradient_norm
              << '\n';
    return res.report.status == SolveStatus::Converged ? kExitOk : kExitFailure;
}

int cmd_coercivity(const Context& ctx)
{
    const ModelConfig model = build(ctx);
    const Checks checks = run_checks(ctx, model);
    prepare_output_dir(ctx.out);
    const CoercivityEstimate est = coercivity_constant(model, ctx.config.coercivity.n_random, ctx.config.solve);
    const bool ok = est.conclusive && est.c_est > ctx.config.coercivity.threshold;

    json rep = report_head(ctx, "coercivity");
    rep["checks"] = checks.to_json();
    rep["coercivity"] = to_json(est);
    rep["threshold"] = ctx.config.coercivity.threshold;
    if (model.p == 2.0) rep["eigen_estimate"] = p2_coercivity_eigen(model);
    rep["passed"] = ok;
    write_json(ctx.out / "report.json", rep);
    write_field_csv(ctx.out / "minimizer.csv", *model.partition, est.minimizer);

    std::cout << "coercivity: c_est = " << est.c_est << (est.conclusive ? "" : " (inconclusive)") << '\n';
    return ok ? kExitOk : kExitFailure;
}

int cmd_nulltest(const Context& ctx)
{
    const ModelConfig model = build(ctx);
    const Checks checks = run_checks(ctx, model);
    prepare_output_dir(ctx.out);
    const std::vector<int> cells = model.partition->cells_of(CellClass::Nonlocal);
    const NullspaceReport nr = nullspace_check(model, cells, ctx.config.solve.seed);

    json rep = report_head(ctx, "nulltest");
    rep["checks"] = checks.to_json();
    rep["nullspace"] = to_json(nr);
    write_json(ctx.out / "report.json", rep);

    std::cout << "nulltest: " << nr.component_count << " component(s), " << (nr.passed ? "passed" : "failed") << '\n';
    return nr.passed ? kExitOk : kExitFailure;
}

int cmd_convergence(const Context& ctx)
{
    prepare_output_dir(ctx.out);
    const RateTable table = convergence_study(ctx.config.convergence.which, ctx.config.convergence.grids, ctx.config.solve);

    json rep = report_head(ctx, "convergence");
    rep["convergence"] = to_json(table);
    write_json(ctx.out / "report.json", rep);
    write_rate_csv(ctx.out / "rates.csv", table);

    for (const auto& r : table.rows) {
        std::cout << "n=" << r.n << " error=" << r.error;
        if (r.order) std::cout << " order=" << *r.order;
        std::cout << '\n';
    }
    std::cout << "convergence: " << (table.passed ? "passed" : "failed") << '\n';
    return table.passed ? kExitOk : kExitFailure;
}

int cmd_gradcheck(const Context& ctx)
{
    const ModelConfig model = build(ctx);
    prepare_output_dir(ctx.out);
    const GradcheckOptions& g = ctx.config.gradcheck;
    json rows = json::array();
    double worst = 0.0;
    bool ok = true;
    for (double p : g.exponents) {
        validate_exponent(p);
        const bool low = p < 2.0;
        const double tol = low ? g.low_p_tolerance : g.tolerance;
        const GradientCheckReport r = gradient_check(model.with_p(p), g.n_fields, ctx.config.solve.seed, low);
        const bool pass = r.max_relative_error <= tol;
        ok = ok && pass;
        worst = std::max(worst, r.max_relative_error);
        rows.push_back({{"p", p},
                        {"max_relative_error", r.max_relative_error},
                        {"tolerance", tol},
                        {"tie_avoiding", low},
                        {"step", r.step},
                        {"n_fields", r.n_fields},
                        {"passed", pass}});
        std::cout << "p=" << p << " max relative error " << r.max_relative_error << (pass ? "" : " (above tolerance)")
                  << '\n';
    }
    json rep = report_head(ctx, "gradcheck");
    rep["gradcheck"] = {{"rows", rows}, {"max_relative_error", worst}, {"passed", ok}};
    write_json(ctx.out / "report.json", rep);
    std::cout << "gradcheck: " << (ok ? "passed" : "failed") << '\n';
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args)
{
    CLI::App app{"Energy minimization for coupled local/nonlocal p-Laplace problems", "lnl"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<const char*, const char*>> commands{
        {"check", "Validate geometry, kernel and source assumptions"},
        {"solve", "Minimize the energy and write the solution"},
        {"coercivity", "Estimate the coercivity constant"},
        {"nulltest", "Check the null space of the nonlocal seminorm"},
        {"convergence", "Run a grid refinement study"},
        {"gradcheck", "Compare the gradient against finite differences"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON configuration file")->required();
        sub->add_option("--out", flags.out, "Output directory");
        sub->add_option("--seed", flags.seed, "Random seed");
        sub->add_option("--threads", flags.threads, "Thread count (overrides LNL_THREADS)");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        const Context ctx = load(flags);
        if (name == "check") return cmd_check(ctx);
        if (name == "solve") return cmd_solve(ctx);
        if (name == "coercivity") return cmd_coercivity(ctx);
        if (name == "nulltest") return cmd_nulltest(ctx);
        if (name == "convergence") return cmd_convergence(ctx);
        return cmd_gradcheck(ctx);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace lnl::cli
