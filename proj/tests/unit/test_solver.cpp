#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "lnl/analysis.hpp"
#include "lnl/solver.hpp"

using namespace lnl;

namespace {

ModelConfig monotone(int n, double p)
{
    ProblemSpec s = presets::coupled_1d(n, p);
    s.source.form = SourceForm::MonotonePower;
    s.source.a = ScalarProfile::constant(1.0);
    s.source.b = ScalarProfile::constant(1.0);
    s.source.q = 0.5;
    return build_model(s);
}

}  // namespace

TEST(Minimize, ZeroSourceDrivesFieldToZero)
{
    const ModelConfig base = build_model(presets::coupled_1d(32, 3.0));
    const ModelConfig cfg = base.with_source(SourceModel::zero(base.dofs()));
    const SolveResult r = minimize(cfg, SolveOptions{}, random_field(cfg.dofs(), 1));
    EXPECT_EQ(r.report.status, SolveStatus::Converged);
    // F_p(u) >= c ||u||^p with c from the eigen-solve order of magnitude; the
    // p = 3 gradient decays like |u|^2, so the field is small but not tiny.
    EXPECT_LT(r.solution.max_abs(), 1e-2);
    EXPECT_LT(eval_energy(cfg, r.solution).total, 1e-8);
}

TEST(Minimize, LocalDirichletMatchesDirectSolve)
{
    const ModelConfig cfg = build_model(presets::local_dirichlet_1d(64));
    const OracleSolution ref = p2_linear_oracle(cfg);
    ASSERT_TRUE(ref.solution);
    const SolveResult r = minimize(cfg, SolveOptions{}, Field(cfg.dofs()));
    ASSERT_EQ(r.report.status, SolveStatus::Converged);
    EXPECT_LE(lnl::testing::max_abs_diff(r.solution, *ref.solution), 1e-8 * ref.solution->max_abs());
}

TEST(Minimize, EnergyHistoryIsMonotone)
{
    const ModelConfig cfg = monotone(32, 2.5);
    SolveOptions opts;
    opts.history_every = 1;
    const SolveResult r = minimize(cfg, opts, random_field(cfg.dofs(), 2));
    ASSERT_GT(r.report.energy_history.size(), 2u);
    for (std::size_t k = 1; k < r.report.energy_history.size(); ++k) {
        EXPECT_LE(r.report.energy_history[k].energy, r.report.energy_history[k - 1].energy);
    }
    EXPECT_NEAR(r.report.final_energy, eval_energy(cfg, r.solution).total, 1e-10);
    EXPECT_LE(r.report.final_gradient_norm, r.report.grad_tol);
}

TEST(Minimize, ScalingLawAtPEqualsThree)
{
    const ModelConfig cfg = build_model(presets::coupled_1d(32, 3.0));
    const SolveResult a = minimize(cfg, SolveOptions{}, Field(cfg.dofs()));
    const SolveResult b = minimize(cfg.with_source(cfg.source.scaled(8.0)), SolveOptions{}, Field(cfg.dofs()));
    ASSERT_EQ(a.report.status, SolveStatus::Converged);
    ASSERT_EQ(b.report.status, SolveStatus::Converged);
    Field scaled = a.solution;
    for (auto& x : scaled.values()) x *= std::sqrt(8.0);
    EXPECT_LE(lnl::testing::max_abs_diff(scaled, b.solution), 1e-6 * b.solution.max_abs());
}

TEST(Minimize, PlainArmijoRuleConverges)
{
    SolveOptions opts;
    opts.step_rule = StepRule::ArmijoBacktracking;
    const ModelConfig cfg = build_model(presets::local_dirichlet_1d(16));
    const SolveResult r = minimize(cfg, opts, Field(cfg.dofs()));
    EXPECT_EQ(r.report.status, SolveStatus::Converged);
    EXPECT_LE(lnl::testing::max_abs_diff(r.solution, *p2_linear_oracle(cfg).solution), 1e-6);
}

TEST(Minimize, IterationCapReported)
{
    SolveOptions opts;
    opts.max_iters = 1;
    const ModelConfig cfg = build_model(presets::coupled_1d(32, 2.0));
    const SolveResult r = minimize(cfg, opts, Field(cfg.dofs()));
    EXPECT_EQ(r.report.status, SolveStatus::MaxIters);
    EXPECT_EQ(r.report.iterations, 1);
}

TEST(Minimize, Deterministic)
{
    const ModelConfig cfg = monotone(32, 2.5);
    const SolveResult a = minimize(cfg, SolveOptions{}, random_field(cfg.dofs(), 3));
    const SolveResult b = minimize(cfg, SolveOptions{}, random_field(cfg.dofs(), 3));
    EXPECT_EQ(a.report.iterations, b.report.iterations);
    EXPECT_TRUE(a.solution == b.solution);
}

TEST(Minimize, RejectsInvalidOptions)
{
    const ModelConfig cfg = build_model(presets::coupled_1d(16, 2.0));
    SolveOptions o;
    o.armijo_c = 1.0;
    EXPECT_THROW(minimize(cfg, o, Field(cfg.dofs())), std::invalid_argument);
    o = SolveOptions{};
    o.grad_tol = -1.0;
    EXPECT_THROW(minimize(cfg, o, Field(cfg.dofs())), std::invalid_argument);
    EXPECT_THROW(minimize(cfg, SolveOptions{}, Field(3)), std::invalid_argument);
}

TEST(Minimize, DefaultToleranceScalesWithCellVolume)
{
    const ModelConfig cfg = build_model(presets::coupled_2d(16, 2.0));
    EXPECT_DOUBLE_EQ(SolveOptions{}.resolved_grad_tol(cfg), 1e-8 / 256.0);
}

TEST(Uniqueness, MonotoneSourceGivesOneMinimizer)
{
    const UniquenessReport r = uniqueness_probe(monotone(32, 2.5), SolveOptions{}, 5);
    EXPECT_TRUE(r.conclusive);
    EXPECT_LE(r.spread, 1e-6);
}

TEST(Uniqueness, DetachedComponentsKeepTheirStartValues)
{
    const ModelConfig base = build_model(presets::detached_1d(32));
    const ModelConfig cfg = base.with_source(SourceModel::zero(base.dofs()));
    const UniquenessReport r = uniqueness_probe(cfg, SolveOptions{}, 5);
    EXPECT_GT(r.spread, 0.1);
}

TEST(Uniqueness, NeedsTwoStarts)
{
    EXPECT_THROW(uniqueness_probe(monotone(16, 2.5), SolveOptions{}, 1), std::invalid_argument);
}
