#include "lnl/problem.hpp"

#include <numbers>

namespace lnl {

SourceModel make_source(const Partition& partition, const SourceSpec& spec)
{
    if (spec.form == SourceForm::Affine) return SourceModel::affine(sample(partition, spec.g));
    return SourceModel::monotone_power(sample(partition, spec.a), sample(partition, spec.b), spec.q, spec.s);
}

Partition build_partition(const ProblemSpec& spec)
{
    return build_grid(spec.grid, spec.regions, spec.kernel.support_radius);
}

ModelConfig build_model(const ProblemSpec& spec)
{
    Partition part = build_partition(spec);
    SourceModel src = make_source(part, spec.source);
    return make_model(std::move(part), spec.kernel, std::move(src), spec.p, spec.regularization);
}

Box interval(double lo, double hi)
{
    return Box{{lo, 0.0}, {hi, 0.0}};
}

Box rectangle(double x0, double x1, double y0, double y1)
{
    return Box{{x0, y0}, {x1, y1}};
}

namespace presets {

namespace {

ProblemSpec base_1d(int n, double lo, double hi, double p)
{
    ProblemSpec s;
    s.grid.dimension = 1;
    s.grid.h = 1.0 / n;
    s.grid.bounding_box = interval(lo, hi);
    s.p = p;
    s.source.form = SourceForm::Affine;
    s.source.g = ScalarProfile::constant(1.0);
    return s;
}

}  // namespace

ProblemSpec coupled_1d(int n, double p)
{
    ProblemSpec s = base_1d(n, -0.5, 1.5, p);
    s.regions.local_boxes = {interval(0.0, 0.5)};
    s.regions.nonlocal_boxes = {interval(0.5, 1.0)};
    s.kernel = KernelProfile{KernelShape::Indicator, 1.0, 0.2, 2};
    s.delta = 0.1;
    return s;
}

ProblemSpec coupled_smooth_1d(int n, double p)
{
    ProblemSpec s = coupled_1d(n, p);
    s.kernel = KernelProfile{KernelShape::PolynomialBump, 1.0, 0.3, 2};
    return s;
}

ProblemSpec local_dirichlet_1d(int n, double p)
{
    ProblemSpec s = base_1d(n, 0.0, 1.0, p);
    s.regions.local_boxes = {interval(0.0, 1.0)};
    s.kernel = KernelProfile{KernelShape::Indicator, 1.0, 0.5 / n, 2};
    s.delta = 0.25 / n;
    return s;
}

ProblemSpec node_aligned_sine_1d(int n)
{
    const double h = 1.0 / n;
    ProblemSpec s = base_1d(n, -0.5 * h, 1.0 + 0.5 * h, 2.0);
    s.regions.local_boxes = {interval(0.5 * h, 1.0 - 0.5 * h)};
    s.kernel = KernelProfile{KernelShape::Indicator, 1.0, 0.5 * h, 2};
    s.delta = 0.25 * h;
    s.source.g = ScalarProfile::sine_product(std::numbers::pi * std::numbers::pi);
    return s;
}

ProblemSpec pure_nonlocal_1d(int n, double p)
{
    ProblemSpec s = base_1d(n, -0.25, 1.25, p);
    s.regions.nonlocal_boxes = {interval(0.0, 1.0)};
    s.kernel = KernelProfile{KernelShape::Indicator, 1.0, 0.1, 2};
    s.delta = 0.05;
    return s;
}

ProblemSpec detached_1d(int n, double p)
{
    ProblemSpec s = coupled_1d(n, p);
    s.kernel.support_radius = 0.5 / n;
    s.delta = 0.25 / n;
    return s;
}

ProblemSpec coupled_2d(int n, double p)
{
    ProblemSpec s;
    s.grid.dimension = 2;
    s.grid.h = 1.0 / n;
    s.grid.bounding_box = rectangle(-0.25, 1.25, -0.25, 1.25);
    s.regions.local_boxes = {rectangle(0.0, 0.5, 0.0, 1.0)};
    s.regions.nonlocal_boxes = {rectangle(0.5, 1.0, 0.0, 1.0)};
    s.kernel = KernelProfile{KernelShape::Indicator, 1.0, 0.1, 2};
    s.delta = 0.05;
    s.p = p;
    s.source.form = SourceForm::Affine;
    s.source.g = ScalarProfile::constant(1.0);
    return s;
}

}  // namespace presets

}  // namespace lnl
