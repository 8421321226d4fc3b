#pragma once

#include <limits>

#include "lnl/grid.hpp"
#include "lnl/kernel.hpp"
#include "lnl/model.hpp"
#include "lnl/source.hpp"

namespace lnl {

struct SourceSpec {
    SourceForm form = SourceForm::Affine;
    ScalarProfile g = ScalarProfile::constant(0.0);
    ScalarProfile a = ScalarProfile::constant(0.0);
    ScalarProfile b = ScalarProfile::constant(0.0);
    double q = 0.0;
    double s = std::numeric_limits<double>::infinity();
};

SourceModel make_source(const Partition& partition, const SourceSpec& spec);

/// Everything needed to build a discrete model.
struct ProblemSpec {
    GridSpec grid;
    RegionSpec regions;
    double delta = 0.1;
    KernelProfile kernel;
    double p = 2.0;
    double regularization = 0.0;
    SourceSpec source;
};

Partition build_partition(const ProblemSpec& spec);
ModelConfig build_model(const ProblemSpec& spec);

Box interval(double lo, double hi);
Box rectangle(double x0, double x1, double y0, double y1);

namespace presets {

/// Omega_l = (0, 0.5), Omega_nl = (0.5, 1) in the box [-0.5, 1.5], h = 1/n,
/// indicator kernel R = 0.2, delta = 0.1, unit affine source.
ProblemSpec coupled_1d(int n, double p = 2.0);

/// Geometry of coupled_1d with a smooth polynomial bump kernel (R = 0.3,
/// exponent 2), whose cell-center quadrature varies smoothly with h.
ProblemSpec coupled_smooth_1d(int n, double p = 2.0);

/// Omega = Omega_l = (0, 1) filling the box, homogeneous Dirichlet at both ends.
ProblemSpec local_dirichlet_1d(int n, double p = 2.0);

/// Local region (h/2, 1 - h/2) so that the Dirichlet ghost centers sit at 0
/// and 1; source pi^2 sin(pi x), exact solution sin(pi x) for p = 2.
ProblemSpec node_aligned_sine_1d(int n);

/// Omega = Omega_nl = (0, 1) in [-0.25, 1.25], indicator R = 0.1, delta = 0.05.
ProblemSpec pure_nonlocal_1d(int n, double p = 2.0);

/// Geometry of coupled_1d with a kernel support below the grid spacing: every
/// nonlocal cell is an isolated component that sees neither neighbours nor
/// the exterior.
ProblemSpec detached_1d(int n, double p = 2.0);

/// Left half local, right half nonlocal on (0,1)^2 in [-0.25, 1.25]^2,
/// indicator R = 0.1, delta = 0.05.
ProblemSpec coupled_2d(int n, double p = 2.0);

}  // namespace presets

}  // namespace lnl
