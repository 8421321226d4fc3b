#pragma once

#include <limits>
#include <vector>

#include "lnl/grid.hpp"
#include "lnl/kernel.hpp"

namespace lnl {

/// Spatial profile used to sample source coefficients on the grid.
struct ScalarProfile {
    enum class Kind { Constant, SineProduct };

    Kind kind = Kind::Constant;
    double value = 0.0;  // constant value, or amplitude of prod_a sin(pi x_a)

    double operator()(const Point& x, int dimension) const;

    static ScalarProfile constant(double v) { return {Kind::Constant, v}; }
    static ScalarProfile sine_product(double amplitude) { return {Kind::SineProduct, amplitude}; }
};

/// Profile evaluated at the center of every dof cell.
std::vector<double> sample(const Partition& partition, const ScalarProfile& profile);

enum class SourceForm { Affine, MonotonePower };

const char* to_string(SourceForm f);

/// Nonlinearity f(x, xi) sampled per dof:
///   affine:         f = g(x)
///   monotone_power: f = a(x) - b(x) sign(xi) |xi|^q
class SourceModel {
public:
    SourceModel() = default;

    static SourceModel zero(std::size_t dofs);
    static SourceModel affine(std::vector<double> g);
    static SourceModel monotone_power(std::vector<double> a, std::vector<double> b, double q,
                                      double declared_s = std::numeric_limits<double>::infinity());

    SourceForm form() const { return form_; }
    std::size_t size() const { return a_.size(); }
    double exponent() const { return q_; }
    double declared_integrability() const { return s_; }
    /// Affine samples are stored as a = g, b = 0.
    const std::vector<double>& a() const { return a_; }
    const std::vector<double>& b() const { return b_; }

    double f(std::size_t dof, double xi) const;
    /// Antiderivative F(x, xi) = int_0^xi f(x, t) dt.
    double antiderivative(std::size_t dof, double xi) const;
    /// F(x, xi + dxi) - F(x, xi) without cancellation.
    double antiderivative_change(std::size_t dof, double xi, double dxi) const;

    /// Same form with every coefficient of the xi-independent part scaled by t.
    SourceModel scaled(double t) const;

private:
    SourceForm form_ = SourceForm::Affine;
    std::vector<double> a_;
    std::vector<double> b_;
    double q_ = 0.0;
    double s_ = std::numeric_limits<double>::infinity();
};

/// Growth hypothesis: 0 <= q < p - 1, b >= 0, s > p / (p - 1).
ValidationResult validate_growth(const SourceModel& source, double p);

}  // namespace lnl
