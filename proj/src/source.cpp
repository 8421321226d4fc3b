#include "lnl/source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lnl/power.hpp"

namespace lnl {

double ScalarProfile::operator()(const Point& x, int dimension) const
{
    if (kind == Kind::Constant) return value;
    double v = value;
    for (int a = 0; a < dimension; ++a) v *= std::sin(std::numbers::pi * x[a]);
    return v;
}

std::vector<double> sample(const Partition& partition, const ScalarProfile& profile)
{
    std::vector<double> out(static_cast<std::size_t>(partition.dof_count()));
    for (int d = 0; d < partition.dof_count(); ++d) {
        out[static_cast<std::size_t>(d)] = profile(partition.cell_center(partition.cell_of_dof(d)), partition.dimension());
    }
    return out;
}

const char* to_string(SourceForm f)
{
    return f == SourceForm::Affine ? "affine" : "monotone_power";
}

SourceModel SourceModel::zero(std::size_t dofs)
{
    return affine(std::vector<double>(dofs, 0.0));
}

SourceModel SourceModel::affine(std::vector<double> g)
{
    SourceModel s;
    s.form_ = SourceForm::Affine;
    s.b_.assign(g.size(), 0.0);
    s.a_ = std::move(g);
    s.q_ = 0.0;
    return s;
}

SourceModel SourceModel::monotone_power(std::vector<double> a, std::vector<double> b, double q, double declared_s)
{
    if (a.size() != b.size()) throw std::invalid_argument("source coefficient arrays differ in length");
    SourceModel s;
    s.form_ = SourceForm::MonotonePower;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.q_ = q;
    s.s_ = declared_s;
    return s;
}

double SourceModel::f(std::size_t dof, double xi) const
{
    if (form_ == SourceForm::Affine) return a_[dof];
    const double pw = xi == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(xi), q_), xi);
    return a_[dof] - b_[dof] * pw;
}

double SourceModel::antiderivative(std::size_t dof, double xi) const
{
    if (form_ == SourceForm::Affine) return a_[dof] * xi;
    return a_[dof] * xi - b_[dof] * std::pow(std::abs(xi), q_ + 1.0) / (q_ + 1.0);
}

double SourceModel::antiderivative_change(std::size_t dof, double xi, double dxi) const
{
    if (form_ == SourceForm::Affine) return a_[dof] * dxi;
    return a_[dof] * dxi - b_[dof] * power_change(xi, dxi, q_ + 1.0) / (q_ + 1.0);
}

SourceModel SourceModel::scaled(double t) const
{
    SourceModel s = *this;
    for (auto& v : s.a_) v *= t;
    return s;
}

ValidationResult validate_growth(const SourceModel& source, double p)
{
    ValidationResult r;
    const double q = source.exponent();
    auto fail = [&](const std::string& msg) {
        r.passed = false;
        r.violations.push_back(msg);
    };
    if (!(p > 1.0)) fail("p must exceed 1");
    if (!(q >= 0.0)) fail("growth exponent q must be >= 0");
    if (!(q < p - 1.0)) {
        std::ostringstream m;
        m << "growth exponent q = " << q << " is not below p - 1 = " << p - 1.0;
        fail(m.str());
    }
    const auto& b = source.b();
    if (std::any_of(b.begin(), b.end(), [](double v) { return !(v >= 0.0); })) {
        fail("coefficient b must be nonnegative");
    }
    const double conj = p / (p - 1.0);
    if (!(source.declared_integrability() > conj)) {
        std::ostringstream m;
        m << "integrability s = " << source.declared_integrability() << " is not above p' = " << conj;
        fail(m.str());
    }
    r.constant = q;
    return r;
}

}  // namespace lnl
