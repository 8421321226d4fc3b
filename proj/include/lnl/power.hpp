#pragma once

#include <algorithm>
#include <cmath>

namespace lnl {

/// (d^2 + eps^2)^(p/2) - eps^p; equals |d|^p for eps = 0.
inline double abs_power(double d, double p, double eps = 0.0)
{
    if (p == 2.0) return d * d;
    if (eps == 0.0) return std::pow(std::abs(d), p);
    return std::pow(d * d + eps * eps, 0.5 * p) - std::pow(eps, p);
}

/// Derivative of abs_power / p with respect to d: |d|^(p-2) d, written as
/// sign(d) |d|^(p-1) so that it is 0 at d = 0 for every p > 1.
inline double signed_power(double d, double p, double eps = 0.0)
{
    if (p == 2.0) return d;
    if (eps == 0.0) {
        if (d == 0.0) return 0.0;
        return std::copysign(std::pow(std::abs(d), p - 1.0), d);
    }
    return std::pow(d * d + eps * eps, 0.5 * p - 1.0) * d;
}

/// abs_power(d + dd) - abs_power(d), accurate to relative rounding of the
/// difference itself even when |dd| << |d|.
inline double power_change(double d, double dd, double p, double eps = 0.0)
{
    const double base = d * d + eps * eps;
    const double inc = dd * (2.0 * d + dd);
    if (p == 2.0) return inc;
    if (base == 0.0) return std::pow(std::abs(inc), 0.5 * p);
    const double ratio = std::max(inc / base, -1.0);
    return std::pow(base, 0.5 * p) * std::expm1(0.5 * p * std::log1p(ratio));
}

}  // namespace lnl
