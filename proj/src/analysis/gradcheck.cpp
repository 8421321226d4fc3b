#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lnl/analysis.hpp"

namespace lnl {

Field tie_avoiding_field(std::size_t n, std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x7469u};
    std::mt19937_64 rng(seq);
    // n + 1 slots spaced by 2 / (n + 1); one random slot is reserved for the value 0.
    const double spacing = 2.0 / static_cast<double>(n + 1);
    std::vector<long> slot(n + 1);
    std::iota(slot.begin(), slot.end(), 0L);
    std::shuffle(slot.begin(), slot.end(), rng);
    const long zero = slot.back();
    std::uniform_real_distribution<double> jitter(-0.3 * spacing, 0.3 * spacing);
    Field f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = static_cast<double>(slot[i] - zero) * spacing + jitter(rng);
    }
    return f;
}

GradientCheckReport gradient_check(const ModelConfig& cfg, int n_fields, std::uint64_t seed, bool tie_avoiding)
{
    if (n_fields < 1) throw std::invalid_argument("gradient check needs at least one field");
    const std::size_t n = cfg.dofs();
    GradientCheckReport rep;
    rep.n_fields = n_fields;
    // Fourth-order central differences. With tie-avoiding fields no difference
    // changes sign for |t| <= 2 * step.
    rep.step = 1e-6;
    if (tie_avoiding) rep.step = std::min(rep.step, 0.02 / static_cast<double>(n + 1));

    Field plus(n);
    for (int k = 0; k < n_fields; ++k) {
        const auto stream = static_cast<std::uint64_t>(k);
        const Field u = tie_avoiding ? tie_avoiding_field(n, seed, 2 * stream) : random_field(n, seed, 2 * stream);
        const Field dir = random_field(n, seed, 2 * stream + 1);
        const Field g = eval_gradient(cfg, u);
        double exact = 0.0;
        for (std::size_t i = 0; i < n; ++i) exact += g[i] * dir[i];

        auto change = [&](double t) {
            for (std::size_t i = 0; i < n; ++i) plus[i] = t * dir[i];
            return energy_change(cfg, u, plus).total;
        };
        const double e1 = change(rep.step) - change(-rep.step);
        const double e2 = change(2.0 * rep.step) - change(-2.0 * rep.step);
        const double fd = (8.0 * e1 - e2) / (12.0 * rep.step);
        const double err = std::abs(fd - exact) / std::max(std::abs(exact), 1e-300);
        rep.max_relative_error = std::max(rep.max_relative_error, err);
    }
    return rep;
}

}  // namespace lnl
