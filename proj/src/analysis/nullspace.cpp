#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "lnl/analysis.hpp"

namespace lnl {

namespace {

struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

NullspaceReport nullspace_check(const ModelConfig& cfg, std::span<const int> cells, std::uint64_t seed)
{
    const auto& part = *cfg.partition;
    const auto& table = *cfg.neighbors;
    std::vector<char> member(static_cast<std::size_t>(part.cell_count()), 0);
    for (int c : cells) member[static_cast<std::size_t>(c)] = 1;

    // Components of the kernel graph induced on `cells`.
    std::vector<int> label(static_cast<std::size_t>(part.cell_count()), -1);
    std::vector<std::vector<int>> comps;
    const bool whole_set = static_cast<int>(cells.size()) == part.count(CellClass::Nonlocal);
    if (whole_set) {
        const ComponentLabels kc = kernel_components(part, table);
        label = kc.label;
        comps = kc.members();
    } else {
        for (int c : cells) {
            if (label[static_cast<std::size_t>(c)] >= 0) continue;
            const int id = static_cast<int>(comps.size());
            comps.emplace_back();
            std::queue<int> q;
            q.push(c);
            label[static_cast<std::size_t>(c)] = id;
            while (!q.empty()) {
                const int x = q.front();
                q.pop();
                comps.back().push_back(x);
                for (const auto& e : table.domain_row(static_cast<std::size_t>(table.row_of_cell(x)))) {
                    if (!member[static_cast<std::size_t>(e.cell)] || label[static_cast<std::size_t>(e.cell)] >= 0) continue;
                    label[static_cast<std::size_t>(e.cell)] = id;
                    q.push(e.cell);
                }
            }
        }
    }

    NullspaceReport rep;
    rep.component_count = static_cast<int>(comps.size());

    DisjointSets ds(part.cell_count());
    for (int c : cells) {
        for (const auto& e : table.domain_row(static_cast<std::size_t>(table.row_of_cell(c)))) {
            if (member[static_cast<std::size_t>(e.cell)]) ds.unite(c, e.cell);
        }
    }
    std::vector<int> roots;
    for (int c : cells) roots.push_back(ds.find(c));
    std::sort(roots.begin(), roots.end());
    rep.component_count_cross_check = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    Field u(cfg.dofs());
    for (auto& v : u.values()) v = dist(rng);
    std::vector<double> level(comps.size());
    for (auto& v : level) v = dist(rng);
    for (int c : cells) {
        u[static_cast<std::size_t>(part.dof_of_cell(c))] = level[static_cast<std::size_t>(label[static_cast<std::size_t>(c)])];
    }
    rep.constant_seminorm = eval_seminorm(cfg, u, cells);

    rep.min_perturbed_seminorm = std::numeric_limits<double>::infinity();
    for (const auto& comp : comps) {
        if (comp.size() < 2) continue;
        Field v = u;
        v[static_cast<std::size_t>(part.dof_of_cell(comp.front()))] += 1.0;
        rep.min_perturbed_seminorm = std::min(rep.min_perturbed_seminorm, eval_seminorm(cfg, v, cells));
        ++rep.perturbations;
    }
    if (rep.perturbations == 0) rep.min_perturbed_seminorm = 0.0;

    rep.passed = rep.constant_seminorm == 0.0 && rep.component_count == rep.component_count_cross_check &&
                 (rep.perturbations == 0 || rep.min_perturbed_seminorm > 0.0);
    return rep;
}

}  // namespace lnl
