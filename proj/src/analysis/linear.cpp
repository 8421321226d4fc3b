#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "lnl/analysis.hpp"

namespace lnl {

LinearSystem assemble_p2_system(const ModelConfig& cfg)
{
    const auto& part = *cfg.partition;
    const auto& table = *cfg.neighbors;
    const auto& collar = *cfg.collar;
    const int n = part.dof_count();
    const double h = part.h();
    const double vol = part.cell_volume();
    const double face = vol / (h * h);

    std::vector<Eigen::Triplet<double>> t;
    auto couple = [&](int i, int j, double w) {
        t.emplace_back(i, i, w);
        t.emplace_back(j, j, w);
        t.emplace_back(i, j, -w);
        t.emplace_back(j, i, -w);
    };
    for (const auto& e : part.local_edges()) couple(e[0], e[1], face);
    for (const auto& f : part.dirichlet_faces()) {
        const int i = part.dof_of_cell(f.cell);
        t.emplace_back(i, i, face);
    }
    // Every ordered pair (i nonlocal, j in the domain) of the table carries
    // (1/2) w (u_i - u_j)^2 in F_2.
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        const int i = part.dof_of_cell(table.rows[r]);
        for (const auto& e : table.domain_row(r)) couple(i, part.dof_of_cell(e.cell), e.weight);
    }
    for (std::size_t k = 0; k < collar.cells.size(); ++k) {
        const int i = part.dof_of_cell(collar.cells[k]);
        t.emplace_back(i, i, collar.psi[k] * vol);
    }

    LinearSystem sys;
    sys.matrix.resize(n, n);
    sys.matrix.setFromTriplets(t.begin(), t.end());
    sys.rhs.resize(n);
    for (int i = 0; i < n; ++i) sys.rhs[i] = cfg.source.f(static_cast<std::size_t>(i), 0.0) * vol;
    return sys;
}

OracleSolution p2_linear_oracle(const ModelConfig& cfg)
{
    if (cfg.p != 2.0) throw std::invalid_argument("linear oracle requires p = 2");
    if (cfg.source.form() != SourceForm::Affine) throw std::invalid_argument("linear oracle requires an affine source");
    if (cfg.regularization != 0.0) throw std::invalid_argument("linear oracle requires zero regularization");
    const LinearSystem sys = assemble_p2_system(cfg);

    OracleSolution out;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.matrix);
    if (ldlt.info() != Eigen::Success) {
        out.singular = true;
        return out;
    }
    const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
    const double dmax = d.maxCoeff();
    out.pivot_ratio = dmax > 0.0 ? d.minCoeff() / dmax : 0.0;
    if (!(out.pivot_ratio > 1e-13)) {
        out.singular = true;
        return out;
    }
    const Eigen::VectorXd x = ldlt.solve(sys.rhs);
    Field u(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) u[static_cast<std::size_t>(i)] = x[i];
    out.solution = std::move(u);
    return out;
}

double p2_min_eigenvalue(const ModelConfig& cfg)
{
    const LinearSystem sys = assemble_p2_system(cfg);
    const Eigen::MatrixXd dense(sys.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve failed");
    return es.eigenvalues().minCoeff();
}

double p2_coercivity_eigen(const ModelConfig& cfg)
{
    return p2_min_eigenvalue(cfg) / (2.0 * cfg.cell_volume());
}

}  // namespace lnl
