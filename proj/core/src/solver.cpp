#include "brinkman/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace brinkman {

namespace {

using EigenSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using EigenLu = Eigen::SparseLU<EigenSparse, Eigen::COLAMDOrdering<int>>;

EigenSparse to_eigen(const CsrMatrix& m) {
    const Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor, int>> view(
        m.rows, m.cols, m.nnz(), m.row_offsets.data(), m.col_indices.data(), m.values.data());
    return EigenSparse(view);
}

// Reuses the symbolic analysis across factorizations with the same pattern.
class DirectSolver {
  public:
    std::vector<double> solve(const LinearSystem& system) {
        const CsrMatrix& m = system.matrix;
        if (m.rows != m.cols) throw SolverError("sparse LU needs a square matrix");
        const EigenSparse a = to_eigen(m);
        if (!analyzed_) {
            lu_.analyzePattern(a);
            analyzed_ = true;
        }
        lu_.factorize(a);
        if (lu_.info() != Eigen::Success)
            throw SolverError("sparse LU: numerically singular pivot: " +
                              lu_.lastErrorMessage());

        const Eigen::Map<const Eigen::VectorXd> b(system.rhs.data(), m.rows);
        const Eigen::VectorXd x = lu_.solve(b);
        if (lu_.info() != Eigen::Success) throw SolverError("sparse LU: backsolve failed");

        const double residual = (a * x - b).cwiseAbs().maxCoeff();
        const double scale = m.inf_norm() * x.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff();
        if (scale > 0.0 && residual / scale >= 1e-10)
            throw SolverError("sparse LU residual check failed: " + std::to_string(residual) +
                              " against scale " + std::to_string(scale));
        return {x.data(), x.data() + x.size()};
    }

  private:
    EigenLu lu_;
    bool analyzed_ = false;
};

bool mesh_has_outflow(const Mesh& mesh) {
    return std::any_of(mesh.boundary_facets.begin(), mesh.boundary_facets.end(),
                       [](const BoundaryFacet& f) { return f.tag.kind == BoundaryKind::Outflow; });
}

// Zero-mean pressure shift over the mesh (P1 integral).
void shift_pressure_to_zero_mean(const Mesh& mesh, std::vector<double>& pressure) {
    double integral = 0.0;
    double area = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double a = mesh.triangle_area(t);
        const auto& tri = mesh.triangles[t];
        integral += a * (pressure[tri[0]] + pressure[tri[1]] + pressure[tri[2]]) / 3.0;
        area += a;
    }
    const double mean = integral / area;
    for (double& p : pressure) p -= mean;
}

std::vector<DirichletBc> scenario_bcs(const TaylorHoodSpace& space, Scenario scenario,
                                      const SolverConfig& config, bool* pinned_pressure) {
    std::vector<DirichletBc> bcs =
        collect_dirichlet(space, scenario, InflowProfile{config.U});
    *pinned_pressure = !mesh_has_outflow(*space.mesh);
    if (*pinned_pressure) bcs.push_back({space.pressure_dof(0), 0.0});
    return bcs;
}

FlowSolution make_solution(SpacePtr space, std::vector<double> coupled,
                           const SolverConfig& config, Scenario scenario, double R,
                           bool pinned_pressure) {
    FlowSolution sol;
    const int nu_dofs = space->velocity_dof_count();
    sol.velocity.assign(coupled.begin(), coupled.begin() + nu_dofs);
    sol.pressure.assign(coupled.begin() + nu_dofs, coupled.end());
    if (pinned_pressure) shift_pressure_to_zero_mean(*space->mesh, sol.pressure);
    sol.nu = config.nu;
    sol.U = config.U;
    sol.R = R;
    sol.reference = (scenario == Scenario::Reference);
    sol.space = std::move(space);
    for (double v : sol.velocity)
        if (!std::isfinite(v)) throw SolverError("non-finite velocity coefficient");
    for (double p : sol.pressure)
        if (!std::isfinite(p)) throw SolverError("non-finite pressure coefficient");
    return sol;
}

double free_dof_norm(const std::vector<double>& full, const std::vector<char>& is_dirichlet) {
    double acc = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i)
        if (!is_dirichlet[i]) acc += full[i] * full[i];
    return std::sqrt(acc);
}

}  // namespace

std::vector<double> FlowSolution::coupled() const {
    std::vector<double> z;
    z.reserve(velocity.size() + pressure.size());
    z.insert(z.end(), velocity.begin(), velocity.end());
    z.insert(z.end(), pressure.begin(), pressure.end());
    return z;
}

std::vector<double> sparse_lu_solve(const LinearSystem& system) {
    DirectSolver solver;
    return solver.solve(system);
}

FlowSolution solve_stokes_on(SpacePtr space, const PenaltyField& psi, const SolverConfig& config,
                             Scenario scenario) {
    bool pinned = false;
    const std::vector<DirichletBc> bcs = scenario_bcs(*space, scenario, config, &pinned);
    LinearSystem system = assemble_stokes(*space, config.nu, psi);
    system = apply_dirichlet(std::move(system), bcs);
    std::vector<double> z = sparse_lu_solve(system);
    return make_solution(std::move(space), std::move(z), config, scenario, psi.R, pinned);
}

std::pair<FlowSolution, NewtonReport> solve_navier_stokes_on(SpacePtr space,
                                                             const PenaltyField& psi,
                                                             const SolverConfig& config,
                                                             Scenario scenario,
                                                             const FlowSolution* warm_start) {
    const TaylorHoodSpace& sp = *space;
    bool pinned = false;
    const std::vector<DirichletBc> bcs = scenario_bcs(sp, scenario, config, &pinned);

    std::vector<char> is_dirichlet(sp.total_dof_count(), 0);
    for (const DirichletBc& bc : bcs) is_dirichlet[bc.dof] = 1;

    std::vector<double> z;
    if (warm_start) {
        if (warm_start->space.get() != space.get())
            throw SolverError("warm start solution lives on a different space");
        z = warm_start->coupled();
    } else {
        z = solve_stokes_on(space, psi, config, scenario).coupled();
    }
    for (const DirichletBc& bc : bcs) z[bc.dof] = bc.value;

    const LinearSystem stokes_part = assemble_stokes(sp, config.nu, psi);
    std::vector<DirichletBc> homogeneous(bcs);
    for (DirichletBc& bc : homogeneous) bc.value = 0.0;

    DirectSolver direct;
    NewtonReport report;
    int growth_streak = 0;
    for (int iter = 1; iter <= config.newton_max_iters; ++iter) {
        const ConvectionContribution convection =
            assemble_convection(sp, std::span<const double>(z.data(), sp.velocity_dof_count()));

        std::vector<double> residual_full = stokes_part.matrix.multiply(z);
        for (std::size_t i = 0; i < residual_full.size(); ++i)
            residual_full[i] += convection.residual[i];

        const double norm = free_dof_norm(residual_full, is_dirichlet);
        report.residual_norms.push_back(norm);
        report.iterations = iter;
        if (!std::isfinite(norm)) throw NewtonError("Newton residual is not finite");

        const double first = report.residual_norms.front();
        if (norm <= config.newton_abs_tol || norm <= config.newton_rel_tol * first) {
            report.converged = true;
            break;
        }
        if (report.residual_norms.size() >= 2 &&
            norm > report.residual_norms[report.residual_norms.size() - 2]) {
            if (++growth_streak >= 3)
                throw NewtonError("Newton diverged: residual grew for 3 consecutive iterations");
        } else {
            growth_streak = 0;
        }
        if (iter == config.newton_max_iters)
            throw NewtonError("Newton did not converge in " +
                              std::to_string(config.newton_max_iters) + " iterations");

        LinearSystem jac;
        jac.matrix = stokes_part.matrix;
        jac.matrix.add_scaled(convection.jacobian, 1.0);
        jac.rhs.assign(residual_full.size(), 0.0);
        for (std::size_t i = 0; i < residual_full.size(); ++i) jac.rhs[i] = -residual_full[i];
        jac = apply_dirichlet(std::move(jac), homogeneous);

        const std::vector<double> delta = direct.solve(jac);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += delta[i];
    }

    FlowSolution solution =
        make_solution(std::move(space), std::move(z), config, scenario, psi.R, pinned);
    return {std::move(solution), std::move(report)};
}

namespace {

// Reference runs use the fluid submesh; penalized runs keep the full mesh.
struct ScenarioSetup {
    std::shared_ptr<const Mesh> mesh;
    SpacePtr space;
    PenaltyField psi;
};

ScenarioSetup prepare(std::shared_ptr<const Mesh> mesh, const ObstacleSet& obstacles,
                      double R, Scenario scenario) {
    ScenarioSetup setup;
    if (scenario == Scenario::Reference && !obstacle_triangles(*mesh).empty()) {
        auto [sub, map] = extract_fluid_submesh(*mesh);
        setup.mesh = std::make_shared<const Mesh>(std::move(sub));
    } else {
        setup.mesh = std::move(mesh);
    }
    setup.space = std::make_shared<const TaylorHoodSpace>(build_taylor_hood(setup.mesh));
    if (scenario == Scenario::Reference) {
        setup.psi.R = 0.0;
        setup.psi.obstacle.assign(setup.mesh->triangle_count(), 0);
    } else {
        setup.psi = build_penalty_field(*setup.mesh, obstacles, R);
    }
    return setup;
}

}  // namespace

FlowSolution solve_stokes(std::shared_ptr<const Mesh> mesh, const ObstacleSet& obstacles,
                          const SolverConfig& config, Scenario scenario) {
    ScenarioSetup setup = prepare(std::move(mesh), obstacles, config.R, scenario);
    return solve_stokes_on(setup.space, setup.psi, config, scenario);
}

std::pair<FlowSolution, NewtonReport> solve_navier_stokes(std::shared_ptr<const Mesh> mesh,
                                                          const ObstacleSet& obstacles,
                                                          const SolverConfig& config,
                                                          Scenario scenario) {
    std::vector<double> ladder = config.continuation;
    if (ladder.empty()) ladder.push_back(config.R);
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (!(ladder[i] > ladder[i - 1]))
            throw SolverError("continuation ladder must be strictly increasing");

    if (scenario == Scenario::Reference) {
        ScenarioSetup setup = prepare(std::move(mesh), obstacles, 0.0, scenario);
        return solve_navier_stokes_on(setup.space, setup.psi, config, scenario, nullptr);
    }

    ScenarioSetup setup = prepare(std::move(mesh), obstacles, ladder.front(), scenario);
    FlowSolution solution;
    NewtonReport report;
    const FlowSolution* warm = nullptr;
    for (double r : ladder) {
        const PenaltyField psi = build_penalty_field(*setup.mesh, obstacles, r);
        std::tie(solution, report) =
            solve_navier_stokes_on(setup.space, psi, config, scenario, warm);
        warm = &solution;
    }
    return {std::move(solution), std::move(report)};
}

}  // namespace brinkman
