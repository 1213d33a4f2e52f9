#ifndef BRINKMAN_SOLVER_HPP
#define BRINKMAN_SOLVER_HPP

#include <memory>
#include <utility>
#include <vector>

#include "brinkman/assembly.hpp"
#include "brinkman/penalty.hpp"
#include "brinkman/spaces.hpp"

namespace brinkman {

struct SolverConfig {
    double nu = 1.0;
    double U = 100.0;
    double R = 0.0;
    double newton_rel_tol = 1e-10;
    double newton_abs_tol = 1e-12;
    int newton_max_iters = 25;
    /// Optional warm-start ladder of strictly increasing R values; when
    /// nonempty its last entry is the target R.
    std::vector<double> continuation;
};

/// Velocity and pressure coefficients with their space and scenario metadata.
struct FlowSolution {
    std::shared_ptr<const TaylorHoodSpace> space;
    std::vector<double> velocity;
    std::vector<double> pressure;
    double nu = 0.0;
    double U = 0.0;
    double R = 0.0;
    bool reference = false;

    /// Coupled coefficient vector (velocity then pressure).
    std::vector<double> coupled() const;
};

struct NewtonReport {
    std::vector<double> residual_norms;
    bool converged = false;
    int iterations = 0;
};

/// Direct sparse LU with partial pivoting and fill-reducing ordering.
/// Verifies the scaled residual |Ax-b|_inf / (|A|_inf |x|_inf + |b|_inf)
/// < 1e-10 and throws SolverError on a singular pivot or residual failure.
std::vector<double> sparse_lu_solve(const LinearSystem& system);

using SpacePtr = std::shared_ptr<const TaylorHoodSpace>;

/// Stokes solve on the space's own mesh. When the mesh has no outflow facet
/// the pressure is gauged by pinning one dof and post-shifting to zero mean.
FlowSolution solve_stokes_on(SpacePtr space, const PenaltyField& psi, const SolverConfig& config,
                             Scenario scenario);

/// Newton solve at the single penalty value of `psi`, starting from
/// `warm_start` when given, otherwise from a Stokes solve with the same
/// penalty. Throws NewtonError on divergence (three consecutive residual
/// increases) or when max iterations are exceeded.
std::pair<FlowSolution, NewtonReport> solve_navier_stokes_on(SpacePtr space,
                                                             const PenaltyField& psi,
                                                             const SolverConfig& config,
                                                             Scenario scenario,
                                                             const FlowSolution* warm_start);

/// Scenario::Penalized solves on the full mesh at config.R. For
/// Scenario::Reference a mesh with obstacle triangles is first reduced to its
/// fluid submesh and no-slip is imposed on the obstacle boundary.
FlowSolution solve_stokes(std::shared_ptr<const Mesh> mesh, const ObstacleSet& obstacles,
                          const SolverConfig& config, Scenario scenario);

/// Newton with warm-start continuation over config.continuation (or the
/// single value config.R), re-solving each R from the previous solution.
std::pair<FlowSolution, NewtonReport> solve_navier_stokes(std::shared_ptr<const Mesh> mesh,
                                                          const ObstacleSet& obstacles,
                                                          const SolverConfig& config,
                                                          Scenario scenario);

}  // namespace brinkman

#endif
