#ifndef BRINKMAN_ANALYSIS_HPP
#define BRINKMAN_ANALYSIS_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brinkman/msh_io.hpp"
#include "brinkman/solver.hpp"

namespace brinkman {

/// Per-R penalty errors and the decade-to-decade rates
/// rate_i = log(e_{i-1}/e_i) / log(R_i/R_{i-1}); rates are absent on the first row.
struct ConvergenceRecord {
    double R = 0.0;
    double err_l2_obstacle = 0.0;  // ||u_R||_{0,obstacle}
    double err_h1 = 0.0;           // |u - u_R|_{1,domain}, u extended by zero
    std::optional<double> rate_l2;
    std::optional<double> rate_h1;
};

struct StudyConfig {
    enum class Equation { Stokes, NavierStokes };
    Equation equation = Equation::Stokes;
    std::vector<double> r_values;  // strictly increasing
    MeshSource mesh;
    double nu = 1.0;
    double U = 100.0;
    SolverConfig solver;  // tolerance knobs; R is swept
    std::filesystem::path csv_path;    // empty: skip writing
    std::filesystem::path table_path;  // markdown; empty: skip writing
};

struct StudyResult {
    std::vector<ConvergenceRecord> records;
    std::vector<NewtonReport> newton_reports;  // per R (Navier-Stokes only)
    NewtonReport reference_report;             // Navier-Stokes only
    std::optional<std::string> failure;        // set when a solve aborted the sweep
};

/// Norm quadratures use the degree-4 rule, exact for P2 products.
double l2_norm_region(const FlowSolution& sol, std::span<const int> region_triangles);
double velocity_l2_norm(const FlowSolution& sol);
double velocity_h1_seminorm(const FlowSolution& sol);

/// | u_ref - u_pen |_{1} over the penalized solution's (parent) mesh, with
/// the reference extended by zero on obstacle triangles. Both solutions are
/// integrated elementwise on the shared triangulation; no interpolation.
/// Throws Error on an inconsistent submesh map.
double h1_seminorm_diff(const FlowSolution& ref, const FlowSolution& pen, const SubmeshMap& map);

/// Integral of u . n over all facets carrying `tag` (3-point Gauss per edge,
/// exact for P2 traces).
double flux(const FlowSolution& sol, const BoundaryTag& tag);

/// Max over pressure test functions of |(q, div u)|, scaled by
/// max|velocity coefficient| times mesh area.
double divergence_residual(const FlowSolution& sol);

/// Decades 10^k from rmin to rmax inclusive.
std::vector<double> decade_ladder(double rmin, double rmax);

/// Least-squares slope of log(err) against log(R).
double fit_loglog_slope(std::span<const double> r_values, std::span<const double> errors);

void attach_rates(std::vector<ConvergenceRecord>& records);

/// Reference solve on the fluid submesh, then one penalized solve per R
/// (Navier-Stokes runs are warm-started from the previous R). A solve failure
/// stops the sweep, preserving the records computed so far in the result.
/// Writes the CSV and markdown outputs when paths are configured.
StudyResult run_convergence_study(const StudyConfig& config);

}  // namespace brinkman

#endif
