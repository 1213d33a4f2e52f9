#ifndef BRINKMAN_RUN_CONFIG_HPP
#define BRINKMAN_RUN_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "brinkman/analysis.hpp"

namespace brinkman {

/// Everything a CLI run needs: equation, physics, mesh source (file or
/// built-in generator), study ladder, and output directory.
struct RunConfig {
    StudyConfig::Equation equation = StudyConfig::Equation::Stokes;
    double nu = 1.0;
    double U = 100.0;
    double R = 1e6;  // single-solve penalty
    double h = 0.05;

    double rmin = 1.0;
    double rmax = 1e10;
    std::optional<int> rsteps;  // logarithmically spaced count; default: decades

    std::optional<std::filesystem::path> mesh_path;
    std::optional<ChannelSpec> generator;

    SolverConfig solver_defaults;
    std::filesystem::path out_dir = "out";
};

/// The channel study setup: domain (-2,2)x(-1,1) with the rectangle obstacle
/// (-1.1,-0.9)x(0.4,1) meshed by the built-in generator at h = 0.05, nu = 1,
/// U = 100. The disk obstacle ((1,0.5), r = 0.3) is available only through a
/// fixture mesh passed via mesh_path; region tags then define the obstacles.
void apply_paper_channel_preset(RunConfig& config);

/// Exactly one mesh source must be configured; the generator picks up
/// config.h. Throws IoError otherwise.
MeshSource resolve_mesh_source(const RunConfig& config);

std::vector<double> study_ladder(const RunConfig& config);

/// Creates the directory if needed and verifies it is writable.
void ensure_output_dir(const std::filesystem::path& dir);

StudyConfig make_study_config(const RunConfig& config);

}  // namespace brinkman

#endif
