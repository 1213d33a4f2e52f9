#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "brinkman/analysis.hpp"
#include "brinkman/msh_io.hpp"
#include "brinkman/run_config.hpp"
#include "brinkman/solver.hpp"
#include "brinkman/table_io.hpp"
#include "brinkman/vtk_io.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct CliOptions {
    brinkman::RunConfig run;
    std::string equation = "stokes";
    std::string preset;
    std::string mesh_path;
    std::string scenario = "penalized";
    int rsteps = -1;
};

void finalize(CliOptions& opt) {
    using brinkman::StudyConfig;
    opt.run.equation = (opt.equation == "navier-stokes") ? StudyConfig::Equation::NavierStokes
                                                         : StudyConfig::Equation::Stokes;
    if (!opt.mesh_path.empty()) opt.run.mesh_path = std::filesystem::path(opt.mesh_path);
    if (opt.rsteps > 0) opt.run.rsteps = opt.rsteps;
    if (opt.preset == "paper-channel") brinkman::apply_paper_channel_preset(opt.run);
}

int run_mesh(CliOptions& opt) {
    finalize(opt);
    if (!opt.run.mesh_path && !opt.run.generator) {
        std::cerr << "error: usage: mesh needs --preset paper-channel or --mesh <path.msh>\n";
        return kExitUsage;
    }
    brinkman::ensure_output_dir(opt.run.out_dir);
    const brinkman::Mesh mesh = brinkman::load_mesh(brinkman::resolve_mesh_source(opt.run));

    const std::string name = opt.run.mesh_path ? "validated.msh" : "channel.msh";
    brinkman::write_msh_file(mesh, opt.run.out_dir / name);
    brinkman::write_manifest({brinkman::make_fixture_record(mesh, name)},
                             opt.run.out_dir / "mesh_manifest.jsonl");

    std::cout << "mesh: " << mesh.vertex_count() << " vertices, " << mesh.triangle_count()
              << " triangles, " << mesh.boundary_facets.size() << " boundary facets, "
              << mesh.obstacle_count() << " obstacle region(s)\n"
              << "wrote " << (opt.run.out_dir / name).string() << "\n";
    return 0;
}

int run_solve(CliOptions& opt) {
    finalize(opt);
    brinkman::ensure_output_dir(opt.run.out_dir);
    const auto mesh = std::make_shared<const brinkman::Mesh>(
        brinkman::load_mesh(brinkman::resolve_mesh_source(opt.run)));
    const auto obstacles = brinkman::ObstacleSet::mesh_regions(*mesh);

    brinkman::SolverConfig config = opt.run.solver_defaults;
    config.nu = opt.run.nu;
    config.U = opt.run.U;
    config.R = opt.run.R;

    const auto scenario = (opt.scenario == "reference") ? brinkman::Scenario::Reference
                                                        : brinkman::Scenario::Penalized;

    brinkman::FlowSolution solution;
    brinkman::NewtonReport newton;
    const bool navier = opt.run.equation == brinkman::StudyConfig::Equation::NavierStokes;
    if (navier) {
        std::tie(solution, newton) = brinkman::solve_navier_stokes(mesh, obstacles, config,
                                                                   scenario);
    } else {
        solution = brinkman::solve_stokes(mesh, obstacles, config, scenario);
    }

    std::unique_ptr<brinkman::PenaltyField> psi;
    if (scenario == brinkman::Scenario::Penalized)
        psi = std::make_unique<brinkman::PenaltyField>(
            brinkman::build_penalty_field(*solution.space->mesh, obstacles, config.R));
    const brinkman::VtkField field = brinkman::sample_at_vertices(solution, psi.get());
    brinkman::write_vtk_file(field, opt.run.out_dir / "solution.vtk");

    const double flux_in = brinkman::flux(solution, brinkman::BoundaryTag::inflow());
    const double flux_out = brinkman::flux(solution, brinkman::BoundaryTag::outflow());
    const double balance =
        std::abs(flux_in + flux_out) / std::max(1e-300, std::abs(flux_in));
    const double div_res = brinkman::divergence_residual(solution);

    nlohmann::ordered_json diag;
    diag["equation"] = navier ? "navier-stokes" : "stokes";
    diag["scenario"] = (scenario == brinkman::Scenario::Reference) ? "reference" : "penalized";
    diag["nu"] = config.nu;
    diag["U"] = config.U;
    diag["R"] = config.R;
    diag["flux_inflow"] = flux_in;
    diag["flux_outflow"] = flux_out;
    diag["flux_balance_rel"] = balance;
    diag["divergence_residual"] = div_res;
    if (navier) {
        diag["newton"] = {{"iterations", newton.iterations},
                          {"converged", newton.converged},
                          {"residual_norms", newton.residual_norms}};
    }
    {
        std::ofstream out(opt.run.out_dir / "diagnostics.json");
        if (!out) throw brinkman::IoError("cannot write diagnostics.json");
        out << diag.dump(2) << "\n";
    }

    std::cout << "flux inflow " << flux_in << ", outflow " << flux_out << ", balance "
              << balance << "\n"
              << "divergence residual " << div_res << "\n";
    if (navier)
        std::cout << "newton iterations " << newton.iterations << ", converged "
                  << (newton.converged ? "yes" : "no") << "\n";
    std::cout << "wrote " << (opt.run.out_dir / "solution.vtk").string() << "\n";
    return 0;
}

int run_study(CliOptions& opt) {
    finalize(opt);
    brinkman::ensure_output_dir(opt.run.out_dir);
    const brinkman::StudyConfig study = brinkman::make_study_config(opt.run);
    const brinkman::StudyResult result = brinkman::run_convergence_study(study);

    if (!result.records.empty())
        std::cout << brinkman::render_table(result.records, brinkman::TableFormat::Markdown);
    if (result.failure) {
        std::cerr << "error: solver: " << *result.failure << "\n";
        return kExitSolver;
    }
    std::cout << "wrote " << study.csv_path.string() << " and " << study.table_path.string()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brinkman-penalized Stokes / Navier-Stokes flow around obstacles"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.set_help_flag("--help", "print help");

    CliOptions opt;
    const auto add_common = [&](CLI::App* cmd, bool with_R, bool with_ladder) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--equation", opt.equation, "stokes or navier-stokes")
            ->check(CLI::IsMember({"stokes", "navier-stokes"}));
        cmd->add_option("--nu", opt.run.nu, "kinematic viscosity");
        cmd->add_option("--U", opt.run.U, "peak inflow speed");
        cmd->add_option("--h", opt.run.h, "target mesh edge length");
        cmd->add_option("--mesh", opt.mesh_path, "MSH 2.2 ASCII mesh file");
        cmd->add_option("--preset", opt.preset, "named setup (paper-channel)")
            ->check(CLI::IsMember({"paper-channel"}));
        cmd->add_option("--out", opt.run.out_dir, "output directory");
        if (with_R) cmd->add_option("--R", opt.run.R, "penalty magnitude");
        if (with_ladder) {
            cmd->add_option("--rmin", opt.run.rmin, "smallest penalty value");
            cmd->add_option("--rmax", opt.run.rmax, "largest penalty value");
            cmd->add_option("--rsteps", opt.rsteps, "number of ladder values (default decades)");
        }
    };

    CLI::App* mesh_cmd = app.add_subcommand("mesh", "generate or validate a mesh + manifest");
    add_common(mesh_cmd, false, false);
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one scenario, write VTK + diagnostics");
    add_common(solve_cmd, true, false);
    solve_cmd->add_option("--scenario", opt.scenario, "penalized or reference")
        ->check(CLI::IsMember({"penalized", "reference"}));
    CLI::App* study_cmd = app.add_subcommand("study", "R-sweep convergence study, write CSV + table");
    add_common(study_cmd, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (mesh_cmd->parsed()) return run_mesh(opt);
        if (solve_cmd->parsed()) return run_solve(opt);
        return run_study(opt);
    } catch (const brinkman::SolverError& e) {
        std::cerr << "error: solver: " << e.what() << "\n";
        return kExitSolver;
    } catch (const brinkman::Error& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    }
}
