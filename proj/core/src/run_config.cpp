#include "brinkman/run_config.hpp"

#include <cmath>
#include <fstream>

namespace brinkman {

void apply_paper_channel_preset(RunConfig& config) {
    config.nu = 1.0;
    config.U = 100.0;
    if (!config.mesh_path) {
        ChannelSpec spec;
        spec.lx_min = -2.0;
        spec.lx_max = 2.0;
        spec.ly_min = -1.0;
        spec.ly_max = 1.0;
        spec.rect_obstacles = {{-1.1, -0.9, 0.4, 1.0}};
        spec.h = config.h;
        config.generator = spec;
    }
}

MeshSource resolve_mesh_source(const RunConfig& config) {
    if (config.mesh_path.has_value() == config.generator.has_value())
        throw IoError("exactly one mesh source required: --mesh or generator parameters");
    MeshSource source;
    if (config.mesh_path) {
        source.msh_path = config.mesh_path;
    } else {
        ChannelSpec spec = *config.generator;
        spec.h = config.h;
        source.generator = spec;
    }
    return source;
}

std::vector<double> study_ladder(const RunConfig& config) {
    if (!(config.rmin > 0.0) || !(config.rmax >= config.rmin))
        throw IoError("study ladder needs 0 < rmin <= rmax");
    if (!config.rsteps) return decade_ladder(config.rmin, config.rmax);
    const int n = *config.rsteps;
    if (n < 1) throw IoError("rsteps must be at least 1");
    std::vector<double> out;
    if (n == 1) {
        out.push_back(config.rmin);
        return out;
    }
    const double ratio = std::log(config.rmax / config.rmin) / (n - 1);
    for (int i = 0; i < n; ++i) out.push_back(config.rmin * std::exp(ratio * i));
    return out;
}

void ensure_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    const std::filesystem::path probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) throw IoError("output directory " + dir.string() + " is not writable");
    }
    std::filesystem::remove(probe, ec);
}

StudyConfig make_study_config(const RunConfig& config) {
    StudyConfig study;
    study.equation = config.equation;
    study.r_values = study_ladder(config);
    study.mesh = resolve_mesh_source(config);
    study.nu = config.nu;
    study.U = config.U;
    study.solver = config.solver_defaults;
    study.csv_path = config.out_dir / "study.csv";
    study.table_path = config.out_dir / "study.md";
    return study;
}

}  // namespace brinkman
