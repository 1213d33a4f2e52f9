#ifndef BRINKMAN_VTK_IO_HPP
#define BRINKMAN_VTK_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "brinkman/penalty.hpp"
#include "brinkman/solver.hpp"

namespace brinkman {

/// Vertex-sampled fields for a legacy VTK unstructured grid: velocity vectors
/// (P1 sampling of the P2 field) plus pressure and penalty-indicator scalars.
struct VtkField {
    std::shared_ptr<const Mesh> mesh;
    std::vector<Vec2> velocity;
    std::vector<double> pressure;
    std::vector<double> penalty_indicator;
};

/// Indicator at a vertex is 1 when any incident triangle is an obstacle
/// triangle. Pass psi = nullptr for an all-zero indicator.
VtkField sample_at_vertices(const FlowSolution& solution, const PenaltyField* psi);

/// VTK legacy ASCII 2.0, DATASET UNSTRUCTURED_GRID, with POINT_DATA vectors
/// "velocity" and scalars "pressure", "penalty_indicator". Deterministic
/// formatting.
void write_vtk(const VtkField& field, std::ostream& out, const std::string& title = "flow");
void write_vtk_file(const VtkField& field, const std::filesystem::path& path,
                    const std::string& title = "flow");

/// Small validator for written files.
struct VtkSummary {
    int points = 0;
    int cells = 0;
    double max_velocity_magnitude = 0.0;
};
VtkSummary read_vtk_summary(const std::filesystem::path& path);

}  // namespace brinkman

#endif
