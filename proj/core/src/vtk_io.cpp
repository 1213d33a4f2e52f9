#include "brinkman/vtk_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace brinkman {

namespace {

std::string g9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

VtkField sample_at_vertices(const FlowSolution& solution, const PenaltyField* psi) {
    const TaylorHoodSpace& space = *solution.space;
    const Mesh& mesh = *space.mesh;
    VtkField field;
    field.mesh = space.mesh;

    field.velocity.resize(mesh.vertex_count());
    field.pressure.resize(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        field.velocity[v] = {solution.velocity[space.velocity_dof(v, 0)],
                             solution.velocity[space.velocity_dof(v, 1)]};
        field.pressure[v] = solution.pressure[v];
    }

    field.penalty_indicator.assign(mesh.vertex_count(), 0.0);
    if (psi) {
        for (int t = 0; t < mesh.triangle_count(); ++t) {
            if (!psi->is_obstacle(t)) continue;
            for (int v : mesh.triangles[t]) field.penalty_indicator[v] = 1.0;
        }
    }
    return field;
}

void write_vtk(const VtkField& field, std::ostream& out, const std::string& title) {
    const Mesh& mesh = *field.mesh;
    const std::size_t nv = mesh.vertices.size();
    if (field.velocity.size() != nv || field.pressure.size() != nv ||
        field.penalty_indicator.size() != nv)
        throw IoError("VTK field arrays do not match the vertex count");

    out << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";

    out << "POINTS " << nv << " double\n";
    for (const Point2& p : mesh.vertices) out << g9(p.x) << " " << g9(p.y) << " 0\n";

    out << "CELLS " << mesh.triangles.size() << " " << 4 * mesh.triangles.size() << "\n";
    for (const auto& tri : mesh.triangles)
        out << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";

    out << "CELL_TYPES " << mesh.triangles.size() << "\n";
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) out << "5\n";

    out << "POINT_DATA " << nv << "\n";
    out << "VECTORS velocity double\n";
    for (const Vec2& u : field.velocity) out << g9(u.x) << " " << g9(u.y) << " 0\n";
    out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
    for (double p : field.pressure) out << g9(p) << "\n";
    out << "SCALARS penalty_indicator double 1\nLOOKUP_TABLE default\n";
    for (double chi : field.penalty_indicator) out << g9(chi) << "\n";
}

void write_vtk_file(const VtkField& field, const std::filesystem::path& path,
                    const std::string& title) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_vtk(field, out, title);
    if (!out) throw IoError("failed writing " + path.string());
}

VtkSummary read_vtk_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    VtkSummary summary;
    std::string token;
    while (in >> token) {
        if (token == "POINTS") {
            in >> summary.points;
        } else if (token == "CELLS") {
            in >> summary.cells;
        } else if (token == "VECTORS") {
            std::string name, type;
            in >> name >> type;
            for (int i = 0; i < summary.points; ++i) {
                double x, y, z;
                if (!(in >> x >> y >> z)) throw IoError("truncated VECTORS block");
                summary.max_velocity_magnitude =
                    std::max(summary.max_velocity_magnitude, std::hypot(x, y));
            }
        }
    }
    return summary;
}

}  // namespace brinkman
