#ifndef BRINKMAN_MSH_IO_HPP
#define BRINKMAN_MSH_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "brinkman/mesh.hpp"

namespace brinkman {

/// Physical-tag dictionary for Gmsh MSH 2.2 ASCII files: physical line ids map
/// to boundary tags, physical surface ids to region tags.
struct MshTagMap {
    std::map<int, BoundaryTag> lines;
    std::map<int, RegionTag> surfaces;

    /// Convention used by the built-in writer and the committed fixtures:
    /// lines 1=inflow, 2=outflow, 3=wall, 10+j=obstacle_boundary_j;
    /// surfaces 1=fluid, 100+j=obstacle_j.
    static MshTagMap canonical(int max_obstacles = 32);

    int line_id(const BoundaryTag& tag) const;
    int surface_id(const RegionTag& tag) const;
    std::string physical_name(int dim, int id) const;
};

/// Parse Gmsh MSH 2.2 ASCII. Element types other than 2-node lines and 3-node
/// triangles are rejected; the third node coordinate is ignored; triangle
/// orientation is normalized to counterclockwise. The returned mesh is
/// validated. Throws MshParseError / MeshError.
Mesh parse_msh(std::istream& in, const MshTagMap& tags = MshTagMap::canonical());
Mesh parse_msh_file(const std::filesystem::path& path,
                    const MshTagMap& tags = MshTagMap::canonical());

/// Write MSH 2.2 ASCII with round-trip-exact (%.17g) node coordinates.
/// parse_msh(write_msh(mesh)) reproduces the mesh bit-exactly.
void write_msh(const Mesh& mesh, std::ostream& out,
               const MshTagMap& tags = MshTagMap::canonical());
void write_msh_file(const Mesh& mesh, const std::filesystem::path& path,
                    const MshTagMap& tags = MshTagMap::canonical());

/// One JSON line per committed mesh: expected entity counts.
struct FixtureRecord {
    std::string file;
    int vertices = 0;
    int triangles = 0;
    int boundary_facets = 0;
    int fluid_triangles = 0;
    std::map<int, int> obstacle_triangle_counts;  // obstacle id -> triangles

    friend bool operator==(const FixtureRecord&, const FixtureRecord&) = default;
};

FixtureRecord make_fixture_record(const Mesh& mesh, const std::string& file);
std::vector<FixtureRecord> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<FixtureRecord>& records,
                    const std::filesystem::path& path);

/// Resolve a mesh source: parse the .msh file or run the built-in generator.
Mesh load_mesh(const MeshSource& source, const MshTagMap& tags = MshTagMap::canonical());

}  // namespace brinkman

#endif
