#include "brinkman/msh_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace brinkman {

namespace {

constexpr int kLineObstacleBase = 10;
constexpr int kSurfaceFluid = 1;
constexpr int kSurfaceObstacleBase = 100;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Line-oriented reader tracking the 1-based line number for error messages.
class LineReader {
  public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        return false;
    }

    std::string expect_line(const char* what) {
        std::string line;
        if (!next(line)) throw MshParseError(line_number_ + 1, std::string("expected ") + what +
                                                                   ", found end of file");
        return line;
    }

    std::size_t line_number() const { return line_number_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw MshParseError(line_number_, message);
    }

  private:
    std::istream& in_;
    std::size_t line_number_ = 0;
};

}  // namespace

MshTagMap MshTagMap::canonical(int max_obstacles) {
    MshTagMap map;
    map.lines[1] = BoundaryTag::inflow();
    map.lines[2] = BoundaryTag::outflow();
    map.lines[3] = BoundaryTag::wall();
    map.surfaces[kSurfaceFluid] = RegionTag::fluid();
    for (int j = 1; j <= max_obstacles; ++j) {
        map.lines[kLineObstacleBase + j] = BoundaryTag::obstacle_boundary(j);
        map.surfaces[kSurfaceObstacleBase + j] = RegionTag::obstacle(j);
    }
    return map;
}

int MshTagMap::line_id(const BoundaryTag& tag) const {
    for (const auto& [id, t] : lines)
        if (t == tag) return id;
    throw IoError("boundary tag has no physical line id in the tag map");
}

int MshTagMap::surface_id(const RegionTag& tag) const {
    for (const auto& [id, t] : surfaces)
        if (t == tag) return id;
    throw IoError("region tag has no physical surface id in the tag map");
}

std::string MshTagMap::physical_name(int dim, int id) const {
    if (dim == 1) {
        const auto it = lines.find(id);
        if (it == lines.end()) return "line_" + std::to_string(id);
        switch (it->second.kind) {
            case BoundaryKind::Inflow: return "inflow";
            case BoundaryKind::Outflow: return "outflow";
            case BoundaryKind::Wall: return "wall";
            case BoundaryKind::ObstacleBoundary:
                return "obstacle_boundary_" + std::to_string(it->second.obstacle_id);
        }
    }
    const auto it = surfaces.find(id);
    if (it == surfaces.end()) return "surface_" + std::to_string(id);
    return it->second.is_obstacle() ? "obstacle_" + std::to_string(it->second.obstacle_id)
                                    : std::string("fluid");
}

Mesh parse_msh(std::istream& in, const MshTagMap& tags) {
    LineReader reader(in);

    // $MeshFormat
    std::string line = reader.expect_line("$MeshFormat");
    if (line != "$MeshFormat") reader.fail("malformed section header: expected $MeshFormat");
    line = reader.expect_line("format line");
    {
        std::istringstream fmt(line);
        std::string version;
        int file_type = -1, data_size = -1;
        if (!(fmt >> version >> file_type >> data_size) || version != "2.2" || file_type != 0)
            reader.fail("unsupported MSH format '" + line + "' (need 2.2 0 8 ASCII)");
    }
    if (reader.expect_line("$EndMeshFormat") != "$EndMeshFormat")
        reader.fail("malformed section header: expected $EndMeshFormat");

    Mesh mesh;
    std::map<long long, int> node_index;

    bool seen_nodes = false;
    bool seen_elements = false;
    while (reader.next(line)) {
        if (line.empty()) continue;
        if (line == "$PhysicalNames") {
            int count = 0;
            std::istringstream hdr(reader.expect_line("physical name count"));
            if (!(hdr >> count) || count < 0) reader.fail("malformed $PhysicalNames count");
            for (int i = 0; i < count; ++i) reader.expect_line("physical name");
            if (reader.expect_line("$EndPhysicalNames") != "$EndPhysicalNames")
                reader.fail("malformed section header: expected $EndPhysicalNames");
        } else if (line == "$Nodes") {
            seen_nodes = true;
            long long count = 0;
            std::istringstream hdr(reader.expect_line("node count"));
            if (!(hdr >> count) || count < 0) reader.fail("malformed $Nodes count");
            mesh.vertices.reserve(static_cast<std::size_t>(count));
            for (long long i = 0; i < count; ++i) {
                std::istringstream row(reader.expect_line("node"));
                long long id;
                double x, y, z;
                if (!(row >> id >> x >> y >> z)) reader.fail("malformed node line");
                if (!node_index.emplace(id, static_cast<int>(mesh.vertices.size())).second)
                    reader.fail("duplicate node id " + std::to_string(id));
                mesh.vertices.push_back({x, y});  // third coordinate ignored
            }
            if (reader.expect_line("$EndNodes") != "$EndNodes")
                reader.fail("malformed section header: expected $EndNodes");
        } else if (line == "$Elements") {
            seen_elements = true;
            long long count = 0;
            std::istringstream hdr(reader.expect_line("element count"));
            if (!(hdr >> count) || count < 0) reader.fail("malformed $Elements count");
            for (long long i = 0; i < count; ++i) {
                std::istringstream row(reader.expect_line("element"));
                long long id;
                int type = 0, ntags = 0;
                if (!(row >> id >> type >> ntags)) reader.fail("malformed element line");
                if (type != 1 && type != 2)
                    reader.fail("unsupported element type " + std::to_string(type));
                if (ntags < 1) reader.fail("element without a physical tag");
                int physical = 0;
                for (int k = 0; k < ntags; ++k) {
                    int tag;
                    if (!(row >> tag)) reader.fail("malformed element tags");
                    if (k == 0) physical = tag;
                }
                const int nnodes = (type == 1) ? 2 : 3;
                std::array<int, 3> nodes{};
                for (int k = 0; k < nnodes; ++k) {
                    long long raw;
                    if (!(row >> raw)) reader.fail("malformed element connectivity");
                    const auto it = node_index.find(raw);
                    if (it == node_index.end())
                        reader.fail("element references unknown node " + std::to_string(raw));
                    nodes[k] = it->second;
                }
                if (type == 1) {
                    const auto it = tags.lines.find(physical);
                    if (it == tags.lines.end())
                        reader.fail("unknown physical tag " + std::to_string(physical) +
                                    " for a line element");
                    mesh.boundary_facets.push_back({{nodes[0], nodes[1]}, it->second});
                } else {
                    const auto it = tags.surfaces.find(physical);
                    if (it == tags.surfaces.end())
                        reader.fail("unknown physical tag " + std::to_string(physical) +
                                    " for a triangle element");
                    const double area =
                        signed_area(mesh.vertices[nodes[0]], mesh.vertices[nodes[1]],
                                    mesh.vertices[nodes[2]]);
                    if (area == 0.0) reader.fail("zero-area triangle");
                    if (area < 0.0) std::swap(nodes[1], nodes[2]);
                    mesh.triangles.push_back(nodes);
                    mesh.region_of_triangle.push_back(it->second);
                }
            }
            if (reader.expect_line("$EndElements") != "$EndElements")
                reader.fail("malformed section header: expected $EndElements");
        } else {
            reader.fail("malformed section header: '" + line + "'");
        }
    }

    if (!seen_nodes) throw MeshError("MSH stream has no $Nodes section");
    if (!seen_elements) throw MeshError("MSH stream has no $Elements section");
    validate_mesh(mesh);
    return mesh;
}

Mesh parse_msh_file(const std::filesystem::path& path, const MshTagMap& tags) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file " + path.string());
    return parse_msh(in, tags);
}

void write_msh(const Mesh& mesh, std::ostream& out, const MshTagMap& tags) {
    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";

    // Physical names for every tag actually used, sorted by (dim, id).
    std::set<std::pair<int, int>> used;
    for (const BoundaryFacet& f : mesh.boundary_facets) used.insert({1, tags.line_id(f.tag)});
    for (const RegionTag& r : mesh.region_of_triangle) used.insert({2, tags.surface_id(r)});
    out << "$PhysicalNames\n" << used.size() << "\n";
    for (const auto& [dim, id] : used)
        out << dim << " " << id << " \"" << tags.physical_name(dim, id) << "\"\n";
    out << "$EndPhysicalNames\n";

    out << "$Nodes\n" << mesh.vertices.size() << "\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        out << (i + 1) << " " << g17(mesh.vertices[i].x) << " " << g17(mesh.vertices[i].y)
            << " 0\n";
    out << "$EndNodes\n";

    out << "$Elements\n" << (mesh.boundary_facets.size() + mesh.triangles.size()) << "\n";
    long long eid = 1;
    for (const BoundaryFacet& f : mesh.boundary_facets) {
        const int id = tags.line_id(f.tag);
        out << eid++ << " 1 2 " << id << " " << id << " " << (f.v[0] + 1) << " " << (f.v[1] + 1)
            << "\n";
    }
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const int id = tags.surface_id(mesh.region_of_triangle[t]);
        const auto& tri = mesh.triangles[t];
        out << eid++ << " 2 2 " << id << " " << id << " " << (tri[0] + 1) << " " << (tri[1] + 1)
            << " " << (tri[2] + 1) << "\n";
    }
    out << "$EndElements\n";
}

void write_msh_file(const Mesh& mesh, const std::filesystem::path& path, const MshTagMap& tags) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_msh(mesh, out, tags);
    if (!out) throw IoError("failed writing " + path.string());
}

FixtureRecord make_fixture_record(const Mesh& mesh, const std::string& file) {
    FixtureRecord rec;
    rec.file = file;
    rec.vertices = mesh.vertex_count();
    rec.triangles = mesh.triangle_count();
    rec.boundary_facets = static_cast<int>(mesh.boundary_facets.size());
    for (const RegionTag& tag : mesh.region_of_triangle) {
        if (tag.is_obstacle())
            ++rec.obstacle_triangle_counts[tag.obstacle_id];
        else
            ++rec.fluid_triangles;
    }
    return rec;
}

std::vector<FixtureRecord> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    std::vector<FixtureRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        FixtureRecord rec;
        rec.file = j.at("file").get<std::string>();
        rec.vertices = j.at("vertices").get<int>();
        rec.triangles = j.at("triangles").get<int>();
        rec.boundary_facets = j.at("boundary_facets").get<int>();
        rec.fluid_triangles = j.at("fluid_triangles").get<int>();
        for (const auto& [key, value] : j.at("obstacle_triangles").items())
            rec.obstacle_triangle_counts[std::stoi(key)] = value.get<int>();
        records.push_back(std::move(rec));
    }
    return records;
}

void write_manifest(const std::vector<FixtureRecord>& records,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open manifest " + path.string() + " for writing");
    for (const FixtureRecord& rec : records) {
        nlohmann::json counts = nlohmann::json::object();
        for (const auto& [id, n] : rec.obstacle_triangle_counts) counts[std::to_string(id)] = n;
        const nlohmann::json j = {{"file", rec.file},
                                  {"vertices", rec.vertices},
                                  {"triangles", rec.triangles},
                                  {"boundary_facets", rec.boundary_facets},
                                  {"fluid_triangles", rec.fluid_triangles},
                                  {"obstacle_triangles", counts}};
        out << j.dump() << "\n";
    }
}

Mesh load_mesh(const MeshSource& source, const MshTagMap& tags) {
    if (source.msh_path.has_value() == source.generator.has_value())
        throw IoError("mesh source must be exactly one of: msh path, generator spec");
    if (source.msh_path) return parse_msh_file(*source.msh_path, tags);
    const ChannelSpec& g = *source.generator;
    return generate_channel_mesh(g.lx_min, g.lx_max, g.ly_min, g.ly_max, g.rect_obstacles, g.h);
}

}  // namespace brinkman
