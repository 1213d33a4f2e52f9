#include "brinkman/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace brinkman {

namespace {

std::array<int, 2> sorted_edge(int a, int b) {
    return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

std::string edge_str(const std::array<int, 2>& e) {
    return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
}

}  // namespace

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

double Mesh::triangle_area(int t) const {
    const auto& tri = triangles[t];
    return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

Point2 Mesh::triangle_centroid(int t) const {
    const auto& tri = triangles[t];
    const Point2& a = vertices[tri[0]];
    const Point2& b = vertices[tri[1]];
    const Point2& c = vertices[tri[2]];
    return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

int Mesh::obstacle_count() const {
    int n = 0;
    for (const RegionTag& tag : region_of_triangle)
        if (tag.is_obstacle()) n = std::max(n, tag.obstacle_id);
    return n;
}

std::vector<std::array<int, 2>> collect_edges(const Mesh& mesh) {
    std::vector<std::array<int, 2>> edges;
    edges.reserve(mesh.triangles.size() * 3);
    for (const auto& tri : mesh.triangles)
        for (int k = 0; k < 3; ++k) edges.push_back(sorted_edge(tri[k], tri[(k + 1) % 3]));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<int> obstacle_triangles(const Mesh& mesh) {
    std::vector<int> out;
    for (int t = 0; t < mesh.triangle_count(); ++t)
        if (mesh.region_of_triangle[t].is_obstacle()) out.push_back(t);
    return out;
}

int boundary_loop_count(const Mesh& mesh) {
    // Each boundary vertex must have exactly two incident boundary edges.
    std::map<int, std::vector<int>> neighbors;
    for (const BoundaryFacet& f : mesh.boundary_facets) {
        neighbors[f.v[0]].push_back(f.v[1]);
        neighbors[f.v[1]].push_back(f.v[0]);
    }
    for (const auto& [v, adj] : neighbors)
        if (adj.size() != 2)
            throw MeshError("boundary is not a union of simple loops at vertex " +
                            std::to_string(v));

    int loops = 0;
    std::map<int, bool> visited;
    for (const auto& [start, adj] : neighbors) {
        if (visited[start]) continue;
        ++loops;
        int prev = -1;
        int cur = start;
        while (true) {
            visited[cur] = true;
            const auto& nb = neighbors[cur];
            int next = (nb[0] == prev) ? nb[1] : nb[0];
            prev = cur;
            cur = next;
            if (cur == start) break;
        }
    }
    return loops;
}

void validate_mesh(const Mesh& mesh) {
    const int nv = mesh.vertex_count();
    const int nt = mesh.triangle_count();
    if (nt == 0) throw MeshError("mesh has no triangles");
    if (mesh.region_of_triangle.size() != mesh.triangles.size())
        throw MeshError("region tag count does not match triangle count");

    for (const Point2& p : mesh.vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw MeshError("non-finite vertex coordinate");

    std::vector<char> referenced(nv, 0);
    for (int t = 0; t < nt; ++t) {
        for (int v : mesh.triangles[t]) {
            if (v < 0 || v >= nv)
                throw MeshError("triangle " + std::to_string(t) + " references invalid vertex");
            referenced[v] = 1;
        }
        if (mesh.triangle_area(t) <= 0.0)
            throw MeshError("triangle " + std::to_string(t) + " has non-positive area");
    }
    for (int v = 0; v < nv; ++v)
        if (!referenced[v]) throw MeshError("vertex " + std::to_string(v) + " is unreferenced");

    // Edge incidence: interior edges shared by exactly two triangles, boundary
    // facets matching edges of exactly one.
    std::map<std::array<int, 2>, int> edge_use;
    for (const auto& tri : mesh.triangles)
        for (int k = 0; k < 3; ++k) ++edge_use[sorted_edge(tri[k], tri[(k + 1) % 3])];

    for (const auto& [edge, count] : edge_use)
        if (count > 2) throw MeshError("edge " + edge_str(edge) + " shared by " +
                                       std::to_string(count) + " triangles");

    std::map<std::array<int, 2>, int> facet_seen;
    for (const BoundaryFacet& f : mesh.boundary_facets) {
        const auto key = sorted_edge(f.v[0], f.v[1]);
        auto it = edge_use.find(key);
        if (it == edge_use.end())
            throw MeshError("dangling boundary facet " + edge_str(key) +
                            ": not an edge of any triangle");
        if (it->second != 1)
            throw MeshError("boundary facet " + edge_str(key) + " lies on an interior edge");
        if (++facet_seen[key] > 1)
            throw MeshError("duplicate boundary facet " + edge_str(key));
    }
    for (const auto& [edge, count] : edge_use)
        if (count == 1 && !facet_seen.count(edge))
            throw MeshError("untagged boundary edge " + edge_str(edge));

    // Obstacle ids contiguous 1..N.
    std::vector<char> id_present;
    for (const RegionTag& tag : mesh.region_of_triangle) {
        if (!tag.is_obstacle()) continue;
        if (tag.obstacle_id < 1) throw MeshError("obstacle id must be >= 1");
        if (tag.obstacle_id > static_cast<int>(id_present.size()))
            id_present.resize(tag.obstacle_id, 0);
        id_present[tag.obstacle_id - 1] = 1;
    }
    for (std::size_t i = 0; i < id_present.size(); ++i)
        if (!id_present[i])
            throw MeshError("obstacle ids are not contiguous: missing id " + std::to_string(i + 1));

    // Euler identity V - E + T = 2 - loops = 1 - holes.
    const int ne = static_cast<int>(edge_use.size());
    const int loops = boundary_loop_count(mesh);
    if (nv - ne + nt != 2 - loops)
        throw MeshError("Euler check failed: V-E+T = " + std::to_string(nv - ne + nt) +
                        ", expected " + std::to_string(2 - loops) + " for " +
                        std::to_string(loops - 1) + " hole(s)");
}

Vec2 facet_outward_normal(const Mesh& mesh, const BoundaryFacet& facet) {
    const auto key = sorted_edge(facet.v[0], facet.v[1]);
    for (const auto& tri : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            if (sorted_edge(a, b) != key) continue;
            // Edge traversed in CCW order; outward normal is the clockwise rotation.
            const Point2& pa = mesh.vertices[a];
            const Point2& pb = mesh.vertices[b];
            const double dx = pb.x - pa.x;
            const double dy = pb.y - pa.y;
            const double len = std::hypot(dx, dy);
            return {dy / len, -dx / len};
        }
    }
    throw MeshError("facet " + edge_str(key) + " has no owning triangle");
}

Mesh generate_channel_mesh(double lx_min, double lx_max, double ly_min, double ly_max,
                           const std::vector<AxisAlignedRect>& rect_obstacles, double h) {
    if (!(h > 0.0)) throw MeshError("target edge length h must be positive");
    if (!(lx_max > lx_min) || !(ly_max > ly_min)) throw MeshError("empty channel domain");

    const double lx = lx_max - lx_min;
    const double ly = ly_max - ly_min;
    const int nx = std::max(1, static_cast<int>(std::llround(lx / h)));
    const int ny = std::max(1, static_cast<int>(std::llround(ly / h)));
    const double snap_tol = 1e-12 * std::hypot(lx, ly);

    const auto grid_x = [&](int i) { return lx_min + i * (lx / nx); };
    const auto grid_y = [&](int j) { return ly_min + j * (ly / ny); };

    // Snap rectangle edges onto grid lines.
    struct CellBox {
        int i0, i1, j0, j1;
    };
    std::vector<CellBox> boxes;
    boxes.reserve(rect_obstacles.size());
    const auto snap = [&](double value, double origin, double step, int n,
                          const char* what) -> int {
        const int k = static_cast<int>(std::llround((value - origin) / step));
        if (k < 0 || k > n)
            throw MeshError(std::string("rectangle ") + what + " outside domain");
        if (std::abs((origin + k * step) - value) > snap_tol)
            throw MeshError(std::string("rectangle ") + what +
                            " not snappable onto the grid within tolerance");
        return k;
    };
    for (const AxisAlignedRect& r : rect_obstacles) {
        CellBox box{snap(r.xmin, lx_min, lx / nx, nx, "xmin"),
                    snap(r.xmax, lx_min, lx / nx, nx, "xmax"),
                    snap(r.ymin, ly_min, ly / ny, ny, "ymin"),
                    snap(r.ymax, ly_min, ly / ny, ny, "ymax")};
        if (box.i0 >= box.i1 || box.j0 >= box.j1)
            throw MeshError("rectangle obstacle has empty snapped extent");
        boxes.push_back(box);
    }

    Mesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) mesh.vertices.push_back({grid_x(i), grid_y(j)});
    const auto vid = [&](int i, int j) { return j * (nx + 1) + i; };

    const auto cell_region = [&](int i, int j) -> RegionTag {
        RegionTag tag = RegionTag::fluid();
        for (std::size_t r = 0; r < boxes.size(); ++r) {
            const CellBox& b = boxes[r];
            if (i >= b.i0 && i < b.i1 && j >= b.j0 && j < b.j1) {
                if (tag.is_obstacle()) throw MeshError("overlapping rectangle obstacles");
                tag = RegionTag::obstacle(static_cast<int>(r) + 1);
            }
        }
        return tag;
    };

    mesh.triangles.reserve(static_cast<std::size_t>(nx) * ny * 2);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            const RegionTag tag = cell_region(i, j);
            mesh.triangles.push_back({v00, v10, v11});
            mesh.triangles.push_back({v00, v11, v01});
            mesh.region_of_triangle.push_back(tag);
            mesh.region_of_triangle.push_back(tag);
        }
    }

    for (int j = 0; j < ny; ++j)
        mesh.boundary_facets.push_back({{vid(0, j), vid(0, j + 1)}, BoundaryTag::inflow()});
    for (int j = 0; j < ny; ++j)
        mesh.boundary_facets.push_back({{vid(nx, j), vid(nx, j + 1)}, BoundaryTag::outflow()});
    for (int i = 0; i < nx; ++i)
        mesh.boundary_facets.push_back({{vid(i, 0), vid(i + 1, 0)}, BoundaryTag::wall()});
    for (int i = 0; i < nx; ++i)
        mesh.boundary_facets.push_back({{vid(i, ny), vid(i + 1, ny)}, BoundaryTag::wall()});

    validate_mesh(mesh);
    return mesh;
}

std::pair<Mesh, SubmeshMap> extract_fluid_submesh(const Mesh& mesh) {
    const int nv = mesh.vertex_count();
    const int nt = mesh.triangle_count();

    SubmeshMap map;
    std::vector<int> new_vertex(nv, -1);
    Mesh sub;

    for (int t = 0; t < nt; ++t) {
        if (mesh.region_of_triangle[t].is_obstacle()) continue;
        map.triangle_to_parent.push_back(t);
        std::array<int, 3> tri{};
        for (int k = 0; k < 3; ++k) {
            const int v = mesh.triangles[t][k];
            if (new_vertex[v] < 0) {
                new_vertex[v] = static_cast<int>(map.vertex_to_parent.size());
                map.vertex_to_parent.push_back(v);
                sub.vertices.push_back(mesh.vertices[v]);
            }
            tri[k] = new_vertex[v];
        }
        sub.triangles.push_back(tri);
        sub.region_of_triangle.push_back(RegionTag::fluid());
    }

    // Parent boundary facets that still border a kept triangle.
    std::map<std::array<int, 2>, RegionTag> edge_region_of_kept;
    for (int t : map.triangle_to_parent) {
        const auto& tri = mesh.triangles[t];
        for (int k = 0; k < 3; ++k)
            edge_region_of_kept.emplace(sorted_edge(tri[k], tri[(k + 1) % 3]),
                                        RegionTag::fluid());
    }
    for (const BoundaryFacet& f : mesh.boundary_facets) {
        if (!edge_region_of_kept.count(sorted_edge(f.v[0], f.v[1]))) continue;
        sub.boundary_facets.push_back(
            {{new_vertex[f.v[0]], new_vertex[f.v[1]]}, f.tag});
    }

    // Former interior edges against obstacle triangles become obstacle-boundary
    // facets, emitted in kept-triangle order.
    std::map<std::array<int, 2>, int> obstacle_edge;  // parent edge -> obstacle id
    for (int t = 0; t < nt; ++t) {
        const RegionTag tag = mesh.region_of_triangle[t];
        if (!tag.is_obstacle()) continue;
        const auto& tri = mesh.triangles[t];
        for (int k = 0; k < 3; ++k)
            obstacle_edge[sorted_edge(tri[k], tri[(k + 1) % 3])] = tag.obstacle_id;
    }
    for (std::size_t s = 0; s < sub.triangles.size(); ++s) {
        const int t = map.triangle_to_parent[s];
        const auto& tri = mesh.triangles[t];
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            auto it = obstacle_edge.find(sorted_edge(a, b));
            if (it == obstacle_edge.end()) continue;
            sub.boundary_facets.push_back(
                {{new_vertex[a], new_vertex[b]}, BoundaryTag::obstacle_boundary(it->second)});
        }
    }

    if (!sub.triangles.empty()) validate_mesh(sub);
    return {std::move(sub), std::move(map)};
}

}  // namespace brinkman
