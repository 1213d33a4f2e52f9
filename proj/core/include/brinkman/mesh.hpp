#ifndef BRINKMAN_MESH_HPP
#define BRINKMAN_MESH_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "brinkman/errors.hpp"

namespace brinkman {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

using Vec2 = Point2;

enum class BoundaryKind : std::uint8_t { Inflow, Outflow, Wall, ObstacleBoundary };

/// Tag of a boundary facet. `obstacle_id` is meaningful only for ObstacleBoundary.
struct BoundaryTag {
    BoundaryKind kind = BoundaryKind::Wall;
    int obstacle_id = 0;

    static BoundaryTag inflow() { return {BoundaryKind::Inflow, 0}; }
    static BoundaryTag outflow() { return {BoundaryKind::Outflow, 0}; }
    static BoundaryTag wall() { return {BoundaryKind::Wall, 0}; }
    static BoundaryTag obstacle_boundary(int id) { return {BoundaryKind::ObstacleBoundary, id}; }

    friend bool operator==(const BoundaryTag&, const BoundaryTag&) = default;
};

enum class RegionKind : std::uint8_t { Fluid, Obstacle };

/// Per-triangle region label. Obstacle ids are contiguous 1..N.
struct RegionTag {
    RegionKind kind = RegionKind::Fluid;
    int obstacle_id = 0;

    static RegionTag fluid() { return {RegionKind::Fluid, 0}; }
    static RegionTag obstacle(int id) { return {RegionKind::Obstacle, id}; }
    bool is_obstacle() const { return kind == RegionKind::Obstacle; }

    friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

struct BoundaryFacet {
    std::array<int, 2> v{};
    BoundaryTag tag;

    friend bool operator==(const BoundaryFacet&, const BoundaryFacet&) = default;
};

/// Conforming triangle mesh with tagged boundary facets and region labels.
/// Triangles are counterclockwise; obstacle regions are unions of whole
/// triangles. Immutable after construction; safe for concurrent reads.
struct Mesh {
    std::vector<Point2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryFacet> boundary_facets;
    std::vector<RegionTag> region_of_triangle;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    double triangle_area(int t) const;
    Point2 triangle_centroid(int t) const;
    int obstacle_count() const;

    friend bool operator==(const Mesh&, const Mesh&) = default;
};

double signed_area(const Point2& a, const Point2& b, const Point2& c);

/// Unique undirected edges (lo < hi), sorted lexicographically.
std::vector<std::array<int, 2>> collect_edges(const Mesh& mesh);

/// Number of closed boundary loops (outer contour plus one per hole).
int boundary_loop_count(const Mesh& mesh);

/// Full consistency check: positive areas, edge conformity (every boundary
/// facet is an edge of exactly one triangle, interior edges of exactly two),
/// contiguous obstacle ids, and the exact Euler identity V - E + T = 2 - loops.
/// Throws MeshError on the first violation.
void validate_mesh(const Mesh& mesh);

/// Unit outward normal of a boundary facet, derived from its owning triangle.
Vec2 facet_outward_normal(const Mesh& mesh, const BoundaryFacet& facet);

std::vector<int> obstacle_triangles(const Mesh& mesh);

struct AxisAlignedRect {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

/// Structured channel mesh: each grid cell split into two triangles with a
/// consistent diagonal. Rectangle obstacles must snap onto grid lines within
/// 1e-12 of the domain diameter; their cells are tagged Obstacle(1..N).
/// Boundary facets: Inflow on x = lx_min, Outflow on x = lx_max, Wall elsewhere.
Mesh generate_channel_mesh(double lx_min, double lx_max, double ly_min, double ly_max,
                           const std::vector<AxisAlignedRect>& rect_obstacles, double h);

struct SubmeshMap {
    std::vector<int> vertex_to_parent;
    std::vector<int> triangle_to_parent;
};

/// Submesh of the Fluid triangles. Former interior edges on an obstacle
/// boundary become facets tagged ObstacleBoundary(id). Vertex coordinates are
/// copied bit-exactly, so mapped triangle geometry matches the parent exactly.
std::pair<Mesh, SubmeshMap> extract_fluid_submesh(const Mesh& mesh);

struct ChannelSpec {
    double lx_min = -2.0, lx_max = 2.0, ly_min = -1.0, ly_max = 1.0;
    std::vector<AxisAlignedRect> rect_obstacles;
    double h = 0.05;
};

/// Exactly one of `msh_path` / `generator` must be set.
struct MeshSource {
    std::optional<std::filesystem::path> msh_path;
    std::optional<ChannelSpec> generator;
};

}  // namespace brinkman

#endif
