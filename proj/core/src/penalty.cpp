#include "brinkman/penalty.hpp"

#include <cmath>
#include <string>

namespace brinkman {

namespace {

bool primitive_contains(const ObstaclePrimitive& shape, const Point2& p, double tol = 0.0) {
    if (const auto* rect = std::get_if<AxisAlignedRect>(&shape))
        return p.x >= rect->xmin - tol && p.x <= rect->xmax + tol && p.y >= rect->ymin - tol &&
               p.y <= rect->ymax + tol;
    const Disk& disk = std::get<Disk>(shape);
    const double r = disk.radius + tol;
    const double dx = p.x - disk.center.x;
    const double dy = p.y - disk.center.y;
    return dx * dx + dy * dy <= r * r;
}

bool any_primitive_contains(const ObstacleSet& set, const Point2& p, double tol) {
    for (const ObstaclePrimitive& shape : set.shapes())
        if (primitive_contains(shape, p, tol)) return true;
    return false;
}

bool triangle_contains(const Mesh& mesh, int t, const Point2& p) {
    const auto& tri = mesh.triangles[t];
    const Point2& a = mesh.vertices[tri[0]];
    const Point2& b = mesh.vertices[tri[1]];
    const Point2& c = mesh.vertices[tri[2]];
    return signed_area(a, b, p) >= 0.0 && signed_area(b, c, p) >= 0.0 &&
           signed_area(c, a, p) >= 0.0;
}

}  // namespace

ObstacleSet ObstacleSet::primitives(std::vector<ObstaclePrimitive> shapes) {
    for (const ObstaclePrimitive& shape : shapes) {
        if (const auto* rect = std::get_if<AxisAlignedRect>(&shape)) {
            if (!(rect->xmax > rect->xmin) || !(rect->ymax > rect->ymin))
                throw PenaltyError("rectangle obstacle must have positive measure");
        } else if (!(std::get<Disk>(shape).radius > 0.0)) {
            throw PenaltyError("disk obstacle must have positive radius");
        }
    }
    ObstacleSet set;
    set.shapes_ = std::move(shapes);
    return set;
}

ObstacleSet ObstacleSet::mesh_regions(const Mesh& mesh) {
    ObstacleSet set;
    set.mesh_ = &mesh;
    return set;
}

bool contains(const ObstacleSet& set, const Point2& p) {
    if (set.uses_mesh_regions()) {
        const Mesh& mesh = *set.region_mesh();
        for (int t = 0; t < mesh.triangle_count(); ++t)
            if (mesh.region_of_triangle[t].is_obstacle() && triangle_contains(mesh, t, p))
                return true;
        return false;
    }
    for (const ObstaclePrimitive& shape : set.shapes())
        if (primitive_contains(shape, p)) return true;
    return false;
}

PenaltyField build_penalty_field(const Mesh& mesh, const ObstacleSet& set, double R) {
    if (R < 0.0) throw PenaltyError("penalty magnitude R must be nonnegative");

    PenaltyField field;
    field.R = R;
    field.obstacle.assign(mesh.triangles.size(), 0);

    if (set.uses_mesh_regions()) {
        if (set.region_mesh() != &mesh)
            throw PenaltyError("obstacle set is bound to a different mesh");
        for (int t = 0; t < mesh.triangle_count(); ++t)
            field.obstacle[t] = mesh.region_of_triangle[t].is_obstacle() ? 1 : 0;
        return field;
    }

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const bool by_centroid = contains(set, mesh.triangle_centroid(t));
        bool all_vertices = true;
        for (int v : mesh.triangles[t])
            all_vertices = all_vertices && contains(set, mesh.vertices[v]);
        if (by_centroid != all_vertices)
            throw PenaltyError("triangle " + std::to_string(t) +
                               " straddles the obstacle boundary (mesh does not conform)");
        field.obstacle[t] = by_centroid ? 1 : 0;
    }
    return field;
}

}  // namespace brinkman
