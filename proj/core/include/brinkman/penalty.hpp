#ifndef BRINKMAN_PENALTY_HPP
#define BRINKMAN_PENALTY_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "brinkman/mesh.hpp"

namespace brinkman {

struct Disk {
    Point2 center;
    double radius = 0.0;
};

using ObstaclePrimitive = std::variant<AxisAlignedRect, Disk>;

/// Obstacle region, either geometric primitives or the mesh's own region tags.
class ObstacleSet {
  public:
    static ObstacleSet primitives(std::vector<ObstaclePrimitive> shapes);
    /// Use the Obstacle-tagged triangles of `mesh` directly.
    static ObstacleSet mesh_regions(const Mesh& mesh);

    bool uses_mesh_regions() const { return mesh_ != nullptr; }
    const Mesh* region_mesh() const { return mesh_; }
    const std::vector<ObstaclePrimitive>& shapes() const { return shapes_; }

  private:
    std::vector<ObstaclePrimitive> shapes_;
    const Mesh* mesh_ = nullptr;
};

/// Closed-set membership (boundary counts as inside) for primitives;
/// point-in-triangle lookup over obstacle triangles for mesh regions.
bool contains(const ObstacleSet& set, const Point2& p);

/// Elementwise-constant field R * chi_obstacle: exactly R on obstacle
/// triangles and exactly 0 elsewhere.
struct PenaltyField {
    double R = 0.0;
    std::vector<std::uint8_t> obstacle;  // per-triangle indicator

    double value_on(int triangle) const { return obstacle[triangle] ? R : 0.0; }
    bool is_obstacle(int triangle) const { return obstacle[triangle] != 0; }
};

/// Classify triangles by centroid (primitives, with a conformity check that
/// the all-three-vertex classification agrees) or by region tag (mesh
/// regions). Throws PenaltyError on a straddling triangle or R < 0.
PenaltyField build_penalty_field(const Mesh& mesh, const ObstacleSet& set, double R);

}  // namespace brinkman

#endif
