#ifndef BRINKMAN_SPACES_HPP
#define BRINKMAN_SPACES_HPP

#include <array>
#include <memory>
#include <vector>

#include "brinkman/mesh.hpp"

namespace brinkman {

/// Taylor-Hood (P2 velocity / P1 pressure) dof maps over a mesh.
///
/// Scalar velocity nodes are numbered vertices first, then edge midpoints in
/// lexicographic edge order; the two velocity components are interleaved, so
/// node n carries scalar dofs 2n (x) and 2n+1 (y). Pressure dofs coincide with
/// vertices. Immutable after build; concurrent reads are safe.
struct TaylorHoodSpace {
    std::shared_ptr<const Mesh> mesh;
    std::vector<std::array<int, 2>> edges;  // (lo, hi), lexicographically sorted
    std::vector<Point2> edge_midpoints;
    // Per triangle: scalar node ids in P2 local order (v0,v1,v2, then the
    // midpoint opposite each vertex).
    std::vector<std::array<int, 6>> triangle_nodes;

    int vertex_count() const { return mesh->vertex_count(); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int node_count() const { return vertex_count() + edge_count(); }
    int velocity_dof_count() const { return 2 * node_count(); }
    int pressure_dof_count() const { return vertex_count(); }
    int total_dof_count() const { return velocity_dof_count() + pressure_dof_count(); }

    int velocity_dof(int node, int component) const { return 2 * node + component; }
    /// Global index of pressure dof `vertex` in the coupled saddle system.
    int pressure_dof(int vertex) const { return velocity_dof_count() + vertex; }

    Point2 node_position(int node) const {
        return node < vertex_count() ? mesh->vertices[node]
                                     : edge_midpoints[node - vertex_count()];
    }
};

TaylorHoodSpace build_taylor_hood(std::shared_ptr<const Mesh> mesh);

/// Poiseuille inflow u_D(x, y) = -U (1+y)(1-y) n; vanishes at y = +-1.
struct InflowProfile {
    double U = 0.0;
};

Vec2 inflow_value(const InflowProfile& profile, const Point2& p, const Vec2& outward_normal);

enum class Scenario { Penalized, Reference };

struct DirichletBc {
    int dof = 0;
    double value = 0.0;

    friend bool operator==(const DirichletBc&, const DirichletBc&) = default;
};

/// Strong velocity boundary values, sorted by dof, each dof exactly once.
/// Penalized: inflow nodes take the profile, wall nodes 0, outflow free.
/// Reference additionally pins obstacle-boundary nodes to 0. Conflicting
/// prescriptions differing by more than 1e-12 raise SpaceError.
std::vector<DirichletBc> collect_dirichlet(const TaylorHoodSpace& space, Scenario scenario,
                                           const InflowProfile& profile);

}  // namespace brinkman

#endif
