#include "brinkman/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace brinkman {

namespace {

std::array<int, 2> sorted_edge(int a, int b) {
    return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

}  // namespace

TaylorHoodSpace build_taylor_hood(std::shared_ptr<const Mesh> mesh) {
    TaylorHoodSpace space;
    space.edges = collect_edges(*mesh);

    std::map<std::array<int, 2>, int> edge_index;
    for (std::size_t e = 0; e < space.edges.size(); ++e)
        edge_index[space.edges[e]] = static_cast<int>(e);

    space.edge_midpoints.reserve(space.edges.size());
    for (const auto& edge : space.edges) {
        const Point2& a = mesh->vertices[edge[0]];
        const Point2& b = mesh->vertices[edge[1]];
        space.edge_midpoints.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
    }

    const int nv = mesh->vertex_count();
    space.triangle_nodes.reserve(mesh->triangles.size());
    for (const auto& tri : mesh->triangles) {
        std::array<int, 6> nodes{tri[0], tri[1], tri[2], 0, 0, 0};
        // Midpoint node opposite vertex k sits on edge (k+1, k+2).
        for (int k = 0; k < 3; ++k)
            nodes[3 + k] = nv + edge_index.at(sorted_edge(tri[(k + 1) % 3], tri[(k + 2) % 3]));
        space.triangle_nodes.push_back(nodes);
    }

    space.mesh = std::move(mesh);
    return space;
}

Vec2 inflow_value(const InflowProfile& profile, const Point2& p, const Vec2& outward_normal) {
    const double magnitude = -profile.U * (1.0 + p.y) * (1.0 - p.y);
    return {magnitude * outward_normal.x, magnitude * outward_normal.y};
}

std::vector<DirichletBc> collect_dirichlet(const TaylorHoodSpace& space, Scenario scenario,
                                           const InflowProfile& profile) {
    const Mesh& mesh = *space.mesh;
    const int nv = mesh.vertex_count();

    std::map<std::array<int, 2>, int> edge_index;
    for (std::size_t e = 0; e < space.edges.size(); ++e)
        edge_index[space.edges[e]] = static_cast<int>(e);

    std::map<int, Vec2> node_values;
    const auto prescribe = [&](int node, const Vec2& value) {
        const auto [it, inserted] = node_values.emplace(node, value);
        if (inserted) return;
        if (std::abs(it->second.x - value.x) > 1e-12 || std::abs(it->second.y - value.y) > 1e-12)
            throw SpaceError("conflicting Dirichlet values at node " + std::to_string(node));
    };

    for (const BoundaryFacet& facet : mesh.boundary_facets) {
        const bool prescribed =
            facet.tag.kind == BoundaryKind::Inflow || facet.tag.kind == BoundaryKind::Wall ||
            (scenario == Scenario::Reference &&
             facet.tag.kind == BoundaryKind::ObstacleBoundary);
        if (!prescribed) continue;

        const int mid_node = nv + edge_index.at(sorted_edge(facet.v[0], facet.v[1]));
        const std::array<int, 3> nodes{facet.v[0], facet.v[1], mid_node};
        if (facet.tag.kind == BoundaryKind::Inflow) {
            const Vec2 normal = facet_outward_normal(mesh, facet);
            for (int node : nodes)
                prescribe(node, inflow_value(profile, space.node_position(node), normal));
        } else {
            for (int node : nodes) prescribe(node, Vec2{0.0, 0.0});
        }
    }

    std::vector<DirichletBc> bcs;
    bcs.reserve(2 * node_values.size());
    for (const auto& [node, value] : node_values) {
        bcs.push_back({space.velocity_dof(node, 0), value.x});
        bcs.push_back({space.velocity_dof(node, 1), value.y});
    }
    std::sort(bcs.begin(), bcs.end(), [](const DirichletBc& a, const DirichletBc& b) {
        return a.dof < b.dof;
    });
    return bcs;
}

}  // namespace brinkman
