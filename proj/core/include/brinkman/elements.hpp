#ifndef BRINKMAN_ELEMENTS_HPP
#define BRINKMAN_ELEMENTS_HPP

#include <array>

#include "brinkman/mesh.hpp"

namespace brinkman {

// Scalar Lagrange bases on the reference triangle, barycentric
// lambda0 = 1 - xi - eta, lambda1 = xi, lambda2 = eta.
// P2 node order: vertices 0,1,2 then the midpoint opposite each vertex
// (node 3 on edge 1-2, node 4 on edge 2-0, node 5 on edge 0-1).

inline std::array<double, 3> p1_values(double xi, double eta) {
    return {1.0 - xi - eta, xi, eta};
}

inline constexpr std::array<std::array<double, 2>, 3> p1_ref_grads() {
    return {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};
}

inline std::array<double, 6> p2_values(double xi, double eta) {
    const double l0 = 1.0 - xi - eta;
    const double l1 = xi;
    const double l2 = eta;
    return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
            4.0 * l1 * l2,         4.0 * l2 * l0,         4.0 * l0 * l1};
}

inline std::array<std::array<double, 2>, 6> p2_ref_grads(double xi, double eta) {
    const double l0 = 1.0 - xi - eta;
    const double l1 = xi;
    const double l2 = eta;
    // d lambda0 = (-1,-1), d lambda1 = (1,0), d lambda2 = (0,1)
    return {{{-(4.0 * l0 - 1.0), -(4.0 * l0 - 1.0)},
             {4.0 * l1 - 1.0, 0.0},
             {0.0, 4.0 * l2 - 1.0},
             {4.0 * l2, 4.0 * l1},
             {-4.0 * l2, 4.0 * (l0 - l2)},
             {4.0 * (l0 - l1), -4.0 * l1}}};
}

/// Affine map data for one triangle: x = p0 + J (xi, eta).
struct TriangleGeometry {
    std::array<std::array<double, 2>, 2> jac;      // columns p1-p0, p2-p0
    std::array<std::array<double, 2>, 2> inv_jac_t;
    double det = 0.0;  // = 2 * area
    Point2 origin;

    static TriangleGeometry from(const Mesh& mesh, int t) {
        const auto& tri = mesh.triangles[t];
        const Point2& a = mesh.vertices[tri[0]];
        const Point2& b = mesh.vertices[tri[1]];
        const Point2& c = mesh.vertices[tri[2]];
        TriangleGeometry g;
        g.origin = a;
        g.jac = {{{b.x - a.x, c.x - a.x}, {b.y - a.y, c.y - a.y}}};
        g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
        const double inv = 1.0 / g.det;
        // inv(J)^T rows map reference gradients to physical ones.
        g.inv_jac_t = {{{g.jac[1][1] * inv, -g.jac[1][0] * inv},
                        {-g.jac[0][1] * inv, g.jac[0][0] * inv}}};
        return g;
    }

    Point2 map(double xi, double eta) const {
        return {origin.x + jac[0][0] * xi + jac[0][1] * eta,
                origin.y + jac[1][0] * xi + jac[1][1] * eta};
    }

    std::array<double, 2> physical_grad(const std::array<double, 2>& ref_grad) const {
        return {inv_jac_t[0][0] * ref_grad[0] + inv_jac_t[0][1] * ref_grad[1],
                inv_jac_t[1][0] * ref_grad[0] + inv_jac_t[1][1] * ref_grad[1]};
    }
};

}  // namespace brinkman

#endif
