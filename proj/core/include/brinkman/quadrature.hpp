#ifndef BRINKMAN_QUADRATURE_HPP
#define BRINKMAN_QUADRATURE_HPP

#include <array>
#include <vector>

#include "brinkman/errors.hpp"

namespace brinkman {

/// Quadrature on the reference triangle {(xi,eta): xi,eta >= 0, xi+eta <= 1}.
/// Weights sum to the reference area 1/2; the rule is exact for all bivariate
/// polynomials up to `degree`.
struct QuadratureRule {
    int degree = 0;
    std::vector<std::array<double, 2>> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

/// Supported degrees: 1 to 5. Throws AssemblyError otherwise.
const QuadratureRule& quadrature_rule(int degree);

/// 3-point Gauss-Legendre rule on [0,1]; exact for polynomials up to degree 5.
struct EdgeQuadrature {
    std::array<double, 3> points;
    std::array<double, 3> weights;
};
const EdgeQuadrature& edge_quadrature();

}  // namespace brinkman

#endif
