#include "brinkman/quadrature.hpp"

#include <cmath>
#include <string>

namespace brinkman {

namespace {

// Points are (xi, eta) = (lambda_1, lambda_2); weights carry the sum-1/2
// normalization already.
QuadratureRule make_rule(int degree) {
    QuadratureRule rule;
    rule.degree = degree;

    const auto add_central = [&](double w) {
        rule.points.push_back({1.0 / 3.0, 1.0 / 3.0});
        rule.weights.push_back(0.5 * w);
    };
    // Orbit of the barycentric point (b, a, a), b = 1 - 2a.
    const auto add_orbit3 = [&](double a, double w) {
        const double b = 1.0 - 2.0 * a;
        rule.points.push_back({a, a});
        rule.points.push_back({b, a});
        rule.points.push_back({a, b});
        for (int k = 0; k < 3; ++k) rule.weights.push_back(0.5 * w);
    };

    switch (degree) {
        case 1:
            add_central(1.0);
            break;
        case 2:
            add_orbit3(1.0 / 6.0, 1.0 / 3.0);
            break;
        case 3:
            add_central(-0.5625);
            add_orbit3(0.2, 25.0 / 48.0);
            break;
        case 4:
            add_orbit3(0.44594849091596489, 0.22338158967801147);
            add_orbit3(0.091576213509770743, 0.10995174365532187);
            break;
        case 5:
            add_central(0.225);
            add_orbit3(0.47014206410511509, 0.13239415278850618);
            add_orbit3(0.10128650732345634, 0.12593918054482715);
            break;
        default:
            throw AssemblyError("unsupported quadrature degree " + std::to_string(degree));
    }
    return rule;
}

}  // namespace

const QuadratureRule& quadrature_rule(int degree) {
    if (degree < 1 || degree > 5)
        throw AssemblyError("unsupported quadrature degree " + std::to_string(degree));
    static const QuadratureRule rules[5] = {make_rule(1), make_rule(2), make_rule(3),
                                            make_rule(4), make_rule(5)};
    return rules[degree - 1];
}

const EdgeQuadrature& edge_quadrature() {
    static const EdgeQuadrature rule = [] {
        const double d = std::sqrt(0.6);  // sqrt(3/5)
        EdgeQuadrature q;
        q.points = {0.5 * (1.0 - d), 0.5, 0.5 * (1.0 + d)};
        q.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
        return q;
    }();
    return rule;
}

}  // namespace brinkman
