#include "brinkman/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "brinkman/elements.hpp"
#include "brinkman/quadrature.hpp"
#include "brinkman/table_io.hpp"

namespace brinkman {

namespace {

std::array<double, 12> local_velocity(const FlowSolution& sol, int t) {
    const TaylorHoodSpace& space = *sol.space;
    const auto& nodes = space.triangle_nodes[t];
    std::array<double, 12> u{};
    for (int ln = 0; ln < 6; ++ln)
        for (int c = 0; c < 2; ++c) u[2 * ln + c] = sol.velocity[space.velocity_dof(nodes[ln], c)];
    return u;
}

double l2_squared_on_triangle(const FlowSolution& sol, int t) {
    const QuadratureRule& quad = quadrature_rule(4);
    const TriangleGeometry geom = TriangleGeometry::from(*sol.space->mesh, t);
    const auto u = local_velocity(sol, t);

    double acc = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const auto [xi, eta] = quad.points[q];
        const auto n2 = p2_values(xi, eta);
        double ux = 0.0, uy = 0.0;
        for (int ln = 0; ln < 6; ++ln) {
            ux += n2[ln] * u[2 * ln];
            uy += n2[ln] * u[2 * ln + 1];
        }
        acc += quad.weights[q] * geom.det * (ux * ux + uy * uy);
    }
    return acc;
}

// Squared H1 seminorm of (u_a - u_b) on one shared triangle; u_b may be null.
double h1_diff_squared_on_triangle(const FlowSolution& a, int ta, const FlowSolution* b, int tb) {
    const QuadratureRule& quad = quadrature_rule(4);
    const TriangleGeometry geom = TriangleGeometry::from(*a.space->mesh, ta);
    const auto ua = local_velocity(a, ta);
    std::array<double, 12> ub{};
    if (b) ub = local_velocity(*b, tb);

    double acc = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const auto [xi, eta] = quad.points[q];
        const auto g2ref = p2_ref_grads(xi, eta);
        std::array<std::array<double, 2>, 2> grad{};  // grad[c][d] = d(u_c)/dx_d
        for (int ln = 0; ln < 6; ++ln) {
            const auto g = geom.physical_grad(g2ref[ln]);
            for (int c = 0; c < 2; ++c) {
                const double coeff = ua[2 * ln + c] - ub[2 * ln + c];
                grad[c][0] += g[0] * coeff;
                grad[c][1] += g[1] * coeff;
            }
        }
        acc += quad.weights[q] * geom.det *
               (grad[0][0] * grad[0][0] + grad[0][1] * grad[0][1] + grad[1][0] * grad[1][0] +
                grad[1][1] * grad[1][1]);
    }
    return acc;
}

}  // namespace

double l2_norm_region(const FlowSolution& sol, std::span<const int> region_triangles) {
    double acc = 0.0;
    for (int t : region_triangles) acc += l2_squared_on_triangle(sol, t);
    return std::sqrt(acc);
}

double velocity_l2_norm(const FlowSolution& sol) {
    double acc = 0.0;
    for (int t = 0; t < sol.space->mesh->triangle_count(); ++t)
        acc += l2_squared_on_triangle(sol, t);
    return std::sqrt(acc);
}

double velocity_h1_seminorm(const FlowSolution& sol) {
    double acc = 0.0;
    for (int t = 0; t < sol.space->mesh->triangle_count(); ++t)
        acc += h1_diff_squared_on_triangle(sol, t, nullptr, 0);
    return std::sqrt(acc);
}

double h1_seminorm_diff(const FlowSolution& ref, const FlowSolution& pen, const SubmeshMap& map) {
    const Mesh& parent = *pen.space->mesh;
    const Mesh& sub = *ref.space->mesh;
    if (static_cast<int>(map.vertex_to_parent.size()) != sub.vertex_count() ||
        static_cast<int>(map.triangle_to_parent.size()) != sub.triangle_count())
        throw Error("map inconsistency: submesh map does not match the reference mesh");

    std::vector<int> parent_to_sub(parent.triangle_count(), -1);
    for (int s = 0; s < sub.triangle_count(); ++s) {
        const int t = map.triangle_to_parent[s];
        if (t < 0 || t >= parent.triangle_count())
            throw Error("map inconsistency: parent triangle index out of range");
        // Shared-triangulation requirement: local vertices must coincide.
        for (int k = 0; k < 3; ++k) {
            const int pv = map.vertex_to_parent[sub.triangles[s][k]];
            if (pv != parent.triangles[t][k] ||
                !(sub.vertices[sub.triangles[s][k]] == parent.vertices[pv]))
                throw Error("map inconsistency: submesh triangle geometry differs from parent");
        }
        parent_to_sub[t] = s;
    }

    double acc = 0.0;
    for (int t = 0; t < parent.triangle_count(); ++t) {
        const int s = parent_to_sub[t];
        if (s >= 0)
            acc += h1_diff_squared_on_triangle(ref, s, &pen, t);
        else  // reference extended by zero on obstacle triangles
            acc += h1_diff_squared_on_triangle(pen, t, nullptr, 0);
    }
    return std::sqrt(acc);
}

double flux(const FlowSolution& sol, const BoundaryTag& tag) {
    const TaylorHoodSpace& space = *sol.space;
    const Mesh& mesh = *space.mesh;
    const EdgeQuadrature& quad = edge_quadrature();

    std::map<std::array<int, 2>, int> edge_index;
    for (std::size_t e = 0; e < space.edges.size(); ++e)
        edge_index[space.edges[e]] = static_cast<int>(e);

    double total = 0.0;
    for (const BoundaryFacet& facet : mesh.boundary_facets) {
        if (!(facet.tag == tag)) continue;
        const Vec2 normal = facet_outward_normal(mesh, facet);
        const Point2& a = mesh.vertices[facet.v[0]];
        const Point2& b = mesh.vertices[facet.v[1]];
        const double length = std::hypot(b.x - a.x, b.y - a.y);

        const auto key = facet.v[0] < facet.v[1] ? std::array<int, 2>{facet.v[0], facet.v[1]}
                                                 : std::array<int, 2>{facet.v[1], facet.v[0]};
        const int mid_node = space.vertex_count() + edge_index.at(key);

        // Quadratic trace through the two endpoint nodes and the midpoint node.
        for (int g = 0; g < 3; ++g) {
            const double s = quad.points[g];
            const double phi_a = (1.0 - s) * (1.0 - 2.0 * s);
            const double phi_b = s * (2.0 * s - 1.0);
            const double phi_m = 4.0 * s * (1.0 - s);
            double un = 0.0;
            for (int c = 0; c < 2; ++c) {
                const double val = phi_a * sol.velocity[space.velocity_dof(facet.v[0], c)] +
                                   phi_b * sol.velocity[space.velocity_dof(facet.v[1], c)] +
                                   phi_m * sol.velocity[space.velocity_dof(mid_node, c)];
                un += val * (c == 0 ? normal.x : normal.y);
            }
            total += quad.weights[g] * length * un;
        }
    }
    return total;
}

double divergence_residual(const FlowSolution& sol) {
    const TaylorHoodSpace& space = *sol.space;
    PenaltyField zero;
    zero.R = 0.0;
    zero.obstacle.assign(space.mesh->triangle_count(), 0);
    const LinearSystem system = assemble_stokes(space, 0.0, zero);

    const std::vector<double> z = sol.coupled();
    const std::vector<double> res = system.matrix.multiply(z);

    double max_div = 0.0;
    for (int a = 0; a < space.pressure_dof_count(); ++a)
        max_div = std::max(max_div, std::abs(res[space.pressure_dof(a)]));

    double velocity_scale = 0.0;
    for (double v : sol.velocity) velocity_scale = std::max(velocity_scale, std::abs(v));
    double area = 0.0;
    for (int t = 0; t < space.mesh->triangle_count(); ++t) area += space.mesh->triangle_area(t);
    const double scale = std::max(1e-300, velocity_scale * area);
    return max_div / scale;
}

std::vector<double> decade_ladder(double rmin, double rmax) {
    std::vector<double> out;
    for (double r = rmin; r <= rmax * (1.0 + 1e-12); r *= 10.0) out.push_back(r);
    return out;
}

double fit_loglog_slope(std::span<const double> r_values, std::span<const double> errors) {
    if (r_values.size() != errors.size() || r_values.size() < 2)
        throw Error("slope fit needs at least two matching points");
    const auto n = static_cast<double>(r_values.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        const double x = std::log(r_values[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void attach_rates(std::vector<ConvergenceRecord>& records) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double dr = std::log(records[i].R / records[i - 1].R);
        if (records[i].err_l2_obstacle > 0.0 && records[i - 1].err_l2_obstacle > 0.0)
            records[i].rate_l2 =
                std::log(records[i - 1].err_l2_obstacle / records[i].err_l2_obstacle) / dr;
        if (records[i].err_h1 > 0.0 && records[i - 1].err_h1 > 0.0)
            records[i].rate_h1 = std::log(records[i - 1].err_h1 / records[i].err_h1) / dr;
    }
}

StudyResult run_convergence_study(const StudyConfig& config) {
    for (std::size_t i = 1; i < config.r_values.size(); ++i)
        if (!(config.r_values[i] > config.r_values[i - 1]))
            throw Error("study R list must be strictly increasing");
    if (config.r_values.empty()) throw Error("study R list is empty");

    const auto mesh = std::make_shared<const Mesh>(load_mesh(config.mesh));
    const ObstacleSet obstacles = ObstacleSet::mesh_regions(*mesh);
    const std::vector<int> region = obstacle_triangles(*mesh);

    auto [submesh_value, map] = extract_fluid_submesh(*mesh);
    const auto submesh = std::make_shared<const Mesh>(std::move(submesh_value));
    const auto sub_space = std::make_shared<const TaylorHoodSpace>(build_taylor_hood(submesh));
    const auto space = std::make_shared<const TaylorHoodSpace>(build_taylor_hood(mesh));

    SolverConfig solver = config.solver;
    solver.nu = config.nu;
    solver.U = config.U;

    PenaltyField no_penalty;
    no_penalty.R = 0.0;
    no_penalty.obstacle.assign(submesh->triangle_count(), 0);

    StudyResult result;
    const bool navier = config.equation == StudyConfig::Equation::NavierStokes;

    FlowSolution reference;
    try {
        if (navier) {
            auto [sol, report] = solve_navier_stokes_on(sub_space, no_penalty, solver,
                                                        Scenario::Reference, nullptr);
            reference = std::move(sol);
            result.reference_report = std::move(report);
        } else {
            reference = solve_stokes_on(sub_space, no_penalty, solver, Scenario::Reference);
        }
    } catch (const SolverError& err) {
        result.failure = std::string("reference solve failed: ") + err.what();
        return result;
    }

    FlowSolution previous;
    bool have_previous = false;
    for (double r : config.r_values) {
        try {
            const PenaltyField psi = build_penalty_field(*mesh, obstacles, r);
            FlowSolution penalized;
            if (navier) {
                auto [sol, report] = solve_navier_stokes_on(
                    space, psi, solver, Scenario::Penalized, have_previous ? &previous : nullptr);
                penalized = std::move(sol);
                result.newton_reports.push_back(std::move(report));
            } else {
                penalized = solve_stokes_on(space, psi, solver, Scenario::Penalized);
            }

            ConvergenceRecord rec;
            rec.R = r;
            rec.err_l2_obstacle = l2_norm_region(penalized, region);
            rec.err_h1 = h1_seminorm_diff(reference, penalized, map);
            result.records.push_back(rec);

            previous = std::move(penalized);
            have_previous = true;
        } catch (const SolverError& err) {
            result.failure = "solve failed at R = " + std::to_string(r) + ": " + err.what();
            break;
        }
    }

    attach_rates(result.records);
    if (!config.csv_path.empty() && !result.records.empty())
        write_table(result.records, config.csv_path, TableFormat::Csv);
    if (!config.table_path.empty() && !result.records.empty())
        write_table(result.records, config.table_path, TableFormat::Markdown);
    return result;
}

}  // namespace brinkman
