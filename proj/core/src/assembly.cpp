#include "brinkman/assembly.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "brinkman/elements.hpp"
#include "brinkman/quadrature.hpp"

namespace brinkman {

namespace {

// Chunked parallel loop: f(begin, end) over disjoint ranges.
template <class F>
void parallel_chunks(int n, F&& f) {
    const int workers = std::min(assembly_thread_count(), std::max(1, n / 64));
    if (workers <= 1) {
        f(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&f, begin, end] { f(begin, end); });
    }
    for (auto& t : pool) t.join();
}

struct StokesKernel {
    // 15x15 local matrix: velocity dofs 0..11 (interleaved), pressure 12..14.
    using Local = std::array<double, 15 * 15>;

    static Local element_matrix(const TaylorHoodSpace& space, int t, double nu, double psi) {
        const QuadratureRule& quad = quadrature_rule(4);
        const TriangleGeometry geom = TriangleGeometry::from(*space.mesh, t);

        Local local{};
        for (std::size_t q = 0; q < quad.size(); ++q) {
            const auto [xi, eta] = quad.points[q];
            const double w = quad.weights[q] * geom.det;

            const auto n2 = p2_values(xi, eta);
            const auto g2ref = p2_ref_grads(xi, eta);
            std::array<std::array<double, 2>, 6> g2;
            for (int i = 0; i < 6; ++i) g2[i] = geom.physical_grad(g2ref[i]);
            const auto n1 = p1_values(xi, eta);

            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    const double diffusion = nu * (g2[i][0] * g2[j][0] + g2[i][1] * g2[j][1]);
                    const double mass = psi * n2[i] * n2[j];
                    const double value = w * (diffusion + mass);
                    local[(2 * i) * 15 + (2 * j)] += value;
                    local[(2 * i + 1) * 15 + (2 * j + 1)] += value;
                }
                // Pressure coupling -(p, div w) and -(q, div u).
                for (int a = 0; a < 3; ++a) {
                    for (int c = 0; c < 2; ++c) {
                        const double value = -w * n1[a] * g2[i][c];
                        local[(2 * i + c) * 15 + (12 + a)] += value;
                        local[(12 + a) * 15 + (2 * i + c)] += value;
                    }
                }
            }
        }
        return local;
    }
};

struct ConvectionKernel {
    struct Local {
        std::array<double, 12> residual{};
        std::array<double, 12 * 12> jacobian{};
    };

    static Local element_contribution(const TaylorHoodSpace& space, int t,
                                      std::span<const double> velocity) {
        const QuadratureRule& quad = quadrature_rule(5);
        const TriangleGeometry geom = TriangleGeometry::from(*space.mesh, t);
        const auto& nodes = space.triangle_nodes[t];

        std::array<double, 12> u_loc{};
        for (int ln = 0; ln < 6; ++ln)
            for (int c = 0; c < 2; ++c)
                u_loc[2 * ln + c] = velocity[space.velocity_dof(nodes[ln], c)];

        Local local;
        for (std::size_t q = 0; q < quad.size(); ++q) {
            const auto [xi, eta] = quad.points[q];
            const double w = quad.weights[q] * geom.det;

            const auto n2 = p2_values(xi, eta);
            const auto g2ref = p2_ref_grads(xi, eta);
            std::array<std::array<double, 2>, 6> g2;
            for (int i = 0; i < 6; ++i) g2[i] = geom.physical_grad(g2ref[i]);

            std::array<double, 2> u_val{};
            std::array<std::array<double, 2>, 2> grad_u{};  // grad_u[c][d] = du_c/dx_d
            for (int ln = 0; ln < 6; ++ln) {
                for (int c = 0; c < 2; ++c) {
                    u_val[c] += n2[ln] * u_loc[2 * ln + c];
                    grad_u[c][0] += g2[ln][0] * u_loc[2 * ln + c];
                    grad_u[c][1] += g2[ln][1] * u_loc[2 * ln + c];
                }
            }
            const std::array<double, 2> conv{
                u_val[0] * grad_u[0][0] + u_val[1] * grad_u[0][1],
                u_val[0] * grad_u[1][0] + u_val[1] * grad_u[1][1]};

            for (int i = 0; i < 6; ++i) {
                for (int c = 0; c < 2; ++c)
                    local.residual[2 * i + c] += w * n2[i] * conv[c];
                for (int j = 0; j < 6; ++j) {
                    // ((grad du) u, w): same-component coupling.
                    const double advect = w * n2[i] * (u_val[0] * g2[j][0] + u_val[1] * g2[j][1]);
                    // ((grad u) du, w): cross-component coupling.
                    const double mass = w * n2[i] * n2[j];
                    for (int c = 0; c < 2; ++c) {
                        local.jacobian[(2 * i + c) * 12 + (2 * j + c)] += advect;
                        for (int d = 0; d < 2; ++d)
                            local.jacobian[(2 * i + c) * 12 + (2 * j + d)] +=
                                mass * grad_u[c][d];
                    }
                }
            }
        }
        return local;
    }
};

}  // namespace

int assembly_thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("BRINKMAN_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

std::array<int, 15> element_dofs(const TaylorHoodSpace& space, int t) {
    const auto& nodes = space.triangle_nodes[t];
    const auto& tri = space.mesh->triangles[t];
    std::array<int, 15> dofs{};
    for (int ln = 0; ln < 6; ++ln) {
        dofs[2 * ln] = space.velocity_dof(nodes[ln], 0);
        dofs[2 * ln + 1] = space.velocity_dof(nodes[ln], 1);
    }
    for (int a = 0; a < 3; ++a) dofs[12 + a] = space.pressure_dof(tri[a]);
    return dofs;
}

CsrMatrix build_saddle_pattern(const TaylorHoodSpace& space) {
    const int n = space.total_dof_count();
    std::vector<std::vector<int>> columns(n);
    for (int t = 0; t < space.mesh->triangle_count(); ++t) {
        const auto dofs = element_dofs(space, t);
        for (int i = 0; i < 15; ++i) {
            auto& row = columns[dofs[i]];
            // Pressure-pressure coupling is structurally zero; keep only the
            // diagonal there so elimination and pinning have a slot.
            if (i >= 12) {
                for (int j = 0; j < 12; ++j) row.push_back(dofs[j]);
                row.push_back(dofs[i]);
            } else {
                for (int j = 0; j < 15; ++j) row.push_back(dofs[j]);
            }
        }
    }
    return CsrMatrix::from_pattern(n, n, std::move(columns));
}

LinearSystem assemble_stokes(const TaylorHoodSpace& space, double nu, const PenaltyField& psi) {
    const int nt = space.mesh->triangle_count();
    if (static_cast<int>(psi.obstacle.size()) != nt)
        throw AssemblyError("penalty field does not match the space's mesh");

    LinearSystem system;
    system.matrix = build_saddle_pattern(space);
    system.rhs.assign(space.total_dof_count(), 0.0);

    std::vector<StokesKernel::Local> locals(nt);
    parallel_chunks(nt, [&](int begin, int end) {
        for (int t = begin; t < end; ++t)
            locals[t] = StokesKernel::element_matrix(space, t, nu, psi.value_on(t));
    });

    for (int t = 0; t < nt; ++t) {
        const auto dofs = element_dofs(space, t);
        const auto& local = locals[t];
        for (int i = 0; i < 15; ++i)
            for (int j = 0; j < 15; ++j) {
                if (i >= 12 && j >= 12) continue;
                const double v = local[i * 15 + j];
                if (v != 0.0) system.matrix.add(dofs[i], dofs[j], v);
            }
    }
    return system;
}

ConvectionContribution assemble_convection(const TaylorHoodSpace& space,
                                           std::span<const double> velocity) {
    if (static_cast<int>(velocity.size()) != space.velocity_dof_count())
        throw AssemblyError("velocity coefficient vector does not match the space");

    const int nt = space.mesh->triangle_count();
    ConvectionContribution out;
    out.residual.assign(space.total_dof_count(), 0.0);
    out.jacobian = build_saddle_pattern(space);

    std::vector<ConvectionKernel::Local> locals(nt);
    parallel_chunks(nt, [&](int begin, int end) {
        for (int t = begin; t < end; ++t)
            locals[t] = ConvectionKernel::element_contribution(space, t, velocity);
    });

    for (int t = 0; t < nt; ++t) {
        const auto dofs = element_dofs(space, t);
        const auto& local = locals[t];
        for (int i = 0; i < 12; ++i) {
            out.residual[dofs[i]] += local.residual[i];
            for (int j = 0; j < 12; ++j) {
                const double v = local.jacobian[i * 12 + j];
                if (v != 0.0) out.jacobian.add(dofs[i], dofs[j], v);
            }
        }
    }
    return out;
}

LinearSystem apply_dirichlet(LinearSystem system, std::span<const DirichletBc> bcs) {
    if (system.eliminated) throw AssemblyError("double elimination of Dirichlet dofs");
    const int n = system.matrix.rows;

    std::vector<char> is_dirichlet(n, 0);
    std::vector<double> value(n, 0.0);
    for (const DirichletBc& bc : bcs) {
        if (bc.dof < 0 || bc.dof >= n)
            throw AssemblyError("Dirichlet dof " + std::to_string(bc.dof) + " out of range");
        if (is_dirichlet[bc.dof])
            throw AssemblyError("Dirichlet dof " + std::to_string(bc.dof) + " listed twice");
        is_dirichlet[bc.dof] = 1;
        value[bc.dof] = bc.value;
    }

    CsrMatrix& m = system.matrix;
    for (int r = 0; r < n; ++r) {
        if (is_dirichlet[r]) {
            for (int k = m.row_offsets[r]; k < m.row_offsets[r + 1]; ++k)
                m.values[k] = (m.col_indices[k] == r) ? 1.0 : 0.0;
            system.rhs[r] = value[r];
        } else {
            for (int k = m.row_offsets[r]; k < m.row_offsets[r + 1]; ++k) {
                const int c = m.col_indices[k];
                if (!is_dirichlet[c]) continue;
                system.rhs[r] -= m.values[k] * value[c];
                m.values[k] = 0.0;
            }
        }
    }

    system.eliminated = true;
    system.dirichlet.assign(bcs.begin(), bcs.end());
    return system;
}

}  // namespace brinkman
