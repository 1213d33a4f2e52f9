#ifndef BRINKMAN_ASSEMBLY_HPP
#define BRINKMAN_ASSEMBLY_HPP

#include <array>
#include <span>
#include <vector>

#include "brinkman/csr.hpp"
#include "brinkman/penalty.hpp"
#include "brinkman/spaces.hpp"

namespace brinkman {

/// Coupled saddle system over (velocity dofs, pressure dofs).
struct LinearSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    bool eliminated = false;
    std::vector<DirichletBc> dirichlet;  // recorded by apply_dirichlet
};

/// Global dofs of one triangle: 12 interleaved velocity dofs then 3 pressure
/// dofs in coupled numbering.
std::array<int, 15> element_dofs(const TaylorHoodSpace& space, int t);

/// Sparsity of the saddle system with full per-element coupling (the pattern
/// also covers the convection Jacobian) plus the pressure diagonal.
CsrMatrix build_saddle_pattern(const TaylorHoodSpace& space);

/// Penalized Stokes operator in symmetric saddle form:
///   [ nu A + M_psi   B^T ]      with A the vector P2 stiffness, M_psi the
///   [ B               0  ]      penalty mass matrix, B = -(q, div u).
/// The rhs is zero; the do-nothing outflow is natural. Degree-4 quadrature,
/// exact for every integrand in the form.
LinearSystem assemble_stokes(const TaylorHoodSpace& space, double nu, const PenaltyField& psi);

struct ConvectionContribution {
    std::vector<double> residual;  // ((grad u) u, w), velocity rows
    CsrMatrix jacobian;            // ((grad du) u, w) + ((grad u) du, w)
};

/// Galerkin convection term and its full Newton linearization at the given
/// velocity coefficients. Degree-5 quadrature (exact).
ConvectionContribution assemble_convection(const TaylorHoodSpace& space,
                                           std::span<const double> velocity);

/// Symmetric elimination of Dirichlet dofs: prescribed values move to the rhs,
/// rows and columns are zeroed, the diagonal is set to 1 and the rhs to the
/// prescribed value. Throws AssemblyError on double elimination.
LinearSystem apply_dirichlet(LinearSystem system, std::span<const DirichletBc> bcs);

/// Worker count for element loops: min(hardware, BRINKMAN_THREADS). Results
/// are bit-identical for any thread count (per-element work is merged in
/// fixed element order).
int assembly_thread_count();

}  // namespace brinkman

#endif
