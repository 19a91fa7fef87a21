#ifndef SPINREP_SHG_HPP
#define SPINREP_SHG_HPP

#include "spinrep/spinfield.hpp"

namespace spinrep::shg {

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;           // final max-norm residual
  double residual_imag = 0.0;      // imaginary part, for complex solves
  std::vector<double> history;     // max-norm residual per iteration
};

/// Laplacian discretization used by the Newton solvers.  FivePoint is the
/// standard O(h^2) stencil; Spectral builds dense Fourier differentiation
/// matrices (periodic directions only) and is meant for small grids where
/// discretization error must be negligible.
enum class Discretization { FivePoint, Spectral };

/// Newton solve of (1/4) Lap u + sinh u = 0 on a doubly periodic grid.
RField sinh_gordon_solve(const RField& seed, const Grid2D& g, double tol,
                         SolveReport* report = nullptr,
                         Discretization disc = Discretization::FivePoint);

/// Newton solve of (1/4) Lap v + e^{2v} - |B|^2 e^{-2v} = 0; v may be
/// complex (the Jacobian is holomorphic in v).  B must be nonvanishing.
CField berdinsky_solve(const CField& seed, const CField& B, const Grid2D& g, double tol,
                       SolveReport* report = nullptr,
                       Discretization disc = Discretization::FivePoint);

/// Pointwise |(1/4) Lap v + e^{2v} - |B|^2 e^{-2v}| with the five-point
/// stencil (the same discrete operator the solvers drive to zero).
RField compatibility_residual(const CField& v, const CField& B, const Grid2D& g);

/// Five-point discrete Laplacian (central second differences, periodic
/// wrap; second-order one-sided at non-periodic edges).
RField laplacian5(const RField& f, const Grid2D& g);
CField laplacian5(const CField& f, const Grid2D& g);

/// Integrates the linear systems psi_z = P psi, psi_zbar = Q psi with
///   P = [[v_z, B e^{-v}], [-e^v, 0]],  Q = [[0, e^v], [-conj(B) e^{-v}, v_zbar]]
/// (H constant, so the H-derivative entries vanish) along a column-then-row
/// spanning tree with midpoint matrix exponentials; psi(0,0) = psi0.
SpinorField nil_lax_integrate(const CField& v, const CField& B, double H, const Grid2D& g,
                              cplx psi0_1, cplx psi0_2);

/// Per-cell deviation from the identity of the plaquette product of the
/// four edge exponentials of the (P, Q) systems; O(h^3) when (v, B) solves
/// the compatibility equation.
RField lax_plaquette_holonomy(const CField& v, const CField& B, const Grid2D& g);

}  // namespace spinrep::shg

#endif
