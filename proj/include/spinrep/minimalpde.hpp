#ifndef SPINREP_MINIMALPDE_HPP
#define SPINREP_MINIMALPDE_HPP

#include "spinrep/spinfield.hpp"

namespace spinrep::minimalpde {

/// Reading of the first-order minimal-surface system.  DiracConsistent is
/// the H = 0 specialization of the general potentials and is the default;
/// AsPrinted keeps the alternative spinor indexing for Nil and SL(2,R)~
/// behind this flag (for Sol and G_mu the two coincide).
enum class SystemForm { AsPrinted, DiracConsistent };

struct MinimalSystem {
  liegeo::GroupTag group = liegeo::GroupTag::Nil;
  double mu = 0.0;
  SystemForm form = SystemForm::DiracConsistent;
};

/// r1 = d psi2 - rhs2(psi), r2 = -dbar psi1 + rhs1-term, in the same sign
/// convention as dirac_residual; the dirac-consistent form is identically
/// dirac_residual(psi, potentials(psi, group, H = 0)).
DiracResidual minimal_residual(const SpinorField& psi, const MinimalSystem& sys, const Grid2D& g);

struct MinimalReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double ea_min = 0.0, ea_max = 0.0;  // range of e^alpha over the final field
  std::vector<double> history;
};

/// Damped Picard iteration in Poisson form: each first-order equation is
/// differentiated once and the resulting (1/4) Lap psi_k = rhs is solved
/// with Dirichlet data taken from the seed boundary.  Non-periodic grids
/// only.  Throws std::domain_error when the system's domain restriction
/// (psi_1 psi_2 != 0 for Sol / G_mu ratios) is violated on the seed.
SpinorField minimal_solve(const SpinorField& seed, const MinimalSystem& sys, const Grid2D& g,
                          double tol, MinimalReport* report = nullptr, double damping = 0.5,
                          int max_iter = 200);

struct MuStep {
  double mu = 0.0;
  SpinorField psi;
  MinimalReport report;
};

/// Continuation in mu for the G_mu family; each solution seeds the next
/// value.  On breakdown the last good step carries converged = false and
/// the sweep stops there.
std::vector<MuStep> mu_sweep(const SpinorField& psi0, const std::vector<double>& mus,
                             const Grid2D& g, double tol,
                             SystemForm form = SystemForm::DiracConsistent);

}  // namespace spinrep::minimalpde

#endif
