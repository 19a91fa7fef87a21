#ifndef SPINREP_SPINFIELD_HPP
#define SPINREP_SPINFIELD_HPP

#include "spinrep/grid.hpp"
#include "spinrep/liegeo.hpp"

namespace spinrep {

/// Complex derivative stencils d = (d_u - i d_v)/2, dbar = (d_u + i d_v)/2.
/// Central differences in the interior, second-order one-sided at
/// non-periodic edges, wrap-around on periodic directions.
CField d_u(const CField& f, const Grid2D& g);
CField d_v(const CField& f, const Grid2D& g);
CField d_z(const CField& f, const Grid2D& g);
CField d_zbar(const CField& f, const Grid2D& g);

/// Generating spinor samples.  H is stored per sample; mask marks samples
/// where the field (or a derived potential) is defined.
struct SpinorField {
  CField psi1, psi2;
  RField H;
  Mask mask;

  static SpinorField constant(const Grid2D& g, cplx p1, cplx p2, double h = 0.0);
  void require_size(const Grid2D& g) const;
};

struct PotentialField {
  CField U, V;
  Mask mask;
  liegeo::GroupTag group;
  double mu = 0.0;
};

struct ZFactors {
  CField Z1, Z2, Z3;
};

ZFactors factorize_Z(const SpinorField& psi);

/// Invert the factorization: psi1^2 = -Z2 - i Z1, conj(psi2) = Z3/psi1.
/// The sqrt branch is chosen continuously along grid rows.
SpinorField spinor_from_Z(const ZFactors& Z, const Grid2D& g, const RField& H);

/// e^alpha = |psi1|^2 + |psi2|^2; samples below 1e-12 are flagged in the
/// returned mask (degenerate immersion).
RField induced_metric(const SpinorField& psi, Mask* degenerate = nullptr);

PotentialField potentials(const SpinorField& psi, liegeo::GroupTag group, double mu = 0.0);

/// r1 = d psi2 + U psi1,  r2 = -dbar psi1 + V psi2.
struct DiracResidual {
  CField r1, r2;
  Mask mask;
};
DiracResidual dirac_residual(const SpinorField& psi, const PotentialField& pot, const Grid2D& g);

/// psi* = (-conj(psi2), conj(psi1)); applying twice gives -psi.
SpinorField quaternion_flip(const SpinorField& psi);

double masked_max_abs(const CField& f, const Mask& mask, const Grid2D& g, bool interior_only = true);

}  // namespace spinrep

#endif
