#ifndef SPINREP_FUNCTIONALS_HPP
#define SPINREP_FUNCTIONALS_HPP

#include "spinrep/spinfield.hpp"

namespace spinrep::functionals {

/// Induced area element per sample (cell weights folded in) plus the Euler
/// characteristic when known.
struct SurfaceMeasure {
  RField dmu;
  int chi = 0;
  bool chi_known = false;
};

/// Quadrature weights: trapezoid (uniform weights on periodic directions,
/// half-weights at non-periodic edges), times du*dv.
RField quad_weights(const Grid2D& g);

/// dmu = e^{2 alpha} du dv per sample with e^alpha = |psi1|^2 + |psi2|^2.
SurfaceMeasure measure_from_spinor(const SpinorField& psi, const Grid2D& g, int chi = 0,
                                   bool chi_known = false);

/// E = integral of U V over the coordinate measure dx dy (not dmu).  The
/// imaginary part must vanish on closed surfaces; *open_domain is set when
/// the grid is not periodic in both directions.
cplx spinor_energy(const PotentialField& pot, const Grid2D& g, bool* open_domain = nullptr);

/// Nil: (1/4) int (H^2 + Khat/4 - 1/16) dmu;  SL(2,R)~: (1/4) int (H^2 +
/// (5/16) Khat - 1/4) dmu;  R^3: (1/4) int H^2 dmu.
double energy_geometric(const RField& H, const RField& Khat, const SurfaceMeasure& meas,
                        liegeo::GroupTag group);

/// W = int (H^2 + Khat) dmu.
double willmore(const RField& H, const RField& Khat, const SurfaceMeasure& meas);

/// E = (1/4) int ((k1 - k2)/2)^2 dmu + pi chi / 2; returns the two terms.
struct GaussBonnetSplit {
  double umbilic_defect = 0.0;
  double topological = 0.0;
};
GaussBonnetSplit gauss_bonnet_decomposition(const RField& kappa1, const RField& kappa2,
                                            const SurfaceMeasure& meas);

}  // namespace spinrep::functionals

#endif
