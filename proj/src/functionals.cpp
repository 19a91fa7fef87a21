#include "spinrep/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace spinrep::functionals {

RField quad_weights(const Grid2D& g) {
  RField w(static_cast<size_t>(g.size()));
  for (int iu = 0; iu < g.nu; ++iu) {
    const double wu = g.periodic_u || (iu > 0 && iu < g.nu - 1) ? 1.0 : 0.5;
    for (int iv = 0; iv < g.nv; ++iv) {
      const double wv = g.periodic_v || (iv > 0 && iv < g.nv - 1) ? 1.0 : 0.5;
      w[static_cast<size_t>(g.id(iu, iv))] = wu * wv * g.du * g.dv;
    }
  }
  return w;
}

SurfaceMeasure measure_from_spinor(const SpinorField& psi, const Grid2D& g, int chi,
                                   bool chi_known) {
  psi.require_size(g);
  SurfaceMeasure meas;
  meas.chi = chi;
  meas.chi_known = chi_known;
  const RField w = quad_weights(g);
  meas.dmu.resize(w.size());
  for (size_t i = 0; i < w.size(); ++i) {
    const double ea = std::norm(psi.psi1[i]) + std::norm(psi.psi2[i]);
    meas.dmu[i] = ea * ea * w[i];
  }
  return meas;
}

cplx spinor_energy(const PotentialField& pot, const Grid2D& g, bool* open_domain) {
  if (static_cast<int>(pot.U.size()) != g.size())
    throw std::invalid_argument("spinor_energy: field/grid dimension mismatch");
  if (open_domain) *open_domain = !(g.periodic_u && g.periodic_v);
  const RField w = quad_weights(g);
  cplx e{};
  for (size_t i = 0; i < w.size(); ++i)
    if (pot.mask[i]) e += pot.U[i] * pot.V[i] * w[i];
  return e;
}

double energy_geometric(const RField& H, const RField& Khat, const SurfaceMeasure& meas,
                        liegeo::GroupTag group) {
  using liegeo::GroupTag;
  if (H.size() != meas.dmu.size() || Khat.size() != meas.dmu.size())
    throw std::invalid_argument("energy_geometric: field size mismatch");
  double e = 0.0;
  for (size_t i = 0; i < meas.dmu.size(); ++i) {
    double integrand;
    switch (group) {
      case GroupTag::R3:
        integrand = H[i] * H[i];
        break;
      case GroupTag::Nil:
        integrand = H[i] * H[i] + 0.25 * Khat[i] - 1.0 / 16.0;
        break;
      case GroupTag::SL2R:
        integrand = H[i] * H[i] + (5.0 / 16.0) * Khat[i] - 0.25;
        break;
      default:
        throw std::invalid_argument("energy_geometric: unsupported group");
    }
    e += integrand * meas.dmu[i];
  }
  return 0.25 * e;
}

double willmore(const RField& H, const RField& Khat, const SurfaceMeasure& meas) {
  if (H.size() != meas.dmu.size() || Khat.size() != meas.dmu.size())
    throw std::invalid_argument("willmore: field size mismatch");
  double w = 0.0;
  for (size_t i = 0; i < meas.dmu.size(); ++i)
    w += (H[i] * H[i] + Khat[i]) * meas.dmu[i];
  return w;
}

GaussBonnetSplit gauss_bonnet_decomposition(const RField& kappa1, const RField& kappa2,
                                            const SurfaceMeasure& meas) {
  if (!meas.chi_known)
    throw std::invalid_argument("gauss_bonnet_decomposition: Euler characteristic unknown");
  if (kappa1.size() != meas.dmu.size() || kappa2.size() != meas.dmu.size())
    throw std::invalid_argument("gauss_bonnet_decomposition: field size mismatch");
  GaussBonnetSplit split;
  for (size_t i = 0; i < meas.dmu.size(); ++i) {
    const double d = 0.5 * (kappa1[i] - kappa2[i]);
    split.umbilic_defect += d * d * meas.dmu[i];
  }
  split.umbilic_defect *= 0.25;
  split.topological = 0.5 * M_PI * meas.chi;
  return split;
}

}  // namespace spinrep::functionals
