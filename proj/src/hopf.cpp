#include "spinrep/hopf.hpp"

#include <cmath>
#include <stdexcept>

namespace spinrep::hopf {

QuadDifferential hopf_A(const SpinorField& psi, const Grid2D& g, HopfVariant variant) {
  psi.require_size(g);
  QuadDifferential qd;
  qd.kind = QuadKind::Hopf;
  qd.mask = psi.mask;
  const auto n = static_cast<size_t>(g.size());
  CField psi2bar(n);
  for (size_t i = 0; i < n; ++i) psi2bar[i] = std::conj(psi.psi2[i]);
  const CField dpsi1 = d_z(psi.psi1, g);
  const CField dpsi2bar = d_z(psi2bar, g);
  qd.A.resize(n);
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    const cplx lead = psi2bar[i] * dpsi1[i];
    qd.A[i] = variant == HopfVariant::Codazzi ? lead - psi.psi1[i] * dpsi2bar[i]
                                              : lead - psi.psi2[i] * dpsi2bar[i];
  }
  return qd;
}

QuadDifferential tilde_A(const SpinorField& psi, const RField& H, liegeo::GroupTag group,
                         const Grid2D& g, HopfVariant) {
  using liegeo::GroupTag;
  if (group != GroupTag::Nil && group != GroupTag::SL2R)
    throw std::invalid_argument("tilde_A: supported groups are Nil and SL2R");
  // In a curved ambient group the base coefficient must be the geometric one,
  // A = <nabla_{f_z} f_z, N>, including the connection terms; the flat spinor
  // expression of hopf_A agrees with it only in R^3.
  const auto alg = liegeo::weierstrass_algebra(group);
  const auto conn = liegeo::christoffel(alg);
  const ZFactors Z = factorize_Z(psi);
  const std::array<const CField*, 3> comp{&Z.Z1, &Z.Z2, &Z.Z3};
  std::array<CField, 3> dz;
  for (int m = 0; m < 3; ++m) dz[static_cast<size_t>(m)] = d_z(*comp[static_cast<size_t>(m)], g);
  QuadDifferential qd;
  qd.kind = QuadKind::TildeA;
  qd.mask = psi.mask;
  const auto n = static_cast<size_t>(g.size());
  qd.A.resize(n);
  const cplx I(0.0, 1.0);
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    const Eigen::Vector3d tu{2.0 * Z.Z1[i].real(), 2.0 * Z.Z2[i].real(), 2.0 * Z.Z3[i].real()};
    const Eigen::Vector3d tv{-2.0 * Z.Z1[i].imag(), -2.0 * Z.Z2[i].imag(),
                             -2.0 * Z.Z3[i].imag()};
    Eigen::Vector3d nn = tu.cross(tv);
    const double norm = nn.norm();
    if (norm < 1e-14) {
      qd.A[i] = 0.0;
      qd.mask[i] = 0;
      continue;
    }
    nn /= norm;
    cplx acc = 0.0;
    for (int m = 0; m < 3; ++m) {
      cplx cov = dz[static_cast<size_t>(m)][i];
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          cov += conn.gamma[m][j][k] * (*comp[static_cast<size_t>(j)])[i] *
                 (*comp[static_cast<size_t>(k)])[i];
      acc += cov * nn[m];
    }
    const cplx z3sq = Z.Z3[i] * Z.Z3[i];
    qd.A[i] = group == GroupTag::Nil ? acc + z3sq / (2.0 * H[i] + I)
                                     : acc + 5.0 * z3sq / (2.0 * (H[i] - I));
  }
  return qd;
}

QuadDifferential abresch_rosenberg(const QuadDifferential& tA, const RField& H, double tau) {
  if (tA.kind != QuadKind::TildeA)
    throw std::invalid_argument("abresch_rosenberg: input must be a tilde-A differential");
  QuadDifferential qd = tA;
  qd.kind = QuadKind::AR;
  const cplx I(0.0, 1.0);
  const auto n = tA.A.size();
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    qd.A[i] = (H[i] + I * tau) * tA.A[i];
  }
  return qd;
}

double holomorphicity_residual(const QuadDifferential& qd, const Grid2D& g) {
  const CField r = d_zbar(qd.A, g);
  return masked_max_abs(r, qd.mask, g, /*interior_only=*/true);
}

GaussCodazzi gauss_codazzi_residual(const RField& alpha, const RField& U, const CField& A,
                                    const Grid2D& g) {
  const auto n = static_cast<size_t>(g.size());
  CField ac(alpha.begin(), alpha.end()), Uc(U.begin(), U.end());
  const CField az = d_z(ac, g);
  const CField azb = d_zbar(az, g);
  const CField Uz = d_z(Uc, g);
  const CField Azb = d_zbar(A, g);
  GaussCodazzi res;
  res.gauss.resize(n);
  res.codazzi.resize(n);
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    res.gauss[i] = std::real(azb[i]) + U[i] * U[i] - std::norm(A[i]) * std::exp(-2.0 * alpha[i]);
    res.codazzi[i] = Azb[i] - (Uz[i] - az[i] * U[i]) * std::exp(alpha[i]);
  }
  return res;
}

}  // namespace spinrep::hopf
