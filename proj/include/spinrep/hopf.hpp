#ifndef SPINREP_HOPF_HPP
#define SPINREP_HOPF_HPP

#include "spinrep/spinfield.hpp"

namespace spinrep::hopf {

enum class QuadKind { Hopf, TildeA, AR };

/// Two readings of the Hopf coefficient in terms of psi; Codazzi is the
/// one validated against the R^3 Codazzi identity and is the default.
enum class HopfVariant {
  Codazzi,    // A = conj(psi2) d psi1 - psi1 d conj(psi2)
  AsPrinted,  // A = conj(psi2) d psi1 - psi2 d conj(psi2)
};

struct QuadDifferential {
  CField A;
  Mask mask;
  QuadKind kind = QuadKind::Hopf;
};

QuadDifferential hopf_A(const SpinorField& psi, const Grid2D& grid,
                        HopfVariant variant = HopfVariant::Codazzi);

/// Nil: tilde A = A + Z3^2/(2H+i);  SL(2,R)~: tilde A = A + 5 Z3^2 / (2(H-i)).
/// The base coefficient A is evaluated geometrically as <nabla_{f_z} f_z, N>
/// through the frame components and the ambient connection (the flat spinor
/// expression of hopf_A only matches it in R^3); the variant flag is accepted
/// for signature symmetry and ignored.
QuadDifferential tilde_A(const SpinorField& psi, const RField& H, liegeo::GroupTag group,
                         const Grid2D& grid, HopfVariant variant = HopfVariant::Codazzi);

/// A_AR = (H + i tau) tilde A.
QuadDifferential abresch_rosenberg(const QuadDifferential& tA, const RField& H, double tau);

/// max |dbar A| over valid interior samples.
double holomorphicity_residual(const QuadDifferential& qd, const Grid2D& grid);

struct GaussCodazzi {
  RField gauss;    // a_{z zbar} + U^2 - |A|^2 e^{-2a}
  CField codazzi;  // A_zbar - (U_z - a_z U) e^a
};
GaussCodazzi gauss_codazzi_residual(const RField& alpha, const RField& U, const CField& A,
                                    const Grid2D& grid);

}  // namespace spinrep::hopf

#endif
