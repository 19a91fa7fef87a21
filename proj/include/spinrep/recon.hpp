#ifndef SPINREP_RECON_HPP
#define SPINREP_RECON_HPP

#include "spinrep/liegeo.hpp"
#include "spinrep/spinfield.hpp"

#include <array>
#include <string>

namespace spinrep::recon {

/// Complex frame-vector samples: three complex components per grid sample.
struct FrameVectorField {
  std::array<CField, 3> comp;
  void resize(size_t n) {
    for (auto& c : comp) c.resize(n);
  }
  size_t size() const { return comp[0].size(); }
};

/// Reconstructed immersion: group-element samples plus the tangent data
/// Psi = Z1 e1 + Z2 e2 + Z3 e3 and its frame conjugate Psi*.
struct FrameField {
  std::vector<liegeo::GroupElement> f;
  FrameVectorField Psi;   // Z components
  FrameVectorField PsiStar;
  Mask mask;
};

FrameVectorField frame_vectors_from_Z(const ZFactors& Z);

/// Integrates f_z = f Psi along a row-then-column spanning tree with one
/// midpoint-evaluated group exponential per edge; f(0,0) = f0.
FrameField frame_integrate(const ZFactors& Z, const liegeo::LieAlgebra3& alg,
                           const liegeo::GroupElement& f0, const Grid2D& grid,
                           const Mask& mask);

/// Max deviation from the identity of the edge-exponential product around
/// each grid plaquette (the discrete zero-curvature diagnostic).
RField plaquette_holonomy(const ZFactors& Z, const liegeo::LieAlgebra3& alg, const Grid2D& grid);

struct DerivationalResidual {
  FrameVectorField r_minus;  // d Psi* - dbar Psi + nabla_Psi Psi* - nabla_Psi* Psi
  FrameVectorField r_plus;   // second equation minus e^{2a} H n
};
DerivationalResidual derivational_residual(const FrameField& ff, const liegeo::LieAlgebra3& alg,
                                           const Grid2D& grid, const RField& H);

/// H = <d Psi* + dbar Psi + nabla_Psi Psi* + nabla_Psi* Psi, n> / e^{2a};
/// the imaginary part (a residual diagnostic) goes to imag_residual.
RField mean_curvature(const FrameField& ff, const liegeo::LieAlgebra3& alg, const Grid2D& grid,
                      RField* imag_residual = nullptr);

/// Unit normal as the frame cross product of the tangents 2 Re Psi and -2 Im Psi.
struct NormalField {
  RField n1, n2, n3;
  Mask mask;
};
NormalField unit_normal(const FrameField& ff);

double frame_max_abs(const FrameVectorField& f, const Mask& mask, const Grid2D& g,
                     bool interior_only = true);

/// Wavefront OBJ export; faces touching masked samples are omitted.
void export_mesh(const FrameField& ff, const Grid2D& grid, const std::string& path);

}  // namespace spinrep::recon

#endif
