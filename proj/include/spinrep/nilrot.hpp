#ifndef SPINREP_NILROT_HPP
#define SPINREP_NILROT_HPP

#include "spinrep/recon.hpp"

#include <functional>

namespace spinrep::nilrot {

/// Profile curve (u(s), v(s)) in the orbit half-plane u >= 0 of the
/// rotation action, metric du^2 + 4 dv^2/(4+u^2), unit speed, sampled
/// uniformly in arc length (pole endpoints included when closed).
/// sigma is the angle of the tangent against du (cos sigma = du/ds).
struct ProfileCurve {
  RField s, u, v, sigma;
  RField sigma_dot;  // exact d sigma/ds when known; empty -> finite differences
  double h = 0.0;    // uniform arc-length step
  bool closed_pole_to_pole = false;
  bool periodic = false;

  size_t size() const { return s.size(); }
  double length() const { return s.empty() ? 0.0 : s.back(); }
};

/// Integrates du/ds = cos sigma, dv/ds = (1/2) sqrt(4+u^2) sin sigma,
/// d sigma/ds = sin sigma / u from the regularized pole limit
/// sigma/u -> k (series start sigma = k s, u = s - k^2 s^3/6), stopping at
/// the second pole sigma = pi; the result is resampled to a uniform step
/// of roughly h.  Throws when u < 0 occurs or no closure before smax.
ProfileCurve cmc_profile(double k, double smax, double h);

/// Builds the unit-speed profile with prescribed sigma(s) on [0, L]:
/// u = int cos sigma, v = int (1/2) sqrt(4+u^2) sin sigma.  dsigma is the
/// exact derivative (stored for quadrature).  Throws when u <= 0 in the
/// interior.
ProfileCurve profile_from_sigma(const std::function<double(double)>& sigma,
                                const std::function<double(double)>& dsigma, double L, int n,
                                double u0 = 0.0);

/// E = (pi/8) int (sigma_dot - sin sigma/u)^2 sqrt(4u^2+u^4) ds + pi chi/2.
double spinor_energy_revolution(const ProfileCurve& p, int chi);

/// Readings of the closed-form W(H) for the CMC sphere family
///   W = 10 pi + pi/(2H^2) - pi C(H) (pi/2 - arctan((4H^2-1)/(4H))),
/// differing in the placement of H^3 in C(H).  Denominator is the reading
/// matching quadrature and the shrinking-sphere limit W -> 4 pi.
enum class WReading {
  Denominator,  // C = (1+4H^2)(3H^2 - 1/4) / (2 H^3)
  AsPrinted,    // C = (1+4H^2)(3H^2 - 1/4) H^3 / 2
};
double willmore_cmc_sphere(double H, WReading reading);

/// Surface of revolution sampled on a conformal band: xi is the conformal
/// arc coordinate (poles at xi -> -+infinity), w the angle.  e^{2 alpha} =
/// u^2 + u^4/4 along the band.
struct RevolutionSurface {
  Grid2D grid;               // xi along u-index, w periodic along v-index
  recon::FrameField frame;   // immersion in the unipotent model + Psi data
  SpinorField psi;           // generating spinor; psi.H carries measured H
  ZFactors Z;
  RField xi;                                // per-row coordinate
  RField s_row, u_row, v_row, sigma_row;    // profile values per row
  RField e2alpha_row;                       // u^2 + u^4/4 per row
  RField n3_row;                            // 2 cos sigma / sqrt(4+u^2)
};

/// Revolves a closed pole-to-pole profile.  Xi <= 0 selects the widest
/// symmetric band the profile sampling supports.
RevolutionSurface revolve_to_surface(const ProfileCurve& p, int ntheta, int nxi = 256,
                                     double Xi = 0.0);

/// Mean curvature measured through the frame equations, summarized over
/// the band window |xi| <= xi_window.
struct HMeasurement {
  double H = 0.0;       // median over the window
  double spread = 0.0;  // max |H - median| over the window
};
HMeasurement measure_H(const RevolutionSurface& surf, double xi_window);

/// Measured H of the CMC profile with pole slope k (profile + band with
/// default sampling).
double cmc_H_of_k(double k, double profile_h = 1e-4, int nxi = 768, int ntheta = 64);

/// Monotone bisection for the pole slope giving measured H = Htarget.
double k_for_H(double Htarget, double klo = 0.05, double khi = 8.0, double tol = 1e-10);

/// W = int (H^2 + Khat) dmu over the band, H the measured constant, Khat
/// from the curvature tensor along the tangent plane.
double willmore_quadrature(const ProfileCurve& p, const liegeo::LieAlgebra3& alg,
                           double* area = nullptr, double* H_out = nullptr, int nxi = 768,
                           int ntheta = 96);

/// Central difference d/d eps of spinor_energy_revolution under the normal
/// perturbation gamma + eps phi nu (nu the half-plane unit normal), with
/// phi = sin((shape+1) pi s / L).
double energy_first_variation(const ProfileCurve& p, double eps, int shape = 0);

/// Same with a caller-supplied perturbation profile phi (and phi').
double energy_first_variation(const ProfileCurve& p, double eps,
                              const std::function<double(double)>& phi,
                              const std::function<double(double)>& dphi);

/// The perturbed, re-parameterized profile itself (eps fixed).
ProfileCurve normal_perturb(const ProfileCurve& p, double eps,
                            const std::function<double(double)>& phi,
                            const std::function<double(double)>& dphi);

}  // namespace spinrep::nilrot

#endif
