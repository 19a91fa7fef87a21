#ifndef SPINREP_TEST_HELPERS_HPP
#define SPINREP_TEST_HELPERS_HPP

#include "spinrep/nilrot.hpp"
#include "spinrep/spinfield.hpp"

#include <cmath>
#include <random>

namespace spinrep::testing {

// Round sphere of radius R in the stereographic chart: psi is the standard
// Gauss-map spinor, H = 1/R, e^alpha = 2R/(1+|z|^2).
inline SpinorField sphere_spinor(double R, const Grid2D& g) {
  SpinorField psi;
  const auto n = static_cast<size_t>(g.size());
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H.assign(n, 1.0 / R);
  psi.mask.assign(n, 1);
  const cplx phase = std::sqrt(2.0 * R) * std::polar(1.0, M_PI / 4.0);
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const cplx z = g.z(iu, iv);
      const double d = 1.0 + std::norm(z);
      const auto i = static_cast<size_t>(g.id(iu, iv));
      psi.psi1[i] = phase * std::conj(z) / d;
      psi.psi2[i] = phase / d;
    }
  return psi;
}

// The same sphere in the exponential chart z = exp(zeta): periodic in
// Im zeta, e^alpha = R / cosh(Re zeta).  Closed-surface quadrature in this
// chart is spectrally accurate.
inline SpinorField mercator_sphere(double R, const Grid2D& g) {
  SpinorField psi;
  const auto n = static_cast<size_t>(g.size());
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H.assign(n, 1.0 / R);
  psi.mask.assign(n, 1);
  const cplx phase = std::sqrt(2.0 * R) * std::polar(1.0, M_PI / 4.0);
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const cplx zeta = g.z(iu, iv);
      const cplx z = std::exp(zeta);
      const double d = 1.0 + std::norm(z);
      const auto i = static_cast<size_t>(g.id(iu, iv));
      psi.psi1[i] = phase * std::conj(z) / d * std::exp(0.5 * zeta);
      psi.psi2[i] = phase / d * std::exp(0.5 * std::conj(zeta));
    }
  return psi;
}

// Circular cylinder of radius R: |A| = 1/(4R) and H = -1/(2R) with this
// orientation; u runs along the circumference.
inline SpinorField cylinder_spinor(double R, const Grid2D& g) {
  SpinorField psi;
  const auto n = static_cast<size_t>(g.size());
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H.assign(n, -0.5 / R);
  psi.mask.assign(n, 1);
  const cplx I(0.0, 1.0);
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const double u = g.origin.real() + iu * g.du;
      const cplx ph = std::exp(-I * u / (2.0 * R));
      const auto i = static_cast<size_t>(g.id(iu, iv));
      psi.psi1[i] = -I / std::sqrt(2.0) * ph;
      psi.psi2[i] = 1.0 / std::sqrt(2.0) * ph;
    }
  return psi;
}

// Enneper's minimal surface of order m, Weierstrass data (f, g) = (1, z^m).
// Order 1 is the classical surface (all fields are then quadratic
// polynomials, which every second-order stencil reproduces exactly); order 2
// is used for convergence-order measurements.
inline SpinorField enneper_spinor(const Grid2D& g, int order = 1) {
  SpinorField psi;
  const auto n = static_cast<size_t>(g.size());
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H.assign(n, 0.0);
  psi.mask.assign(n, 1);
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const auto i = static_cast<size_t>(g.id(iu, iv));
      psi.psi1[i] = 1.0;
      psi.psi2[i] = std::pow(std::conj(g.z(iu, iv)), order);
    }
  return psi;
}

inline SpinorField random_spinor(const Grid2D& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  SpinorField psi;
  const auto n = static_cast<size_t>(g.size());
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H.resize(n);
  psi.mask.assign(n, 1);
  for (size_t i = 0; i < n; ++i) {
    psi.psi1[i] = {U(rng), U(rng)};
    psi.psi2[i] = {U(rng), U(rng)};
    psi.H[i] = U(rng);
  }
  return psi;
}

// Pendulum oracle for the one-dimensional reduction u_xx + 4 sinh u = 0:
// RK4 with u(0) = a, u'(0) = 0.  Returns u sampled at the n points x_j = j*h;
// the derivative samples are stored in *du when requested (used to quotient
// out the translation zero mode when comparing periodic orbits).
inline std::vector<double> pendulum_orbit(double a, double h, int n,
                                          std::vector<double>* du = nullptr) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  if (du) du->clear();
  double u = a, w = 0.0;
  auto acc = [](double uu) { return -4.0 * std::sinh(uu); };
  const int sub = 64;  // oversample so the oracle error is negligible
  const double dt = h / sub;
  for (int j = 0; j < n; ++j) {
    out.push_back(u);
    if (du) du->push_back(w);
    for (int m = 0; m < sub; ++m) {
      const double k1u = w, k1w = acc(u);
      const double k2u = w + 0.5 * dt * k1w, k2w = acc(u + 0.5 * dt * k1u);
      const double k3u = w + 0.5 * dt * k2w, k3w = acc(u + 0.5 * dt * k2u);
      const double k4u = w + dt * k3w, k4w = acc(u + dt * k3u);
      u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    }
  }
  return out;
}

// Period of the pendulum orbit starting at (a, 0): integrate until u' returns
// to zero twice with the starting sign of u recovered.
inline double pendulum_period(double a) {
  double u = a, w = 0.0, t = 0.0;
  const double dt = 1e-5;
  auto acc = [](double uu) { return -4.0 * std::sinh(uu); };
  int crossings = 0;
  double wprev = 0.0;
  for (int step = 0; step < 40000000; ++step) {
    const double k1u = w, k1w = acc(u);
    const double k2u = w + 0.5 * dt * k1w, k2w = acc(u + 0.5 * dt * k1u);
    const double k3u = w + 0.5 * dt * k2w, k3w = acc(u + 0.5 * dt * k2u);
    const double k4u = w + dt * k3w, k4w = acc(u + dt * k3u);
    u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    wprev = w;
    w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    t += dt;
    if (step > 0 && wprev != 0.0 && ((wprev < 0.0) != (w < 0.0))) {
      ++crossings;
      if (crossings == 2) {
        // linear interpolation of the crossing time
        return t - dt * w / (w - wprev) * 1.0;
      }
    }
  }
  return t;
}

// Smooth random pole-to-pole angle profile: sigma(s) = pi s / L + even-mode
// sine perturbations (even modes preserve the closure symmetry).
inline nilrot::ProfileCurve random_pole_profile(double L, std::mt19937_64& rng, int n = 4000,
                                                double amp = 0.2) {
  std::uniform_real_distribution<double> U(-amp, amp);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double a2 = U(rng), a4 = U(rng), a6 = 0.5 * U(rng);
    auto sig = [&](double s) {
      return M_PI * s / L + a2 * std::sin(2.0 * M_PI * s / L) +
             a4 * std::sin(4.0 * M_PI * s / L) + a6 * std::sin(6.0 * M_PI * s / L);
    };
    auto dsig = [&](double s) {
      return M_PI / L +
             2.0 * M_PI / L * a2 * std::cos(2.0 * M_PI * s / L) +
             4.0 * M_PI / L * a4 * std::cos(4.0 * M_PI * s / L) +
             6.0 * M_PI / L * a6 * std::cos(6.0 * M_PI * s / L);
    };
    try {
      return nilrot::profile_from_sigma(sig, dsig, L, n);
    } catch (const std::exception&) {
      continue;  // u dipped below zero; redraw
    }
  }
  throw std::runtime_error("random_pole_profile: no admissible draw");
}

// Rebuild the tangent field of a euclidean FrameField from the reconstructed
// coordinates themselves (finite differences of the translation-model chart),
// so that curvature read from it reflects the full reconstruction error
// rather than the analytic input samples.
inline recon::FrameField refit_frame_r3(const recon::FrameField& ff, const Grid2D& g) {
  recon::FrameField out = ff;
  const auto n = static_cast<size_t>(g.size());
  std::array<CField, 3> coord;
  for (auto& c : coord) c.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d x = liegeo::chart_coords(ff.f[i]);
    for (int m = 0; m < 3; ++m) coord[static_cast<size_t>(m)][i] = x[m];
  }
  for (int m = 0; m < 3; ++m) {
    out.Psi.comp[static_cast<size_t>(m)] = d_z(coord[static_cast<size_t>(m)], g);
    out.PsiStar.comp[static_cast<size_t>(m)] = d_zbar(coord[static_cast<size_t>(m)], g);
  }
  return out;
}

inline double convergence_order(double coarse, double fine) {
  return std::log2(coarse / fine);
}

}  // namespace spinrep::testing

#endif
