#include "spinrep/serial_ref.hpp"

#include <cmath>
#include <stdexcept>

namespace spinrep::serial {

namespace {

cplx sample_deriv(const CField& f, const Grid2D& g, int iu, int iv, int dir) {
  const int n = dir == 0 ? g.nu : g.nv;
  const double h = dir == 0 ? g.du : g.dv;
  const bool periodic = dir == 0 ? g.periodic_u : g.periodic_v;
  const int i = dir == 0 ? iu : iv;
  auto at = [&](int j) {
    return dir == 0 ? f[static_cast<size_t>(g.id(j, iv))] : f[static_cast<size_t>(g.id(iu, j))];
  };
  const double inv2h = 0.5 / h;
  if (periodic) return (at((i + 1) % n) - at((i + n - 1) % n)) * inv2h;
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h;
  if (i == n - 1) return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * inv2h;
  return (at(i + 1) - at(i - 1)) * inv2h;
}

CField directional(const CField& f, const Grid2D& g, int dir) {
  if (static_cast<int>(f.size()) != g.size())
    throw std::invalid_argument("derivative: field/grid dimension mismatch");
  CField out(f.size());
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv)
      out[static_cast<size_t>(g.id(iu, iv))] = sample_deriv(f, g, iu, iv, dir);
  return out;
}

}  // namespace

CField d_u(const CField& f, const Grid2D& g) { return directional(f, g, 0); }
CField d_v(const CField& f, const Grid2D& g) { return directional(f, g, 1); }

CField d_z(const CField& f, const Grid2D& g) {
  const CField fu = directional(f, g, 0), fv = directional(f, g, 1);
  CField out(f.size());
  const cplx I(0.0, 1.0);
  for (size_t i = 0; i < f.size(); ++i) out[i] = 0.5 * (fu[i] - I * fv[i]);
  return out;
}

CField d_zbar(const CField& f, const Grid2D& g) {
  const CField fu = directional(f, g, 0), fv = directional(f, g, 1);
  CField out(f.size());
  const cplx I(0.0, 1.0);
  for (size_t i = 0; i < f.size(); ++i) out[i] = 0.5 * (fu[i] + I * fv[i]);
  return out;
}

ZFactors factorize_Z(const SpinorField& psi) {
  const size_t n = psi.psi1.size();
  ZFactors Z;
  Z.Z1.resize(n);
  Z.Z2.resize(n);
  Z.Z3.resize(n);
  const cplx I(0.0, 1.0);
  for (size_t i = 0; i < n; ++i) {
    const cplx p1 = psi.psi1[i], p2b = std::conj(psi.psi2[i]);
    Z.Z1[i] = 0.5 * I * (p2b * p2b + p1 * p1);
    Z.Z2[i] = 0.5 * (p2b * p2b - p1 * p1);
    Z.Z3[i] = p1 * p2b;
  }
  return Z;
}

RField induced_metric(const SpinorField& psi) {
  RField ea(psi.psi1.size());
  for (size_t i = 0; i < ea.size(); ++i)
    ea[i] = std::norm(psi.psi1[i]) + std::norm(psi.psi2[i]);
  return ea;
}

PotentialField potentials(const SpinorField& psi, liegeo::GroupTag group, double mu) {
  using liegeo::GroupTag;
  const size_t n = psi.psi1.size();
  PotentialField pot;
  pot.group = group;
  pot.mu = mu;
  pot.U.resize(n);
  pot.V.resize(n);
  pot.mask = psi.mask;
  const cplx I(0.0, 1.0);

  double mu_eff = mu;
  if (group == GroupTag::Sol) mu_eff = -1.0;
  if (group == GroupTag::H2xR) mu_eff = 0.0;
  if (group == GroupTag::H3) mu_eff = 1.0;

  for (size_t i = 0; i < n; ++i) {
    const cplx p1 = psi.psi1[i], p2 = psi.psi2[i];
    const double a1 = std::norm(p1), a2 = std::norm(p2);
    const cplx halfHea = 0.5 * psi.H[i] * (a1 + a2);
    switch (group) {
      case GroupTag::R3:
        pot.U[i] = pot.V[i] = halfHea;
        break;
      case GroupTag::SU2:
        pot.U[i] = 0.5 * (psi.H[i] - I) * (a1 + a2);
        pot.V[i] = std::conj(pot.U[i]);
        break;
      case GroupTag::Nil:
        pot.U[i] = pot.V[i] = halfHea + 0.25 * I * (a2 - a1);
        break;
      case GroupTag::SL2R:
        pot.U[i] = halfHea + I * (0.5 * a1 - 0.75 * a2);
        pot.V[i] = halfHea + I * (0.75 * a1 - 0.5 * a2);
        break;
      case GroupTag::Sol:
        if (std::abs(p1) < 1e-12 || std::abs(p2) < 1e-12) {
          pot.U[i] = pot.V[i] = 0.0;
          pot.mask[i] = 0;
        } else {
          pot.U[i] = halfHea - 0.5 * std::conj(p2 * p2 * p1) / p1;
          pot.V[i] = halfHea + 0.5 * std::conj(p1 * p1 * p2) / p2;
        }
        break;
      default: {
        const double cp = 0.25 * (mu_eff + 1.0), cm = 0.25 * (mu_eff - 1.0);
        const bool needs_ratio = std::abs(cm) > 0.0;
        if (needs_ratio && (std::abs(p1) < 1e-12 || std::abs(p2) < 1e-12)) {
          pot.U[i] = pot.V[i] = 0.0;
          pot.mask[i] = 0;
        } else {
          const cplx r1 = needs_ratio ? std::conj(p2 * p2 * p1) / p1 : cplx{};
          const cplx r2 = needs_ratio ? std::conj(p1 * p1 * p2) / p2 : cplx{};
          pot.U[i] = halfHea + cp * a1 + cm * r1;
          pot.V[i] = halfHea - cp * a2 - cm * r2;
        }
        break;
      }
    }
  }
  return pot;
}

}  // namespace spinrep::serial
