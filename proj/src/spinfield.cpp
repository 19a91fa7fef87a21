#include "spinrep/spinfield.hpp"

#include <cmath>
#include <stdexcept>

namespace spinrep {

namespace {

// one direction of a finite-difference derivative; dir = 0 for u, 1 for v
CField directional(const CField& f, const Grid2D& g, int dir) {
  if (static_cast<int>(f.size()) != g.size())
    throw std::invalid_argument("derivative: field/grid dimension mismatch");
  CField out(f.size());
  const int n = dir == 0 ? g.nu : g.nv;
  const double h = dir == 0 ? g.du : g.dv;
  const bool periodic = dir == 0 ? g.periodic_u : g.periodic_v;
  const double inv2h = 0.5 / h;

#pragma omp parallel for
  for (int iu = 0; iu < g.nu; ++iu) {
    for (int iv = 0; iv < g.nv; ++iv) {
      const int i = dir == 0 ? iu : iv;
      auto at = [&](int j) {
        return dir == 0 ? f[static_cast<size_t>(g.id(j, iv))] : f[static_cast<size_t>(g.id(iu, j))];
      };
      cplx d;
      if (periodic) {
        d = (at((i + 1) % n) - at((i + n - 1) % n)) * inv2h;
      } else if (i == 0) {
        d = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h;
      } else if (i == n - 1) {
        d = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * inv2h;
      } else {
        d = (at(i + 1) - at(i - 1)) * inv2h;
      }
      out[static_cast<size_t>(g.id(iu, iv))] = d;
    }
  }
  return out;
}

}  // namespace

CField d_u(const CField& f, const Grid2D& g) { return directional(f, g, 0); }
CField d_v(const CField& f, const Grid2D& g) { return directional(f, g, 1); }

CField d_z(const CField& f, const Grid2D& g) {
  CField fu = d_u(f, g), fv = d_v(f, g);
  const cplx I(0.0, 1.0);
#pragma omp parallel for
  for (int i = 0; i < g.size(); ++i)
    fu[static_cast<size_t>(i)] = 0.5 * (fu[static_cast<size_t>(i)] - I * fv[static_cast<size_t>(i)]);
  return fu;
}

CField d_zbar(const CField& f, const Grid2D& g) {
  CField fu = d_u(f, g), fv = d_v(f, g);
  const cplx I(0.0, 1.0);
#pragma omp parallel for
  for (int i = 0; i < g.size(); ++i)
    fu[static_cast<size_t>(i)] = 0.5 * (fu[static_cast<size_t>(i)] + I * fv[static_cast<size_t>(i)]);
  return fu;
}

SpinorField SpinorField::constant(const Grid2D& g, cplx p1, cplx p2, double h) {
  SpinorField psi;
  psi.psi1.assign(static_cast<size_t>(g.size()), p1);
  psi.psi2.assign(static_cast<size_t>(g.size()), p2);
  psi.H.assign(static_cast<size_t>(g.size()), h);
  psi.mask = full_mask(g);
  return psi;
}

void SpinorField::require_size(const Grid2D& g) const {
  const auto n = static_cast<size_t>(g.size());
  if (psi1.size() != n || psi2.size() != n || H.size() != n || mask.size() != n)
    throw std::invalid_argument("SpinorField: field/grid dimension mismatch");
}

ZFactors factorize_Z(const SpinorField& psi) {
  const size_t n = psi.psi1.size();
  ZFactors Z;
  Z.Z1.resize(n);
  Z.Z2.resize(n);
  Z.Z3.resize(n);
  const cplx I(0.0, 1.0);
#pragma omp parallel for
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const cplx p1 = psi.psi1[static_cast<size_t>(i)];
    const cplx p2b = std::conj(psi.psi2[static_cast<size_t>(i)]);
    Z.Z1[static_cast<size_t>(i)] = 0.5 * I * (p2b * p2b + p1 * p1);
    Z.Z2[static_cast<size_t>(i)] = 0.5 * (p2b * p2b - p1 * p1);
    Z.Z3[static_cast<size_t>(i)] = p1 * p2b;
  }
  return Z;
}

SpinorField spinor_from_Z(const ZFactors& Z, const Grid2D& g, const RField& H) {
  SpinorField psi;
  const auto n = static_cast<size_t>(g.size());
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H = H;
  psi.mask.assign(n, 1);
  const cplx I(0.0, 1.0);
  for (int iu = 0; iu < g.nu; ++iu) {
    cplx prev{};
    bool have_prev = false;
    if (iu > 0) {  // keep the branch continuous across rows too
      prev = psi.psi1[static_cast<size_t>(g.id(iu - 1, 0))];
      have_prev = std::abs(prev) > 0.0;
    }
    for (int iv = 0; iv < g.nv; ++iv) {
      const auto i = static_cast<size_t>(g.id(iu, iv));
      const cplx p1sq = -Z.Z2[i] - I * Z.Z1[i];
      cplx p1 = std::sqrt(p1sq);
      if (have_prev && std::real(p1 * std::conj(prev)) < 0.0) p1 = -p1;
      cplx p2;
      if (std::abs(p1) > 1e-14) {
        p2 = std::conj(Z.Z3[i] / p1);
      } else {
        const cplx p2bsq = Z.Z2[i] - I * Z.Z1[i];
        p2 = std::conj(std::sqrt(p2bsq));
        psi.mask[i] = std::abs(p2) > 1e-14 ? psi.mask[i] : 0;
      }
      psi.psi1[i] = p1;
      psi.psi2[i] = p2;
      if (std::abs(p1) > 1e-14) {
        prev = p1;
        have_prev = true;
      }
    }
  }
  return psi;
}

RField induced_metric(const SpinorField& psi, Mask* degenerate) {
  const size_t n = psi.psi1.size();
  RField ea(n);
  if (degenerate) degenerate->assign(n, 0);
#pragma omp parallel for
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const auto k = static_cast<size_t>(i);
    ea[k] = std::norm(psi.psi1[k]) + std::norm(psi.psi2[k]);
    if (degenerate && ea[k] < 1e-12) (*degenerate)[k] = 1;
  }
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

#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    const cplx p1 = psi.psi1[i], p2 = psi.psi2[i];
    const double a1 = std::norm(p1), a2 = std::norm(p2);
    const double ea = a1 + a2;
    const double H = psi.H[i];
    const cplx halfHea = 0.5 * H * ea;
    switch (group) {
      case GroupTag::R3:
        pot.U[i] = pot.V[i] = halfHea;
        break;
      case GroupTag::SU2:
        pot.U[i] = 0.5 * (H - I) * ea;
        pot.V[i] = std::conj(pot.U[i]);
        break;
      case GroupTag::Nil:
        pot.U[i] = pot.V[i] = halfHea + 0.25 * I * (a2 - a1);
        break;
      case GroupTag::SL2R:
        pot.U[i] = halfHea + I * (0.5 * a1 - 0.75 * a2);
        pot.V[i] = halfHea + I * (0.75 * a1 - 0.5 * a2);
        break;
      case GroupTag::Sol: {
        // defined on D = { Z3 != 0 }; outside, U = V = 0 with the mask cleared
        if (std::abs(p1) < 1e-12 || std::abs(p2) < 1e-12) {
          pot.U[i] = pot.V[i] = 0.0;
          pot.mask[i] = 0;
        } else {
          const cplx p1b = std::conj(p1), p2b = std::conj(p2);
          pot.U[i] = halfHea - 0.5 * p2b * p2b * p1b / p1;
          pot.V[i] = halfHea + 0.5 * p1b * p1b * p2b / p2;
        }
        break;
      }
      case GroupTag::Gmu:
      case GroupTag::H2xR:
      case GroupTag::H3: {
        const double cp = 0.25 * (mu_eff + 1.0), cm = 0.25 * (mu_eff - 1.0);
        const bool needs_ratio = std::abs(cm) > 0.0;
        if (needs_ratio && (std::abs(p1) < 1e-12 || std::abs(p2) < 1e-12)) {
          pot.U[i] = pot.V[i] = 0.0;
          pot.mask[i] = 0;
        } else {
          const cplx p1b = std::conj(p1), p2b = std::conj(p2);
          const cplx r1 = needs_ratio ? p2b * p2b * p1b / p1 : cplx{};
          const cplx r2 = needs_ratio ? p1b * p1b * p2b / p2 : cplx{};
          pot.U[i] = halfHea + cp * a1 + cm * r1;
          pot.V[i] = halfHea - cp * a2 - cm * r2;
        }
        break;
      }
    }
  }
  return pot;
}

DiracResidual dirac_residual(const SpinorField& psi, const PotentialField& pot, const Grid2D& g) {
  psi.require_size(g);
  DiracResidual res;
  const CField dpsi2 = d_z(psi.psi2, g);
  const CField dbpsi1 = d_zbar(psi.psi1, g);
  const auto n = static_cast<size_t>(g.size());
  res.r1.resize(n);
  res.r2.resize(n);
  res.mask.resize(n);
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    res.r1[i] = dpsi2[i] + pot.U[i] * psi.psi1[i];
    res.r2[i] = -dbpsi1[i] + pot.V[i] * psi.psi2[i];
    res.mask[i] = psi.mask[i] && pot.mask[i];
  }
  // a stencil touching a masked sample is itself unreliable
  Mask wide = res.mask;
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      if (res.mask[static_cast<size_t>(g.id(iu, iv))]) continue;
      for (int su = -2; su <= 2; ++su)
        for (int sv = -2; sv <= 2; ++sv) {
          int ju = iu + su, jv = iv + sv;
          if (g.periodic_u) ju = (ju % g.nu + g.nu) % g.nu;
          if (g.periodic_v) jv = (jv % g.nv + g.nv) % g.nv;
          if (ju < 0 || ju >= g.nu || jv < 0 || jv >= g.nv) continue;
          wide[static_cast<size_t>(g.id(ju, jv))] = 0;
        }
    }
  res.mask = wide;
  return res;
}

SpinorField quaternion_flip(const SpinorField& psi) {
  SpinorField out = psi;
  const size_t n = psi.psi1.size();
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    out.psi1[i] = -std::conj(psi.psi2[i]);
    out.psi2[i] = std::conj(psi.psi1[i]);
  }
  return out;
}

double masked_max_abs(const CField& f, const Mask& mask, const Grid2D& g, bool interior_only) {
  double m = 0.0;
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      if (interior_only && (!g.interior_u(iu) || !g.interior_v(iv))) continue;
      const auto i = static_cast<size_t>(g.id(iu, iv));
      if (!mask[i]) continue;
      m = std::max(m, std::abs(f[i]));
    }
  return m;
}

}  // namespace spinrep
