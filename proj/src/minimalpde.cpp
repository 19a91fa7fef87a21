#include "spinrep/minimalpde.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace spinrep::minimalpde {

namespace {

SpinorField with_zero_H(const SpinorField& psi) {
  SpinorField out = psi;
  std::fill(out.H.begin(), out.H.end(), 0.0);
  return out;
}

bool nil_swapped_form(const MinimalSystem& sys) {
  return sys.form == SystemForm::AsPrinted && sys.group == liegeo::GroupTag::Nil;
}

// right sides of dbar psi1 = F1, d psi2 = F2 for the selected reading
void system_rhs(const SpinorField& psi, const MinimalSystem& sys, CField& F1, CField& F2,
                Mask& mask) {
  const size_t n = psi.psi1.size();
  F1.resize(n);
  F2.resize(n);
  if (nil_swapped_form(sys)) {
    mask = psi.mask;
    const cplx I(0.0, 1.0);
#pragma omp parallel for
    for (long ii = 0; ii < static_cast<long>(n); ++ii) {
      const auto i = static_cast<size_t>(ii);
      const cplx w = 0.25 * I * (std::norm(psi.psi2[i]) - std::norm(psi.psi1[i]));
      F1[i] = w * psi.psi1[i];
      F2[i] = -w * psi.psi2[i];
    }
    return;
  }
  const PotentialField pot = potentials(with_zero_H(psi), sys.group, sys.mu);
  mask = pot.mask;
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    F1[i] = pot.V[i] * psi.psi2[i];
    F2[i] = -pot.U[i] * psi.psi1[i];
  }
}

double combined_residual(const DiracResidual& r, const Grid2D& g) {
  return std::max(masked_max_abs(r.r1, r.mask, g, true), masked_max_abs(r.r2, r.mask, g, true));
}

}  // namespace

DiracResidual minimal_residual(const SpinorField& psi, const MinimalSystem& sys,
                               const Grid2D& g) {
  psi.require_size(g);
  if (!nil_swapped_form(sys))
    return dirac_residual(psi, potentials(with_zero_H(psi), sys.group, sys.mu), g);
  DiracResidual res;
  CField F1, F2;
  system_rhs(psi, sys, F1, F2, res.mask);
  const CField dpsi2 = d_z(psi.psi2, g);
  const CField dbpsi1 = d_zbar(psi.psi1, g);
  const auto n = static_cast<size_t>(g.size());
  res.r1.resize(n);
  res.r2.resize(n);
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    res.r1[i] = dpsi2[i] - F2[i];
    res.r2[i] = -dbpsi1[i] + F1[i];
  }
  return res;
}

SpinorField minimal_solve(const SpinorField& seed, const MinimalSystem& sys, const Grid2D& g,
                          double tol, MinimalReport* report, double damping, int max_iter) {
  seed.require_size(g);
  if (g.periodic_u || g.periodic_v)
    throw std::invalid_argument("minimal_solve: Dirichlet setup needs a non-periodic grid");
  if (tol <= 0.0) throw std::invalid_argument("minimal_solve: tol must be positive");

  {
    CField F1, F2;
    Mask m;
    system_rhs(seed, sys, F1, F2, m);
    for (size_t i = 0; i < m.size(); ++i)
      if (seed.mask[i] && !m[i])
        throw std::domain_error("minimal_solve: system undefined on part of the seed (psi zero)");
  }

  MinimalReport rep;
  SpinorField psi = seed;
  DiracResidual res = minimal_residual(psi, sys, g);
  double rn = combined_residual(res, g);
  rep.history.push_back(rn);

  if (rn >= tol) {
    // interior Poisson operator (1/4) Lap with Dirichlet boundary
    const double cu = 0.25 / (g.du * g.du), cv = 0.25 / (g.dv * g.dv);
    std::vector<int> idx(static_cast<size_t>(g.size()), -1);
    int nint = 0;
    for (int iu = 1; iu < g.nu - 1; ++iu)
      for (int iv = 1; iv < g.nv - 1; ++iv) idx[static_cast<size_t>(g.id(iu, iv))] = nint++;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int iu = 1; iu < g.nu - 1; ++iu)
      for (int iv = 1; iv < g.nv - 1; ++iv) {
        const int row = idx[static_cast<size_t>(g.id(iu, iv))];
        trip.emplace_back(row, row, cplx(-2.0 * (cu + cv)));
        const int nb[4][2] = {{iu - 1, iv}, {iu + 1, iv}, {iu, iv - 1}, {iu, iv + 1}};
        const double cc[4] = {cu, cu, cv, cv};
        for (int k = 0; k < 4; ++k) {
          const int j = idx[static_cast<size_t>(g.id(nb[k][0], nb[k][1]))];
          if (j >= 0) trip.emplace_back(row, j, cplx(cc[k]));
        }
      }
    Eigen::SparseMatrix<cplx> A(nint, nint);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu(A);
    if (lu.info() != Eigen::Success)
      throw std::runtime_error("minimal_solve: Poisson factorization failed");

    auto poisson_update = [&](const CField& rhs, const CField& cur) {
      Eigen::VectorXcd b(nint);
      for (int iu = 1; iu < g.nu - 1; ++iu)
        for (int iv = 1; iv < g.nv - 1; ++iv) {
          const int row = idx[static_cast<size_t>(g.id(iu, iv))];
          cplx v = rhs[static_cast<size_t>(g.id(iu, iv))];
          const int nb[4][2] = {{iu - 1, iv}, {iu + 1, iv}, {iu, iv - 1}, {iu, iv + 1}};
          const double cc[4] = {cu, cu, cv, cv};
          for (int k = 0; k < 4; ++k)
            if (idx[static_cast<size_t>(g.id(nb[k][0], nb[k][1]))] < 0)
              v -= cc[k] * cur[static_cast<size_t>(g.id(nb[k][0], nb[k][1]))];
          b(row) = v;
        }
      const Eigen::VectorXcd x = lu.solve(b);
      CField out = cur;  // boundary kept
      for (int iu = 1; iu < g.nu - 1; ++iu)
        for (int iv = 1; iv < g.nv - 1; ++iv)
          out[static_cast<size_t>(g.id(iu, iv))] = x(idx[static_cast<size_t>(g.id(iu, iv))]);
      return out;
    };

    for (int it = 0; it < max_iter && rn >= tol; ++it) {
      CField F1, F2;
      Mask m;
      system_rhs(psi, sys, F1, F2, m);
      const CField rhs1 = d_z(F1, g);    // (1/4) Lap psi1 = d F1
      const CField rhs2 = d_zbar(F2, g); // (1/4) Lap psi2 = dbar F2
      const CField n1 = poisson_update(rhs1, psi.psi1);
      const CField n2 = poisson_update(rhs2, psi.psi2);
      for (size_t i = 0; i < n1.size(); ++i) {
        psi.psi1[i] = (1.0 - damping) * psi.psi1[i] + damping * n1[i];
        psi.psi2[i] = (1.0 - damping) * psi.psi2[i] + damping * n2[i];
      }
      res = minimal_residual(psi, sys, g);
      rn = combined_residual(res, g);
      rep.history.push_back(rn);
      rep.iterations = it + 1;
    }
  }

  rep.residual = rn;
  rep.converged = rn < tol;
  Mask degen;
  const RField ea = induced_metric(psi, &degen);
  rep.ea_min = ea.empty() ? 0.0 : *std::min_element(ea.begin(), ea.end());
  rep.ea_max = ea.empty() ? 0.0 : *std::max_element(ea.begin(), ea.end());
  if (report) *report = rep;
  return psi;
}

std::vector<MuStep> mu_sweep(const SpinorField& psi0, const std::vector<double>& mus,
                             const Grid2D& g, double tol, SystemForm form) {
  std::vector<MuStep> steps;
  SpinorField seed = psi0;
  for (double mu : mus) {
    MinimalSystem sys;
    sys.group = liegeo::GroupTag::Gmu;
    sys.mu = mu;
    sys.form = form;
    MuStep step;
    step.mu = mu;
    step.psi = minimal_solve(seed, sys, g, tol, &step.report);
    const bool ok = step.report.converged;
    steps.push_back(std::move(step));
    if (!ok) break;  // continuation breakdown; last good mu is the previous entry
    seed = steps.back().psi;
  }
  return steps;
}

}  // namespace spinrep::minimalpde
