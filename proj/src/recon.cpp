#include "spinrep/recon.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace spinrep::recon {

using liegeo::GroupElement;
using liegeo::GroupModel;
using liegeo::LieAlgebra3;

FrameVectorField frame_vectors_from_Z(const ZFactors& Z) {
  FrameVectorField f;
  f.comp = {Z.Z1, Z.Z2, Z.Z3};
  return f;
}

namespace {

Eigen::Vector3d tangent_u(const ZFactors& Z, size_t i) {
  return {2.0 * std::real(Z.Z1[i]), 2.0 * std::real(Z.Z2[i]), 2.0 * std::real(Z.Z3[i])};
}
Eigen::Vector3d tangent_v(const ZFactors& Z, size_t i) {
  return {-2.0 * std::imag(Z.Z1[i]), -2.0 * std::imag(Z.Z2[i]), -2.0 * std::imag(Z.Z3[i])};
}

GroupElement edge_step(const GroupModel& model, const Eigen::Vector3d& a,
                       const Eigen::Vector3d& b, double h) {
  return model_exp(model, 0.5 * (a + b), h);  // midpoint algebra evaluation
}

}  // namespace

FrameField frame_integrate(const ZFactors& Z, const LieAlgebra3& alg, const GroupElement& f0,
                           const Grid2D& g, const Mask& mask) {
  const GroupModel model = model_for(alg);
  FrameField ff;
  const auto n = static_cast<size_t>(g.size());
  ff.f.resize(n, model.identity());
  ff.mask = mask;
  ff.Psi = frame_vectors_from_Z(Z);
  ff.PsiStar.resize(n);
  for (int c = 0; c < 3; ++c)
    for (size_t i = 0; i < n; ++i) ff.PsiStar.comp[static_cast<size_t>(c)][i] = std::conj(ff.Psi.comp[static_cast<size_t>(c)][i]);

  auto require_valid = [&](int iu, int iv) {
    if (!mask[static_cast<size_t>(g.id(iu, iv))])
      throw std::runtime_error("frame_integrate: invalid sample on the integration tree");
  };

  require_valid(0, 0);
  ff.f[static_cast<size_t>(g.id(0, 0))] = f0;
  // first column along u
  for (int iu = 1; iu < g.nu; ++iu) {
    require_valid(iu, 0);
    const auto prev = static_cast<size_t>(g.id(iu - 1, 0));
    const auto cur = static_cast<size_t>(g.id(iu, 0));
    const auto step = edge_step(model, tangent_u(Z, prev), tangent_u(Z, cur), g.du);
    ff.f[cur] = ff.f[prev].mul(step);
  }
  // rows along v (independent; parallel-safe)
#pragma omp parallel for
  for (int iu = 0; iu < g.nu; ++iu) {
    for (int iv = 1; iv < g.nv; ++iv) {
      require_valid(iu, iv);
      const auto prev = static_cast<size_t>(g.id(iu, iv - 1));
      const auto cur = static_cast<size_t>(g.id(iu, iv));
      const auto step = edge_step(model, tangent_v(Z, prev), tangent_v(Z, cur), g.dv);
      ff.f[cur] = ff.f[prev].mul(step);
    }
  }
  return ff;
}

RField plaquette_holonomy(const ZFactors& Z, const LieAlgebra3& alg, const Grid2D& g) {
  const GroupModel model = model_for(alg);
  RField hol(static_cast<size_t>(g.size()), 0.0);
#pragma omp parallel for
  for (int iu = 0; iu < g.nu - 1; ++iu) {
    for (int iv = 0; iv + 1 < g.nv; ++iv) {
      const auto i00 = static_cast<size_t>(g.id(iu, iv));
      const auto i10 = static_cast<size_t>(g.id(iu + 1, iv));
      const auto i01 = static_cast<size_t>(g.id(iu, iv + 1));
      const auto i11 = static_cast<size_t>(g.id(iu + 1, iv + 1));
      auto gel = edge_step(model, tangent_u(Z, i00), tangent_u(Z, i10), g.du)
                     .mul(edge_step(model, tangent_v(Z, i10), tangent_v(Z, i11), g.dv))
                     .mul(edge_step(model, tangent_u(Z, i11), tangent_u(Z, i01), -g.du))
                     .mul(edge_step(model, tangent_v(Z, i01), tangent_v(Z, i00), -g.dv));
      const auto nrows = gel.m.rows();
      hol[i00] = (gel.m - Eigen::MatrixXcd::Identity(nrows, nrows)).cwiseAbs().maxCoeff();
    }
  }
  return hol;
}

namespace {

struct ConnectionTerms {
  // nabla_X Y with complex frame vectors, components per sample
  static void accumulate(const liegeo::Connection3& conn, const cplx X[3], const cplx Y[3],
                         cplx out[3]) {
    for (int i = 0; i < 3; ++i) {
      cplx s{};
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += X[j] * Y[k] * conn.gamma[i][k][j];
      out[i] += s;
    }
  }
};

}  // namespace

DerivationalResidual derivational_residual(const FrameField& ff, const LieAlgebra3& alg,
                                           const Grid2D& g, const RField& H) {
  const auto conn = christoffel(alg);
  const auto n = static_cast<size_t>(g.size());
  DerivationalResidual res;
  res.r_minus.resize(n);
  res.r_plus.resize(n);

  std::array<CField, 3> dPsiStar, dbPsi;
  for (int c = 0; c < 3; ++c) {
    dPsiStar[static_cast<size_t>(c)] = d_z(ff.PsiStar.comp[static_cast<size_t>(c)], g);
    dbPsi[static_cast<size_t>(c)] = d_zbar(ff.Psi.comp[static_cast<size_t>(c)], g);
  }
  const NormalField nf = unit_normal(ff);

#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    cplx Z[3], W[3];
    double e2a = 0.0;
    for (int c = 0; c < 3; ++c) {
      Z[c] = ff.Psi.comp[static_cast<size_t>(c)][i];
      W[c] = ff.PsiStar.comp[static_cast<size_t>(c)][i];
    }
    // e^{2a} = 2 <Psi, Psi*> for conformal data; use |r_u|^2 directly
    Eigen::Vector3d ru{2.0 * std::real(Z[0]), 2.0 * std::real(Z[1]), 2.0 * std::real(Z[2])};
    e2a = ru.squaredNorm();
    cplx nPP[3] = {}, nPsP[3] = {};
    ConnectionTerms::accumulate(conn, Z, W, nPP);
    ConnectionTerms::accumulate(conn, W, Z, nPsP);
    for (int c = 0; c < 3; ++c) {
      const cplx dps = dPsiStar[static_cast<size_t>(c)][i];
      const cplx dbp = dbPsi[static_cast<size_t>(c)][i];
      res.r_minus.comp[static_cast<size_t>(c)][i] = dps - dbp + nPP[c] - nPsP[c];
      const double nc = c == 0 ? nf.n1[i] : (c == 1 ? nf.n2[i] : nf.n3[i]);
      res.r_plus.comp[static_cast<size_t>(c)][i] = dps + dbp + nPP[c] + nPsP[c] - e2a * H[i] * nc;
    }
  }
  return res;
}

RField mean_curvature(const FrameField& ff, const LieAlgebra3& alg, const Grid2D& g,
                      RField* imag_residual) {
  const auto conn = christoffel(alg);
  const auto n = static_cast<size_t>(g.size());
  RField H(n, 0.0);
  if (imag_residual) imag_residual->assign(n, 0.0);

  std::array<CField, 3> dPsiStar, dbPsi;
  for (int c = 0; c < 3; ++c) {
    dPsiStar[static_cast<size_t>(c)] = d_z(ff.PsiStar.comp[static_cast<size_t>(c)], g);
    dbPsi[static_cast<size_t>(c)] = d_zbar(ff.Psi.comp[static_cast<size_t>(c)], g);
  }
  const NormalField nf = unit_normal(ff);

#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    cplx Z[3], W[3];
    for (int c = 0; c < 3; ++c) {
      Z[c] = ff.Psi.comp[static_cast<size_t>(c)][i];
      W[c] = ff.PsiStar.comp[static_cast<size_t>(c)][i];
    }
    Eigen::Vector3d ru{2.0 * std::real(Z[0]), 2.0 * std::real(Z[1]), 2.0 * std::real(Z[2])};
    const double e2a = ru.squaredNorm();
    if (e2a < 1e-12) continue;
    cplx nPP[3] = {}, nPsP[3] = {};
    ConnectionTerms::accumulate(conn, Z, W, nPP);
    ConnectionTerms::accumulate(conn, W, Z, nPsP);
    cplx proj{};
    const double nvec[3] = {nf.n1[i], nf.n2[i], nf.n3[i]};
    for (int c = 0; c < 3; ++c)
      proj += (dPsiStar[static_cast<size_t>(c)][i] + dbPsi[static_cast<size_t>(c)][i] + nPP[c] + nPsP[c]) * nvec[c];
    H[i] = std::real(proj) / e2a;
    if (imag_residual) (*imag_residual)[i] = std::imag(proj) / e2a;
  }
  return H;
}

NormalField unit_normal(const FrameField& ff) {
  const size_t n = ff.Psi.size();
  NormalField nf;
  nf.n1.assign(n, 0.0);
  nf.n2.assign(n, 0.0);
  nf.n3.assign(n, 0.0);
  nf.mask.assign(n, 1);
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(n); ++ii) {
    const auto i = static_cast<size_t>(ii);
    Eigen::Vector3d ru, rv;
    for (int c = 0; c < 3; ++c) {
      ru[c] = 2.0 * std::real(ff.Psi.comp[static_cast<size_t>(c)][i]);
      rv[c] = -2.0 * std::imag(ff.Psi.comp[static_cast<size_t>(c)][i]);
    }
    const Eigen::Vector3d cr = ru.cross(rv);
    const double nn = cr.norm();
    if (nn < 1e-14) {
      nf.mask[i] = 0;
      continue;
    }
    nf.n1[i] = cr[0] / nn;
    nf.n2[i] = cr[1] / nn;
    nf.n3[i] = cr[2] / nn;
  }
  return nf;
}

double frame_max_abs(const FrameVectorField& f, const Mask& mask, const Grid2D& g,
                     bool interior_only) {
  double m = 0.0;
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      if (interior_only && (!g.interior_u(iu) || !g.interior_v(iv))) continue;
      const auto i = static_cast<size_t>(g.id(iu, iv));
      if (!mask[i]) continue;
      for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(f.comp[static_cast<size_t>(c)][i]));
    }
  return m;
}

void export_mesh(const FrameField& ff, const Grid2D& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_mesh: cannot open " + path);
  out.precision(17);
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const auto v = chart_coords(ff.f[static_cast<size_t>(g.id(iu, iv))]);
      out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
    }
  auto vid = [&](int iu, int iv) { return g.id(iu, iv) + 1; };  // OBJ is 1-based
  for (int iu = 0; iu + 1 < g.nu; ++iu)
    for (int iv = 0; iv + 1 < g.nv; ++iv) {
      const bool ok = ff.mask[static_cast<size_t>(g.id(iu, iv))] &&
                      ff.mask[static_cast<size_t>(g.id(iu + 1, iv))] &&
                      ff.mask[static_cast<size_t>(g.id(iu, iv + 1))] &&
                      ff.mask[static_cast<size_t>(g.id(iu + 1, iv + 1))];
      if (!ok) continue;
      out << "f " << vid(iu, iv) << ' ' << vid(iu + 1, iv) << ' ' << vid(iu + 1, iv + 1) << '\n';
      out << "f " << vid(iu, iv) << ' ' << vid(iu + 1, iv + 1) << ' ' << vid(iu, iv + 1) << '\n';
    }
  if (!out) throw std::runtime_error("export_mesh: write failure on " + path);
}

}  // namespace spinrep::recon
