#include "spinrep/shg.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace spinrep::shg {

namespace {

template <typename T>
std::vector<T> lap5_impl(const std::vector<T>& f, const Grid2D& g) {
  if (static_cast<int>(f.size()) != g.size())
    throw std::invalid_argument("laplacian5: field/grid dimension mismatch");
  std::vector<T> out(f.size());
  const double iu2 = 1.0 / (g.du * g.du), iv2 = 1.0 / (g.dv * g.dv);

#pragma omp parallel for
  for (int iu = 0; iu < g.nu; ++iu) {
    for (int iv = 0; iv < g.nv; ++iv) {
      auto at = [&](int ju, int jv) { return f[static_cast<size_t>(g.id(ju, jv))]; };
      auto second = [&](int i, int n, bool periodic, auto sample) -> T {
        if (periodic) return sample((i + 1) % n) - 2.0 * sample(i) + sample((i + n - 1) % n);
        if (i == 0) return 2.0 * sample(0) - 5.0 * sample(1) + 4.0 * sample(2) - sample(3);
        if (i == n - 1)
          return 2.0 * sample(n - 1) - 5.0 * sample(n - 2) + 4.0 * sample(n - 3) - sample(n - 4);
        return sample(i + 1) - 2.0 * sample(i) + sample(i - 1);
      };
      const T duu = second(iu, g.nu, g.periodic_u, [&](int j) { return at(j, iv); });
      const T dvv = second(iv, g.nv, g.periodic_v, [&](int j) { return at(iu, j); });
      out[static_cast<size_t>(g.id(iu, iv))] = duu * iu2 + dvv * iv2;
    }
  }
  return out;
}

void require_periodic(const Grid2D& g, const char* who) {
  if (!g.periodic_u || !g.periodic_v)
    throw std::invalid_argument(std::string(who) + ": needs a doubly periodic grid");
}

// quarter of the five-point Laplacian as a sparse matrix (periodic grid)
template <typename Scalar>
Eigen::SparseMatrix<Scalar> quarter_lap_sparse(const Grid2D& g) {
  const int n = g.size();
  const double cu = 0.25 / (g.du * g.du), cv = 0.25 / (g.dv * g.dv);
  std::vector<Eigen::Triplet<Scalar>> trip;
  trip.reserve(static_cast<size_t>(5 * n));
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const int i = g.id(iu, iv);
      trip.emplace_back(i, i, Scalar(-2.0 * (cu + cv)));
      trip.emplace_back(i, g.id((iu + 1) % g.nu, iv), Scalar(cu));
      trip.emplace_back(i, g.id((iu + g.nu - 1) % g.nu, iv), Scalar(cu));
      trip.emplace_back(i, g.id(iu, (iv + 1) % g.nv), Scalar(cv));
      trip.emplace_back(i, g.id(iu, (iv + g.nv - 1) % g.nv), Scalar(cv));
    }
  Eigen::SparseMatrix<Scalar> L(n, n);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

// Fourier second-derivative matrix for one periodic direction
Eigen::MatrixXd fourier_d2(int n, double h) {
  const double L = n * h;
  std::vector<double> kernel(static_cast<size_t>(n), 0.0);
  for (int d = 0; d < n; ++d) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
      const int mt = m <= n / 2 ? m : m - n;
      const double k = 2.0 * M_PI * mt / L;
      s += -k * k * std::cos(2.0 * M_PI * m * d / n);
    }
    kernel[static_cast<size_t>(d)] = s / n;
  }
  Eigen::MatrixXd D2(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) D2(j, l) = kernel[static_cast<size_t>(((j - l) % n + n) % n)];
  return D2;
}

// quarter of the spectral Laplacian, dense, in id = iu*nv + iv ordering
Eigen::MatrixXd quarter_lap_spectral(const Grid2D& g) {
  const Eigen::MatrixXd Du = fourier_d2(g.nu, g.du);
  const Eigen::MatrixXd Dv = fourier_d2(g.nv, g.dv);
  const int n = g.size();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const int i = g.id(iu, iv);
      for (int ju = 0; ju < g.nu; ++ju) L(i, g.id(ju, iv)) += Du(iu, ju);
      for (int jv = 0; jv < g.nv; ++jv) L(i, g.id(iu, jv)) += Dv(iv, jv);
    }
  return 0.25 * L;
}

template <typename Scalar, typename Residual, typename JacDiag>
Eigen::Vector<Scalar, Eigen::Dynamic> newton_loop(
    const Eigen::Vector<Scalar, Eigen::Dynamic>& seed, const Grid2D& g, double tol,
    Discretization disc, Residual resid, JacDiag jac_diag, SolveReport* report) {
  using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  require_periodic(g, "newton solve");

  Eigen::SparseMatrix<Scalar> Ls;
  Mat Ld;
  if (disc == Discretization::FivePoint)
    Ls = quarter_lap_sparse<Scalar>(g);
  else
    Ld = quarter_lap_spectral(g).template cast<Scalar>();
  auto apply_lap = [&](const Vec& x) -> Vec {
    return disc == Discretization::FivePoint ? Vec(Ls * x) : Vec(Ld * x);
  };

  Vec u = seed;
  SolveReport rep;
  const int max_iter = 50;
  Vec F = apply_lap(u) + resid(u);
  double rn = F.template lpNorm<Eigen::Infinity>();
  rep.history.push_back(rn);

  for (int it = 0; it < max_iter && rn >= tol; ++it) {
    Vec d;
    if (disc == Discretization::FivePoint) {
      Eigen::SparseMatrix<Scalar> J = Ls;
      const Vec diag = jac_diag(u);
      for (int i = 0; i < J.rows(); ++i) J.coeffRef(i, i) += diag(i);
      Eigen::SparseLU<Eigen::SparseMatrix<Scalar>> lu(J);
      if (lu.info() != Eigen::Success)
        throw std::runtime_error("newton solve: singular Jacobian");
      d = lu.solve(Vec(-F));
    } else {
      Mat J = Ld;
      J.diagonal() += jac_diag(u);
      // tolerant of the near-null translation mode of periodic solutions
      d = J.completeOrthogonalDecomposition().solve(Vec(-F));
    }
    double step = 1.0;
    Vec Fn;
    double rnn;
    for (int ls = 0;; ++ls) {
      Fn = apply_lap(Vec(u + step * d)) + resid(Vec(u + step * d));
      rnn = Fn.template lpNorm<Eigen::Infinity>();
      if (rnn < rn || ls >= 8) break;
      step *= 0.5;
    }
    u += step * d;
    F = Fn;
    rn = rnn;
    rep.history.push_back(rn);
    rep.iterations = it + 1;
  }
  rep.residual = rn;
  rep.converged = rn < tol;
  if constexpr (!std::is_same_v<Scalar, double>) {
    double im = 0.0;
    for (int i = 0; i < F.size(); ++i) im = std::max(im, std::abs(std::imag(F(i))));
    rep.residual_imag = im;
  }
  if (report) *report = rep;
  if (!rep.converged && !report)
    throw std::runtime_error("newton solve: no convergence, residual " + std::to_string(rn));
  return u;
}

}  // namespace

RField laplacian5(const RField& f, const Grid2D& g) { return lap5_impl(f, g); }
CField laplacian5(const CField& f, const Grid2D& g) { return lap5_impl(f, g); }

RField sinh_gordon_solve(const RField& seed, const Grid2D& g, double tol, SolveReport* report,
                         Discretization disc) {
  if (static_cast<int>(seed.size()) != g.size())
    throw std::invalid_argument("sinh_gordon_solve: seed/grid dimension mismatch");
  Eigen::VectorXd u0 = Eigen::Map<const Eigen::VectorXd>(seed.data(), seed.size());
  auto resid = [](const Eigen::VectorXd& u) {
    return Eigen::VectorXd(u.array().sinh());
  };
  auto jac = [](const Eigen::VectorXd& u) { return Eigen::VectorXd(u.array().cosh()); };
  Eigen::VectorXd u = newton_loop<double>(u0, g, tol, disc, resid, jac, report);
  return {u.data(), u.data() + u.size()};
}

CField berdinsky_solve(const CField& seed, const CField& B, const Grid2D& g, double tol,
                       SolveReport* report, Discretization disc) {
  if (static_cast<int>(seed.size()) != g.size() || B.size() != seed.size())
    throw std::invalid_argument("berdinsky_solve: field/grid dimension mismatch");
  Eigen::VectorXd b2(static_cast<Eigen::Index>(B.size()));
  for (size_t i = 0; i < B.size(); ++i) {
    b2(static_cast<Eigen::Index>(i)) = std::norm(B[i]);
    if (b2(static_cast<Eigen::Index>(i)) == 0.0)
      throw std::invalid_argument("berdinsky_solve: B vanishes");
  }
  Eigen::VectorXcd v0 = Eigen::Map<const Eigen::VectorXcd>(seed.data(), seed.size());
  auto resid = [&](const Eigen::VectorXcd& v) {
    return Eigen::VectorXcd((2.0 * v.array()).exp() - b2.array() * (-2.0 * v.array()).exp());
  };
  auto jac = [&](const Eigen::VectorXcd& v) {
    return Eigen::VectorXcd(2.0 * (2.0 * v.array()).exp() +
                            2.0 * b2.array() * (-2.0 * v.array()).exp());
  };
  Eigen::VectorXcd v = newton_loop<cplx>(v0, g, tol, disc, resid, jac, report);
  return {v.data(), v.data() + v.size()};
}

RField compatibility_residual(const CField& v, const CField& B, const Grid2D& g) {
  const CField lap = lap5_impl(v, g);
  RField out(v.size());
#pragma omp parallel for
  for (long ii = 0; ii < static_cast<long>(v.size()); ++ii) {
    const auto i = static_cast<size_t>(ii);
    out[i] = std::abs(0.25 * lap[i] + std::exp(2.0 * v[i]) - std::norm(B[i]) * std::exp(-2.0 * v[i]));
  }
  return out;
}

namespace {

struct LaxData {
  CField vz, vzb;
  const CField* v;
  const CField* B;

  Eigen::Matrix2cd P(size_t i) const {
    const cplx ev = std::exp((*v)[i]);
    Eigen::Matrix2cd m;
    m << vz[i], (*B)[i] / ev, -ev, 0.0;
    return m;
  }
  Eigen::Matrix2cd Q(size_t i) const {
    const cplx ev = std::exp((*v)[i]);
    Eigen::Matrix2cd m;
    m << 0.0, ev, -std::conj((*B)[i]) / ev, vzb[i];
    return m;
  }
  // psi_u = (P + Q) psi, psi_v = i (P - Q) psi
  Eigen::Matrix2cd Au(size_t i) const { return P(i) + Q(i); }
  Eigen::Matrix2cd Av(size_t i) const { return cplx(0.0, 1.0) * (P(i) - Q(i)); }
};

LaxData make_lax(const CField& v, const CField& B, const Grid2D& g) {
  LaxData d;
  d.vz = d_z(v, g);
  d.vzb = d_zbar(v, g);
  d.v = &v;
  d.B = &B;
  return d;
}

Eigen::Matrix2cd edge_exp(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double h) {
  return Eigen::Matrix2cd((0.5 * h * (a + b)).exp());
}

}  // namespace

SpinorField nil_lax_integrate(const CField& v, const CField& B, double H, const Grid2D& g,
                              cplx psi0_1, cplx psi0_2) {
  if (static_cast<int>(v.size()) != g.size() || B.size() != v.size())
    throw std::invalid_argument("nil_lax_integrate: field/grid dimension mismatch");
  const LaxData lax = make_lax(v, B, g);
  const auto n = static_cast<size_t>(g.size());
  std::vector<Eigen::Vector2cd> psi(n);
  psi[static_cast<size_t>(g.id(0, 0))] = Eigen::Vector2cd(psi0_1, psi0_2);

  // first column along u, then each row along v
  for (int iu = 1; iu < g.nu; ++iu) {
    const auto a = static_cast<size_t>(g.id(iu - 1, 0)), b = static_cast<size_t>(g.id(iu, 0));
    psi[b] = edge_exp(lax.Au(a), lax.Au(b), g.du) * psi[a];
  }
#pragma omp parallel for
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 1; iv < g.nv; ++iv) {
      const auto a = static_cast<size_t>(g.id(iu, iv - 1)), b = static_cast<size_t>(g.id(iu, iv));
      psi[b] = edge_exp(lax.Av(a), lax.Av(b), g.dv) * psi[a];
    }

  SpinorField out;
  out.psi1.resize(n);
  out.psi2.resize(n);
  out.H.assign(n, H);
  out.mask.assign(n, 1);
  double big = 0.0;
  for (size_t i = 0; i < n; ++i) {
    out.psi1[i] = psi[i](0);
    out.psi2[i] = psi[i](1);
    big = std::max(big, std::max(std::abs(out.psi1[i]), std::abs(out.psi2[i])));
  }
  if (big > 1e12) throw std::runtime_error("nil_lax_integrate: blow-up");
  return out;
}

RField lax_plaquette_holonomy(const CField& v, const CField& B, const Grid2D& g) {
  if (static_cast<int>(v.size()) != g.size() || B.size() != v.size())
    throw std::invalid_argument("lax_plaquette_holonomy: field/grid dimension mismatch");
  const LaxData lax = make_lax(v, B, g);
  RField out(static_cast<size_t>(g.size()), 0.0);
  const int nu_cells = g.periodic_u ? g.nu : g.nu - 1;
  const int nv_cells = g.periodic_v ? g.nv : g.nv - 1;

#pragma omp parallel for
  for (int iu = 0; iu < nu_cells; ++iu)
    for (int iv = 0; iv < nv_cells; ++iv) {
      const int ju = (iu + 1) % g.nu, jv = (iv + 1) % g.nv;
      const auto i00 = static_cast<size_t>(g.id(iu, iv)), i10 = static_cast<size_t>(g.id(ju, iv));
      const auto i01 = static_cast<size_t>(g.id(iu, jv)), i11 = static_cast<size_t>(g.id(ju, jv));
      const Eigen::Matrix2cd bottom = edge_exp(lax.Au(i00), lax.Au(i10), g.du);
      const Eigen::Matrix2cd right = edge_exp(lax.Av(i10), lax.Av(i11), g.dv);
      const Eigen::Matrix2cd top = edge_exp(lax.Au(i01), lax.Au(i11), g.du);
      const Eigen::Matrix2cd left = edge_exp(lax.Av(i00), lax.Av(i01), g.dv);
      const Eigen::Matrix2cd hol =
          left.inverse() * top.inverse() * right * bottom - Eigen::Matrix2cd::Identity();
      out[i00] = hol.cwiseAbs().maxCoeff();
    }
  return out;
}

}  // namespace spinrep::shg
