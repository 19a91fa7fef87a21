#include "spinrep/nilrot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinrep::nilrot {

namespace {

struct OdeState {
  double u, v, sigma;
};

OdeState rhs(const OdeState& y) {
  return {std::cos(y.sigma), 0.5 * std::sqrt(4.0 + y.u * y.u) * std::sin(y.sigma),
          std::sin(y.sigma) / y.u};
}

OdeState rk4(const OdeState& y, double h) {
  const OdeState k1 = rhs(y);
  const OdeState y2{y.u + 0.5 * h * k1.u, y.v + 0.5 * h * k1.v, y.sigma + 0.5 * h * k1.sigma};
  const OdeState k2 = rhs(y2);
  const OdeState y3{y.u + 0.5 * h * k2.u, y.v + 0.5 * h * k2.v, y.sigma + 0.5 * h * k2.sigma};
  const OdeState k3 = rhs(y3);
  const OdeState y4{y.u + h * k3.u, y.v + h * k3.v, y.sigma + h * k3.sigma};
  const OdeState k4 = rhs(y4);
  return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          y.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
          y.sigma + h / 6.0 * (k1.sigma + 2.0 * k2.sigma + 2.0 * k3.sigma + k4.sigma)};
}

OdeState series_start(double k, double s) {
  return {s - k * k * s * s * s / 6.0, 0.5 * k * s * s, k * s};
}

// four-point Lagrange interpolation on a uniform grid y_j at a + j h
double interp4(const RField& y, double a, double h, double x) {
  const int n = static_cast<int>(y.size());
  int j = static_cast<int>(std::floor((x - a) / h)) - 1;
  j = std::clamp(j, 0, n - 4);
  const double t = (x - a) / h - j;
  double out = 0.0;
  for (int m = 0; m < 4; ++m) {
    double w = 1.0;
    for (int l = 0; l < 4; ++l)
      if (l != m) w *= (t - l) / (m - l);
    out += w * y[static_cast<size_t>(j + m)];
  }
  return out;
}

RField fd_derivative(const RField& f, double h) {
  const size_t n = f.size();
  RField d(n);
  for (size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  if (n >= 3) {
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  }
  return d;
}

// cumulative integral, trapezoid with the endpoint-derivative correction
RField cumint(const RField& f, double h) {
  const RField fp = fd_derivative(f, h);
  RField I(f.size(), 0.0);
  for (size_t j = 0; j + 1 < f.size(); ++j)
    I[j + 1] = I[j] + 0.5 * h * (f[j] + f[j + 1]) - h * h / 12.0 * (fp[j + 1] - fp[j]);
  return I;
}

// solve F(s) = t for monotone F sampled at a + j h with derivatives fp
double invert_monotone(const RField& F, const RField& fp, double a, double h, double t) {
  const int n = static_cast<int>(F.size());
  int lo = 0, hi = n - 1;
  if (t <= F[0]) return a;
  if (t >= F[static_cast<size_t>(n - 1)]) return a + (n - 1) * h;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (F[static_cast<size_t>(mid)] <= t ? lo : hi) = mid;
  }
  const double f0 = F[static_cast<size_t>(lo)], f1 = F[static_cast<size_t>(lo + 1)];
  const double d0 = fp[static_cast<size_t>(lo)], d1 = fp[static_cast<size_t>(lo + 1)];
  double x = (t - f0) / (f1 - f0);  // normalized coordinate in [0, 1]
  for (int it = 0; it < 6; ++it) {
    const double h00 = (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x);
    const double h10 = x * (1.0 - x) * (1.0 - x);
    const double h01 = x * x * (3.0 - 2.0 * x);
    const double h11 = x * x * (x - 1.0);
    const double val = h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
    const double dh00 = 6.0 * x * (x - 1.0);
    const double dval = dh00 * f0 + (1.0 - 4.0 * x + 3.0 * x * x) * h * d0 - dh00 * f1 +
                        (3.0 * x * x - 2.0 * x) * h * d1;
    if (dval == 0.0) break;
    x -= (val - t) / dval;
    x = std::clamp(x, 0.0, 1.0);
  }
  return a + (lo + x) * h;
}

RField sigma_dot_of(const ProfileCurve& p) {
  if (!p.sigma_dot.empty()) return p.sigma_dot;
  return fd_derivative(p.sigma, p.h);
}

}  // namespace

ProfileCurve cmc_profile(double k, double smax, double h) {
  if (k <= 0.0 || h <= 0.0) throw std::invalid_argument("cmc_profile: need k > 0, h > 0");

  // first pass: locate the second pole
  double L, v_end;
  {
    OdeState y = series_start(k, h);
    double s = h;
    const double u_stop = 2.0 * h;
    while (true) {
      if (y.u < 0.0) throw std::runtime_error("cmc_profile: u < 0");
      if (y.sigma > 0.5 * M_PI && y.u < u_stop) break;
      if (s > smax) throw std::runtime_error("cmc_profile: no closure before smax");
      y = rk4(y, h);
      s += h;
    }
    const double k2 = std::sin(y.sigma) / y.u;
    L = s + y.u + k2 * k2 * y.u * y.u * y.u / 6.0;
    v_end = y.v + 0.5 * k2 * y.u * y.u;
  }

  // second pass: uniform samples pole to pole
  const int N = std::max(8, static_cast<int>(std::llround(L / h)));
  const double hs = L / N;
  ProfileCurve p;
  p.h = hs;
  p.s.resize(static_cast<size_t>(N + 1));
  p.u.resize(static_cast<size_t>(N + 1));
  p.v.resize(static_cast<size_t>(N + 1));
  p.sigma.resize(static_cast<size_t>(N + 1));
  p.sigma_dot.resize(static_cast<size_t>(N + 1));
  p.s[0] = 0.0;
  p.u[0] = 0.0;
  p.v[0] = 0.0;
  p.sigma[0] = 0.0;
  p.sigma_dot[0] = k;
  OdeState y = series_start(k, hs);
  for (int j = 1; j < N; ++j) {
    const auto i = static_cast<size_t>(j);
    p.s[i] = j * hs;
    p.u[i] = y.u;
    p.v[i] = y.v;
    p.sigma[i] = y.sigma;
    p.sigma_dot[i] = std::sin(y.sigma) / y.u;
    if (j < N - 1) y = rk4(y, hs);
  }
  const double k2 = std::sin(y.sigma) / y.u;
  p.s[static_cast<size_t>(N)] = L;
  p.u[static_cast<size_t>(N)] = 0.0;
  p.v[static_cast<size_t>(N)] = v_end;
  p.sigma[static_cast<size_t>(N)] = M_PI;
  p.sigma_dot[static_cast<size_t>(N)] = k2;
  p.closed_pole_to_pole = true;
  return p;
}

ProfileCurve profile_from_sigma(const std::function<double(double)>& sigma,
                                const std::function<double(double)>& dsigma, double L, int n,
                                double u0) {
  if (n < 8 || L <= 0.0) throw std::invalid_argument("profile_from_sigma: need n >= 8, L > 0");
  const double h = L / n;
  ProfileCurve p;
  p.h = h;
  const auto m = static_cast<size_t>(n + 1);
  p.s.resize(m);
  p.u.resize(m);
  p.v.resize(m);
  p.sigma.resize(m);
  p.sigma_dot.resize(m);
  double u = u0, v = 0.0;
  for (size_t j = 0; j < m; ++j) {
    const double s = j * h;
    p.s[j] = s;
    p.u[j] = u;
    p.v[j] = v;
    p.sigma[j] = sigma(s);
    p.sigma_dot[j] = dsigma(s);
    if (j > 0 && j + 1 < m && u <= 0.0)
      throw std::runtime_error("profile_from_sigma: u <= 0 in the interior");
    if (j + 1 == m) break;
    // RK4 on (u, v) with sigma(s) prescribed
    auto f = [&](double ss, double uu) {
      return std::pair<double, double>{std::cos(sigma(ss)),
                                       0.5 * std::sqrt(4.0 + uu * uu) * std::sin(sigma(ss))};
    };
    const auto [ku1, kv1] = f(s, u);
    const auto [ku2, kv2] = f(s + 0.5 * h, u + 0.5 * h * ku1);
    const auto [ku3, kv3] = f(s + 0.5 * h, u + 0.5 * h * ku2);
    const auto [ku4, kv4] = f(s + h, u + h * ku3);
    u += h / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
    v += h / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
  }
  if (u0 == 0.0 && std::abs(p.u.back()) < 1e-6 && std::abs(p.sigma.back() - M_PI) < 1e-6) {
    p.closed_pole_to_pole = true;
    p.u.back() = 0.0;
  } else if (u0 > 0.0 && std::abs(p.u.back() - u0) < 1e-6 &&
             std::abs(std::sin(0.5 * (p.sigma.back() - p.sigma.front()))) < 1e-9) {
    p.periodic = true;
  }
  return p;
}

double spinor_energy_revolution(const ProfileCurve& p, int chi) {
  if (!p.closed_pole_to_pole && !p.periodic)
    throw std::invalid_argument("spinor_energy_revolution: open profile");
  const RField sd = sigma_dot_of(p);
  const size_t n = p.size();
  double integral = 0.0;
  for (size_t j = 0; j < n; ++j) {
    const double u = p.u[j];
    if (u <= 0.0) continue;  // pole samples: the weight sqrt(4u^2+u^4) vanishes
    const double delta = sd[j] - std::sin(p.sigma[j]) / u;
    const double f = delta * delta * std::sqrt(4.0 * u * u + u * u * u * u);
    const double w = (!p.periodic && (j == 0 || j + 1 == n)) ? 0.5 : 1.0;
    integral += w * f;
  }
  return M_PI / 8.0 * integral * p.h + 0.5 * M_PI * chi;
}

double willmore_cmc_sphere(double H, WReading reading) {
  if (H <= 0.0) throw std::invalid_argument("willmore_cmc_sphere: need H > 0");
  const double H2 = H * H;
  const double C = reading == WReading::Denominator
                       ? (1.0 + 4.0 * H2) * (3.0 * H2 - 0.25) / (2.0 * H2 * H)
                       : (1.0 + 4.0 * H2) * (3.0 * H2 - 0.25) * H2 * H / 2.0;
  return 10.0 * M_PI + 0.5 * M_PI / H2 -
         M_PI * C * (0.5 * M_PI - std::atan((4.0 * H2 - 1.0) / (4.0 * H)));
}

RevolutionSurface revolve_to_surface(const ProfileCurve& p, int ntheta, int nxi, double Xi) {
  if (!p.closed_pole_to_pole)
    throw std::invalid_argument("revolve_to_surface: profile must close pole to pole");
  if (ntheta < 8 || nxi < 8) throw std::invalid_argument("revolve_to_surface: grid too coarse");
  const int N = static_cast<int>(p.size()) - 1;
  const double h = p.h;

  // conformal coordinate and orbit twist on the interior samples 1..N-1
  const auto ni = static_cast<size_t>(N - 1);
  RField invsq(ni), phi_dot(ni);
  for (size_t j = 0; j < ni; ++j) {
    const double u = p.u[j + 1];
    const double C = u * u + 0.25 * u * u * u * u;
    const double vdot = 0.5 * std::sqrt(4.0 + u * u) * std::sin(p.sigma[j + 1]);
    invsq[j] = 1.0 / std::sqrt(C);
    phi_dot[j] = -u * u * vdot / (2.0 * C);
  }
  RField xi_prof = cumint(invsq, h);
  RField phi_prof = cumint(phi_dot, h);
  const double a0 = p.s[1];  // s-coordinate of the first interior sample
  const double s_mid = 0.5 * p.length();
  const double xi_off = interp4(xi_prof, a0, h, s_mid);
  const double phi_off = interp4(phi_prof, a0, h, s_mid);
  for (auto& x : xi_prof) x -= xi_off;
  for (auto& x : phi_prof) x -= phi_off;

  const double Xi_max = std::min(-xi_prof.front(), xi_prof.back());
  double band = Xi > 0.0 ? Xi : 0.98 * Xi_max;
  if (band > Xi_max)
    throw std::invalid_argument("revolve_to_surface: band exceeds the profile sampling");

  RevolutionSurface S;
  S.grid = Grid2D(nxi, ntheta, 2.0 * band / (nxi - 1), 2.0 * M_PI / ntheta, false, true,
                  cplx(-band, 0.0));
  const auto nsamp = static_cast<size_t>(S.grid.size());
  S.Z.Z1.resize(nsamp);
  S.Z.Z2.resize(nsamp);
  S.Z.Z3.resize(nsamp);
  S.frame.f.resize(nsamp);
  S.frame.Psi.resize(nsamp);
  S.frame.PsiStar.resize(nsamp);
  S.frame.mask = full_mask(S.grid);
  S.xi.resize(static_cast<size_t>(nxi));
  S.s_row.resize(static_cast<size_t>(nxi));
  S.u_row.resize(static_cast<size_t>(nxi));
  S.v_row.resize(static_cast<size_t>(nxi));
  S.sigma_row.resize(static_cast<size_t>(nxi));
  S.e2alpha_row.resize(static_cast<size_t>(nxi));
  S.n3_row.resize(static_cast<size_t>(nxi));

  const cplx I(0.0, 1.0);
  for (int iu = 0; iu < nxi; ++iu) {
    const double xi = -band + iu * S.grid.du;
    const double s = invert_monotone(xi_prof, invsq, a0, h, xi);
    const double u = interp4(p.u, 0.0, h, s);
    const double v = interp4(p.v, 0.0, h, s);
    const double sg = interp4(p.sigma, 0.0, h, s);
    const double phi = interp4(phi_prof, a0, h, s);
    const double C = u * u + 0.25 * u * u * u * u;
    const double sqrtC = std::sqrt(C);
    const double udot = std::cos(sg);
    const double vdot = 0.5 * std::sqrt(4.0 + u * u) * std::sin(sg);
    const double pdot = -u * u * vdot / (2.0 * C);
    const auto r = static_cast<size_t>(iu);
    S.xi[r] = xi;
    S.s_row[r] = s;
    S.u_row[r] = u;
    S.v_row[r] = v;
    S.sigma_row[r] = sg;
    S.e2alpha_row[r] = C;
    S.n3_row[r] = 2.0 * std::cos(sg) / std::sqrt(4.0 + u * u);

    for (int iv = 0; iv < ntheta; ++iv) {
      const double w = iv * S.grid.dv;
      const double th = w - phi;
      const double ct = std::cos(th), st = std::sin(th);
      const double Fs[3] = {udot * ct, udot * st, vdot};
      const double Ft[3] = {-u * st, u * ct, -0.5 * u * u};
      const auto i = static_cast<size_t>(S.grid.id(iu, iv));
      for (int m = 0; m < 3; ++m) {
        const double Fxi = sqrtC * (Fs[m] - pdot * Ft[m]);
        const cplx Zm = 0.5 * (Fxi - I * Ft[m]);
        (m == 0 ? S.Z.Z1 : m == 1 ? S.Z.Z2 : S.Z.Z3)[i] = Zm;
        S.frame.Psi.comp[static_cast<size_t>(m)][i] = Zm;
        S.frame.PsiStar.comp[static_cast<size_t>(m)][i] = std::conj(Zm);
      }
      liegeo::GroupElement& g = S.frame.f[i];
      const double x = u * ct, y = u * st, z = v;
      g.m = Eigen::MatrixXcd::Identity(3, 3);
      g.m(0, 1) = x;
      g.m(1, 2) = y;
      g.m(0, 2) = z + 0.5 * x * y;
      g.kind = liegeo::ModelKind::Unipotent;
      g.chart = "nil";
    }
  }

  const liegeo::LieAlgebra3 alg = liegeo::weierstrass_algebra(liegeo::GroupTag::Nil);
  const RField H = recon::mean_curvature(S.frame, alg, S.grid);
  S.psi = spinor_from_Z(S.Z, S.grid, H);
  return S;
}

HMeasurement measure_H(const RevolutionSurface& surf, double xi_window) {
  std::vector<double> vals;
  const Grid2D& g = surf.grid;
  for (int iu = 2; iu < g.nu - 2; ++iu) {
    if (std::abs(surf.xi[static_cast<size_t>(iu)]) > xi_window) continue;
    for (int iv = 0; iv < g.nv; ++iv)
      vals.push_back(surf.psi.H[static_cast<size_t>(g.id(iu, iv))]);
  }
  if (vals.empty()) throw std::invalid_argument("measure_H: empty window");
  std::sort(vals.begin(), vals.end());
  HMeasurement m;
  m.H = vals[vals.size() / 2];
  for (double v : vals) m.spread = std::max(m.spread, std::abs(v - m.H));
  return m;
}

double cmc_H_of_k(double k, double profile_h, int nxi, int ntheta) {
  const ProfileCurve p = cmc_profile(k, 200.0, profile_h);
  const RevolutionSurface S = revolve_to_surface(p, ntheta, nxi);
  const double window = std::min(1.5, 0.4 * (-S.xi.front()));
  return std::abs(measure_H(S, window).H);
}

double k_for_H(double Htarget, double klo, double khi, double tol) {
  double flo = cmc_H_of_k(klo) - Htarget, fhi = cmc_H_of_k(khi) - Htarget;
  if (flo * fhi > 0.0) throw std::invalid_argument("k_for_H: target not bracketed");
  while (khi - klo > tol) {
    const double mid = 0.5 * (klo + khi);
    const double fm = cmc_H_of_k(mid) - Htarget;
    if ((fm < 0.0) == (flo < 0.0)) {
      klo = mid;
      flo = fm;
    } else {
      khi = mid;
    }
  }
  return 0.5 * (klo + khi);
}

double willmore_quadrature(const ProfileCurve& p, const liegeo::LieAlgebra3& alg, double* area,
                           double* H_out, int nxi, int ntheta) {
  const RevolutionSurface S = revolve_to_surface(p, ntheta, nxi);
  const double window = std::min(1.5, 0.4 * (-S.xi.front()));
  const double H = std::abs(measure_H(S, window).H);
  if (H_out) *H_out = H;
  const recon::NormalField n = recon::unit_normal(S.frame);
  const liegeo::CurvatureTensor R = liegeo::curvature_tensor(alg);
  const Grid2D& g = S.grid;
  double W = 0.0, A = 0.0;
  for (int iu = 0; iu < g.nu; ++iu) {
    const double wu = (iu == 0 || iu == g.nu - 1) ? 0.5 : 1.0;
    const double dmu = S.e2alpha_row[static_cast<size_t>(iu)] * wu * g.du * g.dv;
    for (int iv = 0; iv < g.nv; ++iv) {
      const auto i = static_cast<size_t>(g.id(iu, iv));
      const Eigen::Vector3d nn(n.n1[i], n.n2[i], n.n3[i]);
      W += (H * H + liegeo::sectional_curvature_normal(R, nn)) * dmu;
      A += dmu;
    }
  }
  if (area) *area = A;
  return W;
}

ProfileCurve normal_perturb(const ProfileCurve& p, double eps,
                            const std::function<double(double)>& phi,
                            const std::function<double(double)>& dphi) {
  if (!p.closed_pole_to_pole)
    throw std::invalid_argument("normal_perturb: profile must close pole to pole");
  const int N = static_cast<int>(p.size()) - 1;
  const double h = p.h;
  const RField sd = sigma_dot_of(p);

  const auto m = static_cast<size_t>(N + 1);
  RField ue(m), ve(m), st(m), q(m);
  for (size_t j = 0; j < m; ++j) {
    const double s = p.s[j], u = p.u[j], sg = p.sigma[j];
    const double cs = std::cos(sg), sn = std::sin(sg);
    const double root = std::sqrt(4.0 + u * u);
    const double f = phi(s), fp = dphi(s);
    const double udot = cs, vdot = 0.5 * root * sn;
    ue[j] = u - eps * f * sn;
    ve[j] = p.v[j] + eps * f * 0.5 * root * cs;
    const double uedot = udot - eps * (fp * sn + f * sd[j] * cs);
    const double vedot =
        vdot + eps * (fp * 0.5 * root * cs + f * (0.5 * u * udot * cs / root - 0.5 * root * sd[j] * sn));
    const double roote = std::sqrt(4.0 + ue[j] * ue[j]);
    const double a = uedot, b = 2.0 * vedot / roote;
    q[j] = std::sqrt(a * a + b * b);
    double ang = std::atan2(b, a);
    if (j > 0) {  // unwrap
      while (ang - st[j - 1] > M_PI) ang -= 2.0 * M_PI;
      while (ang - st[j - 1] < -M_PI) ang += 2.0 * M_PI;
    }
    st[j] = ang;
  }

  // resample to unit speed
  const RField slen = cumint(q, h);
  const double Lt = slen.back();
  ProfileCurve out;
  out.h = Lt / N;
  out.s.resize(m);
  out.u.resize(m);
  out.v.resize(m);
  out.sigma.resize(m);
  for (int j = 0; j <= N; ++j) {
    const double target = j * out.h;
    const double s = invert_monotone(slen, q, 0.0, h, target);
    const auto i = static_cast<size_t>(j);
    out.s[i] = target;
    out.u[i] = interp4(ue, 0.0, h, s);
    out.v[i] = interp4(ve, 0.0, h, s);
    out.sigma[i] = interp4(st, 0.0, h, s);
  }
  out.u.front() = 0.0;
  out.u.back() = 0.0;
  out.sigma.front() = st.front();
  out.sigma.back() = st.back();
  out.closed_pole_to_pole = true;
  return out;
}

double energy_first_variation(const ProfileCurve& p, double eps,
                              const std::function<double(double)>& phi,
                              const std::function<double(double)>& dphi) {
  const double Ep = spinor_energy_revolution(normal_perturb(p, eps, phi, dphi), 2);
  const double Em = spinor_energy_revolution(normal_perturb(p, -eps, phi, dphi), 2);
  return (Ep - Em) / (2.0 * eps);
}

double energy_first_variation(const ProfileCurve& p, double eps, int shape) {
  const double L = p.length();
  const double w = (shape + 1) * M_PI / L;
  return energy_first_variation(
      p, eps, [w](double s) { return std::sin(w * s); },
      [w](double s) { return w * std::cos(w * s); });
}

}  // namespace spinrep::nilrot
