#include "spinrep/liegeo.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace spinrep::liegeo {

std::string to_string(BianchiTag t) {
  switch (t) {
    case BianchiTag::I: return "I";
    case BianchiTag::II: return "II";
    case BianchiTag::III: return "III";
    case BianchiTag::IV: return "IV";
    case BianchiTag::V: return "V";
    case BianchiTag::VI0: return "VI0";
    case BianchiTag::VIa: return "VIa";
    case BianchiTag::VII0: return "VII0";
    case BianchiTag::VIIa: return "VIIa";
    case BianchiTag::VIII: return "VIII";
    case BianchiTag::IX: return "IX";
  }
  return "?";
}

std::string to_string(GroupTag t) {
  switch (t) {
    case GroupTag::R3: return "R3";
    case GroupTag::SU2: return "SU2";
    case GroupTag::Nil: return "Nil";
    case GroupTag::SL2R: return "SL2R";
    case GroupTag::Sol: return "Sol";
    case GroupTag::Gmu: return "Gmu";
    case GroupTag::H2xR: return "H2xR";
    case GroupTag::H3: return "H3";
  }
  return "?";
}

GroupTag group_from_string(const std::string& s) {
  static const std::map<std::string, GroupTag> m = {
      {"r3", GroupTag::R3},     {"R3", GroupTag::R3},     {"su2", GroupTag::SU2},
      {"SU2", GroupTag::SU2},   {"nil", GroupTag::Nil},   {"Nil", GroupTag::Nil},
      {"sl2r", GroupTag::SL2R}, {"SL2R", GroupTag::SL2R}, {"sol", GroupTag::Sol},
      {"Sol", GroupTag::Sol},   {"gmu", GroupTag::Gmu},   {"Gmu", GroupTag::Gmu},
      {"h2xr", GroupTag::H2xR}, {"h3", GroupTag::H3}};
  auto it = m.find(s);
  if (it == m.end()) throw std::invalid_argument("unknown group tag: " + s);
  return it->second;
}

Eigen::Vector3d LieAlgebra3::bracket(const Eigen::Vector3d& x, const Eigen::Vector3d& y) const {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[k] += c[k][i][j] * x[i] * y[j];
  return out;
}

double LieAlgebra3::antisymmetry_residual() const {
  double r = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(c[k][i][j] + c[k][j][i]));
  return r;
}

double LieAlgebra3::jacobi_residual() const {
  double r = 0.0;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double s = 0.0;
          for (int m = 0; m < 3; ++m)
            s += c[m][i][j] * c[l][m][k] + c[m][j][k] * c[l][m][i] + c[m][k][i] * c[l][m][j];
          r = std::max(r, std::abs(s));
        }
  return r;
}

namespace {

// Table basis: [e1,e2] = a e2 + b3 e3, [e1,e3] = a e3 - b2 e2, [e2,e3] = b1 e1.
LieAlgebra3 from_table_row(double a, double b1, double b2, double b3, const std::string& label) {
  LieAlgebra3 alg;
  alg.label = label;
  alg.basis = BasisTag::Table;
  auto set = [&](int k, int i, int j, double v) {
    alg.c[k][i][j] += v;
    alg.c[k][j][i] -= v;
  };
  set(1, 0, 1, a);
  set(2, 0, 1, b3);
  set(2, 0, 2, a);
  set(1, 0, 2, -b2);
  set(0, 1, 2, b1);
  return alg;
}

}  // namespace

LieAlgebra3 bianchi_algebra(BianchiTag type, double a) {
  switch (type) {
    case BianchiTag::I: return from_table_row(0, 0, 0, 0, "I");
    case BianchiTag::II: return from_table_row(0, 1, 0, 0, "II");
    case BianchiTag::III: return from_table_row(1, 0, 1, -1, "III");
    case BianchiTag::IV: return from_table_row(1, 0, 0, 1, "IV");
    case BianchiTag::V: return from_table_row(1, 0, 0, 0, "V");
    case BianchiTag::VI0: return from_table_row(0, 1, -1, 0, "VI0");
    case BianchiTag::VIa: {
      if (!(a > 0.0) || a == 1.0 || !std::isfinite(a))
        throw std::invalid_argument("VI_a requires 0 < a < inf, a != 1");
      auto alg = from_table_row(a, 0, 1, -1, "VIa");
      alg.a_param = a;
      return alg;
    }
    case BianchiTag::VII0: return from_table_row(0, 1, 1, 0, "VII0");
    case BianchiTag::VIIa: {
      if (!(a > 0.0)) throw std::invalid_argument("VII_a requires a > 0");
      auto alg = from_table_row(a, 0, 1, 1, "VIIa");
      alg.a_param = a;
      return alg;
    }
    case BianchiTag::VIII: return from_table_row(0, 1, 1, -1, "VIII");
    case BianchiTag::IX: return from_table_row(0, 1, 1, 1, "IX");
  }
  throw std::invalid_argument("unknown Bianchi tag");
}

LieAlgebra3 gmu_algebra(double mu) {
  // [e1,e2] = 0, [e3,e1] = mu e1, [e3,e2] = e2.
  LieAlgebra3 alg;
  alg.label = "Gmu";
  alg.basis = BasisTag::Weierstrass;
  alg.mu = mu;
  alg.mu_warning = (mu < -1.0 || mu > 1.0);
  alg.c[0][2][0] = mu;
  alg.c[0][0][2] = -mu;
  alg.c[1][2][1] = 1.0;
  alg.c[1][1][2] = -1.0;
  return alg;
}

LieAlgebra3 adjoint_extension(const Eigen::Matrix2d& A) {
  // ideal = span(e1, e2), eta = e3, [e3, xi] = A xi.
  LieAlgebra3 alg;
  alg.basis = BasisTag::Weierstrass;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      alg.c[i][2][j] = A(i, j);
      alg.c[i][j][2] = -A(i, j);
    }
  // classification of A up to A -> lambda B A B^{-1}
  const double tr = A.trace(), det = A.determinant();
  const double nrm = A.norm();
  if (nrm < 1e-14) {
    alg.label = "I";
  } else {
    const double disc = tr * tr - 4.0 * det;
    if (std::abs(disc) < 1e-12 * std::max(1.0, nrm * nrm)) {
      // repeated eigenvalue
      if (std::abs(tr) < 1e-12 * nrm)
        alg.label = "II";  // nilpotent
      else if ((A - 0.5 * tr * Eigen::Matrix2d::Identity()).norm() < 1e-12 * nrm)
        alg.label = "V";
      else
        alg.label = "IV";
    } else if (disc > 0.0) {
      const double l1 = 0.5 * (tr - std::sqrt(disc));
      const double l2 = 0.5 * (tr + std::sqrt(disc));
      if (std::abs(l1) < 1e-12 * nrm || std::abs(l2) < 1e-12 * nrm)
        alg.label = "III";
      else if (std::abs(tr) < 1e-12 * nrm)
        alg.label = "VI0";
      else {
        alg.label = "VIa";
        // mu = l1/l2 with |mu| <= 1; a = (1+mu)/(1-mu)
        double m = l1 / l2;
        if (std::abs(m) > 1.0) m = 1.0 / m;
        alg.mu = m;
        alg.a_param = (1.0 + m) / (1.0 - m);
      }
    } else {
      if (std::abs(tr) < 1e-12 * nrm)
        alg.label = "VII0";
      else {
        alg.label = "VIIa";
        alg.a_param = std::abs(tr) / std::sqrt(-disc);
      }
    }
  }
  return alg;
}

LieAlgebra3 weierstrass_algebra(GroupTag g, double mu) {
  auto cyclic = [](double s, const std::string& label) {
    // [e1,e2] = s e3 cyclic
    LieAlgebra3 alg;
    alg.label = label;
    alg.basis = BasisTag::Weierstrass;
    alg.scale = s;
    alg.c[2][0][1] = s;
    alg.c[2][1][0] = -s;
    alg.c[0][1][2] = s;
    alg.c[0][2][1] = -s;
    alg.c[1][2][0] = s;
    alg.c[1][0][2] = -s;
    return alg;
  };
  switch (g) {
    case GroupTag::R3: {
      LieAlgebra3 alg;
      alg.label = "R3";
      alg.basis = BasisTag::Weierstrass;
      return alg;
    }
    case GroupTag::SU2: return cyclic(2.0, "SU2");  // unit three-sphere
    case GroupTag::Nil: {
      // [e1,e2] = e3 only (tau = 1/2); e3 along the rotation axis.
      LieAlgebra3 alg;
      alg.label = "Nil";
      alg.basis = BasisTag::Weierstrass;
      alg.c[2][0][1] = 1.0;
      alg.c[2][1][0] = -1.0;
      return alg;
    }
    case GroupTag::SL2R: {
      // E(kappa=-1, tau=1): [e1,e2] = 2 e3, [e2,e3] = -1/2 e1, [e3,e1] = -1/2 e2.
      LieAlgebra3 alg;
      alg.label = "SL2R";
      alg.basis = BasisTag::Weierstrass;
      auto set = [&](int k, int i, int j, double v) {
        alg.c[k][i][j] = v;
        alg.c[k][j][i] = -v;
      };
      set(2, 0, 1, 2.0);
      set(0, 1, 2, -0.5);
      set(1, 2, 0, -0.5);
      return alg;
    }
    case GroupTag::Sol: {
      auto alg = gmu_algebra(-1.0);
      alg.label = "Sol";
      return alg;
    }
    case GroupTag::Gmu: return gmu_algebra(mu);
    case GroupTag::H2xR: return gmu_algebra(0.0);
    case GroupTag::H3: return gmu_algebra(1.0);
  }
  throw std::invalid_argument("no Weierstrass basis registered");
}

Connection3 christoffel(const LieAlgebra3& alg) {
  Connection3 conn;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        conn.gamma[i][j][k] = 0.5 * (alg.c[i][k][j] + alg.c[j][i][k] + alg.c[k][i][j]);
  return conn;
}

CurvatureTensor curvature_tensor(const LieAlgebra3& alg) {
  const Connection3 conn = christoffel(alg);
  CurvatureTensor R{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        // R(e_i, e_j) e_k
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        for (int m = 0; m < 3; ++m) {
          v += conn.gamma[m][k][j] * conn.covariant(m, i);
          v -= conn.gamma[m][k][i] * conn.covariant(m, j);
          v -= alg.c[m][i][j] * conn.covariant(k, m);
        }
        for (int l = 0; l < 3; ++l) R[i][j][k][l] = v[l];
      }
  return R;
}

double sectional_curvature(const CurvatureTensor& R, const Eigen::Vector3d& X,
                           const Eigen::Vector3d& Y) {
  const double den = X.squaredNorm() * Y.squaredNorm() - std::pow(X.dot(Y), 2);
  if (den < 1e-14) throw std::invalid_argument("sectional_curvature: degenerate plane");
  double num = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) num += R[i][j][k][l] * X[i] * Y[j] * Y[k] * X[l];
  return num / den;
}

double sectional_curvature(const LieAlgebra3& alg, const Eigen::Vector3d& X,
                           const Eigen::Vector3d& Y) {
  return sectional_curvature(curvature_tensor(alg), X, Y);
}

double sectional_curvature_normal(const CurvatureTensor& R, const Eigen::Vector3d& n) {
  // any orthonormal pair spanning the plane orthogonal to n
  Eigen::Vector3d a = std::abs(n[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d X = (a - a.dot(n) * n).normalized();
  Eigen::Vector3d Y = n.cross(X);
  return sectional_curvature(R, X, Y);
}

GroupElement GroupModel::identity() const {
  GroupElement g;
  g.kind = kind;
  g.chart = chart;
  g.m = Eigen::MatrixXcd::Identity(gens[0].rows(), gens[0].cols());
  return g;
}

namespace {

double elliptic_angle(const Eigen::MatrixXcd& m) {
  // rotation angle of an SL(2,R) matrix, from its polar part
  return std::atan2(std::real(m(1, 0) - m(0, 1)), std::real(m(0, 0) + m(1, 1)));
}

}  // namespace

GroupElement GroupElement::mul(const GroupElement& rhs) const {
  GroupElement out;
  out.kind = kind;
  out.chart = chart;
  out.m = m * rhs.m;
  out.winding = winding + rhs.winding;
  if (kind == ModelKind::SpecialLinear) {
    // unwrap the elliptic angle across the product
    const double before = elliptic_angle(m) + elliptic_angle(rhs.m);
    const double after = elliptic_angle(out.m);
    double d = before - after;
    out.winding += static_cast<int>(std::lround(d / (2.0 * M_PI)));
  }
  return out;
}

double GroupElement::model_residual() const {
  const auto n = m.rows();
  switch (kind) {
    case ModelKind::Translation:
    case ModelKind::Affine: {
      double r = m.imag().cwiseAbs().maxCoeff();
      for (int j = 0; j < n; ++j)
        r = std::max(r, std::abs(m(n - 1, j) - (j == n - 1 ? 1.0 : 0.0)));
      if (kind == ModelKind::Translation)
        r = std::max(r, (m.real().topLeftCorner(n - 1, n - 1) -
                         Eigen::MatrixXd::Identity(n - 1, n - 1))
                            .cwiseAbs()
                            .maxCoeff());
      return r;
    }
    case ModelKind::Unipotent: {
      double r = m.imag().cwiseAbs().maxCoeff();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
          r = std::max(r, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
      return r;
    }
    case ModelKind::Unitary: {
      double r = (m * m.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
      return std::max(r, std::abs(m.determinant() - 1.0));
    }
    case ModelKind::SpecialLinear: {
      double r = m.imag().cwiseAbs().maxCoeff();
      return std::max(r, std::abs(m.determinant() - 1.0));
    }
  }
  return 0.0;
}

GroupModel model_for(const LieAlgebra3& alg) {
  GroupModel model;
  auto Z = [](int n) { return Eigen::MatrixXcd::Zero(n, n); };
  if (alg.label == "R3" || alg.label == "I") {
    model.kind = ModelKind::Translation;
    model.chart = "r3";
    for (int i = 0; i < 3; ++i) {
      Eigen::MatrixXcd M = Z(4);
      M(i, 3) = 1.0;
      model.gens.push_back(M);
    }
    return model;
  }
  if (alg.label == "Nil" && alg.basis == BasisTag::Weierstrass) {
    model.kind = ModelKind::Unipotent;
    model.chart = "nil";
    Eigen::MatrixXcd M1 = Z(3), M2 = Z(3), M3 = Z(3);
    M1(0, 1) = 1.0;
    M2(1, 2) = 1.0;
    M3(0, 2) = 1.0;
    model.gens = {M1, M2, M3};
    return model;
  }
  if (alg.label == "SU2" || alg.label == "IX") {
    model.kind = ModelKind::Unitary;
    model.chart = "su2";
    const double s = (alg.label == "SU2") ? alg.scale : 1.0;
    const std::complex<double> I(0.0, 1.0);
    Eigen::MatrixXcd s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;
    model.gens = {Eigen::MatrixXcd(-I * (s / 2.0) * s1), Eigen::MatrixXcd(-I * (s / 2.0) * s2),
                  Eigen::MatrixXcd(-I * (s / 2.0) * s3)};
    return model;
  }
  if (alg.label == "SL2R") {
    model.kind = ModelKind::SpecialLinear;
    model.chart = "sl2r";
    Eigen::MatrixXcd M1(2, 2), M2(2, 2), M3(2, 2);
    M1 << 0.5, 0, 0, -0.5;
    M2 << 0, 0.5, 0.5, 0;
    M3 << 0, 0.25, -0.25, 0;
    model.gens = {M1, M2, M3};
    return model;
  }
  if (alg.label == "VIII") {
    model.kind = ModelKind::SpecialLinear;
    model.chart = "sl2r";
    // table basis: [e1,e2] = -e3, [e1,e3] = -e2, [e2,e3] = e1
    Eigen::MatrixXcd M1(2, 2), M2(2, 2), M3(2, 2);
    M1 << 0.5, 0, 0, -0.5;
    M2 << 0, 0.5, 0.5, 0;
    M3 << 0, -0.5, 0.5, 0;
    model.gens = {M1, M2, M3};
    return model;
  }
  if (alg.basis == BasisTag::Weierstrass) {
    // extension model with ideal span(e1, e2), eta = e3: [[exp(A t), s], [0, 1]]
    model.kind = ModelKind::Affine;
    model.chart = "affine";
    Eigen::MatrixXcd M1 = Z(3), M2 = Z(3), M3 = Z(3);
    M1(0, 2) = 1.0;
    M2(1, 2) = 1.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) M3(i, j) = alg.c[i][2][j];
    model.gens = {M1, M2, M3};
    return model;
  }
  // table basis extension types I--VII: ideal span(e2, e3), eta = e1
  if (alg.label == "II" || alg.label == "III" || alg.label == "IV" || alg.label == "V" ||
      alg.label == "VI0" || alg.label == "VIa" || alg.label == "VII0" || alg.label == "VIIa") {
    model.kind = ModelKind::Affine;
    model.chart = "affine";
    Eigen::MatrixXcd M1 = Z(3), M2 = Z(3), M3 = Z(3);
    M2(0, 2) = 1.0;
    M3(1, 2) = 1.0;
    // [e1, e_p] components on the ideal, indices 0 <-> e2, 1 <-> e3
    M1(0, 0) = alg.c[1][0][1];
    M1(1, 0) = alg.c[2][0][1];
    M1(0, 1) = alg.c[1][0][2];
    M1(1, 1) = alg.c[2][0][2];
    model.gens = {M1, M2, M3};
    return model;
  }
  throw std::invalid_argument("no matrix model registered for label " + alg.label);
}

GroupElement model_exp(const GroupModel& model, const Eigen::Vector3d& xi, double h) {
  Eigen::MatrixXcd M = h * (xi[0] * model.gens[0] + xi[1] * model.gens[1] + xi[2] * model.gens[2]);
  GroupElement g;
  g.kind = model.kind;
  g.chart = model.chart;
  g.m = M.exp();
  if (model.kind == ModelKind::SpecialLinear) g.winding = 0;
  return g;
}

GroupElement model_exp(const LieAlgebra3& alg, const Eigen::Vector3d& xi, double h) {
  return model_exp(model_for(alg), xi, h);
}

Eigen::Vector3d chart_coords(const GroupElement& g) {
  if (g.chart == "r3")
    return {std::real(g.m(0, 3)), std::real(g.m(1, 3)), std::real(g.m(2, 3))};
  if (g.chart == "nil") {
    const double x = std::real(g.m(0, 1));
    const double y = std::real(g.m(1, 2));
    const double z = std::real(g.m(0, 2)) - 0.5 * x * y;  // exponential chart
    return {x, y, z};
  }
  if (g.chart == "affine") {
    // coordinates (s1, s2, t) with t recovered from the block exp(A t);
    // reported as the translation part plus the trace-based parameter
    return {std::real(g.m(0, 2)), std::real(g.m(1, 2)),
            std::log(std::max(1e-300, std::abs(std::real(g.m(0, 0) * g.m(1, 1)))))};
  }
  if (g.chart == "su2") {
    // quaternion components (q1, q2, q3); m = q0 I - i(q1 s1 + q2 s2 + q3 s3)
    return {-std::imag(g.m(0, 1)), -std::real(g.m(0, 1)), -std::imag(g.m(0, 0))};
  }
  if (g.chart == "sl2r") {
    // Iwasawa-style chart: rotation angle (with winding), log-scaling, shear
    const double theta =
        std::atan2(std::real(g.m(1, 0) - g.m(0, 1)), std::real(g.m(0, 0) + g.m(1, 1)));
    return {theta + 2.0 * M_PI * g.winding, 0.0, 0.0};
  }
  throw std::invalid_argument("unknown chart: " + g.chart);
}

LieAlgebra3 algebra_from_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const std::string type = kv.count("type") ? kv["type"] : "I";
  const double a = kv.count("a") ? std::stod(kv["a"]) : 0.0;
  const double mu = kv.count("mu") ? std::stod(kv["mu"]) : 0.0;
  const std::string basis = kv.count("basis") ? kv["basis"] : "table";

  LieAlgebra3 alg;
  if (basis == "weierstrass") {
    alg = weierstrass_algebra(group_from_string(type), mu);
  } else if (type == "gmu" || type == "Gmu") {
    alg = gmu_algebra(mu);
  } else {
    static const std::map<std::string, BianchiTag> tags = {
        {"I", BianchiTag::I},       {"II", BianchiTag::II},   {"III", BianchiTag::III},
        {"IV", BianchiTag::IV},     {"V", BianchiTag::V},     {"VI0", BianchiTag::VI0},
        {"VIa", BianchiTag::VIa},   {"VII0", BianchiTag::VII0}, {"VIIa", BianchiTag::VIIa},
        {"VIII", BianchiTag::VIII}, {"IX", BianchiTag::IX}};
    auto it = tags.find(type);
    if (it == tags.end()) throw std::invalid_argument("unknown algebra type: " + type);
    alg = bianchi_algebra(it->second, a);
  }
  if (kv.count("scale")) {
    const double s = std::stod(kv["scale"]);
    if (s <= 0.0) throw std::invalid_argument("scale must be positive");
    for (auto& plane : alg.c)
      for (auto& row : plane)
        for (auto& v : row) v *= s;
    alg.scale *= s;
  }
  return alg;
}

}  // namespace spinrep::liegeo
