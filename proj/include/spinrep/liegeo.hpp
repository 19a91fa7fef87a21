#ifndef SPINREP_LIEGEO_HPP
#define SPINREP_LIEGEO_HPP

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace spinrep::liegeo {

enum class BianchiTag { I, II, III, IV, V, VI0, VIa, VII0, VIIa, VIII, IX };

enum class GroupTag { R3, SU2, Nil, SL2R, Sol, Gmu, H2xR, H3 };

enum class BasisTag { Table, Weierstrass };

std::string to_string(BianchiTag t);
std::string to_string(GroupTag t);
GroupTag group_from_string(const std::string& s);

/// Structure constants of a 3d real Lie algebra, [e_i, e_j] = c^k_{ij} e_k,
/// together with classification metadata.  The metric is the one making
/// (e1, e2, e3) orthonormal.
struct LieAlgebra3 {
  // c[k][i][j]
  std::array<std::array<std::array<double, 3>, 3>, 3> c{};
  std::string label;
  BasisTag basis = BasisTag::Table;
  double a_param = 0.0;  // Bianchi VI_a / VII_a parameter
  double mu = 0.0;       // G_mu parameter
  double scale = 1.0;
  bool mu_warning = false;  // set when mu outside [-1, 1]

  double bracket(int k, int i, int j) const { return c[k][i][j]; }
  Eigen::Vector3d bracket(const Eigen::Vector3d& x, const Eigen::Vector3d& y) const;
  double jacobi_residual() const;
  double antisymmetry_residual() const;
};

/// Connection coefficients Gamma^i_{jk}, nabla_{e_k} e_j = Gamma^i_{jk} e_i.
struct Connection3 {
  std::array<std::array<std::array<double, 3>, 3>, 3> gamma{};  // gamma[i][j][k]
  // nabla_{e_k} e_j as a vector.
  Eigen::Vector3d covariant(int j, int k) const {
    return {gamma[0][j][k], gamma[1][j][k], gamma[2][j][k]};
  }
};

enum class ModelKind { Translation, Affine, Unipotent, Unitary, SpecialLinear };

/// Element of a faithful matrix model of the group.  For SL(2,R)~ the
/// winding number of the elliptic angle is tracked alongside the matrix.
struct GroupElement {
  Eigen::MatrixXcd m;
  ModelKind kind = ModelKind::Translation;
  std::string chart;
  int winding = 0;

  GroupElement mul(const GroupElement& rhs) const;
  double model_residual() const;  // distance from the model subgroup
};

/// Matrix generators M_i realizing the bracket, [M_i, M_j] = c^k_{ij} M_k.
struct GroupModel {
  ModelKind kind;
  std::vector<Eigen::MatrixXcd> gens;
  std::string chart;
  GroupElement identity() const;
};

LieAlgebra3 bianchi_algebra(BianchiTag type, double a = 0.0);
LieAlgebra3 gmu_algebra(double mu);
LieAlgebra3 adjoint_extension(const Eigen::Matrix2d& A);

/// The basis the Dirac potentials are written in: e3 along the rotation axis
/// for Nil and SL(2,R)~, e3 the submersion direction for Sol/G_mu, the unit
/// three-sphere normalization for SU(2).
LieAlgebra3 weierstrass_algebra(GroupTag g, double mu = 0.0);

Connection3 christoffel(const LieAlgebra3& alg);

/// R[i][j][k][l] = <R(e_i,e_j) e_k, e_l> with
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
using CurvatureTensor = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;
CurvatureTensor curvature_tensor(const LieAlgebra3& alg);

double sectional_curvature(const LieAlgebra3& alg, const Eigen::Vector3d& X,
                           const Eigen::Vector3d& Y);
double sectional_curvature(const CurvatureTensor& R, const Eigen::Vector3d& X,
                           const Eigen::Vector3d& Y);
/// Sectional curvature of the plane orthogonal to the unit normal n.
double sectional_curvature_normal(const CurvatureTensor& R, const Eigen::Vector3d& n);

GroupModel model_for(const LieAlgebra3& alg);
GroupElement model_exp(const LieAlgebra3& alg, const Eigen::Vector3d& xi, double h);
GroupElement model_exp(const GroupModel& model, const Eigen::Vector3d& xi, double h);

/// Coordinates read off the matrix in the registered chart ("r3", "nil",
/// "affine", "su2").
Eigen::Vector3d chart_coords(const GroupElement& g);

/// Parse an algebra description from key = value lines
/// (keys: type, a, mu, scale, basis).
LieAlgebra3 algebra_from_config(const std::string& text);

}  // namespace spinrep::liegeo

#endif
