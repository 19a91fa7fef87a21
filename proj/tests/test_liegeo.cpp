#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "spinrep/liegeo.hpp"

#include <doctest.h>

#include <random>

using namespace spinrep::liegeo;

namespace {

double max_c_diff(const LieAlgebra3& a, const LieAlgebra3& b) {
  double m = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a.c[k][i][j] - b.c[k][i][j]));
  return m;
}

double curvature_symmetry_residual(const CurvatureTensor& R) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          m = std::max(m, std::abs(R[i][j][k][l] + R[j][i][k][l]));
          m = std::max(m, std::abs(R[i][j][k][l] + R[i][j][l][k]));
          m = std::max(m, std::abs(R[i][j][k][l] - R[k][l][i][j]));
          // first Bianchi
          m = std::max(m, std::abs(R[i][j][k][l] + R[j][k][i][l] + R[k][i][j][l]));
        }
  return m;
}

}  // namespace

TEST_CASE("bianchi table rows") {
  const auto I = bianchi_algebra(BianchiTag::I);
  CHECK(max_c_diff(I, LieAlgebra3{}) == 0.0);

  const auto II = bianchi_algebra(BianchiTag::II);
  // only nonzero bracket [e2,e3] = e1
  CHECK(II.c[0][1][2] == 1.0);
  CHECK(II.c[0][2][1] == -1.0);
  double others = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(k == 0 && ((i == 1 && j == 2) || (i == 2 && j == 1))))
          others = std::max(others, std::abs(II.c[k][i][j]));
  CHECK(others == 0.0);

  const auto IX = bianchi_algebra(BianchiTag::IX);
  CHECK(IX.c[2][0][1] == 1.0);  // [e1,e2] = e3
  CHECK(IX.c[0][1][2] == 1.0);  // [e2,e3] = e1
  CHECK(IX.c[1][2][0] == 1.0);  // [e3,e1] = e2

  CHECK_THROWS_AS(bianchi_algebra(BianchiTag::VIa, -1.0), std::invalid_argument);
}

TEST_CASE("gmu family endpoints") {
  const auto m = gmu_algebra(-1.0);
  // [e3,e1] = -e1, [e3,e2] = e2, [e1,e2] = 0
  CHECK(m.c[0][2][0] == doctest::Approx(-1.0));
  CHECK(m.c[1][2][1] == doctest::Approx(1.0));
  CHECK(m.c[0][0][1] == 0.0);
  CHECK(m.jacobi_residual() < 1e-12);

  const auto g0 = gmu_algebra(0.0);
  CHECK(g0.c[1][2][1] == doctest::Approx(1.0));
  CHECK(g0.c[0][2][0] == 0.0);

  const auto g1 = gmu_algebra(1.0);
  CHECK(g1.c[0][2][0] == doctest::Approx(1.0));
  CHECK(g1.c[1][2][1] == doctest::Approx(1.0));

  CHECK(gmu_algebra(2.0).mu_warning);
  CHECK_FALSE(gmu_algebra(0.5).mu_warning);
}

TEST_CASE("christoffel formula") {
  CHECK(christoffel(bianchi_algebra(BianchiTag::I)).gamma[2][0][1] == 0.0);

  const auto nil = weierstrass_algebra(GroupTag::Nil);
  const auto conn = christoffel(nil);
  CHECK(conn.gamma[2][0][1] == doctest::Approx(-0.5));  // Gamma^3_{12}
  CHECK(conn.gamma[2][1][0] == doctest::Approx(0.5));   // Gamma^3_{21}

  // metric compatibility on a generic algebra
  const auto alg = bianchi_algebra(BianchiTag::VIa, 0.7);
  const auto c2 = christoffel(alg);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(c2.gamma[i][j][k] == doctest::Approx(-c2.gamma[j][i][k]).epsilon(1e-12));
}

TEST_CASE("curvature tensor symmetries and known values") {
  for (auto tag : {BianchiTag::I, BianchiTag::II, BianchiTag::IV, BianchiTag::V,
                   BianchiTag::VI0, BianchiTag::VII0, BianchiTag::VIII, BianchiTag::IX}) {
    const auto R = curvature_tensor(bianchi_algebra(tag));
    CHECK(curvature_symmetry_residual(R) < 1e-12);
  }
  for (double mu : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const auto R = curvature_tensor(gmu_algebra(mu));
    CHECK(curvature_symmetry_residual(R) < 1e-12);
  }

  // abelian: flat
  const auto RI = curvature_tensor(bianchi_algebra(BianchiTag::I));
  CHECK(curvature_symmetry_residual(RI) == 0.0);
  CHECK(std::abs(RI[0][1][1][0]) == 0.0);

  // type IX table normalization: sectional curvature 1/4 on coordinate planes
  const auto IX = bianchi_algebra(BianchiTag::IX);
  const Eigen::Vector3d e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  CHECK(sectional_curvature(IX, e1, e2) == doctest::Approx(0.25));
  CHECK(sectional_curvature(IX, e2, e3) == doctest::Approx(0.25));
  CHECK(sectional_curvature(IX, e1, e3) == doctest::Approx(0.25));

  // G_1 is hyperbolic space: constant curvature -1 on random planes
  const auto G1 = gmu_algebra(1.0);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Eigen::Vector3d X{N(rng), N(rng), N(rng)}, Y{N(rng), N(rng), N(rng)};
    CHECK(sectional_curvature(G1, X, Y) == doctest::Approx(-1.0).epsilon(1e-10));
  }
}

TEST_CASE("weierstrass-basis nil sectional curvatures") {
  const auto nil = weierstrass_algebra(GroupTag::Nil);
  const Eigen::Vector3d e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  CHECK(sectional_curvature(nil, e1, e2) == doctest::Approx(-0.75));
  CHECK(sectional_curvature(nil, e2, e3) == doctest::Approx(0.25));

  // K on the plane normal to n equals 1/4 - n3^2
  const auto R = curvature_tensor(nil);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    Eigen::Vector3d n{N(rng), N(rng), N(rng)};
    n.normalize();
    CHECK(sectional_curvature_normal(R, n) ==
          doctest::Approx(0.25 - n.z() * n.z()).epsilon(1e-10));
  }

  CHECK_THROWS_AS(sectional_curvature(nil, e1, Eigen::Vector3d(2 * e1)), std::invalid_argument);
}

TEST_CASE("model exponentials") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N(0.0, 1.0);

  // h = 0 gives the identity in every model
  for (auto tag : {GroupTag::R3, GroupTag::Nil, GroupTag::SU2, GroupTag::SL2R, GroupTag::Sol}) {
    const auto alg = weierstrass_algebra(tag);
    const Eigen::Vector3d xi{N(rng), N(rng), N(rng)};
    const auto e = model_exp(alg, xi, 0.0);
    CHECK((e.m - model_for(alg).identity().m).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(e.model_residual() < 1e-12);
  }

  // abelian: exp adds
  const auto flat = bianchi_algebra(BianchiTag::I);
  const Eigen::Vector3d a{0.3, -0.2, 0.9}, b{-1.1, 0.4, 0.2};
  const auto lhs = model_exp(flat, a, 1.0).mul(model_exp(flat, b, 1.0));
  const auto rhs = model_exp(flat, Eigen::Vector3d(a + b), 1.0);
  CHECK((lhs.m - rhs.m).cwiseAbs().maxCoeff() < 1e-12);

  // commutator consistency with the bracket, via numerical differentiation
  for (auto tag : {GroupTag::Nil, GroupTag::SU2, GroupTag::SL2R, GroupTag::Sol}) {
    const auto alg = weierstrass_algebra(tag);
    const Eigen::Vector3d e1{1, 0, 0}, e2{0, 1, 0};
    const double h = 1e-3;
    const auto comm = model_exp(alg, e1, h)
                          .mul(model_exp(alg, e2, h))
                          .mul(model_exp(alg, e1, -h))
                          .mul(model_exp(alg, e2, -h));
    const auto br = model_exp(alg, alg.bracket(e1, e2), h * h);
    CHECK((comm.m - br.m).cwiseAbs().maxCoeff() < 20.0 * h * h * h);
  }
}

TEST_CASE("left invariance recovers the structure constants") {
  // d/dh at 0 of log( exp(h ei) exp(h ej) exp(-h ei) exp(-h ej) ) ~ h^2 [ei,ej];
  // compare the h^2 coefficient against c^k_{ij} through chart coordinates.
  const auto nil = weierstrass_algebra(GroupTag::Nil);
  const double h = 1e-3;
  const Eigen::Vector3d e1{1, 0, 0}, e2{0, 1, 0};
  const auto comm = model_exp(nil, e1, h)
                        .mul(model_exp(nil, e2, h))
                        .mul(model_exp(nil, e1, -h))
                        .mul(model_exp(nil, e2, -h));
  const Eigen::Vector3d coords = chart_coords(comm) / (h * h);
  CHECK(coords.z() == doctest::Approx(1.0).epsilon(1e-4));  // [e1,e2] = e3
  CHECK(std::abs(coords.x()) < 1e-4);
  CHECK(std::abs(coords.y()) < 1e-4);
}

TEST_CASE("adjoint extensions") {
  CHECK(max_c_diff(adjoint_extension(Eigen::Matrix2d::Zero()),
                   bianchi_algebra(BianchiTag::I)) == 0.0);

  Eigen::Matrix2d A;
  A << 0, 1, 0, 0;
  const auto nil = adjoint_extension(A);
  CHECK(nil.jacobi_residual() < 1e-12);
  // [e3, e2] = e1 up to the stored labeling: the image of ad is 1-dim, nilpotent
  CHECK(nil.label == "II");

  const double mu = 0.37;
  CHECK(max_c_diff(adjoint_extension(Eigen::Vector2d(mu, 1.0).asDiagonal().toDenseMatrix()),
                   gmu_algebra(mu)) < 1e-14);
}

TEST_CASE("algebra config parsing") {
  const auto a = algebra_from_config("type = IX\n");
  CHECK(a.label == "IX");
  const auto b = algebra_from_config("type = gmu\nmu = -1\n");
  CHECK(max_c_diff(b, gmu_algebra(-1.0)) == 0.0);
  const auto c = algebra_from_config("type = VIa\na = 0.5\n");
  CHECK(c.a_param == doctest::Approx(0.5));
  CHECK_THROWS_AS(algebra_from_config("type = nonsense\n"), std::invalid_argument);
}
