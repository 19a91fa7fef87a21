#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "spinrep/serial_ref.hpp"
#include "spinrep/spinfield.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace spinrep;
using spinrep::testing::random_spinor;

namespace {

CField sampled(const Grid2D& g, const std::function<cplx(cplx)>& f) {
  CField out(static_cast<size_t>(g.size()));
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) out[static_cast<size_t>(g.id(iu, iv))] = f(g.z(iu, iv));
  return out;
}

double max_abs(const CField& f) {
  double m = 0.0;
  for (const cplx& x : f) m = std::max(m, std::abs(x));
  return m;
}

double max_diff(const CField& a, const CField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("complex derivative stencils") {
  const Grid2D g(32, 32, 0.05, 0.05, false, false, cplx(-0.8, -0.8));
  const CField z = sampled(g, [](cplx w) { return w; });

  CHECK(max_abs(d_zbar(z, g)) < 1e-10);
  CField dz = d_z(z, g);
  for (const cplx& x : dz) CHECK(std::abs(x - 1.0) < 1e-10);

  // z^2: second-order convergence of the one-sided/central mix
  auto err = [&](int n) {
    const Grid2D gg(n, n, 1.6 / (n - 1), 1.6 / (n - 1), false, false, cplx(-0.8, -0.8));
    const CField f = sampled(gg, [](cplx w) { return w * w * std::exp(w); });
    const CField d = d_z(f, gg);
    const CField exact = sampled(gg, [](cplx w) { return (2.0 * w + w * w) * std::exp(w); });
    return max_diff(d, exact);
  };
  const double e32 = err(33), e64 = err(65);
  CHECK(testing::convergence_order(e32, e64) > 1.9);

  CHECK_THROWS_AS(d_z(CField(7), g), std::invalid_argument);
}

TEST_CASE("derivatives commute") {
  // d_u and d_v are tensor-product one-dimensional stencils, so d_z and
  // d_zbar commute to roundoff, not merely to O(h^2).
  const Grid2D g(48, 48, 0.03, 0.03, false, false, cplx(-0.7, -0.7));
  const CField f =
      sampled(g, [](cplx w) { return std::exp(w + std::conj(w) * std::conj(w)); });
  const CField a = d_z(d_zbar(f, g), g), b = d_zbar(d_z(f, g), g);
  CHECK(max_diff(a, b) < 1e-9);
}

TEST_CASE("Z factorization") {
  const Grid2D g(4, 4, 1.0, 1.0, false, false);
  SpinorField psi = SpinorField::constant(g, 1.0, 0.0);
  ZFactors Z = factorize_Z(psi);
  CHECK(std::abs(Z.Z1[0] - cplx(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(Z.Z2[0] - cplx(-0.5, 0.0)) < 1e-15);
  CHECK(std::abs(Z.Z3[0]) < 1e-15);

  SpinorField psi2 = SpinorField::constant(g, 0.0, 1.0);
  ZFactors Z2 = factorize_Z(psi2);
  CHECK(std::abs(Z2.Z1[0] - cplx(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(Z2.Z2[0] - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(Z2.Z3[0]) < 1e-15);

  // conformality identity on random spinors
  std::mt19937_64 rng(5);
  const Grid2D big(100, 100, 1.0, 1.0, false, false);
  SpinorField r = random_spinor(big, rng);
  ZFactors Zr = factorize_Z(r);
  double worst = 0.0;
  for (size_t i = 0; i < Zr.Z1.size(); ++i)
    worst = std::max(worst,
                     std::abs(Zr.Z1[i] * Zr.Z1[i] + Zr.Z2[i] * Zr.Z2[i] + Zr.Z3[i] * Zr.Z3[i]));
  CHECK(worst < 1e-14);
}

TEST_CASE("spinor recovery from Z") {
  // keep z away from 0, where psi1 vanishes and the sqrt branch is ambiguous
  const Grid2D g(40, 40, 0.04, 0.04, false, false, cplx(0.1, -0.8));
  const SpinorField psi = testing::sphere_spinor(1.0, g);
  const ZFactors Z = factorize_Z(psi);
  const SpinorField back = spinor_from_Z(Z, g, psi.H);
  // recovery is up to a global quaternionic sign; fix it on the first sample
  const cplx s = back.psi2[0] / psi.psi2[0];
  CHECK(std::abs(std::abs(s) - 1.0) < 1e-10);
  double worst = 0.0;
  for (size_t i = 0; i < back.psi1.size(); ++i) {
    worst = std::max(worst, std::abs(back.psi1[i] - s * psi.psi1[i]));
    worst = std::max(worst, std::abs(back.psi2[i] - s * psi.psi2[i]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("induced metric") {
  const Grid2D g(4, 4, 1.0, 1.0, false, false);
  CHECK(induced_metric(SpinorField::constant(g, 1.0, 0.0))[0] == doctest::Approx(1.0));
  CHECK(induced_metric(SpinorField::constant(g, 1.0, 1.0))[0] == doctest::Approx(2.0));
  SpinorField degen = SpinorField::constant(g, 0.0, 0.0);
  Mask flags;
  induced_metric(degen, &flags);
  CHECK(flags[0] == 1);  // flagged as degenerate
}

TEST_CASE("group potentials") {
  const Grid2D g(4, 4, 1.0, 1.0, false, false);
  std::mt19937_64 rng(17);
  SpinorField psi = random_spinor(g, rng);

  SUBCASE("euclidean is real and symmetric") {
    const auto pot = potentials(psi, liegeo::GroupTag::R3);
    for (size_t i = 0; i < pot.U.size(); ++i) {
      CHECK(pot.U[i].imag() == 0.0);
      CHECK(pot.U[i] == pot.V[i]);
      const double ea = std::norm(psi.psi1[i]) + std::norm(psi.psi2[i]);
      CHECK(pot.U[i].real() == doctest::Approx(0.5 * psi.H[i] * ea).epsilon(1e-14));
    }
  }

  SUBCASE("su2 conjugate pair and the H=0 value") {
    const auto pot = potentials(psi, liegeo::GroupTag::SU2);
    for (size_t i = 0; i < pot.U.size(); ++i)
      CHECK(std::abs(pot.U[i] - std::conj(pot.V[i])) == 0.0);
    SpinorField e = SpinorField::constant(g, 1.0, 0.0);
    const auto p0 = potentials(e, liegeo::GroupTag::SU2);
    CHECK(std::abs(p0.U[0] - cplx(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(p0.V[0] - cplx(0.0, 0.5)) < 1e-15);
  }

  SUBCASE("nil equality and cancellation") {
    const auto pot = potentials(psi, liegeo::GroupTag::Nil);
    for (size_t i = 0; i < pot.U.size(); ++i) CHECK(pot.U[i] == pot.V[i]);
    SpinorField e = SpinorField::constant(g, 1.0, 1.0);
    const auto p0 = potentials(e, liegeo::GroupTag::Nil);
    CHECK(std::abs(p0.U[0]) == 0.0);
  }

  SUBCASE("gmu at -1 matches sol") {
    const auto sol = potentials(psi, liegeo::GroupTag::Sol);
    const auto gm = potentials(psi, liegeo::GroupTag::Gmu, -1.0);
    for (size_t i = 0; i < sol.U.size(); ++i) {
      CHECK(std::abs(sol.U[i] - gm.U[i]) < 1e-14);
      CHECK(std::abs(sol.V[i] - gm.V[i]) < 1e-14);
      CHECK(sol.mask[i] == gm.mask[i]);
    }
  }

  SUBCASE("gmu is affine in mu") {
    const auto m1 = potentials(psi, liegeo::GroupTag::Gmu, -1.0);
    const auto p1 = potentials(psi, liegeo::GroupTag::Gmu, 1.0);
    const double t = 0.3;
    const auto mid = potentials(psi, liegeo::GroupTag::Gmu, -1.0 + 2.0 * t);
    for (size_t i = 0; i < mid.U.size(); ++i) {
      if (!m1.mask[i]) continue;
      CHECK(std::abs(mid.U[i] - ((1.0 - t) * m1.U[i] + t * p1.U[i])) < 1e-13);
      CHECK(std::abs(mid.V[i] - ((1.0 - t) * m1.V[i] + t * p1.V[i])) < 1e-13);
    }
  }

  SUBCASE("sol poles are masked") {
    SpinorField p = SpinorField::constant(g, 1.0, 0.0);
    const auto pot = potentials(p, liegeo::GroupTag::Sol);
    CHECK(pot.mask[0] == 0);
    CHECK(pot.U[0] == cplx(0.0, 0.0));
  }
}

TEST_CASE("dirac residual") {
  SUBCASE("constant free spinor") {
    const Grid2D g(16, 16, 0.1, 0.1, false, false);
    SpinorField psi = SpinorField::constant(g, 1.0, 2.0);
    PotentialField pot;
    pot.U.assign(static_cast<size_t>(g.size()), 0.0);
    pot.V.assign(static_cast<size_t>(g.size()), 0.0);
    pot.mask = full_mask(g);
    const auto res = dirac_residual(psi, pot, g);
    CHECK(masked_max_abs(res.r1, res.mask, g) < 1e-14);
    CHECK(masked_max_abs(res.r2, res.mask, g) < 1e-14);
  }

  SUBCASE("analytic sphere satisfies the euclidean equation") {
    auto res_at = [&](int n) {
      const Grid2D g(n, n, 1.6 / (n - 1), 1.6 / (n - 1), false, false, cplx(-0.8, -0.8));
      const SpinorField psi = testing::sphere_spinor(1.0, g);
      const auto pot = potentials(psi, liegeo::GroupTag::R3);
      const auto res = dirac_residual(psi, pot, g);
      return std::max(masked_max_abs(res.r1, res.mask, g), masked_max_abs(res.r2, res.mask, g));
    };
    const double r32 = res_at(33), r64 = res_at(65);
    CHECK(r64 < 1e-3);
    CHECK(testing::convergence_order(r32, r64) > 1.9);
  }

  SUBCASE("mismatched potentials are a negative control") {
    const Grid2D g(33, 33, 0.05, 0.05, false, false, cplx(-0.8, -0.8));
    SpinorField psi = testing::sphere_spinor(1.0, g);
    for (auto& h : psi.H) h = 3.0;  // wrong curvature
    const auto pot = potentials(psi, liegeo::GroupTag::R3);
    const auto res = dirac_residual(psi, pot, g);
    CHECK(masked_max_abs(res.r1, res.mask, g) > 0.1);
  }
}

TEST_CASE("quaternion flip") {
  const Grid2D g(33, 33, 0.05, 0.05, false, false, cplx(-0.8, -0.8));
  SpinorField psi = testing::sphere_spinor(1.0, g);

  const SpinorField twice = quaternion_flip(quaternion_flip(psi));
  for (size_t i = 0; i < psi.psi1.size(); ++i) {
    CHECK(std::abs(twice.psi1[i] + psi.psi1[i]) < 1e-15);
    CHECK(std::abs(twice.psi2[i] + psi.psi2[i]) < 1e-15);
  }

  // real euclidean potentials commute with the flip: the flipped spinor
  // solves the same equation, so its residual stays at stencil accuracy
  const auto direct = dirac_residual(psi, potentials(psi, liegeo::GroupTag::R3), g);
  const double ref = std::max(masked_max_abs(direct.r1, direct.mask, g),
                              masked_max_abs(direct.r2, direct.mask, g));
  const SpinorField flip = quaternion_flip(psi);
  const auto pot = potentials(flip, liegeo::GroupTag::R3);
  const auto res = dirac_residual(flip, pot, g);
  CHECK(masked_max_abs(res.r1, res.mask, g) < 2.0 * ref + 1e-12);
  CHECK(masked_max_abs(res.r2, res.mask, g) < 2.0 * ref + 1e-12);
}

TEST_CASE("serial reference kernels agree with the parallel ones") {
  const Grid2D g(64, 48, 0.05, 0.07, true, false, cplx(-1.0, -1.0));
  std::mt19937_64 rng(23);
  SpinorField psi = random_spinor(g, rng);
  // smooth field for derivative comparison
  const CField f = sampled(g, [](cplx w) { return std::exp(cplx(0, 1) * w) + std::conj(w); });

  CHECK(max_diff(serial::d_z(f, g), d_z(f, g)) == 0.0);
  CHECK(max_diff(serial::d_zbar(f, g), d_zbar(f, g)) == 0.0);

  const ZFactors Zs = serial::factorize_Z(psi), Zp = factorize_Z(psi);
  CHECK(max_diff(Zs.Z1, Zp.Z1) == 0.0);
  CHECK(max_diff(Zs.Z2, Zp.Z2) == 0.0);
  CHECK(max_diff(Zs.Z3, Zp.Z3) == 0.0);

  for (auto tag : {liegeo::GroupTag::R3, liegeo::GroupTag::Nil, liegeo::GroupTag::SU2,
                   liegeo::GroupTag::Sol, liegeo::GroupTag::SL2R}) {
    const auto ps = serial::potentials(psi, tag), pp = potentials(psi, tag);
    CHECK(max_diff(ps.U, pp.U) == 0.0);
    CHECK(max_diff(ps.V, pp.V) == 0.0);
  }
}
