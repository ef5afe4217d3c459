#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "slcert/complex_core.hpp"
#include "slcert/defining_family.hpp"
#include "slcert/random.hpp"
#include "slcert/slc_criterion.hpp"

namespace slcert {
namespace {

double r019(const PointC2& z) { return r_eps(z, EpsilonParam(0.19)); }

TEST(WirtingerGradient, ModulusSquared) {
  const auto g = wirtinger_gradient([](const PointC2& z) { return std::norm(z.s()); },
                                    PointC2(1.0, 0.0), 1e-5);
  EXPECT_NEAR(std::abs(g.r_s - cplx(1.0, 0.0)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(g.r_p), 0.0, 1e-12);
}

TEST(WirtingerGradient, LinearFunction) {
  const auto f = [](const PointC2& z) { return z.s().real(); };
  for (const PointC2& z0 : {PointC2(0.0, 0.0), PointC2({0.3, -0.7}, {0.2, 0.5})}) {
    const auto g = wirtinger_gradient(f, z0);
    EXPECT_NEAR(std::abs(g.r_s - 0.5), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(g.r_p), 0.0, 1e-10);
  }
}

TEST(WirtingerGradient, DefiningFunctionAtReferencePoint) {
  const auto g = wirtinger_gradient(r019, PointC2(0.9, 0.0));
  EXPECT_NEAR(std::abs(g.r_s - 0.9), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(g.r_p - (-0.81)), 0.0, 1e-9);
}

// f = |s|^2 |p|^2 + Re(s^2 conj p):
//   df/ds = conj(s) |p|^2 + s conj(p),  df/dp = |s|^2 conj(p) + conj(s)^2 / 2
TEST(WirtingerGradient, PolynomialAgreesWithHandDerivatives) {
  const auto f = [](const PointC2& z) {
    return std::norm(z.s()) * std::norm(z.p()) + (z.s() * z.s() * std::conj(z.p())).real();
  };
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const PointC2 z(rng.in_disc(1.0), rng.in_disc(1.0));
    const cplx s = z.s(), p = z.p();
    const auto g = wirtinger_gradient(f, z, 1e-5);
    EXPECT_LT(std::abs(g.r_s - (std::conj(s) * std::norm(p) + s * std::conj(p))), 1e-8);
    EXPECT_LT(std::abs(g.r_p - (std::norm(s) * std::conj(p) + 0.5 * std::conj(s) * std::conj(s))),
              1e-8);
  }
}

TEST(WirtingerGradient, NonFiniteValueReportsStencilPoint) {
  const auto f = [](const PointC2& z) {
    return z.s().real() > 1.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  };
  try {
    wirtinger_gradient(f, PointC2(1.0, 0.0), 1e-3);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_GT(e.point().s().real(), 1.0);
  }
}

TEST(WirtingerHessian, StandardHermitianForm) {
  const auto f = [](const PointC2& z) { return std::norm(z.s()) + std::norm(z.p()); };
  const auto est = wirtinger_hessian(f, PointC2({0.2, 0.1}, {-0.3, 0.4}));
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(std::abs(est.hessian.levi[j][k] - (j == k ? 1.0 : 0.0)), 0.0, 1e-8);
      EXPECT_NEAR(std::abs(est.hessian.symm[j][k]), 0.0, 1e-8);
    }
  }
  EXPECT_FALSE(est.step_degenerate);
  EXPECT_FALSE(est.extrapolated.has_value());
}

TEST(WirtingerHessian, RealPartOfSquare) {
  const auto f = [](const PointC2& z) { return (z.s() * z.s()).real(); };
  const auto est = wirtinger_hessian(f, PointC2(0.5, 0.5));
  EXPECT_NEAR(std::abs(est.hessian.symm[0][0] - 1.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(est.hessian.symm[0][1]), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(est.hessian.symm[1][1]), 0.0, 1e-8);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(std::abs(est.hessian.levi[j][k]), 0.0, 1e-8);
  }
}

TEST(WirtingerHessian, HermitianAndSymmetricAfterSymmetrization) {
  const auto est = wirtinger_hessian(r019, PointC2({0.4, 0.3}, {0.2, -0.1}));
  const HessianPair& h = est.hessian;
  EXPECT_EQ(h.levi[0][1], std::conj(h.levi[1][0]));
  EXPECT_EQ(h.symm[0][1], h.symm[1][0]);
  EXPECT_EQ(h.levi[0][0].imag(), 0.0);
  EXPECT_LE(est.asymmetry, 1e-10);
}

TEST(WirtingerHessian, DefiningFunctionMarginAtReferencePoint) {
  const auto est = wirtinger_hessian(r019, PointC2(0.9, 0.0));
  const auto [levi, symm] = directional_second_derivatives(est.hessian, {0.81, 0.9});
  EXPECT_NEAR(levi - std::abs(symm), 0.3078, 1e-4);
  EXPECT_NEAR(std::abs(symm), 0.0, 1e-6);
}

TEST(WirtingerHessian, RichardsonReportsBothEstimates) {
  const auto est = wirtinger_hessian(r019, PointC2({0.6, 0.2}, {0.3, 0.1}), {.richardson = true});
  ASSERT_TRUE(est.extrapolated.has_value());
  const auto coarse = directional_second_derivatives(est.hessian, {1.0, 0.5});
  const auto fine = directional_second_derivatives(*est.extrapolated, {1.0, 0.5});
  EXPECT_NEAR(coarse.first, fine.first, 1e-5);
  EXPECT_NE(coarse.first, fine.first);
}

TEST(WirtingerHessian, HalvingStepChangesLittle) {
  const EpsilonParam eps(0.25);
  const RealFunctionC2 f = [eps](const PointC2& z) { return r_eps(z, eps); };
  for (const GridPoint& node : admissible_grid(eps, 8, 8)) {
    const BoundarySample b = BoundarySample::from_p(node.p, eps);
    const double h = default_hessian_step(b.point);
    const auto full = wirtinger_hessian(f, b.point, {.step = h});
    const auto half = wirtinger_hessian(f, b.point, {.step = 0.5 * h});
    const double scale = max_abs(full.hessian);
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        EXPECT_LE(std::abs(full.hessian.levi[j][k] - half.hessian.levi[j][k]), 1e-3 * scale);
        EXPECT_LE(std::abs(full.hessian.symm[j][k] - half.hessian.symm[j][k]), 1e-3 * scale);
      }
    }
  }
}

TEST(DirectionalSecondDerivatives, IdentityForm) {
  HessianPair h;
  h.levi = {{{1.0, 0.0}, {0.0, 1.0}}};
  auto [l1, s1] = directional_second_derivatives(h, {1.0, 0.0});
  EXPECT_EQ(l1, 1.0);
  EXPECT_EQ(s1, cplx{});
  auto [l2, s2] = directional_second_derivatives(h, {3.0, 4.0});
  EXPECT_DOUBLE_EQ(l2, 25.0);
  EXPECT_EQ(s2, cplx{});
}

TEST(DirectionalSecondDerivatives, ScalesQuadratically) {
  Rng rng(11);
  const auto est = wirtinger_hessian(r019, PointC2({0.4, 0.3}, {0.2, -0.1}));
  for (int i = 0; i < 100; ++i) {
    const DirectionC2 x{rng.in_disc(2.0), rng.in_disc(2.0)};
    const cplx t = rng.in_disc(3.0);
    const auto [l, s] = directional_second_derivatives(est.hessian, x);
    const auto [lt, st] = directional_second_derivatives(est.hessian, {t * x.s, t * x.p});
    EXPECT_NEAR(lt, std::norm(t) * l, 1e-12 * std::max(1.0, std::abs(lt)));
    EXPECT_LE(std::abs(st - t * t * s), 1e-12 * std::max(1.0, std::abs(st)));
  }
}

}  // namespace
}  // namespace slcert
