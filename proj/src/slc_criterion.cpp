#include "slcert/slc_criterion.hpp"

#include <cmath>
#include <stdexcept>

namespace slcert {

TangentVectorC2::TangentVectorC2(cplx xs, cplx xp) : xs_(xs), xp_(xp) {
  if (!is_finite(xs) || !is_finite(xp)) {
    throw std::invalid_argument("TangentVectorC2: non-finite component");
  }
  if (xs == cplx{} && xp == cplx{}) {
    throw std::invalid_argument("TangentVectorC2: zero vector");
  }
}

TangentVectorC2 TangentVectorC2::normalized() const {
  const double n = norm();
  return {xs_ / n, xp_ / n};
}

TangentVectorC2 TangentVectorC2::scaled(cplx t) const { return {t * xs_, t * xp_}; }

double tangency_residual(const WirtingerGradient& g, const TangentVectorC2& x) {
  const double denom = g.norm() * x.norm();
  if (denom == 0.0) {
    throw DegenerateBoundaryError("tangency_residual: zero gradient");
  }
  return std::abs(g.pairing(x.as_direction())) / denom;
}

bool is_complex_tangent(const WirtingerGradient& g, const TangentVectorC2& x, double tol) {
  return tangency_residual(g, x) <= tol;
}

double quadratic_criterion_margin(double a, cplx b, cplx c) noexcept {
  return (a - 0.5 * std::norm(c)) - std::abs(b - 0.5 * c * c);
}

double slc_margin(const HessianPair& h, const TangentVectorC2& x) {
  const auto [levi, symm] = directional_second_derivatives(h, x.as_direction());
  return levi - std::abs(symm);
}

TangentVectorC2 canonical_tangent(const WirtingerGradient& g) {
  if (g.r_s == cplx{} && g.r_p == cplx{}) {
    throw DegenerateBoundaryError("canonical_tangent: zero gradient");
  }
  return {-g.r_p, g.r_s};
}

std::pair<double, cplx> quadratic_criterion_fd_check(cplx A, double a, cplx b, cplx c,
                                                     double step) {
  // v is a function of the first coordinate only.
  const RealFunctionC2 v = [=](const PointC2& z) {
    const cplx lambda = z.s();
    const double rc = (c * lambda).real();
    return (A * lambda).real() + a * std::norm(lambda) + (b * lambda * lambda).real() - rc * rc;
  };
  const HessianEstimate est = wirtinger_hessian(v, PointC2{}, {.step = step});
  return {est.hessian.levi[0][0].real(), est.hessian.symm[0][0]};
}

}  // namespace slcert
