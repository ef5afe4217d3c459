#include "slcert/defining_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace slcert {
namespace {

constexpr double kBoundaryResidualTol = 1e-10;
constexpr double kTangencyTol = 1e-10;
constexpr double kRadicandClamp = 1e-14;

void require_unit_disc(cplx p, const char* where) {
  if (!(std::abs(p) < 1.0)) {
    std::ostringstream msg;
    msg << where << ": |p| >= 1 (p = " << p << ")";
    throw DomainError(msg.str());
  }
}

// Admissible-set check shared by the boundary parametrization and the
// substituted forms. Returns the clamped gap (1 - |p|^2)^2 - eps >= 0.
double checked_gap(cplx p, const EpsilonParam& eps, const char* where) {
  std::ostringstream msg;
  if (!(std::abs(p) < 1.0)) {
    msg << where << ": |p| >= 1 (p = " << p << ")";
    throw AdmissibilityError(msg.str());
  }
  if (p == cplx(1.0, 0.0)) {
    msg << where << ": p = 1";
    throw AdmissibilityError(msg.str());
  }
  double gap = admissibility_gap(p, eps);
  if (gap < -kRadicandClamp) {
    msg << where << ": (1 - |p|^2)^2 < eps (p = " << p << ", eps = " << eps.value() << ")";
    throw AdmissibilityError(msg.str());
  }
  return std::max(gap, 0.0);
}

}  // namespace

EpsilonParam::EpsilonParam(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    std::ostringstream msg;
    msg << "epsilon must lie in (0, 1), got " << eps;
    throw std::invalid_argument(msg.str());
  }
}

const char* to_string(Membership m) noexcept {
  switch (m) {
    case Membership::Inside: return "inside";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "?";
}

double r_eps(const PointC2& z, const EpsilonParam& eps) {
  const cplx s = z.s();
  const cplx p = z.p();
  require_unit_disc(p, "r_eps");
  const double q = 1.0 - std::norm(p);
  return std::norm(s - std::conj(s) * p) + eps.value() - q * q;
}

WirtingerGradient r_eps_gradient(const PointC2& z) {
  const cplx s = z.s();
  const cplx p = z.p();
  const cplx sb = std::conj(s);
  const cplx pb = std::conj(p);
  return {sb - s * pb - pb * (s - sb * p), -sb * (sb - s * pb) + 2.0 * pb * (1.0 - std::norm(p))};
}

static Membership classify(double value, double tol) {
  if (std::abs(value) <= tol) return Membership::Boundary;
  return value < 0.0 ? Membership::Inside : Membership::Outside;
}

Membership membership(const PointC2& z, const EpsilonParam& eps, double tol) {
  if (!(std::abs(z.p()) < 1.0)) return Membership::Outside;
  return classify(r_eps(z, eps), tol);
}

Membership membership_sqrt_form(const PointC2& z, const EpsilonParam& eps, double tol) {
  const cplx s = z.s();
  const cplx p = z.p();
  if (!(std::abs(p) < 1.0)) return Membership::Outside;
  return classify(std::sqrt(std::norm(s - std::conj(s) * p) + eps.value()) + std::norm(p) - 1.0,
                  tol);
}

double admissibility_gap(cplx p, const EpsilonParam& eps) noexcept {
  const double q = 1.0 - std::norm(p);
  return q * q - eps.value();
}

double admissible_radius(const EpsilonParam& eps) noexcept {
  return std::sqrt(1.0 - std::sqrt(eps.value()));
}

double boundary_s_from_p(cplx p, const EpsilonParam& eps) {
  const double gap = checked_gap(p, eps, "boundary_s_from_p");
  return std::sqrt(gap / std::norm(1.0 - p));
}

PointC2 rotate(const PointC2& z, double t) {
  const cplx u = std::polar(1.0, t);
  return {u * z.s(), u * u * z.p()};
}

BoundarySample BoundarySample::at(const PointC2& point, const EpsilonParam& eps) {
  const double residual = r_eps(point, eps);
  if (std::abs(residual) > kBoundaryResidualTol) {
    std::ostringstream msg;
    msg << "BoundarySample: residual " << residual << " exceeds " << kBoundaryResidualTol;
    throw DomainError(msg.str());
  }
  checked_gap(point.p(), eps, "BoundarySample");
  const WirtingerGradient g = r_eps_gradient(point);
  const TangentVectorC2 x = canonical_tangent(g);
  if (!is_complex_tangent(g, x, kTangencyTol)) {
    throw DegenerateBoundaryError("BoundarySample: canonical tangent failed tangency check");
  }
  return {point, eps, residual, g, x};
}

BoundarySample BoundarySample::from_p(cplx p, const EpsilonParam& eps, double t) {
  const double s = boundary_s_from_p(p, eps);
  return at(rotate(PointC2(s, p), t), eps);
}

ExpansionCoeffs rho_expansion_coeffs(const BoundarySample& base, const DirectionC2& x) {
  const cplx s0 = base.point.s();
  const cplx p0 = base.point.p();
  const cplx s0b = std::conj(s0);
  const cplx p0b = std::conj(p0);
  const double p0sq = std::norm(p0);
  const cplx u0b = s0b - s0 * p0b;  // conj(s0 - conj(s0) p0)
  const cplx alpha = x.s - s0b * x.p;

  ExpansionCoeffs k;
  k.A = u0b * alpha - (s0 - s0b * p0) * x.s * p0b + 2.0 * p0b * x.p - 2.0 * p0sq * p0b * x.p;
  k.a = std::norm(alpha) + std::norm(x.s) * p0sq - 2.0 * (u0b * std::conj(x.s) * x.p).real() +
        2.0 * std::norm(x.p) - 2.0 * p0sq * std::norm(x.p);
  k.b = -2.0 * alpha * x.s * p0b;
  k.c = 2.0 * p0b * x.p;
  return k;
}

std::vector<double> second_order_remainder(const RealFunctionC2& f, const PointC2& z0,
                                           const DirectionC2& x, const ExpansionCoeffs& model,
                                           const std::vector<cplx>& lambdas) {
  const double f0 = f(z0);
  std::vector<double> ratios;
  ratios.reserve(lambdas.size());
  for (const cplx lambda : lambdas) {
    if (lambda == cplx{}) {
      throw std::invalid_argument("second_order_remainder: lambda = 0");
    }
    const double rc = (model.c * lambda).real();
    const double quadratic = f0 + 2.0 * (model.A * lambda).real() + model.a * std::norm(lambda) +
                             (model.b * lambda * lambda).real() - rc * rc;
    ratios.push_back(std::abs(f(along(z0, x, lambda)) - quadratic) / std::norm(lambda));
  }
  return ratios;
}

std::vector<double> rho_remainder_check(const BoundarySample& base, const DirectionC2& x,
                                        const std::vector<cplx>& lambdas) {
  const EpsilonParam eps = base.eps;
  return second_order_remainder([eps](const PointC2& z) { return r_eps(z, eps); }, base.point, x,
                                rho_expansion_coeffs(base, x), lambdas);
}

double tangent_condition_residual(const BoundarySample& base, const DirectionC2& x) {
  const cplx s0 = base.point.s();
  const cplx p0 = base.point.p();
  const cplx s0b = std::conj(s0);
  const cplx p0b = std::conj(p0);
  const cplx left = s0b - s0 * p0b - p0b * (s0 - s0b * p0);
  const cplx right = s0b * (s0b - s0 * p0b) - 2.0 * p0b + 2.0 * std::norm(p0) * p0b;
  return std::abs(x.s * left - x.p * right);
}

double margin8(const BoundarySample& base, const TangentVectorC2& x) {
  if (!is_complex_tangent(base.gradient, x, kTangencyTol)) {
    std::ostringstream msg;
    msg << "margin8: direction is not complex tangent (relative residual "
        << tangency_residual(base.gradient, x) << ")";
    throw PreconditionError(msg.str());
  }
  const ExpansionCoeffs k = rho_expansion_coeffs(base, x.as_direction());
  return quadratic_criterion_margin(k.a, k.b, k.c);
}

double margin10(const PointC2& z) {
  const cplx s = z.s();
  const cplx p = z.p();
  require_unit_disc(p, "margin10");
  const cplx sb = std::conj(s);
  const cplx pb = std::conj(p);
  const double p2 = std::norm(p);

  const cplx first = 2.0 * p2 - 2.0 + sb * (s - sb * p);
  const cplx second = sb * (sb - s * pb) + 2.0 * p2 * pb - 2.0 * pb;
  const cplx third = sb - s * pb - pb * (s - sb * p);

  const double lhs = p2 * std::norm(first) + p2 * std::norm(second) -
                     2.0 * ((sb - s * pb) * (s * (s - sb * p) - 2.0 * p + 2.0 * p2 * p) * third).real() +
                     2.0 * std::norm(third) - 4.0 * p2 * std::norm(third);
  const double rhs = 2.0 * p2 * std::abs(first * second + third * third);
  return lhs - rhs;
}

double margin11(cplx p, const EpsilonParam& eps) {
  return margin10(PointC2(boundary_s_from_p(p, eps), p));
}

double margin11_substituted(cplx p, const EpsilonParam& eps) {
  // K = (1 - |p|^2)^2 - eps = s^2 |1 - p|^2
  const double K = checked_gap(p, eps, "margin11_substituted");
  const cplx pb = std::conj(p);
  const double p2 = std::norm(p);
  const double q = 1.0 - p2;
  const cplx w = 1.0 - 2.0 * pb + p2;

  const cplx u1 = 2.0 * (p2 - 1.0) * (1.0 - pb) + K;
  const cplx u2 = K - 2.0 * pb * q * (1.0 - p);

  const double lhs = p2 * std::norm(u1) + p2 * std::norm(u2) -
                     2.0 * K * ((1.0 - pb) * (K / (1.0 - pb) - 2.0 * p * q) * w).real() +
                     2.0 * K * std::norm(w) - 4.0 * p2 * K * std::norm(w);
  const double rhs = 2.0 * p2 * std::abs(u1 * u2 + K * w * w);
  return lhs - rhs;
}

double margin12(cplx p, const EpsilonParam& eps) {
  require_unit_disc(p, "margin12");
  const double e = eps.value();
  const double p2 = std::norm(p);
  const double q = 1.0 - p2;
  const cplx w = 1.0 - 2.0 * p + p2;
  const double lhs =
      std::norm(w) * 2.0 * p2 * e + 2.0 * p2 * e * e + 2.0 * e * (q * q - e) * w.real();
  const double rhs = 2.0 * p2 * std::abs(e * e - e * w * w);
  return lhs - rhs;
}

std::pair<double, double> re_identity_check(cplx p) noexcept {
  return {(1.0 - 2.0 * p + std::norm(p)).real(), std::norm(1.0 - p)};
}

double relative_deviation(double x, double y) noexcept {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

std::vector<GridPoint> admissible_grid(const EpsilonParam& eps, int n_radii, int n_angles,
                                       double guard) {
  if (n_radii < 2 || n_angles < 1) {
    throw std::invalid_argument("admissible_grid: need n_radii >= 2 and n_angles >= 1");
  }
  const double rmax = admissible_radius(eps) - guard;
  std::vector<GridPoint> grid;
  grid.reserve(1 + static_cast<std::size_t>(n_radii - 1) * n_angles);
  grid.push_back({0, 0, cplx{}});
  for (int i = 1; i < n_radii; ++i) {
    const double radius = rmax * i / (n_radii - 1);
    for (int k = 0; k < n_angles; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / n_angles;
      grid.push_back({i, k, std::polar(radius, theta)});
    }
  }
  return grid;
}

}  // namespace slcert
