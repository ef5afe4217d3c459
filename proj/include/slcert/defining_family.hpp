#pragma once

// The domains D_eps = { (s,p) : sqrt(|s - conj(s) p|^2 + eps) + |p|^2 < 1 },
// their global defining function
//   r_eps(s,p) = |s - conj(s) p|^2 + eps - (1 - |p|^2)^2   on C x D,
// and the chain of margin functions reducing strong linear convexity of D_eps
// to positivity of a single expression in p.

#include <vector>

#include "slcert/complex_core.hpp"
#include "slcert/slc_criterion.hpp"

namespace slcert {

/// Family parameter eps in the open interval (0, 1).
class EpsilonParam {
 public:
  /// Throws std::invalid_argument unless 0 < eps < 1.
  explicit EpsilonParam(double eps);
  double value() const noexcept { return eps_; }

 private:
  double eps_;
};

enum class Membership { Inside, Boundary, Outside };

const char* to_string(Membership m) noexcept;

/// Throws DomainError for |p| >= 1.
double r_eps(const PointC2& z, const EpsilonParam& eps);

/// Closed-form Wirtinger gradient of r_eps:
///   r_s = conj(s) - s conj(p) - conj(p) (s - conj(s) p)
///   r_p = -conj(s) (conj(s) - s conj(p)) + 2 conj(p) (1 - |p|^2)
/// It does not depend on eps.
WirtingerGradient r_eps_gradient(const PointC2& z);

/// Classification by the sign of r_eps with a Boundary band |r| <= tol.
/// Points with |p| >= 1 are Outside.
Membership membership(const PointC2& z, const EpsilonParam& eps, double tol = 1e-10);

/// The same classification computed from sqrt(|s - conj(s) p|^2 + eps) + |p|^2 - 1.
Membership membership_sqrt_form(const PointC2& z, const EpsilonParam& eps,
                                 double tol = 1e-10);

/// (1 - |p|^2)^2 - eps; admissible parameters have this >= 0.
double admissibility_gap(cplx p, const EpsilonParam& eps) noexcept;

/// Largest admissible |p|: sqrt(1 - sqrt(eps)).
double admissible_radius(const EpsilonParam& eps) noexcept;

/// s = sqrt(((1 - |p|^2)^2 - eps) / |1 - p|^2) >= 0, so that r_eps(s, p) = 0.
/// Throws AdmissibilityError unless |p| < 1, p != 1 and the radicand is >= 0
/// (radicands in [-1e-14, 0) are clamped to 0).
double boundary_s_from_p(cplx p, const EpsilonParam& eps);

/// (e^{it} s, e^{2it} p). Leaves r_eps and margin10 unchanged.
PointC2 rotate(const PointC2& z, double t);

/// Certified boundary point of D_eps with its canonical complex tangent.
struct BoundarySample {
  PointC2 point;
  EpsilonParam eps;
  double residual;
  WirtingerGradient gradient;
  TangentVectorC2 tangent;

  /// Validates |residual| <= 1e-10, admissibility of p and tangency.
  /// Throws DomainError / AdmissibilityError / DegenerateBoundaryError.
  static BoundarySample at(const PointC2& point, const EpsilonParam& eps);
  /// rotate((boundary_s_from_p(p, eps), p), t)
  static BoundarySample from_p(cplx p, const EpsilonParam& eps, double t = 0.0);
};

/// Coefficients of the second-order expansion of
///   rho(lambda) = r_eps(base + lambda X)
///     = rho(0) + 2 Re(A lambda) + a |lambda|^2 + Re(b lambda^2) - (Re(c lambda))^2 + O(|lambda|^3).
/// A equals the gradient pairing r_s X_s + r_p X_p.
struct ExpansionCoeffs {
  cplx A{};
  double a = 0.0;
  cplx b{};
  cplx c{};
};

ExpansionCoeffs rho_expansion_coeffs(const BoundarySample& base, const DirectionC2& x);

/// |f(z0 + lambda X) - model(lambda)| / |lambda|^2 for each lambda, where
/// model(lambda) = f(z0) + 2 Re(A lambda) + a|lambda|^2 + Re(b lambda^2) - (Re(c lambda))^2.
/// Throws std::invalid_argument for lambda = 0.
std::vector<double> second_order_remainder(const RealFunctionC2& f, const PointC2& z0,
                                           const DirectionC2& x, const ExpansionCoeffs& model,
                                           const std::vector<cplx>& lambdas);

/// second_order_remainder for rho with the coefficients of rho_expansion_coeffs.
/// Throws DomainError when base + lambda X leaves C x D.
std::vector<double> rho_remainder_check(const BoundarySample& base, const DirectionC2& x,
                                        const std::vector<cplx>& lambdas);

/// |X_s (conj s0 - s0 conj p0 - conj p0 (s0 - conj s0 p0))
///   - X_p (conj s0 (conj s0 - s0 conj p0) - 2 conj p0 + 2 |p0|^2 conj p0)|
double tangent_condition_residual(const BoundarySample& base, const DirectionC2& x);

/// Quadratic criterion margin of rho along a complex tangent X:
///   a - |2 conj(p0) X_p|^2 / 2 - |2 (X_s - conj(s0) X_p) X_s conj(p0) + (2 conj(p0) X_p)^2 / 2|.
/// Throws PreconditionError if X is not tangent (relative residual > 1e-10).
double margin8(const BoundarySample& base, const TangentVectorC2& x);

/// The de-subscripted inequality at z = (s, p), left minus right side.
/// Equals margin8 with the canonical tangent at boundary points.
/// Throws DomainError for |p| >= 1.
double margin10(const PointC2& z);

/// margin10 at (boundary_s_from_p(p, eps), p).
double margin11(cplx p, const EpsilonParam& eps);

/// The inequality after substituting s^2 = ((1-|p|^2)^2 - eps) / |1-p|^2,
/// transcribed term by term. Equals margin11(p, eps) * |1 - p|^2.
double margin11_substituted(cplx p, const EpsilonParam& eps);

/// |1-2p+|p|^2|^2 2|p|^2 eps + 2|p|^2 eps^2 + 2 eps ((1-|p|^2)^2 - eps) Re(1-2p+|p|^2)
///   - 2|p|^2 |eps^2 - eps (1-2p+|p|^2)^2|
/// Defined for every |p| < 1; positive on the admissible set.
double margin12(cplx p, const EpsilonParam& eps);

/// (Re(1 - 2p + |p|^2), |1 - p|^2); the two agree for every p.
std::pair<double, double> re_identity_check(cplx p) noexcept;

/// Relative deviation |x - y| / max(|x|, |y|), 0 when both vanish.
double relative_deviation(double x, double y) noexcept;

/// One node of the admissible polar grid.
struct GridPoint {
  int radius_index;
  int angle_index;
  cplx p;
};

/// Polar grid in p: n_radii radii from 0 to admissible_radius - guard
/// (inclusive) and n_angles angles 2 pi k / n_angles. The radius-0 row is
/// emitted once. Throws std::invalid_argument for n_radii < 2 or n_angles < 1.
std::vector<GridPoint> admissible_grid(const EpsilonParam& eps, int n_radii, int n_angles,
                                       double guard = 1e-9);

}  // namespace slcert
