#pragma once

// Strong linear convexity at a boundary point: for every non-zero complex
// tangent X the Levi form dominates the complex Hessian,
//   sum L_jk X_j conj(X_k) > | sum S_jk X_j X_k |.

#include <utility>

#include "slcert/complex_core.hpp"

namespace slcert {

/// Non-zero vector X = (X_s, X_p) of C^2.
class TangentVectorC2 {
 public:
  /// Throws std::invalid_argument for the zero vector.
  TangentVectorC2(cplx xs, cplx xp);

  cplx xs() const noexcept { return xs_; }
  cplx xp() const noexcept { return xp_; }
  double norm() const noexcept { return as_direction().norm(); }
  DirectionC2 as_direction() const noexcept { return {xs_, xp_}; }

  /// Same direction with |X| = 1.
  TangentVectorC2 normalized() const;
  /// t * X for non-zero t.
  TangentVectorC2 scaled(cplx t) const;

 private:
  cplx xs_;
  cplx xp_;
};

/// |g . X| / (|g| |X|). Zero iff X lies in the complex tangent space of g.
double tangency_residual(const WirtingerGradient& g, const TangentVectorC2& x);

/// True when |g . X| <= tol * |g| * |X|.
bool is_complex_tangent(const WirtingerGradient& g, const TangentVectorC2& x,
                        double tol = 1e-10);

/// (a - |c|^2/2) - |b - c^2/2|. The strict inequality holds iff the result is > 0.
double quadratic_criterion_margin(double a, cplx b, cplx c) noexcept;

/// Levi(X, conj X) - |Symm(X, X)|.
double slc_margin(const HessianPair& h, const TangentVectorC2& x);

/// (-r_p, r_s), the null direction of the gradient pairing. Not normalized.
/// Throws DegenerateBoundaryError for a zero gradient.
TangentVectorC2 canonical_tangent(const WirtingerGradient& g);

/// Builds v(lambda) = Re(A lambda) + a|lambda|^2 + Re(b lambda^2) - (Re(c lambda))^2
/// and returns (v_{lambda conj-lambda}(0), v_{lambda lambda}(0)) by finite
/// differences. Exact values are a - |c|^2/2 and b - c^2/2.
std::pair<double, cplx> quadratic_criterion_fd_check(cplx A, double a, cplx b, cplx c,
                                                     double step = 1e-3);

}  // namespace slcert
