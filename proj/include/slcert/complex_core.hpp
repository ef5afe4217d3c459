#pragma once

// Finite-difference Wirtinger calculus for real-valued functions on C^2.
//
// Coordinates are z = (s, p) = (x1 + i y1, x2 + i y2). For a real function f
//   df/dz_j        = (f_xj - i f_yj) / 2
//   d2f/dz_j dzb_k = (f_xjxk + f_yjyk + i (f_xjyk - f_yjxk)) / 4
//   d2f/dz_j dz_k  = (f_xjxk - f_yjyk - i (f_xjyk + f_yjxk)) / 4
// All real partials come from symmetric central differences.

#include <array>
#include <functional>
#include <optional>
#include <utility>

#include "slcert/errors.hpp"
#include "slcert/point.hpp"

namespace slcert {

using RealFunctionC2 = std::function<double(const PointC2&)>;

/// Dense 2x2 complex matrix, row-major, indices 0 = s and 1 = p.
using Matrix2c = std::array<std::array<cplx, 2>, 2>;

/// Holomorphic Wirtinger derivatives (df/ds, df/dp) of a real function.
/// The antiholomorphic pair is their conjugate.
struct WirtingerGradient {
  cplx r_s{};
  cplx r_p{};

  double norm() const noexcept { return std::sqrt(std::norm(r_s) + std::norm(r_p)); }
  /// r_s X_s + r_p X_p
  cplx pairing(const DirectionC2& x) const noexcept { return r_s * x.s + r_p * x.p; }
};

/// Levi form L_jk = d2r/dz_j dzb_k (Hermitian) and complex Hessian
/// S_jk = d2r/dz_j dz_k (symmetric).
struct HessianPair {
  Matrix2c levi{};
  Matrix2c symm{};
};

/// Max entry modulus over both matrices.
double max_abs(const HessianPair& h) noexcept;

struct HessianOptions {
  /// Second-difference step; <= 0 selects default_hessian_step(z0).
  double step = 0.0;
  /// Also compute one level of Richardson extrapolation from steps h and h/2.
  bool richardson = false;
};

struct HessianEstimate {
  /// Symmetrized estimate at the requested step.
  HessianPair hessian;
  /// Largest Hermitian/symmetric defect removed by symmetrization.
  double asymmetry = 0.0;
  /// Set when asymmetry exceeds 1e-4 of the matrix norm.
  bool step_degenerate = false;
  double step = 0.0;
  /// (4 H(h/2) - H(h)) / 3, present only with HessianOptions::richardson.
  std::optional<HessianPair> extrapolated;
};

/// 1e-5 * max(1, |z0|)
double default_gradient_step(const PointC2& z0) noexcept;
/// 1e-3 * max(1, |z0|)
double default_hessian_step(const PointC2& z0) noexcept;

/// Central-difference Wirtinger gradient. step <= 0 selects the default.
/// Throws EvaluationError when f is non-finite anywhere in the stencil.
WirtingerGradient wirtinger_gradient(const RealFunctionC2& f, const PointC2& z0,
                                     double step = 0.0);

HessianEstimate wirtinger_hessian(const RealFunctionC2& f, const PointC2& z0,
                                  const HessianOptions& options = {});

/// (sum L_jk X_j conj(X_k), sum S_jk X_j X_k). The Levi value is real; its
/// imaginary rounding residue is checked and dropped.
std::pair<double, cplx> directional_second_derivatives(const HessianPair& h,
                                                       const DirectionC2& x);

}  // namespace slcert
