#include "slcert/complex_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slcert {
namespace {

// Real coordinates (Re s, Im s, Re p, Im p).
using Real4 = std::array<double, 4>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

Real4 to_real(const PointC2& z) {
  return {z.s().real(), z.s().imag(), z.p().real(), z.p().imag()};
}

PointC2 from_real(const Real4& q) { return {cplx(q[0], q[1]), cplx(q[2], q[3])}; }

double eval_checked(const RealFunctionC2& f, const Real4& q) {
  const PointC2 z = from_real(q);
  const double v = f(z);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "non-finite function value at (" << z.s() << ", " << z.p() << ")";
    throw EvaluationError(msg.str(), z);
  }
  return v;
}

Matrix4 real_hessian(const RealFunctionC2& f, const Real4& q0, double h) {
  Matrix4 H{};
  const double f0 = eval_checked(f, q0);
  for (int a = 0; a < 4; ++a) {
    Real4 q = q0;
    q[a] = q0[a] + h;
    const double fp = eval_checked(f, q);
    q[a] = q0[a] - h;
    const double fm = eval_checked(f, q);
    H[a][a] = (fp - 2.0 * f0 + fm) / (h * h);
  }
  // Each ordered pair gets its own stencil so symmetrization has something
  // to measure when f is evaluated non-reproducibly.
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      double acc = 0.0;
      for (const int sa : {1, -1}) {
        for (const int sb : {1, -1}) {
          Real4 q = q0;
          q[a] += sa * h;
          q[b] += sb * h;
          acc += sa * sb * eval_checked(f, q);
        }
      }
      H[a][b] = acc / (4.0 * h * h);
    }
  }
  return H;
}

// Raw (unsymmetrized) Levi and complex Hessian from real second partials.
HessianPair wirtinger_from_real(const Matrix4& H) {
  HessianPair out;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
      out.levi[j][k] =
          0.25 * cplx(H[xj][xk] + H[yj][yk], H[xj][yk] - H[yj][xk]);
      out.symm[j][k] =
          0.25 * cplx(H[xj][xk] - H[yj][yk], -(H[xj][yk] + H[yj][xk]));
    }
  }
  return out;
}

// Projects onto Hermitian / symmetric matrices; returns the removed defect.
double symmetrize(HessianPair& h) {
  double defect = 0.0;
  for (int j = 0; j < 2; ++j) {
    defect = std::max(defect, std::abs(h.levi[j][j].imag()));
    h.levi[j][j] = h.levi[j][j].real();
  }
  const cplx l01 = 0.5 * (h.levi[0][1] + std::conj(h.levi[1][0]));
  const cplx s01 = 0.5 * (h.symm[0][1] + h.symm[1][0]);
  defect = std::max(defect, std::abs(h.levi[0][1] - std::conj(h.levi[1][0])));
  defect = std::max(defect, std::abs(h.symm[0][1] - h.symm[1][0]));
  h.levi[0][1] = l01;
  h.levi[1][0] = std::conj(l01);
  h.symm[0][1] = s01;
  h.symm[1][0] = s01;
  return defect;
}

HessianPair combine(const HessianPair& fine, const HessianPair& coarse) {
  HessianPair out;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      out.levi[j][k] = (4.0 * fine.levi[j][k] - coarse.levi[j][k]) / 3.0;
      out.symm[j][k] = (4.0 * fine.symm[j][k] - coarse.symm[j][k]) / 3.0;
    }
  }
  return out;
}

}  // namespace

double max_abs(const HessianPair& h) noexcept {
  double m = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      m = std::max({m, std::abs(h.levi[j][k]), std::abs(h.symm[j][k])});
    }
  }
  return m;
}

double default_gradient_step(const PointC2& z0) noexcept {
  return 1e-5 * std::max(1.0, z0.norm());
}

double default_hessian_step(const PointC2& z0) noexcept {
  return 1e-3 * std::max(1.0, z0.norm());
}

WirtingerGradient wirtinger_gradient(const RealFunctionC2& f, const PointC2& z0,
                                     double step) {
  const double h = step > 0.0 ? step : default_gradient_step(z0);
  const Real4 q0 = to_real(z0);
  Real4 d{};
  for (int a = 0; a < 4; ++a) {
    Real4 q = q0;
    q[a] = q0[a] + h;
    const double fp = eval_checked(f, q);
    q[a] = q0[a] - h;
    const double fm = eval_checked(f, q);
    d[a] = (fp - fm) / (2.0 * h);
  }
  return {0.5 * cplx(d[0], -d[1]), 0.5 * cplx(d[2], -d[3])};
}

HessianEstimate wirtinger_hessian(const RealFunctionC2& f, const PointC2& z0,
                                  const HessianOptions& options) {
  HessianEstimate est;
  est.step = options.step > 0.0 ? options.step : default_hessian_step(z0);
  const Real4 q0 = to_real(z0);

  est.hessian = wirtinger_from_real(real_hessian(f, q0, est.step));
  est.asymmetry = symmetrize(est.hessian);
  est.step_degenerate = est.asymmetry > 1e-4 * max_abs(est.hessian);

  if (options.richardson) {
    HessianPair fine = wirtinger_from_real(real_hessian(f, q0, 0.5 * est.step));
    symmetrize(fine);
    est.extrapolated = combine(fine, est.hessian);
  }
  return est;
}

std::pair<double, cplx> directional_second_derivatives(const HessianPair& h,
                                                       const DirectionC2& x) {
  const std::array<cplx, 2> v{x.s, x.p};
  cplx levi{};
  cplx symm{};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      levi += h.levi[j][k] * v[j] * std::conj(v[k]);
      symm += h.symm[j][k] * v[j] * v[k];
    }
  }
  const double scale = std::max(1.0, max_abs(h)) * std::max(1.0, std::norm(x.s) + std::norm(x.p));
  if (std::abs(levi.imag()) > 1e-10 * scale) {
    throw std::logic_error("directional_second_derivatives: Levi form is not Hermitian");
  }
  return {levi.real(), symm};
}

}  // namespace slcert
