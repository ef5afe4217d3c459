#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace slcert {

using cplx = std::complex<double>;

inline bool is_finite(cplx z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A point (s, p) of C^2. Components are finite.
class PointC2 {
 public:
  constexpr PointC2() = default;
  PointC2(cplx s, cplx p) : s_(s), p_(p) {
    if (!is_finite(s) || !is_finite(p)) {
      throw std::invalid_argument("PointC2: non-finite component");
    }
  }

  cplx s() const noexcept { return s_; }
  cplx p() const noexcept { return p_; }

  double norm() const noexcept { return std::sqrt(std::norm(s_) + std::norm(p_)); }

  friend bool operator==(const PointC2&, const PointC2&) = default;

 private:
  cplx s_{};
  cplx p_{};
};

/// A vector of C^2 in (s, p) coordinates; may be zero.
struct DirectionC2 {
  cplx s{};
  cplx p{};

  double norm() const noexcept { return std::sqrt(std::norm(s) + std::norm(p)); }
  bool is_zero() const noexcept { return s == cplx{} && p == cplx{}; }
};

/// base + lambda * dir
inline PointC2 along(const PointC2& base, const DirectionC2& dir, cplx lambda) {
  return {base.s() + lambda * dir.s, base.p() + lambda * dir.p};
}

}  // namespace slcert
