#include "slcert/geometry_probes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace slcert {

PointC2 phi(const PointC2& z) {
  if (!(std::abs(z.p()) < 1.0)) {
    throw DomainError("phi: |p| >= 1");
  }
  return {z.s() - std::conj(z.s()) * z.p(), z.p()};
}

double g_eps_residual(cplx w, cplx z, double eps) {
  return std::sqrt(std::norm(w) + eps) + std::norm(z) - 1.0;
}

Membership g_eps_membership(cplx w, cplx z, double eps, double tol) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::invalid_argument("g_eps_membership: eps must lie in [0, 1)");
  }
  const double v = g_eps_residual(w, z, eps);
  if (std::abs(v) <= tol) return Membership::Boundary;
  return v < 0.0 ? Membership::Inside : Membership::Outside;
}

double g2_residual(const PointC2& z) {
  return std::abs(z.s() - std::conj(z.s()) * z.p()) + std::norm(z.p()) - 1.0;
}

Membership g2_membership_form(const PointC2& z, double tol) {
  if (!(std::abs(z.p()) < 1.0)) return Membership::Outside;
  const double v = g2_residual(z);
  if (std::abs(v) <= tol) return Membership::Boundary;
  return v < 0.0 ? Membership::Inside : Membership::Outside;
}

std::pair<cplx, cplx> symmetrization_roots(const PointC2& z) {
  const cplx s = z.s();
  const cplx p = z.p();
  const cplx root = std::sqrt(s * s - 4.0 * p);
  // Pick the sign that avoids cancellation in s +- root.
  const cplx big = std::abs(s + root) >= std::abs(s - root) ? 0.5 * (s + root) : 0.5 * (s - root);
  if (big == cplx{}) return {cplx{}, cplx{}};
  return {big, p / big};
}

Membership g2_membership_roots(const PointC2& z, double tol) {
  const auto [z1, z2] = symmetrization_roots(z);
  const double m = std::max(std::abs(z1), std::abs(z2));
  if (std::abs(m - 1.0) <= tol) return Membership::Boundary;
  return m < 1.0 ? Membership::Inside : Membership::Outside;
}

DomainOracle d_eps_oracle(const EpsilonParam& eps) {
  std::ostringstream name;
  name << "D_eps(" << eps.value() << ")";
  return {name.str(), [eps](const PointC2& z) { return r_eps(z, eps); }, 2.0,
          admissible_radius(eps)};
}

DomainOracle g_eps_oracle(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::invalid_argument("g_eps_oracle: eps must lie in [0, 1)");
  }
  std::ostringstream name;
  name << "G_eps(" << eps << ")";
  return {name.str(), [eps](const PointC2& z) { return g_eps_residual(z.s(), z.p(), eps); }, 1.0,
          std::sqrt(1.0 - std::sqrt(eps))};
}

namespace {

// Rejection-samples a point with residual < -kBoundaryBand. |p| is drawn
// uniformly by area, or pushed to the outer rim of the p-disc when biased.
std::optional<std::pair<PointC2, double>> draw_inside(const DomainOracle& oracle, Rng& rng,
                                                      bool biased) {
  constexpr int kMaxTries = 100000;
  for (int i = 0; i < kMaxTries; ++i) {
    const cplx s = rng.in_square(oracle.s_half);
    const double u = rng.uniform();
    const double radius = biased ? oracle.p_radius * (1.0 - 0.3 * u * u)
                                 : oracle.p_radius * std::sqrt(u);
    const cplx p = std::polar(radius, 2.0 * std::numbers::pi * rng.uniform());
    if (!(std::abs(p) < 1.0)) continue;
    const PointC2 z(s, p);
    const double v = oracle.residual(z);
    if (v < -kBoundaryBand) return std::make_pair(z, v);
  }
  return std::nullopt;
}

}  // namespace

ProbeResult convexity_probe(const DomainOracle& oracle, std::uint64_t samples, std::uint64_t seed) {
  ProbeResult result;
  Rng rng(seed);
  const std::uint64_t uniform_phase = samples / 2;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const bool biased = k >= uniform_phase;
    const auto a = draw_inside(oracle, rng, biased);
    const auto b = draw_inside(oracle, rng, biased);
    if (!a || !b) {
      throw std::runtime_error("convexity_probe: could not sample inside " + oracle.name);
    }
    ++result.pairs_tested;
    const PointC2 mid(0.5 * (a->first.s() + b->first.s()), 0.5 * (a->first.p() + b->first.p()));
    const double vm = oracle.residual(mid);
    if (vm > kBoundaryBand) {
      result.witness = WitnessSegment{a->first, b->first, a->second, b->second, vm};
      break;
    }
  }
  return result;
}

ExhaustionReport exhaustion_check(const std::vector<double>& eps_list, std::uint64_t samples,
                                  std::uint64_t seed) {
  if (eps_list.empty()) {
    throw std::invalid_argument("exhaustion_check: empty epsilon list");
  }
  std::vector<EpsilonParam> params;
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    params.emplace_back(eps_list[k]);
    if (k > 0 && !(eps_list[k] < eps_list[k - 1])) {
      throw std::invalid_argument("exhaustion_check: epsilon list must be strictly decreasing");
    }
  }

  constexpr std::size_t kMaxRecordedViolations = 16;
  ExhaustionReport rep;
  rep.eps_list = eps_list;
  rep.samples = samples;
  std::vector<std::uint64_t> absorbed(eps_list.size(), 0);
  std::uint64_t absorbed_any = 0;
  std::vector<double> r(eps_list.size());

  Rng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const cplx s = rng.in_square(2.0);
    const cplx p = rng.in_disc(1.0);
    const PointC2 z(s, p);
    for (std::size_t k = 0; k < params.size(); ++k) r[k] = r_eps(z, params[k]);

    bool violated = false;
    for (std::size_t k = 0; k + 1 < params.size(); ++k) {
      if (r[k] < -kBoundaryBand && r[k + 1] > kBoundaryBand) {
        ++rep.monotonicity_violations;
        violated = true;
      }
    }
    const Membership g2 = g2_membership_roots(z, kBoundaryBand);
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (r[k] < -kBoundaryBand && g2 == Membership::Outside) {
        ++rep.containment_violations;
        violated = true;
      }
    }
    if (violated && rep.violation_points.size() < kMaxRecordedViolations) {
      rep.violation_points.push_back(z);
    }
    if (g2 == Membership::Inside) {
      ++rep.g2_inside;
      bool any = false;
      for (std::size_t k = 0; k < params.size(); ++k) {
        if (r[k] < 0.0) {
          ++absorbed[k];
          any = true;
        }
      }
      if (any) ++absorbed_any;
    }
  }
  for (const std::uint64_t n : absorbed) {
    rep.absorption.push_back(rep.g2_inside ? static_cast<double>(n) / rep.g2_inside : 0.0);
  }
  rep.absorbed_any = rep.g2_inside ? static_cast<double>(absorbed_any) / rep.g2_inside : 0.0;
  return rep;
}

LineSpec::LineSpec(PointC2 base_point, DirectionC2 direction) : base(base_point), dir(direction) {
  if (dir.is_zero() || !is_finite(dir.s) || !is_finite(dir.p)) {
    throw std::invalid_argument("LineSpec: direction must be finite and non-zero");
  }
}

bool SliceMask::empty() const noexcept {
  return std::none_of(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; });
}

cplx SliceMask::lambda_at(int row, int col) const noexcept {
  const int n = window.resolution;
  const double x = -window.half_width + (col + 0.5) * (2.0 * window.half_width / n);
  const double y = -window.half_height + (row + 0.5) * (2.0 * window.half_height / n);
  return window.center + cplx(x, y);
}

SliceWindow default_window(const LineSpec& line, int resolution) {
  // |base_p + lambda dir_p| < 1 and |s| < 2 on G_2, which contains D_eps.
  double radius = std::numeric_limits<double>::infinity();
  cplx center{};
  if (line.dir.p != cplx{}) {
    radius = 1.0 / std::abs(line.dir.p);
    center = -line.base.p() / line.dir.p;
  }
  if (line.dir.s != cplx{} && 2.0 / std::abs(line.dir.s) < radius) {
    radius = 2.0 / std::abs(line.dir.s);
    center = -line.base.s() / line.dir.s;
  }
  return {center, radius, radius, resolution};
}

namespace {

SliceMask rasterize(const LineSpec& line, const EpsilonParam& eps, const SliceWindow& window) {
  SliceMask mask{window, {}};
  const int n = window.resolution;
  mask.cells.assign(static_cast<std::size_t>(n) * n, 0);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const PointC2 z = line.at(mask.lambda_at(row, col));
      mask.cells[static_cast<std::size_t>(row) * n + col] =
          membership(z, eps, 0.0) == Membership::Inside ? 1 : 0;
    }
  }
  return mask;
}

bool touches_frame(const SliceMask& mask) {
  const int n = mask.size();
  for (int i = 0; i < n; ++i) {
    if (mask.at(0, i) || mask.at(n - 1, i) || mask.at(i, 0) || mask.at(i, n - 1)) return true;
  }
  return false;
}

}  // namespace

SliceMask line_slice(const LineSpec& line, const EpsilonParam& eps, const SliceWindow& window) {
  if (window.resolution < kMinSliceResolution) {
    std::ostringstream msg;
    msg << "line_slice: resolution " << window.resolution << " below minimum "
        << kMinSliceResolution;
    throw std::invalid_argument(msg.str());
  }
  if (!(window.half_width > 0.0 && window.half_height > 0.0)) {
    throw std::invalid_argument("line_slice: window half-widths must be positive");
  }
  constexpr int kMaxExpansions = 60;

  SliceMask mask = rasterize(line, eps, window);
  for (int i = 0; i < kMaxExpansions && touches_frame(mask); ++i) {
    SliceWindow wider = mask.window;
    wider.half_width *= 2.0;
    wider.half_height *= 2.0;
    mask = rasterize(line, eps, wider);
  }
  if (mask.empty()) return mask;

  // Refit to the bounding box of the slice, two cells of padding per side.
  const int n = mask.size();
  int rmin = n, rmax = -1, cmin = n, cmax = -1;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      if (!mask.at(row, col)) continue;
      rmin = std::min(rmin, row);
      rmax = std::max(rmax, row);
      cmin = std::min(cmin, col);
      cmax = std::max(cmax, col);
    }
  }
  const double cell_w = 2.0 * mask.window.half_width / n;
  const double cell_h = 2.0 * mask.window.half_height / n;
  const cplx lo = mask.lambda_at(rmin, cmin);
  const cplx hi = mask.lambda_at(rmax, cmax);
  SliceWindow fit;
  fit.center = 0.5 * (lo + hi);
  fit.half_width = 0.5 * (hi.real() - lo.real()) + 2.0 * cell_w;
  fit.half_height = 0.5 * (hi.imag() - lo.imag()) + 2.0 * cell_h;
  fit.resolution = n;

  SliceMask refit = rasterize(line, eps, fit);
  for (int i = 0; i < kMaxExpansions && touches_frame(refit); ++i) {
    SliceWindow wider = refit.window;
    wider.half_width *= 1.25;
    wider.half_height *= 1.25;
    refit = rasterize(line, eps, wider);
  }
  if (touches_frame(refit)) {
    throw std::runtime_error("line_slice: slice does not fit any window");
  }
  return refit;
}

SliceTopology slice_topology(const SliceMask& mask) {
  const int n = mask.size();
  const auto idx = [n](int r, int c) { return static_cast<std::size_t>(r) * n + c; };
  std::vector<std::uint8_t> seen(mask.cells.size(), 0);
  std::deque<std::pair<int, int>> queue;

  SliceTopology topo;
  constexpr int d4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int r0 = 0; r0 < n; ++r0) {
    for (int c0 = 0; c0 < n; ++c0) {
      if (!mask.at(r0, c0) || seen[idx(r0, c0)]) continue;
      ++topo.components;
      seen[idx(r0, c0)] = 1;
      queue.emplace_back(r0, c0);
      while (!queue.empty()) {
        const auto [r, c] = queue.front();
        queue.pop_front();
        for (const auto& d : d4) {
          const int rr = r + d[0], cc = c + d[1];
          if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
          if (!mask.at(rr, cc) || seen[idx(rr, cc)]) continue;
          seen[idx(rr, cc)] = 1;
          queue.emplace_back(rr, cc);
        }
      }
    }
  }
  topo.connected = topo.components <= 1;

  // Complement: 8-connected flood from every false frame cell.
  std::fill(seen.begin(), seen.end(), 0);
  for (int i = 0; i < n; ++i) {
    for (const auto& [r, c] : {std::pair{0, i}, std::pair{n - 1, i}, std::pair{i, 0},
                               std::pair{i, n - 1}}) {
      if (!mask.at(r, c) && !seen[idx(r, c)]) {
        seen[idx(r, c)] = 1;
        queue.emplace_back(r, c);
      }
    }
  }
  while (!queue.empty()) {
    const auto [r, c] = queue.front();
    queue.pop_front();
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int rr = r + dr, cc = c + dc;
        if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
        if (mask.at(rr, cc) || seen[idx(rr, cc)]) continue;
        seen[idx(rr, cc)] = 1;
        queue.emplace_back(rr, cc);
      }
    }
  }
  for (int r = 0; r < n && topo.simply_connected; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!mask.at(r, c) && !seen[idx(r, c)]) {
        topo.simply_connected = false;
        break;
      }
    }
  }
  return topo;
}

LineSpec random_line(Rng& rng) {
  const PointC2 base(rng.in_square(2.0), rng.in_square(1.0));
  DirectionC2 dir{cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal())};
  const double n = dir.norm();
  dir.s /= n;
  dir.p /= n;
  return {base, dir};
}

}  // namespace slcert
