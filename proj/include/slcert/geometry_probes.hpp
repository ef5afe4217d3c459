#pragma once

// Sampling checks of the geometry around D_eps: the real diffeomorphism
// phi(s,p) = (s - conj(s) p, p) onto the convex model domain G_eps, midpoint
// convexity probes, the exhaustion of the symmetrized bidisc G_2 = D_0 and
// the topology of complex line slices.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slcert/defining_family.hpp"
#include "slcert/point.hpp"
#include "slcert/random.hpp"

namespace slcert {

/// Points with |residual| <= this are left out of pass/fail accounting.
inline constexpr double kBoundaryBand = 1e-8;

/// (s - conj(s) p, p). Throws DomainError for |p| >= 1.
PointC2 phi(const PointC2& z);

/// sqrt(|w|^2 + eps) + |z|^2 - 1; eps may be 0.
double g_eps_residual(cplx w, cplx z, double eps);

/// Throws std::invalid_argument unless 0 <= eps < 1.
Membership g_eps_membership(cplx w, cplx z, double eps, double tol = 1e-10);

/// Residual of the symmetrized bidisc in the D_0 form |s - conj(s) p| + |p|^2 - 1.
/// Valid for |p| < 1.
double g2_residual(const PointC2& z);

/// The D_0 form as a classification; |p| >= 1 is Outside.
Membership g2_membership_form(const PointC2& z, double tol = 1e-10);

/// Roots of zeta^2 - s zeta + p = 0 (the pair whose sum is s and product p),
/// by the cancellation-free quadratic formula.
std::pair<cplx, cplx> symmetrization_roots(const PointC2& z);

/// Inside iff both roots satisfy |zeta| < 1 - tol; Boundary if the larger
/// modulus is within tol of 1.
Membership g2_membership_roots(const PointC2& z, double tol = 1e-10);

/// A bounded domain given by a residual (negative inside) and a box that
/// contains it: |Re s|, |Im s| <= s_half and |p| < p_radius.
struct DomainOracle {
  std::string name;
  std::function<double(const PointC2&)> residual;
  double s_half = 2.0;
  double p_radius = 1.0;
};

DomainOracle d_eps_oracle(const EpsilonParam& eps);
/// G_eps in the (w, z) coordinates, stored as (s, p) = (w, z).
DomainOracle g_eps_oracle(double eps);

/// Two inside points whose midpoint lies outside.
struct WitnessSegment {
  PointC2 first;
  PointC2 second;
  double first_residual = 0.0;
  double second_residual = 0.0;
  double midpoint_residual = 0.0;

  /// Endpoint residuals < 0 and midpoint residual > 0.
  bool verified() const noexcept {
    return first_residual < 0.0 && second_residual < 0.0 && midpoint_residual > 0.0;
  }
};

struct ProbeResult {
  std::optional<WitnessSegment> witness;
  std::uint64_t pairs_tested = 0;
};

/// Draws `samples` pairs of inside points (residual < -kBoundaryBand) and
/// tests their midpoints; stops at the first midpoint with residual >
/// kBoundaryBand. The first half of the budget samples the oracle box
/// uniformly; the second half biases |p| towards the outer edge of the box.
ProbeResult convexity_probe(const DomainOracle& oracle, std::uint64_t samples, std::uint64_t seed);

struct ExhaustionReport {
  std::vector<double> eps_list;
  std::uint64_t samples = 0;
  /// Points inside D_{eps_k} but not D_{eps_{k+1}} (eps_{k+1} < eps_k).
  std::uint64_t monotonicity_violations = 0;
  /// Points inside some D_eps but not in G_2 (roots oracle).
  std::uint64_t containment_violations = 0;
  std::uint64_t g2_inside = 0;
  /// Per eps: fraction of sampled G_2 points lying in D_eps.
  std::vector<double> absorption;
  /// Fraction of sampled G_2 points lying in at least one listed D_eps.
  double absorbed_any = 0.0;
  /// First few offending points, for the report.
  std::vector<PointC2> violation_points;
};

/// Samples s uniformly in the square |Re s|, |Im s| <= 2 and p in the unit
/// disc. Throws std::invalid_argument unless eps_list is non-empty, strictly
/// decreasing and inside (0, 1).
ExhaustionReport exhaustion_check(const std::vector<double>& eps_list, std::uint64_t samples,
                                  std::uint64_t seed);

/// Complex line lambda -> base + lambda dir.
struct LineSpec {
  PointC2 base;
  DirectionC2 dir;

  /// Throws std::invalid_argument for a zero direction.
  LineSpec(PointC2 base_point, DirectionC2 direction);
  PointC2 at(cplx lambda) const { return along(base, dir, lambda); }
};

/// Rectangle in the lambda plane rasterized at resolution x resolution cells.
struct SliceWindow {
  cplx center{};
  double half_width = 1.0;
  double half_height = 1.0;
  int resolution = 256;
};

/// Row-major boolean raster of {lambda : base + lambda dir in D_eps}.
struct SliceMask {
  SliceWindow window;
  std::vector<std::uint8_t> cells;

  int size() const noexcept { return window.resolution; }
  bool at(int row, int col) const { return cells[static_cast<std::size_t>(row) * size() + col] != 0; }
  bool empty() const noexcept;
  /// Lambda at the center of a cell.
  cplx lambda_at(int row, int col) const noexcept;
};

inline constexpr int kMinSliceResolution = 64;

/// Smallest window guaranteed to contain the slice: the lambda-disc on which
/// |p| < 1, or the one on which |Re s|, |Im s| <= 2 if smaller.
SliceWindow default_window(const LineSpec& line, int resolution);

/// Rasterizes the slice of D_eps, refits the window to the slice's bounding
/// box and widens it until no true cell touches the frame.
/// Throws std::invalid_argument for resolution < 64.
SliceMask line_slice(const LineSpec& line, const EpsilonParam& eps, const SliceWindow& window);

struct SliceTopology {
  bool connected = true;
  bool simply_connected = true;
  int components = 0;
};

/// Components of true cells under 4-connectivity; holes are false cells not
/// reachable from the frame under 8-connectivity. An empty mask is
/// (true, true) with zero components.
SliceTopology slice_topology(const SliceMask& mask);

/// Base uniform in the G_2 box (|Re s|, |Im s| <= 2, |Re p|, |Im p| <= 1),
/// direction uniform on the unit sphere of C^2.
LineSpec random_line(Rng& rng);

}  // namespace slcert
