#include "slcert/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "slcert/defining_family.hpp"
#include "slcert/geometry_probes.hpp"
#include "slcert/random.hpp"

namespace slcert {

using nlohmann::json;

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Closed: return "closed";
    case Method::Hessian: return "hessian";
    case Method::Both: return "both";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  if (text == "closed") return Method::Closed;
  if (text == "hessian") return Method::Hessian;
  if (text == "both") return Method::Both;
  throw std::invalid_argument("unknown method '" + text + "' (expected closed|hessian|both)");
}

WitnessMode parse_witness_mode(const std::string& text) {
  if (text == "nonconvex-D") return WitnessMode::NonconvexD;
  if (text == "convex-G") return WitnessMode::ConvexG;
  throw std::invalid_argument("unknown mode '" + text + "' (expected nonconvex-D|convex-G)");
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json point_json(const PointC2& z) {
  return {{"re_s", z.s().real()}, {"im_s", z.s().imag()},
          {"re_p", z.p().real()}, {"im_p", z.p().imag()}};
}

json record_json(const MarginRecord& r) {
  return {{"re_p", r.p.real()}, {"im_p", r.p.imag()}, {"eps", r.eps},
          {"method", to_string(r.method)}, {"margin", r.margin}, {"pass", r.pass}};
}

// Common skeleton; fields without meaning for a command stay null.
json skeleton(const char* command, json params, std::uint64_t seed) {
  json rep;
  rep["command"] = command;
  rep["params"] = std::move(params);
  rep["seed"] = seed;
  rep["counts"] = json::object();
  rep["min_margin"] = nullptr;
  rep["argmin"] = nullptr;
  rep["violations"] = json::array();
  rep["identity_checks"] = json::object();
  rep["elapsed_ms"] = 0.0;
  rep["version"] = kVersion;
  return rep;
}

CommandOutcome invalid(const char* command, json params, std::uint64_t seed,
                       const std::string& message) {
  CommandOutcome out;
  out.exit_code = ExitCode::InvalidInput;
  out.report = skeleton(command, std::move(params), seed);
  out.report["error"] = message;
  return out;
}

// Rotation angle for grid node `index`, reproducible from the run seed alone.
double rotation_for(std::uint64_t seed, std::uint64_t index) {
  Rng rng(derive_seed(seed, index));
  return 2.0 * std::numbers::pi * rng.uniform();
}

struct HessianMargin {
  double margin;        // slc_margin with the finite-difference canonical tangent
  double exact;         // margin8 with the exact canonical tangent
  double scaled;        // margin rescaled to the exact tangent's length
};

HessianMargin hessian_margin(const BoundarySample& base, bool richardson) {
  const EpsilonParam eps = base.eps;
  const RealFunctionC2 f = [eps](const PointC2& z) { return r_eps(z, eps); };
  const WirtingerGradient g = wirtinger_gradient(f, base.point);
  const TangentVectorC2 x = canonical_tangent(g);
  const HessianEstimate est = wirtinger_hessian(f, base.point, {.richardson = richardson});
  const HessianPair& h = richardson ? *est.extrapolated : est.hessian;
  const double m = slc_margin(h, x);
  const double exact = margin8(base, base.tangent);
  const double scale = std::norm(base.tangent.norm()) / std::norm(x.norm());
  return {m, exact, m * scale};
}

}  // namespace

CommandOutcome run_certify(const CertifyOptions& options) {
  const auto start = Clock::now();
  json params = {{"epsilon", options.eps}, {"grid", options.grid},
                 {"method", to_string(options.method)}, {"richardson", options.richardson}};
  if (!(options.eps > 0.0 && options.eps < 1.0)) {
    return invalid("certify", params, options.seed, "epsilon must lie in (0, 1)");
  }
  if (options.grid < kMinCertifyGrid) {
    return invalid("certify", params, options.seed, "grid must be at least 16");
  }
  const EpsilonParam eps(options.eps);
  const bool closed = options.method != Method::Hessian;
  const bool hessian = options.method != Method::Closed;

  CommandOutcome out;
  out.report = skeleton("certify", params, options.seed);
  const std::vector<GridPoint> grid = admissible_grid(eps, options.grid, options.grid);

  double chain_i = 0.0, chain_ii = 0.0, chain_ii_display = 0.0, agreement = 0.0;
  std::uint64_t chain_checks = 0, circle_points = 0;
  bool chain_ii_signs_agree = true;
  json chain_ii_ratios = json::array();

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx p = grid[i].p;
    if (closed) {
      out.records.emplace_back(p, eps.value(), Method::Closed, margin12(p, eps));
      // Chain identities on every 20th node (5 %).
      if (i % 20 == 0) {
        ++chain_checks;
        const BoundarySample base = BoundarySample::from_p(p, eps, rotation_for(options.seed, i));
        chain_i = std::max(chain_i, relative_deviation(margin10(base.point),
                                                       margin8(base, base.tangent)));
        const double m11 = margin11(p, eps);
        const double m12 = out.records.back().margin;
        const double scaled = m11 * std::norm(1.0 - p);
        chain_ii = std::max(chain_ii, relative_deviation(scaled, m12));
        chain_ii_display =
            std::max(chain_ii_display, relative_deviation(margin11_substituted(p, eps), m12));
        chain_ii_signs_agree = chain_ii_signs_agree && ((m11 > 0.0) == (m12 > 0.0));
        chain_ii_ratios.push_back({{"re_p", p.real()}, {"im_p", p.imag()},
                                   {"ratio", m12 != 0.0 ? scaled / m12 : 1.0}});
      }
    }
    if (hessian) {
      const BoundarySample base = BoundarySample::from_p(p, eps, rotation_for(options.seed, i));
      const HessianMargin hm = hessian_margin(base, options.richardson);
      out.records.emplace_back(p, eps.value(), Method::Hessian, hm.margin);
      agreement = std::max(agreement, relative_deviation(hm.scaled, hm.exact));
    }
  }
  // The admissibility circle itself (s = 0) is covered by margin12 alone.
  if (closed) {
    const double radius = admissible_radius(eps);
    for (int k = 0; k < options.grid; ++k) {
      const cplx p = std::polar(radius, 2.0 * std::numbers::pi * k / options.grid);
      out.records.emplace_back(p, eps.value(), Method::Closed, margin12(p, eps));
      ++circle_points;
    }
  }

  // First minimum in emission order.
  std::size_t argmin = 0;
  json violations = json::array();
  json records = json::array();
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const MarginRecord& r = out.records[i];
    if (r.margin < out.records[argmin].margin) argmin = i;
    if (!r.pass) violations.push_back(record_json(r));
    records.push_back(record_json(r));
  }
  const MarginRecord& worst = out.records[argmin];

  json checks = json::object();
  bool checks_pass = true;
  if (closed) {
    checks["chain_I_max_reldev"] = chain_i;
    checks["chain_II_max_reldev"] = chain_ii;
    checks["chain_II_display_max_reldev"] = chain_ii_display;
    checks_pass = checks_pass && chain_i <= kChainTolerance && chain_ii_display <= kChainTolerance;
    if (chain_ii > kChainTolerance) {
      // Fall back to sign agreement and publish the ratio field.
      checks["chain_II_fallback"] = {{"sign_agreement", chain_ii_signs_agree},
                                     {"ratios", chain_ii_ratios}};
      checks_pass = checks_pass && chain_ii_signs_agree;
    }
  } else {
    checks["chain_I_max_reldev"] = nullptr;
    checks["chain_II_max_reldev"] = nullptr;
  }
  if (hessian) {
    checks["hessian_closed_max_reldev"] = agreement;
    checks_pass = checks_pass && agreement <= kHessianAgreementTolerance;
  }
  checks["pass"] = checks_pass;

  out.report["counts"] = {{"grid_points", grid.size()},
                          {"circle_points", circle_points},
                          {"records", out.records.size()},
                          {"chain_checks", chain_checks},
                          {"violations", violations.size()}};
  out.report["min_margin"] = worst.margin;
  out.report["argmin"] = {{"re_p", worst.p.real()}, {"im_p", worst.p.imag()}, {"eps", worst.eps},
                          {"method", to_string(worst.method)}};
  out.report["violations"] = std::move(violations);
  out.report["identity_checks"] = std::move(checks);
  out.report["records"] = std::move(records);
  out.exit_code = (worst.margin > 0.0 && checks_pass) ? ExitCode::Pass : ExitCode::Violation;
  out.report["exit_code"] = static_cast<int>(out.exit_code);
  out.report["elapsed_ms"] = elapsed_ms(start);
  return out;
}

CommandOutcome run_slice(const SliceOptions& options) {
  const auto start = Clock::now();
  json params = {{"epsilon", options.eps}, {"lines", options.lines},
                 {"res", options.resolution}};
  if (!(options.eps > 0.0 && options.eps < 1.0)) {
    return invalid("slice", params, options.seed, "epsilon must lie in (0, 1)");
  }
  if (options.lines < 0) {
    return invalid("slice", params, options.seed, "line count must be non-negative");
  }
  if (options.resolution < kMinSliceResolution) {
    return invalid("slice", params, options.seed, "resolution must be at least 64");
  }
  constexpr int kRetryCap = 100;
  const EpsilonParam eps(options.eps);

  CommandOutcome out;
  out.report = skeleton("slice", params, options.seed);
  json lines = json::array();
  json violations = json::array();
  long nonempty = 0, redraws = 0;
  for (long i = 0; i < options.lines; ++i) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(i)));
    std::optional<LineSpec> line;
    std::optional<SliceMask> mask;
    int tries = 0;
    for (; tries < kRetryCap; ++tries) {
      LineSpec candidate = random_line(rng);
      SliceMask m = line_slice(candidate, eps, default_window(candidate, options.resolution));
      if (!m.empty()) {
        line = candidate;
        mask = std::move(m);
        break;
      }
    }
    redraws += tries;
    json entry = {{"index", i}, {"redraws", tries}};
    if (!mask) {
      entry["empty"] = true;
      lines.push_back(std::move(entry));
      continue;
    }
    ++nonempty;
    const SliceTopology topo = slice_topology(*mask);
    entry["empty"] = false;
    entry["base"] = point_json(line->base);
    entry["dir"] = {{"re_s", line->dir.s.real()}, {"im_s", line->dir.s.imag()},
                    {"re_p", line->dir.p.real()}, {"im_p", line->dir.p.imag()}};
    entry["window"] = {{"re_center", mask->window.center.real()},
                       {"im_center", mask->window.center.imag()},
                       {"half_width", mask->window.half_width},
                       {"half_height", mask->window.half_height}};
    entry["components"] = topo.components;
    entry["connected"] = topo.connected;
    entry["simply_connected"] = topo.simply_connected;
    if (!topo.connected || !topo.simply_connected) violations.push_back(entry);
    lines.push_back(std::move(entry));
  }
  out.report["counts"] = {{"lines", options.lines}, {"nonempty", nonempty},
                          {"redraws", redraws}, {"violations", violations.size()}};
  out.report["violations"] = violations;
  out.report["lines"] = std::move(lines);
  out.exit_code = violations.empty() ? ExitCode::Pass : ExitCode::Violation;
  out.report["exit_code"] = static_cast<int>(out.exit_code);
  out.report["elapsed_ms"] = elapsed_ms(start);
  return out;
}

CommandOutcome run_exhaust(const ExhaustOptions& options) {
  const auto start = Clock::now();
  json params = {{"eps_list", options.eps_list}, {"samples", options.samples}};
  if (options.samples < 0) {
    return invalid("exhaust", params, options.seed, "sample count must be non-negative");
  }
  ExhaustionReport rep;
  try {
    rep = exhaustion_check(options.eps_list, static_cast<std::uint64_t>(options.samples),
                           options.seed);
  } catch (const std::invalid_argument& e) {
    return invalid("exhaust", params, options.seed, e.what());
  }
  CommandOutcome out;
  out.report = skeleton("exhaust", params, options.seed);
  json absorption = json::array();
  for (std::size_t k = 0; k < rep.eps_list.size(); ++k) {
    absorption.push_back({{"eps", rep.eps_list[k]}, {"fraction", rep.absorption[k]}});
  }
  json violations = json::array();
  for (const PointC2& z : rep.violation_points) violations.push_back(point_json(z));
  out.report["counts"] = {{"samples", rep.samples},
                          {"g2_inside", rep.g2_inside},
                          {"monotonicity_violations", rep.monotonicity_violations},
                          {"containment_violations", rep.containment_violations}};
  out.report["absorption"] = std::move(absorption);
  out.report["absorbed_any"] = rep.absorbed_any;
  out.report["violations"] = std::move(violations);
  out.exit_code = (rep.monotonicity_violations == 0 && rep.containment_violations == 0)
                      ? ExitCode::Pass
                      : ExitCode::Violation;
  out.report["exit_code"] = static_cast<int>(out.exit_code);
  out.report["elapsed_ms"] = elapsed_ms(start);
  return out;
}

CommandOutcome run_witness(const WitnessOptions& options) {
  const auto start = Clock::now();
  const bool nonconvex = options.mode == WitnessMode::NonconvexD;
  json params = {{"epsilon", options.eps},
                 {"mode", nonconvex ? "nonconvex-D" : "convex-G"},
                 {"samples", options.samples}};
  if (options.samples < 0) {
    return invalid("witness", params, options.seed, "sample cap must be non-negative");
  }
  const bool eps_ok = nonconvex ? (options.eps > 0.0 && options.eps < 1.0)
                                : (options.eps >= 0.0 && options.eps < 1.0);
  if (!eps_ok) {
    return invalid("witness", params, options.seed, "epsilon out of range");
  }
  const DomainOracle oracle =
      nonconvex ? d_eps_oracle(EpsilonParam(options.eps)) : g_eps_oracle(options.eps);
  const ProbeResult probe =
      convexity_probe(oracle, static_cast<std::uint64_t>(options.samples), options.seed);

  CommandOutcome out;
  out.report = skeleton("witness", params, options.seed);
  out.report["counts"] = {{"pairs_tested", probe.pairs_tested}};
  out.report["domain"] = oracle.name;
  json witness = nullptr;
  bool verified = false;
  if (probe.witness) {
    const WitnessSegment& w = *probe.witness;
    // Recompute the residuals rather than trusting the probe's copies.
    const PointC2 mid(0.5 * (w.first.s() + w.second.s()), 0.5 * (w.first.p() + w.second.p()));
    const WitnessSegment check{w.first, w.second, oracle.residual(w.first),
                               oracle.residual(w.second), oracle.residual(mid)};
    verified = check.verified();
    witness = {{"first", point_json(w.first)},
               {"second", point_json(w.second)},
               {"first_residual", check.first_residual},
               {"second_residual", check.second_residual},
               {"midpoint_residual", check.midpoint_residual},
               {"verified", verified}};
  }
  out.report["witness"] = witness;

  if (nonconvex) {
    if (!probe.witness) {
      out.exit_code = ExitCode::Inconclusive;
    } else {
      out.exit_code = verified ? ExitCode::Pass : ExitCode::Violation;
    }
  } else {
    out.exit_code = probe.witness ? ExitCode::Violation : ExitCode::Pass;
    if (probe.witness) out.report["violations"].push_back(witness);
  }
  out.report["exit_code"] = static_cast<int>(out.exit_code);
  out.report["elapsed_ms"] = elapsed_ms(start);
  return out;
}

std::string records_csv(const std::vector<MarginRecord>& records) {
  std::ostringstream os;
  os.precision(17);
  os << "re_p,im_p,eps,method,margin,pass\n";
  for (const MarginRecord& r : records) {
    os << r.p.real() << ',' << r.p.imag() << ',' << r.eps << ',' << to_string(r.method) << ','
       << r.margin << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string dump_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

nlohmann::json without_timing(const nlohmann::json& report) {
  json copy = report;
  copy.erase("elapsed_ms");
  return copy;
}

}  // namespace slcert
