#pragma once

// Certification commands behind the slcert executable. Each command returns
// its exit code together with the JSON report; writing files is left to the
// caller.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slcert/point.hpp"

namespace slcert {

inline constexpr const char* kVersion = "0.1.0";

enum class ExitCode : int { Pass = 0, Violation = 1, InvalidInput = 2, Inconclusive = 3 };

enum class Method { Closed, Hessian, Both };

const char* to_string(Method m) noexcept;
/// "closed" | "hessian" | "both"; throws std::invalid_argument otherwise.
Method parse_method(const std::string& text);

/// One margin evaluation. pass is margin > 0.
struct MarginRecord {
  cplx p;
  double eps;
  Method method;  // Closed or Hessian
  double margin;
  bool pass;

  MarginRecord(cplx p_, double eps_, Method method_, double margin_)
      : p(p_), eps(eps_), method(method_), margin(margin_), pass(margin_ > 0.0) {}
};

struct CommandOutcome {
  ExitCode exit_code = ExitCode::Pass;
  nlohmann::json report;
  /// Margin records (certify only); also emitted inside the report.
  std::vector<MarginRecord> records;
};

struct CertifyOptions {
  double eps = 0.25;
  int grid = 200;
  Method method = Method::Closed;
  std::uint64_t seed = 0;
  /// Richardson-extrapolated Hessians on the hessian path.
  bool richardson = false;
};

struct SliceOptions {
  double eps = 0.25;
  long lines = 200;
  int resolution = 256;
  std::uint64_t seed = 42;
};

struct ExhaustOptions {
  std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05, 0.01};
  long samples = 10000;
  std::uint64_t seed = 42;
};

enum class WitnessMode { NonconvexD, ConvexG };

/// "nonconvex-D" | "convex-G"; throws std::invalid_argument otherwise.
WitnessMode parse_witness_mode(const std::string& text);

struct WitnessOptions {
  double eps = 0.01;
  WitnessMode mode = WitnessMode::NonconvexD;
  long samples = 1000000;
  std::uint64_t seed = 42;
};

/// Tolerances shared by the report and the acceptance suite.
inline constexpr double kChainTolerance = 1e-10;
inline constexpr double kHessianAgreementTolerance = 1e-4;
inline constexpr int kMinCertifyGrid = 16;

CommandOutcome run_certify(const CertifyOptions& options);
CommandOutcome run_slice(const SliceOptions& options);
CommandOutcome run_exhaust(const ExhaustOptions& options);
CommandOutcome run_witness(const WitnessOptions& options);

/// Flat projection with header re_p,im_p,eps,method,margin,pass.
std::string records_csv(const std::vector<MarginRecord>& records);

/// Serialized report with two-space indentation and a trailing newline.
std::string dump_report(const nlohmann::json& report);

/// Copy of the report without timing fields (elapsed_ms).
nlohmann::json without_timing(const nlohmann::json& report);

}  // namespace slcert
