// slcert: numerical certification of strong linear convexity for the domains
// D_eps exhausting the symmetrized bidisc.
//
//   slcert certify --epsilon 0.25 --grid 200 --method both --json out.json --csv out.csv
//   slcert slice   --epsilon 0.25 --lines 200 --res 256 --seed 42
//   slcert exhaust --eps-list 0.4,0.2,0.1,0.05,0.01 --samples 10000
//   slcert witness --mode nonconvex-D --epsilon 0.01 --samples 1000000
//
// Exit codes: 0 pass, 1 violation, 2 invalid input, 3 inconclusive.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slcert/report.hpp"

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "slcert: cannot open " << path << " for writing\n";
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

void print_summary(const slcert::CommandOutcome& outcome) {
  const auto& rep = outcome.report;
  std::cout << rep["command"].get<std::string>() << ": exit " << static_cast<int>(outcome.exit_code);
  if (!rep["min_margin"].is_null()) {
    std::cout << "  min_margin=" << rep["min_margin"].get<double>();
  }
  if (rep.contains("error")) std::cout << "  error: " << rep["error"].get<std::string>();
  std::cout << "  counts=" << rep["counts"].dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong linear convexity certification for D_eps"};
  app.require_subcommand(1);

  double epsilon = -1.0;
  int grid = 200;
  std::string method = "closed";
  long lines = 200;
  int res = 256;
  std::vector<double> eps_list;
  long samples = -1;
  std::uint64_t seed = 42;
  std::string mode = "nonconvex-D";
  std::string json_path;
  std::string csv_path;
  bool richardson = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "64-bit seed");
    cmd->add_option("--json", json_path, "JSON report path (stdout if omitted)");
    cmd->add_option("--csv", csv_path, "CSV record path");
  };

  CLI::App* certify = app.add_subcommand("certify", "Sweep the admissible grid");
  certify->add_option("--epsilon", epsilon)->required();
  certify->add_option("--grid", grid, "radii and angles per sweep");
  certify->add_option("--method", method, "closed|hessian|both");
  certify->add_flag("--richardson", richardson, "Richardson-extrapolated Hessians");
  add_common(certify);

  CLI::App* slice = app.add_subcommand("slice", "Topology of random complex line slices");
  slice->add_option("--epsilon", epsilon)->required();
  slice->add_option("--lines", lines);
  slice->add_option("--res", res);
  add_common(slice);

  CLI::App* exhaust = app.add_subcommand("exhaust", "Exhaustion of G_2 by D_eps");
  exhaust->add_option("--eps-list", eps_list)->delimiter(',')->required();
  exhaust->add_option("--samples", samples);
  add_common(exhaust);

  CLI::App* witness = app.add_subcommand("witness", "Midpoint convexity probes");
  witness->add_option("--epsilon", epsilon)->required();
  witness->add_option("--mode", mode, "nonconvex-D|convex-G");
  witness->add_option("--samples", samples, "pair budget");
  add_common(witness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(slcert::ExitCode::InvalidInput);
  }

  slcert::CommandOutcome outcome;
  try {
    if (certify->parsed()) {
      outcome = slcert::run_certify({epsilon, grid, slcert::parse_method(method), seed, richardson});
    } else if (slice->parsed()) {
      outcome = slcert::run_slice({epsilon, lines, res, seed});
    } else if (exhaust->parsed()) {
      outcome = slcert::run_exhaust({eps_list, samples < 0 ? 10000 : samples, seed});
    } else {
      outcome = slcert::run_witness({epsilon, slcert::parse_witness_mode(mode),
                                     samples < 0 ? 1000000 : samples, seed});
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "slcert: " << e.what() << "\n";
    return static_cast<int>(slcert::ExitCode::InvalidInput);
  } catch (const std::exception& e) {
    std::cerr << "slcert: " << e.what() << "\n";
    return static_cast<int>(slcert::ExitCode::Violation);
  }

  const std::string text = slcert::dump_report(outcome.report);
  bool written = true;
  if (!json_path.empty()) {
    written = write_file(json_path, text);
    print_summary(outcome);
  } else {
    std::cout << text;
  }
  if (!csv_path.empty()) {
    written = write_file(csv_path, slcert::records_csv(outcome.records)) && written;
  }
  if (!written && outcome.exit_code == slcert::ExitCode::Pass) {
    return static_cast<int>(slcert::ExitCode::Violation);
  }
  return static_cast<int>(outcome.exit_code);
}
