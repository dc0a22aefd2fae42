#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superfock/io.hpp"

namespace superfock {

/// Configuration shared by every subcommand, parseable from JSON with
/// unknown keys rejected.  Commands derive their spaces from it: the
/// two-pair algebra checks cap the cutoff at 12 to stay inside the dense
/// budget, the anharmonic convergence report raises it to at least 44, and
/// the entanglement tables use their own fixed two-pair blocks.
struct RunConfig {
  int n_fermion = 1;
  int n_boson = 1;
  int cutoff = 40;
  int margin = 1;
  std::vector<double> couplings;  // empty = unit couplings
  double anharmonic_g = 0.3;
  std::vector<double> betas{0.4054651081081644, 0.6931471805599453, 1.0};
  std::vector<double> flow_values{0.1, 1.0, 3.141592653589793};
  std::vector<double> kbar_values{0.0, 0.25, 0.5, 0.75, 1.0};
  int phi_points = 257;  // grid on [0, pi]
  std::string out_dir = ".";
  double tol = 0.0;  // > 0 overrides every upper-bound check tolerance
  std::string format = "csv";  // csv | json (data tables)
  std::uint64_t seed = 12345;

  void validate() const;  // throws ConfigError
};

/// Parses a JSON object; unknown keys, wrong types, or malformed JSON throw
/// ConfigError.  Missing keys keep their defaults.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

struct CheckResult {
  std::string name;
  double defect = 0.0;     // 0 for satisfied lower-bound witnesses
  double tolerance = 0.0;  // pass iff defect <= tolerance
  bool passed = false;
};

struct CheckReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::string to_json() const;
};

/// Runs one named check per module invariant; throwing checks are recorded
/// as failed with an infinite defect rather than aborting the suite.
CheckReport run_all_checks(const RunConfig& cfg);

/// Table builders (pure; deterministic for a fixed config).
CsvTable evolve_table(const RunConfig& cfg);
struct EntangleTables {
  CsvTable surface;      // kbar,phi,E
  CsvTable per_fermion;  // kbar,phi,E1,E2
};
EntangleTables entangle_tables(const RunConfig& cfg);
CsvTable thermal_table(const RunConfig& cfg);
std::string susino_report_json(const RunConfig& cfg);
std::string wz_report_json(const RunConfig& cfg);

/// Renders a table in the configured format (csv or a JSON row array).
std::string render_table(const CsvTable& t, const std::string& format);

/// Command entry points: compute, write into cfg.out_dir, return the exit
/// status (0 success, 1 check failure).  Configuration problems throw
/// ConfigError, which the binary maps to exit status 2.
int run_check(const RunConfig& cfg);
int run_evolve(const RunConfig& cfg);
int run_entangle(const RunConfig& cfg);
int run_thermal(const RunConfig& cfg);
int run_susino(const RunConfig& cfg);
int run_wz(const RunConfig& cfg);

}  // namespace superfock
