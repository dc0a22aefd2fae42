#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace superfock {

/// Raised when a mode layout (or a run configuration derived from one)
/// violates its preconditions.  The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shape of the truncated Bose-Fermi space: F two-level fermionic modes
/// tensored with B bosonic modes, each boson capped at occupation `cutoff`.
struct ModeConfig {
  int n_fermion = 1;
  int n_boson = 1;
  int cutoff = 12;                  ///< max boson occupation Lambda
  std::vector<double> couplings;    ///< per-pair weights k_i, defaults to all 1
  int safe_margin = 1;              ///< default margin for cutoff-safe checks

  /// Hard budget for the dense matrix representation.
  std::int64_t max_dim = 4096;

  /// Throws ConfigError unless every invariant holds.
  void validate() const;

  /// 2^F * (cutoff+1)^B, checked against max_dim by validate().
  std::int64_t dimension() const;

  /// Coupling for pair i (0-based), defaulting to 1 when unspecified.
  double coupling(int i) const;
};

}  // namespace superfock
