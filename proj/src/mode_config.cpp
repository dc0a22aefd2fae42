#include "superfock/mode_config.hpp"

#include <algorithm>
#include <string>

namespace superfock {

void ModeConfig::validate() const {
  if (n_fermion < 0 || n_boson < 0)
    throw ConfigError("mode counts must be non-negative");
  if (n_fermion == 0 && n_boson == 0)
    throw ConfigError("at least one mode is required");
  if (cutoff < 0) throw ConfigError("boson cutoff must be non-negative");
  if (safe_margin < 0) throw ConfigError("safe margin must be non-negative");
  if (n_boson > 0 && safe_margin > cutoff)
    throw ConfigError("safe margin " + std::to_string(safe_margin) +
                      " exceeds boson cutoff " + std::to_string(cutoff));
  if (!couplings.empty() &&
      couplings.size() != static_cast<std::size_t>(std::min(n_fermion, n_boson)))
    throw ConfigError("coupling list length must match the mode pair count");
  if (dimension() > max_dim)
    throw ConfigError("Hilbert dimension " + std::to_string(dimension()) +
                      " exceeds the dense budget " + std::to_string(max_dim));
}

std::int64_t ModeConfig::dimension() const {
  std::int64_t d = 1;
  for (int i = 0; i < n_fermion; ++i) {
    d *= 2;
    if (d > (std::int64_t{1} << 40)) return d;  // avoid overflow, fails budget
  }
  for (int i = 0; i < n_boson; ++i) {
    d *= (cutoff + 1);
    if (d > (std::int64_t{1} << 40)) return d;
  }
  return d;
}

double ModeConfig::coupling(int i) const {
  if (couplings.empty()) return 1.0;
  return couplings.at(static_cast<std::size_t>(i));
}

}  // namespace superfock
