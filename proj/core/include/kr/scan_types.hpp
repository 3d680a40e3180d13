#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kr {

// One scan measurement. ratio = mean_energy / (k^2 kicks / 4), the exact
// resonant ensemble gain, so the resonance peak sits near ratio = 1.
struct ScanRow {
  double kbar = 0.0;
  double epsilon = 0.0;
  double period_us = 0.0;
  int kicks = 0;
  std::string engine;  // "quantum" or "eclassical"
  double mean_energy = 0.0;
  double ratio = 0.0;
  double stderr_ = 0.0;
  long atoms = 0;
  std::uint64_t seed = 0;
};

struct ScanResult {
  std::vector<ScanRow> rows;  // sorted by (kicks, kbar, engine)
  std::string config_hash;    // 16 hex digits
  std::uint64_t seed = 0;
};

}  // namespace kr
