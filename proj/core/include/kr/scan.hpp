#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kr/config.hpp"
#include "kr/constants.hpp"
#include "kr/ensemble.hpp"
#include "kr/gfunction.hpp"
#include "kr/quantum.hpp"
#include "kr/scan_types.hpp"
#include "kr/sidepeaks.hpp"

namespace kr {

enum class Engine { Quantum, Eclassical, Both };

const char* engine_name(Engine e);

struct ScanConfig {
  Engine engine = Engine::Eclassical;
  PhysicalConstants constants;
  double k = 4.2;
  std::vector<int> kick_counts = {16};
  std::vector<double> kbar_grid;   // always resolved to kbar values
  EnsembleSpec ensemble;           // atom budget for the quantum engine
  long map_trajectories = 100000;  // atom budget for the map engine
  int traj_per_atom = 1;
  NoiseModel noise;
  std::uint64_t seed = 1;
  std::string out_scan;
  std::string out_peaks;
  std::string out_gfunc;
  std::string out_collation;
};

// Builds a ScanConfig from flat key = value data; unrecognized keys are
// rejected. When no grid keys are present the default reproduction grid
// kbar in [2 pi - 0.35, 2 pi + 0.35] step 0.005 is used.
ScanConfig scan_config_from_kv(const KeyValueConfig& kv);
ScanConfig scan_config_from_file(const std::string& path);

// FNV-1a hash of the canonicalized physics parameters (output paths are
// excluded), as 16 hex digits.
std::string config_hash_hex(const ScanConfig& config);

// Runs every (kick count, grid point, engine) combination. Rows come out
// sorted by (kicks, kbar, engine); bytes are independent of thread count.
// Writes the scan CSV when config.out_scan is set.
ScanResult run_scan(const ScanConfig& config, int threads);

void write_scan_csv(const std::string& path, const ScanResult& result);
ScanResult read_scan_csv(const std::string& path);

void write_peaks_csv(const std::string& path, const PeakReport& report,
                     const X0Fit* fit, const std::string& config_hash,
                     std::uint64_t seed);
void write_gtable_csv(const std::string& path, const GTable& table,
                      const std::string& config_hash, std::uint64_t seed);

// Writes the four report artifacts (scan CSV, peak CSV, G CSV, and a
// plot-ready collation) to the out.* paths of the config.
struct ReportInputs {
  const ScanResult* scan = nullptr;     // required
  const PeakReport* peaks = nullptr;    // optional
  const X0Fit* fit = nullptr;           // optional
  const GTable* gtable = nullptr;       // optional
};
void emit_report(const ReportInputs& inputs, const ScanConfig& config);

}  // namespace kr
