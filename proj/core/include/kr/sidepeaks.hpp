#pragma once

#include <vector>

#include "kr/scan_types.hpp"

namespace kr {

// Position of the first scaling side peak: the energy-ratio curve R(x) has
// its secondary maximum at x0 ~ 11.2 in the scaled variable x = t sqrt(k|e|),
// so the peak sits at |epsilon| = x0^2 / (t^2 k) and moves toward the
// resonance as 1/t^2.
double predict_side_peak(int t, double k, double x0 = 11.2);

// Default half-width of the central exclusion window used when hunting side
// peaks: half the predicted side-peak position.
double default_exclusion(int t, double k, double x0 = 11.2);

struct SidePeak {
  bool found = false;
  double epsilon = 0.0;  // signed position
  double height = 0.0;   // ratio at the refined maximum
};

struct PeakEntry {
  int kicks = 0;
  SidePeak left;   // epsilon < 0
  SidePeak right;  // epsilon > 0
};

struct PeakReport {
  std::vector<PeakEntry> entries;  // ascending kick count
};

// Locates the highest interior local maximum of ratio vs epsilon on each
// side of the exclusion window |epsilon| < exclusion, one entry per kick
// count, refined by a three-point parabola. Sides without an interior
// maximum are reported missing, never fabricated. The scan must contain a
// single engine's rows.
PeakReport find_side_peaks(const ScanResult& result, double exclusion);

struct X0Fit {
  double x0 = 0.0;
  double stderr_ = 0.0;
  long n_peaks = 0;
};

// Least-squares fit of |epsilon_peak| = x0^2 / (t^2 k) over every found
// side peak; needs at least three distinct kick counts with peaks.
X0Fit fit_x0(const PeakReport& report, double k);

struct FwhmEntry {
  int kicks = 0;
  double fwhm = 0.0;
};

// Full width at half maximum of the central resonance peak per kick count.
// Half maximum is relative to the peak height above the far-detuned
// baseline (mean of the five outermost points per side); crossings are
// linearly interpolated. A slice whose peak is not resolved is an error.
std::vector<FwhmEntry> peak_fwhm(const ScanResult& result);

}  // namespace kr
