#include "kr/sidepeaks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

#include "kr/errors.hpp"

namespace kr {

namespace {

struct Slice {
  std::vector<double> eps;
  std::vector<double> val;
};

// Groups rows by kick count into epsilon-ascending slices and checks that
// the curve is single-valued (one engine, one resonance branch).
std::map<int, Slice> slice_by_kicks(const ScanResult& result) {
  if (result.rows.empty()) fail_data("scan contains no rows");
  const std::string& engine = result.rows.front().engine;
  std::map<int, std::vector<std::pair<double, double>>> grouped;
  for (const ScanRow& r : result.rows) {
    if (r.engine != engine) {
      fail_data("peak analysis needs a single-engine scan");
    }
    grouped[r.kicks].push_back({r.epsilon, r.ratio});
  }
  std::map<int, Slice> out;
  for (auto& [kicks, pts] : grouped) {
    std::sort(pts.begin(), pts.end());
    Slice s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0 && !(pts[i].first > pts[i - 1].first)) {
        fail_data("duplicate epsilon grid point in scan slice");
      }
      s.eps.push_back(pts[i].first);
      s.val.push_back(pts[i].second);
    }
    out.emplace(kicks, std::move(s));
  }
  return out;
}

struct Parabola {
  double x = 0.0;
  double y = 0.0;
};

// Vertex of the parabola through three points; falls back to the middle
// point when the triplet is not concave or the vertex escapes the bracket.
Parabola refine_parabola(double x1, double y1, double x2, double y2,
                         double x3, double y3) {
  const double d1 = x1 - x2;
  const double d3 = x3 - x2;
  const double denom = d1 * d3 * (d1 - d3);
  Parabola p{x2, y2};
  if (denom == 0.0) return p;
  const double a = (d3 * (y1 - y2) - d1 * (y3 - y2)) / denom;
  const double b = (d1 * d1 * (y3 - y2) - d3 * d3 * (y1 - y2)) / denom;
  if (a >= 0.0) return p;
  const double dx = -b / (2.0 * a);
  if (dx < d1 || dx > d3) return p;
  p.x = x2 + dx;
  p.y = y2 - b * b / (4.0 * a);
  return p;
}

// Highest interior local maximum over index range [lo, hi] of the slice.
SidePeak hunt_region(const Slice& s, long lo, long hi) {
  SidePeak peak;
  if (hi - lo + 1 < 3) return peak;
  long best = -1;
  for (long i = lo + 1; i <= hi - 1; ++i) {
    if (s.val[i] > s.val[i - 1] && s.val[i] >= s.val[i + 1]) {
      if (best < 0 || s.val[i] > s.val[best]) best = i;
    }
  }
  if (best < 0) return peak;
  const Parabola p =
      refine_parabola(s.eps[best - 1], s.val[best - 1], s.eps[best],
                      s.val[best], s.eps[best + 1], s.val[best + 1]);
  peak.found = true;
  peak.epsilon = p.x;
  peak.height = p.y;
  return peak;
}

}  // namespace

double predict_side_peak(int t, double k, double x0) {
  if (t < 1 || !(k > 0.0) || !(x0 > 0.0)) {
    fail_config("side-peak prediction needs t >= 1, k > 0, x0 > 0");
  }
  const double td = static_cast<double>(t);
  return x0 * x0 / (td * td * k);
}

double default_exclusion(int t, double k, double x0) {
  return 0.5 * predict_side_peak(t, k, x0);
}

PeakReport find_side_peaks(const ScanResult& result, double exclusion) {
  if (!(exclusion >= 0.0)) fail_config("exclusion half-width must be >= 0");
  PeakReport report;
  for (const auto& [kicks, s] : slice_by_kicks(result)) {
    const long n = static_cast<long>(s.eps.size());
    PeakEntry entry;
    entry.kicks = kicks;

    long left_hi = -1;
    while (left_hi + 1 < n && s.eps[left_hi + 1] < -exclusion) ++left_hi;
    long right_lo = n;
    while (right_lo - 1 >= 0 && s.eps[right_lo - 1] > exclusion) --right_lo;

    if (left_hi >= 0) entry.left = hunt_region(s, 0, left_hi);
    if (right_lo <= n - 1) entry.right = hunt_region(s, right_lo, n - 1);
    report.entries.push_back(entry);
  }
  return report;
}

X0Fit fit_x0(const PeakReport& report, double k) {
  if (!(k > 0.0)) fail_config("fit needs k > 0");
  long counts_with_peaks = 0;
  std::vector<std::pair<double, double>> pts;  // (w = 1/(t^2 k), |eps|)
  for (const PeakEntry& e : report.entries) {
    bool any = false;
    const double td = static_cast<double>(e.kicks);
    const double w = 1.0 / (td * td * k);
    if (e.left.found) {
      pts.push_back({w, std::fabs(e.left.epsilon)});
      any = true;
    }
    if (e.right.found) {
      pts.push_back({w, std::fabs(e.right.epsilon)});
      any = true;
    }
    if (any) ++counts_with_peaks;
  }
  if (counts_with_peaks < 3) {
    fail_data("x0 fit needs found side peaks at three or more kick counts");
  }
  double swy = 0.0, sww = 0.0;
  for (const auto& [w, y] : pts) {
    swy += w * y;
    sww += w * w;
  }
  if (!(sww > 0.0)) fail_data("degenerate x0 fit");
  const double amp = swy / sww;
  if (!(amp > 0.0)) fail_data("x0 fit produced a non-positive amplitude");
  const long n = static_cast<long>(pts.size());
  double resid2 = 0.0;
  for (const auto& [w, y] : pts) {
    const double d = y - amp * w;
    resid2 += d * d;
  }
  X0Fit fit;
  fit.n_peaks = n;
  fit.x0 = std::sqrt(amp);
  if (n > 1) {
    const double var_amp = resid2 / (static_cast<double>(n - 1) * sww);
    fit.stderr_ = std::sqrt(var_amp) / (2.0 * fit.x0);
  }
  return fit;
}

std::vector<FwhmEntry> peak_fwhm(const ScanResult& result) {
  std::vector<FwhmEntry> out;
  for (const auto& [kicks, s] : slice_by_kicks(result)) {
    const long n = static_cast<long>(s.eps.size());
    char msg[128];
    if (n < 7) {
      std::snprintf(msg, sizeof(msg),
                    "central peak unresolved for kicks=%d: fewer than 7 points",
                    kicks);
      fail_data(msg);
    }
    const long nb = std::min<long>(5, std::max<long>(1, n / 4));
    double base = 0.0;
    for (long i = 0; i < nb; ++i) base += s.val[i] + s.val[n - 1 - i];
    base /= static_cast<double>(2 * nb);

    long im = 0;
    for (long i = 1; i < n; ++i) {
      if (s.val[i] > s.val[im]) im = i;
    }
    const double height = s.val[im] - base;
    if (!(height > 0.0)) {
      std::snprintf(msg, sizeof(msg),
                    "central peak unresolved for kicks=%d: no height above "
                    "baseline",
                    kicks);
      fail_data(msg);
    }
    const double half = base + 0.5 * height;
    long above = 0;
    for (long i = 0; i < n; ++i) {
      if (s.val[i] > half) ++above;
    }
    if (above < 3) {
      std::snprintf(msg, sizeof(msg),
                    "central peak unresolved for kicks=%d: fewer than 3 "
                    "points above half maximum",
                    kicks);
      fail_data(msg);
    }

    double xl = 0.0, xr = 0.0;
    bool found_l = false, found_r = false;
    for (long i = im - 1; i >= 0; --i) {
      if (s.val[i] <= half) {
        const double f = (half - s.val[i]) / (s.val[i + 1] - s.val[i]);
        xl = s.eps[i] + f * (s.eps[i + 1] - s.eps[i]);
        found_l = true;
        break;
      }
    }
    for (long i = im + 1; i < n; ++i) {
      if (s.val[i] <= half) {
        const double f = (half - s.val[i]) / (s.val[i - 1] - s.val[i]);
        xr = s.eps[i] + f * (s.eps[i - 1] - s.eps[i]);
        found_r = true;
        break;
      }
    }
    if (!found_l || !found_r) {
      std::snprintf(msg, sizeof(msg),
                    "central peak unresolved for kicks=%d: half-maximum "
                    "crossing missing",
                    kicks);
      fail_data(msg);
    }
    out.push_back({kicks, xr - xl});
  }
  return out;
}

}  // namespace kr
