// krscan: configuration-driven scans of the atom-optics kicked rotor near
// quantum resonance, with exact quantum and map-approximation engines.
//
// Subcommands: scan, peaks, fit-x0, gfunc, pdist, report.
// Exit codes: 0 success; 2 config error; 3 data error; 4 I/O error.
// KR_THREADS sets the worker thread count (default: hardware concurrency).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kr/config.hpp"
#include "kr/eclassical.hpp"
#include "kr/errors.hpp"
#include "kr/gfunction.hpp"
#include "kr/hash.hpp"
#include "kr/parallel.hpp"
#include "kr/quantum.hpp"
#include "kr/scan.hpp"
#include "kr/sidepeaks.hpp"
#include "kr/version.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string engine;
  std::string kicks;
  double k = -1.0;
  std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--config", opts->config_path,
                  "key = value configuration file");
  cmd->add_option("--set", opts->sets,
                  "override a config key, e.g. --set ensemble.atoms=4000");
  cmd->add_option("--engine", opts->engine,
                  "engine: quantum, eclassical, or both");
  cmd->add_option("--kicks", opts->kicks, "comma-separated kick counts");
  cmd->add_option("--k", opts->k, "kick strength");
  cmd->add_option("--seed", opts->seed, "master RNG seed");
}

kr::KeyValueConfig load_kv(const CommonOpts& opts) {
  kr::KeyValueConfig kv =
      opts.config_path.empty()
          ? kr::KeyValueConfig::from_string("", "<defaults>")
          : kr::KeyValueConfig::from_file(opts.config_path);
  for (const std::string& item : opts.sets) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      kr::fail_config("--set expects KEY=VALUE, got '" + item + "'");
    }
    kv.set(item.substr(0, eq), item.substr(eq + 1));
  }
  if (!opts.engine.empty()) kv.set("engine", opts.engine);
  if (!opts.kicks.empty()) kv.set("kicks", opts.kicks);
  if (opts.k >= 0.0) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", opts.k);
    kv.set("k", buf);
  }
  if (opts.seed >= 0) kv.set("seed", std::to_string(opts.seed));
  return kv;
}

double recover_k(const kr::KeyValueConfig& kv) {
  return kv.get_double("k", 4.2);
}

int run_scan_cmd(const CommonOpts& opts, const std::string& out_path) {
  kr::KeyValueConfig kv = load_kv(opts);
  if (!out_path.empty()) kv.set("out.scan", out_path);
  kr::ScanConfig config = kr::scan_config_from_kv(kv);
  if (config.out_scan.empty()) config.out_scan = "scan.csv";
  const kr::ScanResult result =
      kr::run_scan(config, kr::default_thread_count());
  std::printf("wrote=%s rows=%zu config_hash=%s\n", config.out_scan.c_str(),
              result.rows.size(), result.config_hash.c_str());
  return 0;
}

kr::PeakReport peaks_of(const kr::ScanResult& result, double exclusion,
                        double k, double x0) {
  if (exclusion >= 0.0) return kr::find_side_peaks(result, exclusion);
  // Per-kick-count default exclusion: half the predicted peak position.
  // find_side_peaks takes one width, so group rows by kick count first.
  kr::PeakReport report;
  std::vector<int> kicks;
  for (const kr::ScanRow& r : result.rows) {
    if (kicks.empty() || kicks.back() != r.kicks) kicks.push_back(r.kicks);
  }
  std::sort(kicks.begin(), kicks.end());
  kicks.erase(std::unique(kicks.begin(), kicks.end()), kicks.end());
  for (const int t : kicks) {
    kr::ScanResult slice;
    slice.config_hash = result.config_hash;
    slice.seed = result.seed;
    for (const kr::ScanRow& r : result.rows) {
      if (r.kicks == t) slice.rows.push_back(r);
    }
    const kr::PeakReport one =
        kr::find_side_peaks(slice, kr::default_exclusion(t, k, x0));
    report.entries.insert(report.entries.end(), one.entries.begin(),
                          one.entries.end());
  }
  return report;
}

void print_peaks(const kr::PeakReport& report) {
  for (const kr::PeakEntry& e : report.entries) {
    std::printf("kicks=%d", e.kicks);
    if (e.left.found) {
      std::printf(" left_eps=%.6g left_height=%.6g", e.left.epsilon,
                  e.left.height);
    } else {
      std::printf(" left=missing");
    }
    if (e.right.found) {
      std::printf(" right_eps=%.6g right_height=%.6g", e.right.epsilon,
                  e.right.height);
    } else {
      std::printf(" right=missing");
    }
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atom-optics kicked rotor: quantum-resonance scan harness"};
  app.set_version_flag("--version", std::string("krscan ") +
                                        kr::kLibraryVersion);
  app.require_subcommand(1);

  // --- scan ---
  auto* scan_cmd = app.add_subcommand(
      "scan", "run an energy scan over the kicking-period grid");
  CommonOpts scan_opts;
  std::string scan_out;
  add_common(scan_cmd, &scan_opts);
  scan_cmd->add_option("--out", scan_out, "scan CSV path (default scan.csv)");

  // --- peaks ---
  auto* peaks_cmd = app.add_subcommand(
      "peaks", "locate side peaks in an existing scan CSV");
  std::string peaks_scan, peaks_out;
  double peaks_exclusion = -1.0, peaks_k = 4.2, peaks_x0 = 11.2;
  peaks_cmd->add_option("--scan", peaks_scan, "scan CSV to analyze")
      ->required();
  peaks_cmd->add_option("--exclusion", peaks_exclusion,
                        "central exclusion half-width in epsilon "
                        "(default: x0^2/(2 t^2 k) per kick count)");
  peaks_cmd->add_option("--k", peaks_k, "kick strength used by the scan");
  peaks_cmd->add_option("--x0", peaks_x0, "scaled side-peak position");
  peaks_cmd->add_option("--out", peaks_out, "peak CSV path");

  // --- fit-x0 ---
  auto* fit_cmd = app.add_subcommand(
      "fit-x0", "fit the side-peak motion law |eps| = x0^2/(t^2 k)");
  std::string fit_scan, fit_out;
  double fit_exclusion = -1.0, fit_k = 4.2, fit_x0_guess = 11.2;
  fit_cmd->add_option("--scan", fit_scan, "scan CSV to analyze")->required();
  fit_cmd->add_option("--exclusion", fit_exclusion,
                      "central exclusion half-width in epsilon");
  fit_cmd->add_option("--k", fit_k, "kick strength used by the scan");
  fit_cmd->add_option("--x0", fit_x0_guess,
                      "scaled position used for the default exclusion");
  fit_cmd->add_option("--out", fit_out, "peak CSV path (with fit footer)");

  // --- gfunc ---
  auto* gfunc_cmd = app.add_subcommand(
      "gfunc", "tabulate the pendulum scaling function G(x)");
  double g_xmax = 100.0, g_dx = 0.05;
  int g_theta = 400, g_panel = 24, g_levels = 8;
  std::string g_out = "gfunc.csv";
  gfunc_cmd->add_option("--xmax", g_xmax, "table upper end (default 100)");
  gfunc_cmd->add_option("--dx", g_dx, "table step (default 0.05)");
  gfunc_cmd->add_option("--theta-nodes", g_theta, "angle quadrature order");
  gfunc_cmd->add_option("--panel-nodes", g_panel, "per-panel order");
  gfunc_cmd->add_option("--levels", g_levels, "separatrix grading depth");
  gfunc_cmd->add_option("--out", g_out, "G table CSV path");

  // --- pdist ---
  auto* pdist_cmd = app.add_subcommand(
      "pdist", "quantum momentum distribution after t kicks");
  CommonOpts pdist_opts;
  double pd_kbar = 0.0, pd_pmax = 60.0, pd_dp = 1.0;
  int pd_t = 14;
  std::string pd_out = "pdist.csv";
  add_common(pdist_cmd, &pdist_opts);
  pdist_cmd->add_option("--kbar", pd_kbar, "effective Planck constant")
      ->required();
  pdist_cmd->add_option("--t", pd_t, "kick count");
  pdist_cmd->add_option("--pmax", pd_pmax, "histogram half-range");
  pdist_cmd->add_option("--dp", pd_dp, "bin width");
  pdist_cmd->add_option("--out", pd_out, "histogram CSV path");

  // --- report ---
  auto* report_cmd = app.add_subcommand(
      "report", "scan, analyze peaks, tabulate G, and emit all artifacts");
  CommonOpts report_opts;
  double rep_gxmax = 20.0, rep_gdx = 0.05, rep_x0 = 11.2;
  add_common(report_cmd, &report_opts);
  report_cmd->add_option("--gx-max", rep_gxmax, "G table upper end");
  report_cmd->add_option("--gx-dx", rep_gdx, "G table step");
  report_cmd->add_option("--x0", rep_x0, "scaled side-peak position");

  try {
    app.parse(argc, argv);

    if (*scan_cmd) return run_scan_cmd(scan_opts, scan_out);

    if (*peaks_cmd) {
      const kr::ScanResult result = kr::read_scan_csv(peaks_scan);
      const kr::PeakReport report =
          peaks_of(result, peaks_exclusion, peaks_k, peaks_x0);
      print_peaks(report);
      if (!peaks_out.empty()) {
        kr::write_peaks_csv(peaks_out, report, nullptr, result.config_hash,
                            result.seed);
        std::printf("wrote=%s\n", peaks_out.c_str());
      }
      return 0;
    }

    if (*fit_cmd) {
      const kr::ScanResult result = kr::read_scan_csv(fit_scan);
      const kr::PeakReport report =
          peaks_of(result, fit_exclusion, fit_k, fit_x0_guess);
      const kr::X0Fit fit = kr::fit_x0(report, fit_k);
      std::printf("x0=%.8g stderr=%.8g n_peaks=%ld\n", fit.x0, fit.stderr_,
                  fit.n_peaks);
      if (!fit_out.empty()) {
        kr::write_peaks_csv(fit_out, report, &fit, result.config_hash,
                            result.seed);
        std::printf("wrote=%s\n", fit_out.c_str());
      }
      return 0;
    }

    if (*gfunc_cmd) {
      kr::GQuadratureSpec spec;
      spec.theta_nodes = g_theta;
      spec.panel_nodes = g_panel;
      spec.grading_levels = g_levels;
      const kr::GTable table = kr::build_gtable(
          0.0, g_xmax, g_dx, spec, kr::default_thread_count());
      char meta[160];
      std::snprintf(meta, sizeof(meta),
                    "gfunc xmax=%.17g dx=%.17g theta=%d panel=%d levels=%d",
                    g_xmax, g_dx, g_theta, g_panel, g_levels);
      char hash[17];
      std::snprintf(hash, sizeof(hash), "%016llx",
                    static_cast<unsigned long long>(kr::fnv1a64(meta)));
      kr::write_gtable_csv(g_out, table, hash, 0);
      std::printf("wrote=%s points=%zu\n", g_out.c_str(), table.g.size());
      return 0;
    }

    if (*pdist_cmd) {
      kr::KeyValueConfig kv = load_kv(pdist_opts);
      bool has_grid = false;
      for (const auto& [key, value] : kv.entries()) {
        if (key.rfind("grid.", 0) == 0) has_grid = true;
      }
      // pdist takes its kbar from --kbar; the grid is irrelevant but the
      // config builder requires one, so give it a default when absent.
      if (!has_grid) kv.set("grid.kbar.list", "6.3");
      kr::ScanConfig config = kr::scan_config_from_kv(kv);
      if (!(pd_pmax > 0.0) || !(pd_dp > 0.0)) {
        kr::fail_config("pdist needs --pmax > 0 and --dp > 0");
      }
      const long nbins = static_cast<long>(2.0 * pd_pmax / pd_dp + 0.5);
      std::vector<double> edges;
      for (long i = 0; i <= nbins; ++i) {
        edges.push_back(-pd_pmax + pd_dp * static_cast<double>(i));
      }
      const kr::KickParams params{config.k, pd_kbar};
      const std::vector<double> hist =
          kr::momentum_histogram(config.ensemble, params, config.noise, pd_t,
                                 edges, kr::default_thread_count());
      std::string out = "# columns=p_lo,p_hi,mass\n";
      char buf[120];
      for (long b = 0; b < nbins; ++b) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", edges[b],
                      edges[b + 1], hist[b]);
        out += buf;
      }
      std::FILE* f = std::fopen(pd_out.c_str(), "wb");
      if (!f) kr::fail_io("cannot open for writing: " + pd_out);
      std::fwrite(out.data(), 1, out.size(), f);
      if (std::fclose(f) != 0) kr::fail_io("short write: " + pd_out);
      std::printf("wrote=%s bins=%ld\n", pd_out.c_str(), nbins);
      return 0;
    }

    if (*report_cmd) {
      kr::KeyValueConfig kv = load_kv(report_opts);
      kr::ScanConfig config = kr::scan_config_from_kv(kv);
      if (config.out_scan.empty()) config.out_scan = "scan.csv";
      if (config.out_peaks.empty()) config.out_peaks = "peaks.csv";
      if (config.out_gfunc.empty()) config.out_gfunc = "gfunc.csv";
      if (config.out_collation.empty()) config.out_collation = "collation.csv";

      const kr::ScanResult result =
          kr::run_scan(config, kr::default_thread_count());
      kr::PeakReport report;
      const kr::PeakReport* report_ptr = nullptr;
      kr::X0Fit fit;
      const kr::X0Fit* fit_ptr = nullptr;
      if (config.k > 0.0) {
        report = peaks_of(result, -1.0, config.k, rep_x0);
        report_ptr = &report;
        try {
          fit = kr::fit_x0(report, config.k);
          fit_ptr = &fit;
        } catch (const kr::KrError&) {
          std::printf("x0_fit=unavailable\n");
        }
      }
      const kr::GTable table =
          kr::build_gtable(0.0, rep_gxmax, rep_gdx, kr::GQuadratureSpec{},
                           kr::default_thread_count());
      kr::ReportInputs inputs;
      inputs.scan = &result;
      inputs.peaks = report_ptr;
      inputs.fit = fit_ptr;
      inputs.gtable = &table;
      kr::emit_report(inputs, config);
      std::printf("wrote=%s wrote=%s wrote=%s wrote=%s rows=%zu\n",
                  config.out_scan.c_str(), config.out_peaks.c_str(),
                  config.out_gfunc.c_str(), config.out_collation.c_str(),
                  result.rows.size());
      if (fit_ptr) {
        std::printf("x0=%.8g stderr=%.8g n_peaks=%ld\n", fit.x0, fit.stderr_,
                    fit.n_peaks);
      }
      return 0;
    }

    kr::fail_config("no subcommand selected");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: category=config message=%s\n", e.what());
    return 2;
  } catch (const kr::KrError& e) {
    std::fprintf(stderr, "error: category=%s message=%s\n", e.category_name(),
                 e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: category=data message=%s\n", e.what());
    return 3;
  }
}
