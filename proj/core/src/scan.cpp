#include "kr/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "kr/eclassical.hpp"
#include "kr/errors.hpp"
#include "kr/hash.hpp"
#include "kr/version.hpp"

namespace kr {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* beta_law_name(BetaLaw law) {
  switch (law) {
    case BetaLaw::Point: return "point";
    case BetaLaw::Uniform: return "uniform";
    case BetaLaw::WrappedGaussian: return "wrapped_gaussian";
    default: return "stratified";
  }
}

const char* n0_law_name(N0Law law) {
  return law == N0Law::Point ? "point" : "discrete_gaussian";
}

std::vector<double> build_axis(const KeyValueConfig& kv,
                               const std::string& prefix) {
  std::vector<double> values = kv.get_double_list(prefix + ".list");
  const bool has_list = !values.empty();
  const bool has_range = kv.has(prefix + ".start") ||
                         kv.has(prefix + ".stop") || kv.has(prefix + ".step");
  if (has_list && has_range) {
    fail_config(prefix + ": give either .list or .start/.stop/.step");
  }
  if (has_range) {
    const double start = kv.get_double(prefix + ".start", 0.0);
    const double stop = kv.get_double(prefix + ".stop", 0.0);
    const double step = kv.get_double(prefix + ".step", 0.0);
    if (!(step > 0.0) || !(stop >= start)) {
      fail_config(prefix + ": needs step > 0 and stop >= start");
    }
    const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
      values.push_back(start + step * static_cast<double>(i));
    }
  }
  return values;
}

void parse_beta_law(const std::string& text, EnsembleSpec* spec) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::vector<std::string> args;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) args.push_back(item);
  }
  const auto arg = [&](std::size_t i) {
    if (i >= args.size()) {
      fail_config("ensemble.beta '" + text + "': missing argument");
    }
    char* end = nullptr;
    const double v = std::strtod(args[i].c_str(), &end);
    if (end == args[i].c_str() || *end != '\0') {
      fail_config("ensemble.beta '" + text + "': bad number '" + args[i] +
                  "'");
    }
    return v;
  };
  if (name == "uniform") {
    spec->beta_law = BetaLaw::Uniform;
  } else if (name == "stratified") {
    spec->beta_law = BetaLaw::StratifiedUniform;
  } else if (name == "point") {
    spec->beta_law = BetaLaw::Point;
    spec->beta0 = arg(0);
  } else if (name == "wrapped_gaussian") {
    spec->beta_law = BetaLaw::WrappedGaussian;
    spec->beta0 = arg(0);
    spec->sigma_beta = arg(1);
  } else {
    fail_config("ensemble.beta: unknown law '" + name + "'");
  }
}

void parse_n0_law(const std::string& text, EnsembleSpec* spec) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  char* end = nullptr;
  if (name == "point") {
    spec->n0_law = N0Law::Point;
    if (!arg.empty()) {
      spec->n0 = std::strtol(arg.c_str(), &end, 10);
      if (end == arg.c_str() || *end != '\0') {
        fail_config("ensemble.n0 '" + text + "': bad integer");
      }
    }
  } else if (name == "discrete_gaussian") {
    spec->n0_law = N0Law::DiscreteGaussian;
    if (arg.empty()) fail_config("ensemble.n0: discrete_gaussian needs sigma");
    spec->sigma_n = std::strtod(arg.c_str(), &end);
    if (end == arg.c_str() || *end != '\0' || !(spec->sigma_n >= 0.0)) {
      fail_config("ensemble.n0 '" + text + "': bad sigma");
    }
  } else {
    fail_config("ensemble.n0: unknown law '" + name + "'");
  }
}

void append_row_csv(std::string* out, const ScanRow& r) {
  out->append(fmt_g(r.kbar));
  out->push_back(',');
  out->append(fmt_g(r.epsilon));
  out->push_back(',');
  out->append(fmt_g(r.period_us));
  out->push_back(',');
  out->append(std::to_string(r.kicks));
  out->push_back(',');
  out->append(r.engine);
  out->push_back(',');
  out->append(fmt_g(r.mean_energy));
  out->push_back(',');
  out->append(fmt_g(r.ratio));
  out->push_back(',');
  out->append(fmt_g(r.stderr_));
  out->push_back(',');
  out->append(std::to_string(r.atoms));
  out->push_back(',');
  out->append(std::to_string(r.seed));
  out->push_back('\n');
}

void write_file_bytes(const std::string& path, const std::string& bytes) {
  if (path.empty()) fail_config("output path is empty");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) fail_io("cannot open for writing: " + path);
  const std::size_t n = std::fwrite(bytes.data(), 1, bytes.size(), f);
  const int rc = std::fclose(f);
  if (n != bytes.size() || rc != 0) fail_io("short write: " + path);
}

std::string scan_header(const std::string& hash, std::uint64_t seed) {
  std::string out;
  out += "# config_hash=" + hash + "\n";
  out += std::string("# engine_versions=") + kQuantumEngineVersion + "," +
         kEclassicalEngineVersion + "\n";
  out += "# seed=" + std::to_string(seed) + "\n";
  return out;
}

double parse_csv_double(const std::string& field, const std::string& path,
                        long lineno) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    fail_data(path + ":" + std::to_string(lineno) + ": bad number '" + field +
              "'");
  }
  return v;
}

}  // namespace

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Quantum: return "quantum";
    case Engine::Eclassical: return "eclassical";
    default: return "both";
  }
}

ScanConfig scan_config_from_kv(const KeyValueConfig& kv) {
  ScanConfig c;

  const std::string engine = kv.get_string("engine", "eclassical");
  if (engine == "quantum") {
    c.engine = Engine::Quantum;
  } else if (engine == "eclassical") {
    c.engine = Engine::Eclassical;
  } else if (engine == "both") {
    c.engine = Engine::Both;
  } else {
    fail_config("engine must be quantum, eclassical, or both");
  }

  const double omega_hz =
      kv.get_double("constants.omega_recoil_hz", 3860.0);
  if (!(omega_hz > 0.0)) fail_config("constants.omega_recoil_hz must be > 0");
  c.constants.omega_recoil = kTwoPi * omega_hz;

  c.k = kv.get_double("k", 4.2);
  if (!(c.k >= 0.0)) fail_config("k must be >= 0");

  c.kick_counts = kv.get_int_list("kicks");
  if (c.kick_counts.empty()) c.kick_counts = {16};
  for (const int t : c.kick_counts) {
    if (t < 1) fail_config("kick counts must be positive");
  }
  std::sort(c.kick_counts.begin(), c.kick_counts.end());
  c.kick_counts.erase(
      std::unique(c.kick_counts.begin(), c.kick_counts.end()),
      c.kick_counts.end());

  const std::vector<double> kbar_axis = build_axis(kv, "grid.kbar");
  const std::vector<double> period_axis = build_axis(kv, "grid.period_us");
  if (!kbar_axis.empty() && !period_axis.empty()) {
    fail_config("give either a kbar grid or a period grid, not both");
  }
  if (!period_axis.empty()) {
    for (const double period_us : period_axis) {
      c.kbar_grid.push_back(
          kbar_from_period(period_us * 1e-6, c.constants));
    }
  } else if (!kbar_axis.empty()) {
    c.kbar_grid = kbar_axis;
  } else {
    for (long i = 0; i <= 140; ++i) {
      c.kbar_grid.push_back(kTwoPi - 0.35 + 0.005 * static_cast<double>(i));
    }
  }
  for (std::size_t i = 0; i < c.kbar_grid.size(); ++i) {
    if (!(c.kbar_grid[i] > kPi)) {
      fail_config("grid values must give kbar > pi");
    }
    if (i > 0 && !(c.kbar_grid[i] > c.kbar_grid[i - 1])) {
      fail_config("grid must be strictly ascending");
    }
  }

  parse_beta_law(kv.get_string("ensemble.beta", "uniform"), &c.ensemble);
  parse_n0_law(kv.get_string("ensemble.n0", "point:0"), &c.ensemble);
  c.ensemble.atom_count = kv.get_long("ensemble.atoms", 10000);
  if (c.ensemble.atom_count < 1) fail_config("ensemble.atoms must be >= 1");
  c.map_trajectories = kv.get_long("map.trajectories", 100000);
  if (c.map_trajectories < 1) fail_config("map.trajectories must be >= 1");
  c.traj_per_atom = static_cast<int>(kv.get_long("traj_per_atom", 1));
  if (c.traj_per_atom < 1) fail_config("traj_per_atom must be >= 1");

  c.noise.se_probability = kv.get_double("noise.se_probability", 0.0);
  c.noise.se_kick_width = kv.get_double("noise.se_kick_width", 0.5);
  c.noise.se_drift = kv.get_double("noise.se_drift", 0.0);
  c.noise.intensity_weighted = kv.get_bool("noise.intensity_weighted", true);

  c.seed = kv.get_u64("seed", 1);
  c.ensemble.seed = c.seed;

  c.out_scan = kv.get_string("out.scan", "");
  c.out_peaks = kv.get_string("out.peaks", "");
  c.out_gfunc = kv.get_string("out.gfunc", "");
  c.out_collation = kv.get_string("out.collation", "");

  kv.require_all_consumed();
  return c;
}

ScanConfig scan_config_from_file(const std::string& path) {
  return scan_config_from_kv(KeyValueConfig::from_file(path));
}

std::string config_hash_hex(const ScanConfig& c) {
  std::string s;
  s += "engine=";
  s += engine_name(c.engine);
  s += "\nomega_recoil=" + fmt_exact(c.constants.omega_recoil);
  s += "\nmass=" + fmt_exact(c.constants.mass);
  s += "\nk=" + fmt_exact(c.k);
  s += "\nkicks=";
  for (std::size_t i = 0; i < c.kick_counts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.kick_counts[i]);
  }
  s += "\nkbar_grid=";
  for (std::size_t i = 0; i < c.kbar_grid.size(); ++i) {
    if (i) s += ",";
    s += fmt_exact(c.kbar_grid[i]);
  }
  s += "\nbeta_law=";
  s += beta_law_name(c.ensemble.beta_law);
  s += "\nbeta0=" + fmt_exact(c.ensemble.beta0);
  s += "\nsigma_beta=" + fmt_exact(c.ensemble.sigma_beta);
  s += "\nn0_law=";
  s += n0_law_name(c.ensemble.n0_law);
  s += "\nn0=" + std::to_string(c.ensemble.n0);
  s += "\nsigma_n=" + fmt_exact(c.ensemble.sigma_n);
  s += "\natoms=" + std::to_string(c.ensemble.atom_count);
  s += "\nmap_trajectories=" + std::to_string(c.map_trajectories);
  s += "\ntraj_per_atom=" + std::to_string(c.traj_per_atom);
  s += "\nse_probability=" + fmt_exact(c.noise.se_probability);
  s += "\nse_kick_width=" + fmt_exact(c.noise.se_kick_width);
  s += "\nse_drift=" + fmt_exact(c.noise.se_drift);
  s += "\nintensity_weighted=";
  s += c.noise.intensity_weighted ? "1" : "0";
  s += "\nseed=" + std::to_string(c.seed);
  s += "\n";
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

ScanResult run_scan(const ScanConfig& config, int threads) {
  if (config.kbar_grid.empty()) fail_config("scan grid is empty");
  if (config.kick_counts.empty()) fail_config("no kick counts requested");
  const bool run_map = config.engine != Engine::Quantum;
  const bool run_quantum = config.engine != Engine::Eclassical;
  if (run_map && config.noise.se_probability > 0.0) {
    fail_config(
        "spontaneous emission is only modeled by the quantum engine; "
        "use engine=quantum");
  }

  ScanResult result;
  result.config_hash = config_hash_hex(config);
  result.seed = config.seed;

  EnsembleSpec map_spec = config.ensemble;
  map_spec.atom_count = config.map_trajectories;

  for (const int t : config.kick_counts) {
    for (const double kbar : config.kbar_grid) {
      const EpsilonDecomp dec = epsilon_from_kbar(kbar);
      const double period_us =
          period_from_kbar(kbar, config.constants) * 1e6;
      const double res_gain =
          0.25 * config.k * config.k * static_cast<double>(t);

      if (run_map) {
        const MapParams params = MapParams::make(kbar, config.k);
        const EnergyStat stat = ensemble_energy_map(
            map_spec, params, t, config.traj_per_atom, threads);
        ScanRow row;
        row.kbar = kbar;
        row.epsilon = dec.epsilon;
        row.period_us = period_us;
        row.kicks = t;
        row.engine = "eclassical";
        row.mean_energy = stat.mean;
        row.ratio = res_gain > 0.0 ? stat.mean / res_gain : 0.0;
        row.stderr_ = stat.stderr_;
        row.atoms = stat.count;
        row.seed = config.seed;
        result.rows.push_back(row);
      }
      if (run_quantum) {
        const KickParams params{config.k, kbar};
        const EnergyStat stat =
            ensemble_energy(config.ensemble, params, config.noise, t, threads);
        ScanRow row;
        row.kbar = kbar;
        row.epsilon = dec.epsilon;
        row.period_us = period_us;
        row.kicks = t;
        row.engine = "quantum";
        row.mean_energy = stat.mean;
        row.ratio = res_gain > 0.0 ? stat.mean / res_gain : 0.0;
        row.stderr_ = stat.stderr_;
        row.atoms = stat.count;
        row.seed = config.seed;
        result.rows.push_back(row);
      }
    }
  }

  std::sort(result.rows.begin(), result.rows.end(),
            [](const ScanRow& a, const ScanRow& b) {
              if (a.kicks != b.kicks) return a.kicks < b.kicks;
              if (a.kbar != b.kbar) return a.kbar < b.kbar;
              return a.engine < b.engine;
            });

  if (!config.out_scan.empty()) {
    write_scan_csv(config.out_scan, result);
  }
  return result;
}

void write_scan_csv(const std::string& path, const ScanResult& result) {
  std::string out = scan_header(result.config_hash, result.seed);
  out +=
      "# columns=kbar,epsilon,period_us,kicks,engine,mean_energy,ratio,"
      "stderr,atoms,seed\n";
  for (const ScanRow& r : result.rows) append_row_csv(&out, r);
  write_file_bytes(path, out);
}

ScanResult read_scan_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open scan CSV: " + path);
  ScanResult result;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t eq = line.find('=');
      if (eq != std::string::npos) {
        const std::string key = line.substr(2, eq - 2);
        const std::string value = line.substr(eq + 1);
        if (key == "config_hash") result.config_hash = value;
        if (key == "seed") {
          result.seed = std::strtoull(value.c_str(), nullptr, 10);
        }
      }
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      fail_data(path + ":" + std::to_string(lineno) +
                ": expected 10 comma-separated fields");
    }
    ScanRow r;
    r.kbar = parse_csv_double(fields[0], path, lineno);
    r.epsilon = parse_csv_double(fields[1], path, lineno);
    r.period_us = parse_csv_double(fields[2], path, lineno);
    r.kicks = static_cast<int>(parse_csv_double(fields[3], path, lineno));
    r.engine = fields[4];
    r.mean_energy = parse_csv_double(fields[5], path, lineno);
    r.ratio = parse_csv_double(fields[6], path, lineno);
    r.stderr_ = parse_csv_double(fields[7], path, lineno);
    r.atoms = static_cast<long>(parse_csv_double(fields[8], path, lineno));
    r.seed = std::strtoull(fields[9].c_str(), nullptr, 10);
    result.rows.push_back(r);
  }
  return result;
}

void write_peaks_csv(const std::string& path, const PeakReport& report,
                     const X0Fit* fit, const std::string& config_hash,
                     std::uint64_t seed) {
  std::string out = scan_header(config_hash, seed);
  out += "# columns=kicks,side,found,epsilon,height\n";
  for (const PeakEntry& e : report.entries) {
    const auto add = [&](const char* side, const SidePeak& p) {
      out += std::to_string(e.kicks);
      out += ",";
      out += side;
      out += ",";
      out += p.found ? "1" : "0";
      out += ",";
      out += fmt_g(p.found ? p.epsilon : 0.0);
      out += ",";
      out += fmt_g(p.found ? p.height : 0.0);
      out += "\n";
    };
    add("left", e.left);
    add("right", e.right);
  }
  if (fit) {
    out += "# x0=" + fmt_g(fit->x0) + "\n";
    out += "# x0_stderr=" + fmt_g(fit->stderr_) + "\n";
    out += "# n_peaks=" + std::to_string(fit->n_peaks) + "\n";
  }
  write_file_bytes(path, out);
}

void write_gtable_csv(const std::string& path, const GTable& table,
                      const std::string& config_hash, std::uint64_t seed) {
  std::string out = scan_header(config_hash, seed);
  out += "# columns=x,g,pendulum_ratio,background_ratio,energy_ratio\n";
  for (std::size_t i = 0; i < table.g.size(); ++i) {
    const double x = table.x0 + table.dx * static_cast<double>(i);
    const double g = table.g[i];
    out += fmt_g(x);
    out += ",";
    out += fmt_g(g);
    out += ",";
    out += fmt_g(pendulum_ratio(x, g));
    out += ",";
    out += fmt_g(background_ratio(x));
    out += ",";
    out += fmt_g(energy_ratio(x, g));
    out += "\n";
  }
  write_file_bytes(path, out);
}

void emit_report(const ReportInputs& inputs, const ScanConfig& config) {
  if (!inputs.scan) fail_config("emit_report needs a scan result");
  if (config.out_scan.empty() || config.out_peaks.empty() ||
      config.out_gfunc.empty() || config.out_collation.empty()) {
    fail_config("emit_report needs all four out.* paths");
  }
  const ScanResult& scan = *inputs.scan;
  write_scan_csv(config.out_scan, scan);

  PeakReport empty_report;
  write_peaks_csv(config.out_peaks,
                  inputs.peaks ? *inputs.peaks : empty_report, inputs.fit,
                  scan.config_hash, scan.seed);

  GTable empty_table;
  write_gtable_csv(config.out_gfunc, inputs.gtable ? *inputs.gtable : empty_table,
                   scan.config_hash, scan.seed);

  // Plot-ready collation: scaled ratio curves, side peaks against the
  // 1/t^2 law, central widths, and the analytic ratio decomposition.
  std::string out = scan_header(scan.config_hash, scan.seed);
  out += "# section=ratio_vs_x\n";
  out += "# columns=kicks,engine,x,epsilon,ratio\n";
  for (const ScanRow& r : scan.rows) {
    const double x = static_cast<double>(r.kicks) *
                     std::sqrt(config.k * std::fabs(r.epsilon));
    out += std::to_string(r.kicks);
    out += ",";
    out += r.engine;
    out += ",";
    out += fmt_g(x);
    out += ",";
    out += fmt_g(r.epsilon);
    out += ",";
    out += fmt_g(r.ratio);
    out += "\n";
  }
  out += "# section=energy_vs_period\n";
  out += "# columns=kicks,engine,period_us,mean_energy,stderr\n";
  for (const ScanRow& r : scan.rows) {
    out += std::to_string(r.kicks);
    out += ",";
    out += r.engine;
    out += ",";
    out += fmt_g(r.period_us);
    out += ",";
    out += fmt_g(r.mean_energy);
    out += ",";
    out += fmt_g(r.stderr_);
    out += "\n";
  }
  if (inputs.peaks) {
    out += "# section=side_peaks\n";
    out += "# columns=kicks,side,epsilon,height,predicted\n";
    for (const PeakEntry& e : inputs.peaks->entries) {
      const double pred =
          config.k > 0.0 ? predict_side_peak(e.kicks, config.k) : 0.0;
      const auto add = [&](const char* side, const SidePeak& p,
                           double sign) {
        if (!p.found) return;
        out += std::to_string(e.kicks);
        out += ",";
        out += side;
        out += ",";
        out += fmt_g(p.epsilon);
        out += ",";
        out += fmt_g(p.height);
        out += ",";
        out += fmt_g(sign * pred);
        out += "\n";
      };
      add("left", e.left, -1.0);
      add("right", e.right, 1.0);
    }
  }
  if (inputs.fit) {
    out += "# section=x0_fit\n";
    out += "# columns=x0,stderr,n_peaks\n";
    out += fmt_g(inputs.fit->x0);
    out += ",";
    out += fmt_g(inputs.fit->stderr_);
    out += ",";
    out += std::to_string(inputs.fit->n_peaks);
    out += "\n";
  }
  if (!scan.rows.empty()) {
    bool fwhm_ok = true;
    std::vector<FwhmEntry> widths;
    try {
      widths = peak_fwhm(scan);
    } catch (const KrError&) {
      fwhm_ok = false;
    }
    if (fwhm_ok) {
      out += "# section=fwhm\n";
      out += "# columns=kicks,fwhm\n";
      for (const FwhmEntry& w : widths) {
        out += std::to_string(w.kicks);
        out += ",";
        out += fmt_g(w.fwhm);
        out += "\n";
      }
    } else {
      out += "# section=fwhm_unavailable\n";
    }
  }
  if (inputs.gtable && !inputs.gtable->g.empty()) {
    out += "# section=gtable\n";
    out += "# columns=x,g,energy_ratio\n";
    const GTable& gt = *inputs.gtable;
    for (std::size_t i = 0; i < gt.g.size(); ++i) {
      const double x = gt.x0 + gt.dx * static_cast<double>(i);
      out += fmt_g(x);
      out += ",";
      out += fmt_g(gt.g[i]);
      out += ",";
      out += fmt_g(energy_ratio(x, gt.g[i]));
      out += "\n";
    }
  }
  write_file_bytes(config.out_collation, out);
}

}  // namespace kr
