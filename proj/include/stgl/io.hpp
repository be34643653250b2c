#pragma once

// File formats and run configuration.
//
// Matrices travel as comma-separated text: one matrix row per line, decimal
// reals printed with 17 significant digits (lossless for doubles), plus an
// optional single '#' header line. Run configuration is plain key=value
// lines with '#' comments; unknown keys are rejected and every absent key
// gets its documented default, echoed into the output manifest.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stgl/errors.hpp"

namespace stgl {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_double_token(const std::string& tok,
                                 const std::string& path,
                                 const std::string& context) {
  const std::string t = trim(tok);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw io_error("bad numeric value '" + t + "' (" + context + ")", path);
  return v;
}

}  // namespace detail

// ---- matrix files ----------------------------------------------------------

inline void write_matrix(const std::string& path, const Eigen::MatrixXd& m,
                         const std::string& header = "") {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing", path);
  if (!header.empty()) out << "# " << header << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw io_error("write failed", path);
}

inline Eigen::MatrixXd read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open file", path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (first) {
        first = false;
        continue;  // single optional header line
      }
      throw io_error("unexpected comment at line " + std::to_string(lineno),
                     path);
    }
    first = false;
    std::vector<double> row;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ','))
      row.push_back(detail::parse_double_token(
          tok, path, "line " + std::to_string(lineno)));
    if (!rows.empty() && row.size() != rows.front().size())
      throw io_error("ragged row at line " + std::to_string(lineno) +
                         ": expected " + std::to_string(rows.front().size()) +
                         " values, got " + std::to_string(row.size()),
                     path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw io_error("no matrix data found", path);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

// ---- run configuration -----------------------------------------------------

struct RunConfig {
  // problem size
  int n = 64;
  int T = 640;
  // graph generation
  int clusters = 4;
  double p_within = 0.075;
  double p_between = 0.7;
  std::string weight_dist = "unit";  // unit | uniform
  double weight_lo = 1.0;
  double weight_hi = 1.0;
  std::uint64_t graph_seed = 1;
  std::uint64_t signal_seed = 2;
  std::uint64_t mask_seed = 3;
  double sampling_rate = 0.7;
  // hyper-parameters; beta/gamma default to 0.02*T and 0.002*T when unset
  double alpha = 0.02;
  double beta = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double tau = 100.0;
  // solver
  double theta_slack = 1.01;
  double w_floor = 1e-8;
  double rel_tol = 1e-3;
  int max_iters = 1000;
  bool track_objective = true;
  double pd_floor = 1e-12;
  // evaluation
  double edge_threshold = 1e-4;
  // sweep
  std::vector<double> rates = {0.5, 0.7, 0.9};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int workers = 1;
  // optional output path (CLI --out takes precedence)
  std::string out;
};

namespace detail {

inline int parse_int(const std::string& v, const std::string& path,
                     const std::string& key) {
  const double d = parse_double_token(v, path, "key " + key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw io_error("key " + key + " expects an integer, got '" + v + "'", path);
  return i;
}

inline std::uint64_t parse_u64(const std::string& v, const std::string& path,
                               const std::string& key) {
  const std::string t = trim(v);
  char* end = nullptr;
  const unsigned long long u = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size())
    throw io_error("key " + key + " expects an unsigned integer, got '" + t + "'",
                   path);
  return u;
}

inline bool parse_bool(const std::string& v, const std::string& path,
                       const std::string& key) {
  const std::string t = trim(v);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw io_error("key " + key + " expects true/false, got '" + t + "'", path);
}

template <typename T, typename Parse>
inline std::vector<T> parse_list(const std::string& v, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse(tok));
  return out;
}

inline void apply_preset(RunConfig& cfg, const std::string& name,
                         const std::string& path) {
  if (name == "paper-synth") {
    cfg.n = 64;
    cfg.T = 640;
    cfg.clusters = 4;
    cfg.p_within = 0.075;
    cfg.p_between = 0.7;
    cfg.weight_dist = "unit";
  } else if (name == "desk") {
    cfg.n = 20;
    cfg.T = 200;
    cfg.clusters = 4;
    cfg.p_within = 0.075;
    cfg.p_between = 0.7;
    cfg.weight_dist = "unit";
    cfg.rates = {0.5, 0.7, 0.9};
    cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  } else {
    throw io_error("unknown preset '" + name + "'", path);
  }
}

}  // namespace detail

inline RunConfig parse_config_lines(const std::vector<std::string>& lines,
                                    const std::string& path) {
  using detail::parse_bool;
  using detail::parse_double_token;
  using detail::parse_int;
  using detail::parse_list;
  using detail::parse_u64;
  using detail::trim;

  std::vector<std::pair<std::string, std::string>> entries;
  int lineno = 0;
  for (const auto& raw : lines) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw io_error("expected key=value at line " + std::to_string(lineno),
                     path);
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }

  RunConfig cfg;
  // preset first so explicit keys override it regardless of file order
  for (const auto& [key, value] : entries)
    if (key == "preset") detail::apply_preset(cfg, value, path);

  for (const auto& [key, value] : entries) {
    if (key == "preset") continue;
    if (key == "n") cfg.n = parse_int(value, path, key);
    else if (key == "T") cfg.T = parse_int(value, path, key);
    else if (key == "clusters") cfg.clusters = parse_int(value, path, key);
    else if (key == "p_within") cfg.p_within = parse_double_token(value, path, key);
    else if (key == "p_between") cfg.p_between = parse_double_token(value, path, key);
    else if (key == "weight_dist") {
      if (value != "unit" && value != "uniform")
        throw io_error("weight_dist must be unit or uniform, got '" + value + "'", path);
      cfg.weight_dist = value;
    }
    else if (key == "weight_lo") cfg.weight_lo = parse_double_token(value, path, key);
    else if (key == "weight_hi") cfg.weight_hi = parse_double_token(value, path, key);
    else if (key == "graph_seed") cfg.graph_seed = parse_u64(value, path, key);
    else if (key == "signal_seed") cfg.signal_seed = parse_u64(value, path, key);
    else if (key == "mask_seed") cfg.mask_seed = parse_u64(value, path, key);
    else if (key == "sampling_rate") cfg.sampling_rate = parse_double_token(value, path, key);
    else if (key == "alpha") cfg.alpha = parse_double_token(value, path, key);
    else if (key == "beta") cfg.beta = parse_double_token(value, path, key);
    else if (key == "gamma") cfg.gamma = parse_double_token(value, path, key);
    else if (key == "tau") cfg.tau = parse_double_token(value, path, key);
    else if (key == "theta_slack") cfg.theta_slack = parse_double_token(value, path, key);
    else if (key == "w_floor") cfg.w_floor = parse_double_token(value, path, key);
    else if (key == "rel_tol") cfg.rel_tol = parse_double_token(value, path, key);
    else if (key == "max_iters") cfg.max_iters = parse_int(value, path, key);
    else if (key == "track_objective") cfg.track_objective = parse_bool(value, path, key);
    else if (key == "pd_floor") cfg.pd_floor = parse_double_token(value, path, key);
    else if (key == "edge_threshold") cfg.edge_threshold = parse_double_token(value, path, key);
    else if (key == "rates")
      cfg.rates = parse_list<double>(value, [&](const std::string& t) {
        return parse_double_token(t, path, key);
      });
    else if (key == "seeds")
      cfg.seeds = parse_list<std::uint64_t>(value, [&](const std::string& t) {
        return parse_u64(t, path, key);
      });
    else if (key == "workers") cfg.workers = parse_int(value, path, key);
    else if (key == "out") cfg.out = value;
    else throw io_error("unknown config key '" + key + "'", path);
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file", path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return parse_config_lines(lines, path);
}

// Hyper-parameters with the T-dependent defaults resolved.
inline void resolve_hyperparams(RunConfig& cfg, int t_count) {
  if (std::isnan(cfg.beta)) cfg.beta = 0.02 * t_count;
  if (std::isnan(cfg.gamma)) cfg.gamma = 0.002 * t_count;
}

// ---- manifests -------------------------------------------------------------

inline constexpr int kFormatVersion = 1;

using Manifest = std::vector<std::pair<std::string, std::string>>;

inline void write_manifest(const std::string& path, const Manifest& entries) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing", path);
  for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
  if (!out) throw io_error("write failed", path);
}

// Every effective parameter, with T-dependent defaults resolved; enough to
// re-run the command bit-identically.
inline Manifest config_manifest(const RunConfig& cfg) {
  RunConfig r = cfg;
  resolve_hyperparams(r, r.T);
  Manifest m;
  m.emplace_back("format_version", std::to_string(kFormatVersion));
  m.emplace_back("n", std::to_string(r.n));
  m.emplace_back("T", std::to_string(r.T));
  m.emplace_back("clusters", std::to_string(r.clusters));
  m.emplace_back("p_within", format_double(r.p_within));
  m.emplace_back("p_between", format_double(r.p_between));
  m.emplace_back("weight_dist", r.weight_dist);
  m.emplace_back("weight_lo", format_double(r.weight_lo));
  m.emplace_back("weight_hi", format_double(r.weight_hi));
  m.emplace_back("graph_seed", std::to_string(r.graph_seed));
  m.emplace_back("signal_seed", std::to_string(r.signal_seed));
  m.emplace_back("mask_seed", std::to_string(r.mask_seed));
  m.emplace_back("sampling_rate", format_double(r.sampling_rate));
  m.emplace_back("alpha", format_double(r.alpha));
  m.emplace_back("beta", format_double(r.beta));
  m.emplace_back("gamma", format_double(r.gamma));
  m.emplace_back("tau", format_double(r.tau));
  m.emplace_back("theta_slack", format_double(r.theta_slack));
  m.emplace_back("w_floor", format_double(r.w_floor));
  m.emplace_back("rel_tol", format_double(r.rel_tol));
  m.emplace_back("max_iters", std::to_string(r.max_iters));
  m.emplace_back("track_objective", r.track_objective ? "true" : "false");
  m.emplace_back("pd_floor", format_double(r.pd_floor));
  m.emplace_back("edge_threshold", format_double(r.edge_threshold));
  return m;
}

// ---- sweep reports ---------------------------------------------------------

struct SweepRecord {
  double sr = 0;
  std::uint64_t seed = 0;
  double rel_err = 0, f_score = 0, snr_db = 0, nmse = 0;
  int iterations = 0;
  double wall_ms = 0;
  double zf_snr_db = 0, zf_nmse = 0;  // zero-fill baseline (X_hat = Y)
  std::string status = "ok";
};

inline constexpr const char* kSweepHeader =
    "sr,seed,rel_err,f_score,snr_db,nmse,iterations,wall_ms,zf_snr_db,zf_nmse,status";

inline void write_sweep_report(const std::string& path,
                               const std::vector<SweepRecord>& records) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing", path);
  out << kSweepHeader << "\n";
  for (const auto& r : records) {
    std::string status = r.status;
    for (auto& c : status)
      if (c == ',' || c == '\n') c = ';';
    out << format_double(r.sr) << ',' << r.seed << ','
        << format_double(r.rel_err) << ',' << format_double(r.f_score) << ','
        << format_double(r.snr_db) << ',' << format_double(r.nmse) << ','
        << r.iterations << ',' << format_double(r.wall_ms) << ','
        << format_double(r.zf_snr_db) << ',' << format_double(r.zf_nmse) << ','
        << status << "\n";
  }
  if (!out) throw io_error("write failed", path);
}

inline std::vector<SweepRecord> read_sweep_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open file", path);
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kSweepHeader)
    throw io_error("missing or unexpected sweep report header", path);
  std::vector<SweepRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (f.size() != 11)
      throw io_error("bad record at line " + std::to_string(lineno), path);
    SweepRecord r;
    const std::string ctx = "line " + std::to_string(lineno);
    r.sr = detail::parse_double_token(f[0], path, ctx);
    r.seed = detail::parse_u64(f[1], path, ctx);
    r.rel_err = detail::parse_double_token(f[2], path, ctx);
    r.f_score = detail::parse_double_token(f[3], path, ctx);
    r.snr_db = detail::parse_double_token(f[4], path, ctx);
    r.nmse = detail::parse_double_token(f[5], path, ctx);
    r.iterations = detail::parse_int(f[6], path, ctx);
    r.wall_ms = detail::parse_double_token(f[7], path, ctx);
    r.zf_snr_db = detail::parse_double_token(f[8], path, ctx);
    r.zf_nmse = detail::parse_double_token(f[9], path, ctx);
    r.status = detail::trim(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace stgl
