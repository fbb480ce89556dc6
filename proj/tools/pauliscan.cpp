// pauliscan: batch driver for node-density, inequality, and sampling-operator
// experiments. Every subcommand reads a flat key=value config file and writes
// <out>/report.json plus deterministic CSV tables.
//
// Exit codes: 0 = all verdicts hold / scan completed;
//             1 = usage or config error;
//             2 = a theorem-backed verdict failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pauli/grid.hpp"
#include "pauli/hermite.hpp"
#include "pauli/inequalities.hpp"
#include "pauli/kernel.hpp"
#include "pauli/nodes.hpp"
#include "pauli/sampling.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace pauli;
using std::numbers::pi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value config with '#' comments; every lookup is recorded so the
// fully resolved configuration can be embedded in the JSON report.
class Config {
 public:
  Config() = default;

  static Config load(const std::string& path) {
    Config cfg;
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      line = strip(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected key=value, got '" + line + "'");
      const std::string key = strip(line.substr(0, eq));
      const std::string val = strip(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      cfg.kv_[key] = val;
    }
    return cfg;
  }

  double get_double(const std::string& key, double def) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) {
      resolved_[key] = def;
      return def;
    }
    try {
      const double v = std::stod(it->second);
      resolved_[key] = v;
      used_.insert(key);
      return v;
    } catch (...) {
      throw ConfigError("config key '" + key + "': not a number: " + it->second);
    }
  }

  long get_int(const std::string& key, long def) {
    const double v = get_double(key, double(def));
    const long r = std::lround(v);
    if (std::abs(v - double(r)) > 1e-9)
      throw ConfigError("config key '" + key + "': expected an integer");
    resolved_[key] = r;
    return r;
  }

  bool get_bool(const std::string& key, bool def) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) {
      resolved_[key] = def;
      return def;
    }
    used_.insert(key);
    if (it->second == "true" || it->second == "1") return resolved_[key] = true, true;
    if (it->second == "false" || it->second == "0") return resolved_[key] = false, false;
    throw ConfigError("config key '" + key + "': expected true/false");
  }

  std::vector<double> get_list(const std::string& key, const std::string& def) {
    const auto it = kv_.find(key);
    const std::string raw = (it == kv_.end()) ? def : it->second;
    if (it != kv_.end()) used_.insert(key);
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        out.push_back(std::stod(tok));
      } catch (...) {
        throw ConfigError("config key '" + key + "': not a number: " + tok);
      }
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    resolved_[key] = out;
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, val] : kv_) {
      if (!used_.count(key))
        throw ConfigError("unknown config key: " + key);
    }
  }

  const json& resolved() const { return resolved_; }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
  json resolved_ = json::object();
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header) : f_(path) {
    if (!f_) throw std::runtime_error("cannot open " + path.string());
    f_ << header << "\n";
  }
  void row(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i)
      f_ << (i ? "," : "") << fmt(vals[i]);
    f_ << "\n";
  }

 private:
  std::ofstream f_;
};

struct RunContext {
  Config cfg;
  fs::path out;
  std::uint64_t seed = 12345;
  long threads = 1;  // accepted and recorded; execution is serial
};

void write_report(const RunContext& ctx, const std::string& command, json results,
                  bool violation) {
  json rep;
  rep["command"] = command;
  rep["config"] = ctx.cfg.resolved();
  rep["seed"] = ctx.seed;
  rep["threads"] = ctx.threads;
  rep["results"] = std::move(results);
  rep["verdict"] = violation ? "violation" : "ok";
  std::ofstream f(ctx.out / "report.json");
  f << rep.dump(2) << "\n";
}

json verdict_json(const InequalityVerdict& v) {
  json j;
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["slack"] = v.slack;
  j["holds"] = v.holds;
  j["method"] = v.method;
  for (const auto& [name, val] : v.parameters) j["parameters"][name] = val;
  return j;
}

json density_json(const DensityReport& rep) {
  json j;
  j["exponent_s"] = rep.exponent_s;
  j["tail_sup"] = rep.tail_sup;
  j["tail_inf"] = rep.tail_inf;
  j["tail_window"] = rep.tail_window;
  j["one_sided"] = rep.one_sided;
  j["verdict"] = to_string(rep.verdict);
  return j;
}

GridFunction random_trig(std::mt19937_64& rng, const GridSpec& spec, double half_span) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<cplx> a(6), b(6);
  for (int m = 0; m < 6; ++m) {
    a[m] = cplx(amp(rng), amp(rng));
    b[m] = cplx(amp(rng), amp(rng));
  }
  return sample_grid(spec, [&](double x) {
    cplx v(0.0);
    for (int m = 1; m <= 6; ++m) {
      const double w = pi * double(m) * x / half_span;
      v += a[m - 1] * std::cos(w) + b[m - 1] * std::sin(w);
    }
    return v;
  });
}

// ---------------------------------------------------------------- nodes ----

int cmd_nodes(RunContext& ctx) {
  const double c = ctx.cfg.get_double("c", 0.2);
  const double a = ctx.cfg.get_double("a", 0.5);
  const long count = ctx.cfg.get_int("count", 256);
  const bool symmetric = ctx.cfg.get_bool("symmetric", true);
  const double s = ctx.cfg.get_double("s", 1.0);
  const long tail_window = ctx.cfg.get_int("tail_window", 64);
  const double jitter = ctx.cfg.get_double("jitter", 0.0);
  const double env_C = ctx.cfg.get_double("envelope_C", 0.0);
  const double env_eps = ctx.cfg.get_double("envelope_eps", 0.1);
  ctx.cfg.reject_unknown();

  NodeSet ns = gen_power_nodes(c, a, int(count), symmetric);
  if (jitter > 0.0) ns = perturb(ns, jitter, ctx.seed);
  save_nodes(ns, (ctx.out / "nodes.txt").string());

  DensityReport rep = density_profile(ns, s, int(tail_window));
  CsvWriter csv(ctx.out / "density.csv", "i,lambda,gap,d");
  for (std::size_t i = 0; i + 1 < ns.nodes.size(); ++i) {
    const double gap = ns.nodes[i + 1] - ns.nodes[i];
    csv.row({double(i), ns.nodes[i], gap, gap * std::pow(std::abs(ns.nodes[i]), s)});
  }

  json results;
  results["density"] = density_json(rep);
  if (env_C > 0.0) {
    const EnvelopeResult env = envelope_check(ns, env_C, env_eps);
    results["envelope"]["holds"] = env.holds;
    results["envelope"]["burn_in"] = env.burn_in;
    if (env.first_violation)
      results["envelope"]["first_violation"] = *env.first_violation;
  }
  write_report(ctx, "nodes", results, false);
  return kExitOk;
}

// --------------------------------------------------------------- kernel ----

int cmd_kernel(RunContext& ctx) {
  const auto u_list = ctx.cfg.get_list("u_list", "1,2");
  const auto k_list = ctx.cfg.get_list("k_list", "2,3,5");
  const double radius = ctx.cfg.get_double("radius", 6.0);
  const double step = ctx.cfg.get_double("step", 1.0 / 512.0);
  const double xi_max = ctx.cfg.get_double("xi_max", 4.0);
  ctx.cfg.reject_unknown();

  bool violation = false;
  CsvWriter csv(ctx.out / "kernel.csv",
                "u,k,plateau_dev,support_dev,range_dev,mass_err,fourier_max_dev");
  json cases = json::array();
  for (double u : u_list) {
    for (double kd : k_list) {
      const KernelF K(u, int(std::lround(kd)));
      double plateau = 0.0, support = 0.0, range = 0.0;
      for (double t = -2.0 * u; t <= 2.0 * u + 1e-12; t += u / 256.0) {
        const double v = kernel_eval(K, t);
        range = std::max({range, -v, v - 1.0});
        if (std::abs(t) <= 0.5 * u) plateau = std::max(plateau, std::abs(v - 1.0));
        if (std::abs(t) >= 1.5 * u) support = std::max(support, std::abs(v));
      }
      const double mass_err = std::abs(kernel_mass_exact(K) - K.mass());

      GridFunction g = sample_grid(symmetric_grid(std::max(radius, 1.5 * u + 1.0), step),
                                   [&](double t) { return cplx(kernel_eval(K, t)); });
      GridFunction gh = quad_fourier(g);
      double fdev = 0.0;
      for (std::size_t i = 0; i < gh.size(); ++i) {
        const double xi = gh.x(i);
        if (std::abs(xi) > xi_max) continue;
        fdev = std::max(fdev, std::abs(gh.samples[i] - cplx(kernel_fourier(K, xi))));
      }
      csv.row({u, kd, plateau, support, range, mass_err, fdev});
      const bool bad =
          plateau > 1e-10 || support > 1e-10 || range > 1e-10 || mass_err > 1e-10 ||
          fdev > 1e-6;
      violation = violation || bad;
      json jc;
      jc["u"] = u;
      jc["k"] = kd;
      jc["fourier_max_dev"] = fdev;
      jc["mass_err"] = mass_err;
      jc["holds"] = !bad;
      cases.push_back(jc);
    }
  }
  write_report(ctx, "kernel", {{"cases", cases}}, violation);
  return violation ? kExitViolation : kExitOk;
}

// ------------------------------------------------------------ wirtinger ----

int cmd_wirtinger(RunContext& ctx) {
  const long trials = ctx.cfg.get_int("trials", 500);
  const double radius = ctx.cfg.get_double("radius", 2.0);
  const double step = ctx.cfg.get_double("step", 1.0 / 512.0);
  ctx.cfg.reject_unknown();

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  GridSpec spec = symmetric_grid(radius, step);

  bool violation = false;
  CsvWriter csv(ctx.out / "wirtinger.csv", "trial,a,b,eps,lhs,rhs,slack,holds");
  for (long t = 0; t < trials; ++t) {
    GridFunction f = random_trig(rng, spec, radius);
    const double a = -radius + (2.0 * radius - 0.5) * pick(rng) * 0.75;
    const double b = a + 0.25 + (radius - 0.05 - a - 0.25) * pick(rng);
    const double eps = 0.01 + 2.0 * pick(rng);
    const InequalityVerdict v = wirtinger_check(f, a, b, eps);
    violation = violation || !v.holds;
    csv.row({double(t), a, b, eps, v.lhs, v.rhs, v.slack, v.holds ? 1.0 : 0.0});
  }
  write_report(ctx, "wirtinger", {{"trials", trials}, {"all_hold", !violation}},
               violation);
  return violation ? kExitViolation : kExitOk;
}

// -------------------------------------------------------------- moments ----

int cmd_moments(RunContext& ctx) {
  const auto coeffs = ctx.cfg.get_list("coeffs", "1");
  const double p_max = ctx.cfg.get_double("p_max", 20.0);
  const double p_step = ctx.cfg.get_double("p_step", 1.0);
  ctx.cfg.reject_unknown();

  HermiteFunction h;
  for (double c : coeffs) h.coeffs.push_back(cplx(c, 0.0));

  const MomentProfile mp = moments(h, p_max, p_step);
  CsvWriter csv(ctx.out / "moments.csv", "p,moment");
  for (std::size_t i = 0; i < mp.p_values.size(); ++i)
    csv.row({mp.p_values[i], mp.moments[i]});

  json results;
  results["log_convex"] = mp.log_convex;
  results["truncation_tagged"] = mp.truncation_tagged;
  bool violation = !mp.log_convex;
  try {
    const DecayRateEstimate est = decay_rate_estimate(mp);
    results["decay"]["beta_hat"] = est.beta_hat;
    results["decay"]["indeterminate"] = est.indeterminate;
  } catch (const std::invalid_argument& e) {
    results["decay"]["error"] = e.what();
  }
  write_report(ctx, "moments", results, violation);
  return violation ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------- chain ----

int cmd_chain(RunContext& ctx) {
  const long trials = ctx.cfg.get_int("trials", 100);
  ctx.cfg.reject_unknown();

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  const NodeSet ns = gen_power_nodes(0.2, 0.5, 256, true);

  bool violation = false;
  CsvWriter csv(ctx.out / "chain.csv", "trial,p,K,u,sigma,k_fold,lhs,rhs,slack,holds");
  for (long t = 0; t < trials; ++t) {
    // Gaussian-dominated coefficients: decay-propagation functions have
    // Gaussian-type tails, which is the regime the display addresses
    HermiteFunction f;
    const int N = 4 + int(pick(rng) * 7.0);
    for (int n = 0; n < N; ++n)
      f.coeffs.push_back(std::pow(0.5, n) *
                         cplx(2.0 * pick(rng) - 1.0, 2.0 * pick(rng) - 1.0));
    const double nrm = l2_norm(f);
    for (auto& c : f.coeffs) c /= nrm;

    const double p = 1.0 + double(t % 3);
    const int k_lo = int(p) + 1;
    const int k_hi = int(std::ceil(pi * p)) - 1;
    const int k_fold = k_lo + int(pick(rng) * double(k_hi - k_lo + 1)) % (k_hi - k_lo + 1);
    const double K = 5.0 + 4.0 * pick(rng);
    const double u = 0.75 + 0.75 * pick(rng);
    const double sigma = 0.5 + 0.5 * pick(rng);
    const InequalityVerdict v = moment_chain_check(f, ns, ns, p, K, u, sigma, k_fold);
    violation = violation || !v.holds;
    csv.row({double(t), p, K, u, sigma, double(k_fold), v.lhs, v.rhs, v.slack,
             v.holds ? 1.0 : 0.0});
  }
  write_report(ctx, "chain", {{"trials", trials}, {"all_hold", !violation}}, violation);
  return violation ? kExitViolation : kExitOk;
}

// ------------------------------------------------------- uniqueness-scan ----

int cmd_uniqueness_scan(RunContext& ctx) {
  const auto c_list = ctx.cfg.get_list("c_list", "0.2,1.6");
  const auto n_list = ctx.cfg.get_list("N_list", "32,64,128");
  const double a = ctx.cfg.get_double("a", 0.5);
  const double tol = ctx.cfg.get_double("tol", 1e-8);
  const double margin = ctx.cfg.get_double("margin", 0.25);
  ctx.cfg.reject_unknown();

  std::vector<std::size_t> Ns;
  for (double n : n_list) Ns.push_back(std::size_t(std::lround(n)));
  const auto rows = uniqueness_scan(c_list, Ns, a, tol, margin);

  // runtime stays out of the CSV so repeated runs are byte-identical
  CsvWriter csv(ctx.out / "scan.csv", "c,N,rows_space,rows_freq,sigma_min,nullspace_dim");
  json timing = json::array();
  for (const auto& r : rows) {
    csv.row({r.c, double(r.N), double(r.rows_space), double(r.rows_freq), r.sigma_min,
             double(r.nullspace_dim)});
    timing.push_back(r.runtime_ms);
  }
  write_report(ctx, "uniqueness-scan", {{"rows", rows.size()}, {"runtime_ms", timing}},
               false);
  return kExitOk;
}

// ------------------------------------------------------------ hardy-scan ----

int cmd_hardy_scan(RunContext& ctx) {
  const auto a_list = ctx.cfg.get_list("A_list", "1.0,1.5");
  const double c = ctx.cfg.get_double("c", 0.2);
  const auto n_list = ctx.cfg.get_list("N_list", "32,64,128");
  const double a = ctx.cfg.get_double("a", 0.5);
  const double tol = ctx.cfg.get_double("tol", 1e-8);
  const double margin = ctx.cfg.get_double("margin", 0.25);
  ctx.cfg.reject_unknown();

  std::vector<std::size_t> Ns;
  for (double n : n_list) Ns.push_back(std::size_t(std::lround(n)));
  const auto rows = hardy_scan(a_list, c, Ns, a, tol, margin);

  CsvWriter csv(ctx.out / "scan.csv",
                "c,A,N,rows_space,rows_freq,sigma_min,nullspace_dim");
  json timing = json::array();
  for (const auto& r : rows) {
    csv.row({r.c, r.A, double(r.N), double(r.rows_space), double(r.rows_freq),
             r.sigma_min, double(r.nullspace_dim)});
    timing.push_back(r.runtime_ms);
  }
  write_report(ctx, "hardy-scan", {{"rows", rows.size()}, {"runtime_ms", timing}}, false);
  return kExitOk;
}

// -------------------------------------------------------- counterexample ----

int cmd_counterexample(RunContext& ctx) {
  const double c = ctx.cfg.get_double("c", 1.6);
  const long N = ctx.cfg.get_int("N", 192);
  const double a = ctx.cfg.get_double("a", 0.5);
  const double tol = ctx.cfg.get_double("tol", 1e-8);
  const double margin = ctx.cfg.get_double("margin", 0.25);
  const double window = ctx.cfg.get_double("window_radius", 8.0);
  const auto alpha_list = ctx.cfg.get_list("alpha_list", "0.05,0.1,0.2,0.5");
  ctx.cfg.reject_unknown();

  const NodeSet ns = scan_nodes(c, a, std::size_t(N), margin);
  const SamplingOperator op =
      build_operator(std::size_t(N), ns, ns, WeightScheme::none(), margin);
  const Counterexample ce = extract_counterexample(op, tol);  // throws -> usage error

  write_csv(to_grid(ce.f), (ctx.out / "counterexample.csv").string());
  CsvWriter ccsv(ctx.out / "coeffs.csv", "n,re,im");
  for (std::size_t n = 0; n < ce.f.coeffs.size(); ++n)
    ccsv.row({double(n), ce.f.coeffs[n].real(), ce.f.coeffs[n].imag()});

  HermiteFunction zero;
  zero.coeffs.assign(std::size_t(N), cplx(0.0));
  const auto cmp_space = modulus_compare(ce.f, zero, ns, window, Side::space);
  const auto cmp_freq = modulus_compare(ce.f, zero, ns, window, Side::frequency);

  json results;
  results["sigma_min"] = ce.sigma_min;
  results["max_node_residual"] = ce.max_node_residual;
  results["space"]["node_max_dev"] = cmp_space.node_max_dev;
  results["space"]["global_max_dev"] = cmp_space.global_max_dev;
  results["frequency"]["node_max_dev"] = cmp_freq.node_max_dev;
  results["frequency"]["global_max_dev"] = cmp_freq.global_max_dev;
  for (double alpha : alpha_list) {
    json m;
    m["alpha"] = alpha;
    m["margin_f"] = gaussian_decay_margin(ce.f, alpha, window);
    m["margin_fhat"] = gaussian_decay_margin(fourier(ce.f), alpha, window);
    results["decay_margins"].push_back(m);
  }

  // linear-algebra identity: node residual cannot exceed sigma_min (floored
  // at roundoff scale; sigma_min is exactly 0 for a short-and-wide operator)
  const bool violation =
      ce.max_node_residual > std::max(ce.sigma_min, 1e-12) * (1.0 + 1e-9) ||
      cmp_space.global_max_dev < 0.1;
  write_report(ctx, "counterexample", results, violation);
  return violation ? kExitViolation : kExitOk;
}

// --------------------------------------------------------- negative-demo ----

int cmd_negative_demo(RunContext& ctx) {
  const long node_max = ctx.cfg.get_int("node_max", 16);
  const long freq_node_max = ctx.cfg.get_int("freq_node_max", 40);
  const double radius = ctx.cfg.get_double("radius", 16.0);
  const double step = ctx.cfg.get_double("step", 1.0 / 64.0);
  const double amplitude = ctx.cfg.get_double("amplitude", 1.0);
  ctx.cfg.reject_unknown();

  auto integer_nodes = [](long m) {
    NodeSet ns;
    for (long i = -m; i <= m; ++i) ns.nodes.push_back(double(i));
    ns.symmetric = true;
    ns.validate();
    return ns;
  };
  const NodeSet lam = integer_nodes(node_max);
  const NodeSet gam = integer_nodes(freq_node_max);
  const GridSpec grid = symmetric_grid(radius, step);
  const NegativePair pair = negative_pair_construct(lam, gam, grid, amplitude);

  write_csv(pair.f1, (ctx.out / "f1.csv").string());
  write_csv(pair.f2, (ctx.out / "f2.csv").string());
  write_csv(pair.g, (ctx.out / "g.csv").string());
  write_csv(pair.psi, (ctx.out / "psi.csv").string());

  json results;
  results["degenerate"] = pair.degenerate;
  results["space"]["node_max_dev"] = pair.space_report.node_max_dev;
  results["space"]["global_max_dev"] = pair.space_report.global_max_dev;
  results["frequency"]["node_max_dev"] = pair.freq_report.node_max_dev;
  results["frequency"]["global_max_dev"] = pair.freq_report.global_max_dev;

  const bool violation = pair.degenerate || pair.space_report.node_max_dev > 1e-9 ||
                         pair.freq_report.node_max_dev > 1e-5 * std::max(1.0, amplitude) ||
                         pair.space_report.global_max_dev < 0.05 ||
                         pair.freq_report.global_max_dev < 0.05;
  write_report(ctx, "negative-demo", results, violation);
  return violation ? kExitViolation : kExitOk;
}

// ----------------------------------------------------------- certificate ----

int cmd_certificate(RunContext& ctx) {
  const double alpha = ctx.cfg.get_double("alpha", pi);
  const double c_min = ctx.cfg.get_double("c_min", 0.2);
  const double c_max = ctx.cfg.get_double("c_max", 1.2);
  const long c_count = ctx.cfg.get_int("c_count", 20);
  const long count = ctx.cfg.get_int("count", 512);
  ctx.cfg.reject_unknown();
  if (c_count < 2 || c_min <= 0.0 || c_max <= c_min)
    throw ConfigError("certificate: need 0 < c_min < c_max and c_count >= 2");

  CsvWriter csv(ctx.out / "certificate.csv",
                "c,node_quadratic_density,pw_bound,contradiction,indeterminate");
  bool monotone = true;
  int prev = 1;  // contradiction must flip true -> false as c grows
  json rows = json::array();
  for (long i = 0; i < c_count; ++i) {
    const double c = c_min + (c_max - c_min) * double(i) / double(c_count - 1);
    const auto cert =
        zero_density_certificate(gen_power_nodes(c, 0.5, int(count), true), alpha);
    csv.row({c, cert.node_quadratic_density, cert.pw_bound,
             cert.contradiction ? 1.0 : 0.0, cert.indeterminate ? 1.0 : 0.0});
    const int cur = cert.contradiction ? 1 : 0;
    if (cur > prev) monotone = false;
    prev = cur;
    json r;
    r["c"] = c;
    r["contradiction"] = cert.contradiction;
    rows.push_back(r);
  }
  write_report(ctx, "certificate", {{"rows", rows}, {"monotone_flip", monotone}},
               !monotone);
  return monotone ? kExitOk : kExitViolation;
}

// -------------------------------------------------------------- annulus ----

int cmd_annulus(RunContext& ctx) {
  const long trials = ctx.cfg.get_int("trials", 200);
  const auto d_list = ctx.cfg.get_list("d_list", "2,3");
  ctx.cfg.reject_unknown();

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> pick(0.0, 1.0);

  bool violation = false;
  CsvWriter csv(ctx.out / "annulus.csv", "trial,d,r,R,eps,lhs,rhs,slack,holds");
  for (long t = 0; t < trials; ++t) {
    const double r = 0.5 + 1.5 * pick(rng);
    const double R = r + 0.5 + 2.5 * pick(rng);
    const int d = int(std::lround(d_list[std::size_t(t) % d_list.size()]));
    const double eps = 0.05 + 1.95 * pick(rng);
    GridSpec spec{r, (R - r) / 1024.0, 1025};
    GridFunction u = random_trig(rng, spec, R - r);
    const InequalityVerdict v = annulus_poincare_check(u, d, eps);
    violation = violation || !v.holds;
    csv.row({double(t), double(d), r, R, eps, v.lhs, v.rhs, v.slack,
             v.holds ? 1.0 : 0.0});
  }
  write_report(ctx, "annulus", {{"trials", trials}, {"all_hold", !violation}}, violation);
  return violation ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pauliscan: discrete Pauli pair and Fourier uniqueness experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  long seed = 12345;
  long threads = 1;

  const std::vector<std::string> commands = {
      "nodes",        "kernel",     "wirtinger",      "moments",
      "chain",        "uniqueness-scan", "hardy-scan", "counterexample",
      "negative-demo", "certificate", "annulus"};
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--threads", threads, "worker threads (recorded; execution is serial)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunContext ctx;
    ctx.cfg = Config::load(config_path);
    ctx.out = out_dir;
    ctx.seed = std::uint64_t(seed);
    ctx.threads = threads;
    fs::create_directories(ctx.out);

    if (command == "nodes") return cmd_nodes(ctx);
    if (command == "kernel") return cmd_kernel(ctx);
    if (command == "wirtinger") return cmd_wirtinger(ctx);
    if (command == "moments") return cmd_moments(ctx);
    if (command == "chain") return cmd_chain(ctx);
    if (command == "uniqueness-scan") return cmd_uniqueness_scan(ctx);
    if (command == "hardy-scan") return cmd_hardy_scan(ctx);
    if (command == "counterexample") return cmd_counterexample(ctx);
    if (command == "negative-demo") return cmd_negative_demo(ctx);
    if (command == "certificate") return cmd_certificate(ctx);
    if (command == "annulus") return cmd_annulus(ctx);
    std::fprintf(stderr, "unknown subcommand: %s\n", command.c_str());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", command.c_str(), e.what());
    return kExitUsage;
  }
}
