#ifndef PAULI_NODES_HPP
#define PAULI_NODES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pauli {

// Finite, strictly increasing real sequence modeling Lambda or Gamma.
struct NodeSet {
  std::vector<double> nodes;  // strictly increasing
  bool symmetric = false;     // closed under negation
  std::string label;

  void validate() const {
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (!(nodes[i] - nodes[i - 1] > 1e-12))
        throw std::invalid_argument("NodeSet: nodes not strictly increasing");
    }
  }
};

enum class DensityVerdict { subcritical, supercritical, indeterminate };

struct DensityReport {
  double exponent_s = 1.0;
  double tail_sup = 0.0;
  double tail_inf = 0.0;
  int tail_window = 0;
  bool one_sided = false;  // flagged: the theorems index i -> +-infinity
  DensityVerdict verdict = DensityVerdict::indeterminate;
  double sub_threshold = 0.5;  // stands in for 1/C
  double sup_threshold = 0.5;  // eq of the supercritical condition
};

inline const char* to_string(DensityVerdict v) {
  switch (v) {
    case DensityVerdict::subcritical: return "subcritical";
    case DensityVerdict::supercritical: return "supercritical";
    default: return "indeterminate";
  }
}

// Nodes lambda_i = c i^a for i = 1..count, mirrored when symmetric.
// i starts at 1 so the density product never degenerates at 0.
inline NodeSet gen_power_nodes(double c, double a, int count, bool symmetric) {
  if (c <= 0.0) throw std::invalid_argument("gen_power_nodes: c <= 0");
  if (a <= 0.0 || a > 1.0) throw std::invalid_argument("gen_power_nodes: a not in (0,1]");
  if (count < 2) throw std::invalid_argument("gen_power_nodes: count < 2");
  NodeSet ns;
  ns.symmetric = symmetric;
  ns.label = "power(c=" + std::to_string(c) + ",a=" + std::to_string(a) + ")";
  for (int i = 1; i <= count; ++i) ns.nodes.push_back(c * std::pow(double(i), a));
  if (symmetric) {
    std::vector<double> all;
    for (auto it = ns.nodes.rbegin(); it != ns.nodes.rend(); ++it) all.push_back(-*it);
    all.insert(all.end(), ns.nodes.begin(), ns.nodes.end());
    ns.nodes = std::move(all);
  }
  ns.validate();
  return ns;
}

// Finite-tail surrogate for limsup/liminf of (lambda_{i+1}-lambda_i)|lambda_i|^s:
// max/min of d_i over the last tail_window gaps, per side, combined by max/min.
inline DensityReport density_profile(const NodeSet& ns, double s, int tail_window,
                                     double sub_threshold = 0.5,
                                     double sup_threshold = 0.5) {
  DensityReport rep;
  rep.exponent_s = s;
  rep.tail_window = tail_window;
  rep.sub_threshold = sub_threshold;
  rep.sup_threshold = sup_threshold;

  // split into sides by sign, each ordered with |lambda| increasing
  std::vector<double> pos, neg;
  for (double t : ns.nodes) (t >= 0.0 ? pos : neg).push_back(t);
  std::reverse(neg.begin(), neg.end());
  for (double& t : neg) t = -t;
  rep.one_sided = pos.empty() || neg.empty();

  bool any = false;
  double sup = 0.0, inf = 0.0;
  auto side = [&](const std::vector<double>& v) {
    if (int(v.size()) < tail_window + 1)
      throw std::invalid_argument("density_profile: insufficient nodes for tail window");
    const std::size_t first = v.size() - std::size_t(tail_window) - 1;
    for (std::size_t i = first; i + 1 < v.size(); ++i) {
      const double d = (v[i + 1] - v[i]) * std::pow(std::abs(v[i]), s);
      if (!any) { sup = inf = d; any = true; }
      else { sup = std::max(sup, d); inf = std::min(inf, d); }
    }
  };
  if (!pos.empty()) side(pos);
  if (!neg.empty()) side(neg);
  if (!any) throw std::invalid_argument("density_profile: empty node set");

  rep.tail_sup = sup;
  rep.tail_inf = inf;
  if (sup < sub_threshold) rep.verdict = DensityVerdict::subcritical;
  else if (inf > sup_threshold) rep.verdict = DensityVerdict::supercritical;
  else rep.verdict = DensityVerdict::indeterminate;
  return rep;
}

struct EnvelopeResult {
  bool holds = true;
  std::optional<std::size_t> first_violation;  // index into the positive tail
  std::size_t burn_in = 0;
};

// Checks |lambda_i| <= sqrt((2+eps)/C) sqrt(i) on the positive side beyond a
// short burn-in (the telescoped gap bound only kicks in asymptotically).
inline EnvelopeResult envelope_check(const NodeSet& ns, double C, double eps,
                                     std::size_t burn_in = 4) {
  if (C <= 0.0 || eps <= 0.0) throw std::invalid_argument("envelope_check: C, eps > 0");
  std::vector<double> pos;
  for (double t : ns.nodes)
    if (t > 0.0) pos.push_back(t);
  EnvelopeResult res;
  res.burn_in = burn_in;
  const double factor = std::sqrt((2.0 + eps) / C);
  for (std::size_t i = burn_in; i < pos.size(); ++i) {
    const double bound = factor * std::sqrt(double(i + 1));
    if (pos[i] > bound) {
      res.holds = false;
      res.first_violation = i;
      return res;
    }
  }
  return res;
}

// Gap-scaled jitter; deterministic under seed, monotonicity preserved for
// jitter_fraction < 0.5 by construction.
inline NodeSet perturb(const NodeSet& ns, double jitter_fraction, std::uint64_t seed) {
  if (jitter_fraction < 0.0 || jitter_fraction >= 0.4)
    throw std::invalid_argument("perturb: jitter_fraction must lie in [0, 0.4)");
  NodeSet out;
  out.symmetric = false;  // jitter breaks exact mirror symmetry
  out.label = ns.label + "+jitter";
  if (ns.nodes.empty()) return out;
  std::mt19937_64 rng(seed);
  auto unif = [&rng]() {  // uniform in [0,1), reproducible across platforms
    return double(rng() >> 11) * 0x1.0p-53;
  };
  out.nodes.push_back(ns.nodes.front());
  for (std::size_t i = 1; i < ns.nodes.size(); ++i) {
    const double gap = ns.nodes[i] - ns.nodes[i - 1];
    const double factor = 1.0 - jitter_fraction + 2.0 * jitter_fraction * unif();
    out.nodes.push_back(out.nodes.back() + gap * factor);
  }
  out.validate();
  return out;
}

// One real per line.
inline void save_nodes(const NodeSet& ns, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_nodes: cannot open " + path);
  f.precision(17);
  for (double t : ns.nodes) f << t << "\n";
}

inline NodeSet load_nodes(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_nodes: cannot open " + path);
  NodeSet ns;
  double t;
  while (f >> t) ns.nodes.push_back(t);
  ns.validate();
  return ns;
}

}  // namespace pauli

#endif  // PAULI_NODES_HPP
