#ifndef PAULI_INEQUALITIES_HPP
#define PAULI_INEQUALITIES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pauli/grid.hpp"
#include "pauli/hermite.hpp"
#include "pauli/nodes.hpp"

namespace pauli {

struct InequalityVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
  std::string method;
  std::vector<std::pair<std::string, double>> parameters;

  void finalize(double tol_rel) {
    slack = rhs - lhs;
    holds = slack >= -tol_rel * std::abs(rhs);
  }
};

inline constexpr double kVerdictTolRel = 1e-9;

// 4th-order finite-difference derivative on the grid (one-sided at the ends).
inline GridFunction fd_derivative(const GridFunction& g) {
  g.validate();
  const std::size_t n = g.size();
  const double h = g.step;
  GridFunction d = g;
  auto s = [&](std::size_t i) { return g.samples[i]; };
  for (std::size_t i = 0; i < n; ++i) {
    cplx v;
    if (i >= 2 && i + 2 < n) {
      v = (-s(i + 2) + 8.0 * s(i + 1) - 8.0 * s(i - 1) + s(i - 2)) / (12.0 * h);
    } else if (i + 4 < n && i < 2) {
      v = (-25.0 / 12.0 * s(i) + 4.0 * s(i + 1) - 3.0 * s(i + 2) +
           4.0 / 3.0 * s(i + 3) - 0.25 * s(i + 4)) / h;
    } else {
      v = (25.0 / 12.0 * s(i) - 4.0 * s(i - 1) + 3.0 * s(i - 2) -
           4.0 / 3.0 * s(i - 3) + 0.25 * s(i - 4)) / h;
    }
    d.samples[i] = v;
  }
  return d;
}

namespace detail {

inline std::size_t snap_index(const GridFunction& g, double x) {
  const double t = (x - g.x_min) / g.step;
  const long i = std::lround(t);
  if (i < 0 || std::size_t(i) >= g.size())
    throw std::out_of_range("interval endpoint outside grid");
  return std::size_t(i);
}

inline double trapz_range(const GridFunction& g, std::size_t ia, std::size_t ib,
                          const std::function<double(double, const cplx&)>& w) {
  double s = 0.0;
  for (std::size_t i = ia; i <= ib; ++i) {
    const double wt = (i == ia || i == ib) ? 0.5 : 1.0;
    s += wt * w(g.x(i), g.samples[i]);
  }
  return s * g.step;
}

}  // namespace detail

// int_I |f|^2 <= pi^{-2} |I|^2 (1+eps) int_I |f'|^2
//             + (1+1/eps) |I| (|f(a)|^2 + |f(b)|^2)
inline InequalityVerdict wirtinger_check(const GridFunction& f, double a, double b,
                                         double eps, double tol_rel = kVerdictTolRel) {
  if (eps <= 0.0) throw std::invalid_argument("wirtinger_check: eps <= 0");
  const std::size_t ia = detail::snap_index(f, a);
  const std::size_t ib = detail::snap_index(f, b);
  if (ib <= ia + 1) throw std::invalid_argument("wirtinger_check: degenerate interval");
  const double L = f.x(ib) - f.x(ia);
  const GridFunction df = fd_derivative(f);
  auto sq = [](double, const cplx& v) { return std::norm(v); };

  InequalityVerdict v;
  v.method = "fd4";
  v.lhs = detail::trapz_range(f, ia, ib, sq);
  const double grad = detail::trapz_range(df, ia, ib, sq);
  const double boundary = std::norm(f.samples[ia]) + std::norm(f.samples[ib]);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  v.rhs = (1.0 + eps) * L * L / pi2 * grad + (1.0 + 1.0 / eps) * L * boundary;
  v.parameters = {{"eps", eps}, {"interval_length", L}};
  v.finalize(tol_rel);
  return v;
}

// Phi(mu^2) int |f|^2 <= int Phi(|y|^2) |f_hat|^2
//                      + C_eps mu Phi'(mu^2) sum_lambda |f(lambda)|^2
// with Phi(t) = t^p. C_eps defaults to (1+1/eps)(1-eps), exposed for audit.
inline InequalityVerdict convex_phi_check(const GridFunction& f,
                                          const NodeSet& vanish_nodes, double mu,
                                          double p, double eps,
                                          double c_eps = -1.0,
                                          double vanish_tol_rel = 1e-6,
                                          double tol_rel = kVerdictTolRel) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("convex_phi_check: eps in (0,1)");
  if (mu <= 0.0) throw std::invalid_argument("convex_phi_check: mu <= 0");
  if (p < 1.0) throw std::invalid_argument("convex_phi_check: p >= 1 required");
  vanish_nodes.validate();
  if (vanish_nodes.nodes.size() < 2)
    throw std::invalid_argument("convex_phi_check: need at least 2 nodes");
  if (c_eps < 0.0) c_eps = (1.0 + 1.0 / eps) * (1.0 - eps);

  // gap hypothesis: complement intervals of length at most (1-eps)/(2 mu)
  const double max_gap = (1.0 - eps) / (2.0 * mu);
  for (std::size_t i = 1; i < vanish_nodes.nodes.size(); ++i) {
    const double gap = vanish_nodes.nodes[i] - vanish_nodes.nodes[i - 1];
    if (gap > max_gap * (1.0 + 1e-12))
      throw std::invalid_argument("convex_phi_check: gap " + std::to_string(gap) +
                                  " at node index " + std::to_string(i - 1) +
                                  " exceeds (1-eps)/(2mu) = " + std::to_string(max_gap));
  }

  const double sup = sup_abs(f);
  // support containment: f must be negligible outside the node range
  const double lo = vanish_nodes.nodes.front(), hi = vanish_nodes.nodes.back();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.x(i);
    if ((x < lo || x > hi) && std::abs(f.samples[i]) > 1e-9 * sup)
      throw std::invalid_argument("convex_phi_check: f not supported inside node range");
  }
  double node_sum = 0.0;
  for (double lam : vanish_nodes.nodes) {
    const cplx val = (lam >= f.x_min && lam <= f.x_max()) ? interp(f, lam) : cplx(0.0);
    if (std::abs(val) > vanish_tol_rel * sup)
      throw std::invalid_argument("convex_phi_check: f does not vanish at node");
    node_sum += std::norm(val);
  }

  const GridFunction fh = quad_fourier(f);
  InequalityVerdict v;
  v.method = "quad_fourier";
  v.lhs = std::pow(mu * mu, p) * l2_norm(f) * l2_norm(f);
  const double freq_int = integral_weighted(fh, [&](double y, const cplx& val) {
    return std::pow(y * y, p) * std::norm(val);
  });
  v.rhs = freq_int + c_eps * mu * p * std::pow(mu * mu, p - 1.0) * node_sum;
  v.parameters = {{"mu", mu}, {"p", p}, {"eps", eps}, {"C_eps", c_eps}};
  v.finalize(tol_rel);
  return v;
}

struct MomentProfile {
  std::vector<double> p_values;
  std::vector<double> moments;  // M_p = int |x|^{2p} |f|^2
  Side side = Side::space;
  bool truncation_tagged = false;  // window lost weighted mass at top p
  bool log_convex = true;
};

namespace detail {

inline void finish_profile(MomentProfile& mp) {
  for (std::size_t i = 1; i + 1 < mp.moments.size(); ++i) {
    const double lhs = 2.0 * std::log(mp.moments[i]);
    const double rhs = std::log(mp.moments[i - 1]) + std::log(mp.moments[i + 1]);
    if (lhs > rhs + 1e-9) mp.log_convex = false;
  }
}

}  // namespace detail

inline MomentProfile moments(const GridFunction& f, double p_max, double p_step = 1.0) {
  if (p_max < 1.0) throw std::invalid_argument("moments: p_max >= 1 required");
  if (p_step <= 0.0) throw std::invalid_argument("moments: p_step <= 0");
  MomentProfile mp;
  for (double p = 0.0; p <= p_max + 1e-12; p += p_step) {
    const double m = integral_weighted(f, [&](double x, const cplx& v) {
      return (p == 0.0 ? 1.0 : std::pow(std::abs(x), 2.0 * p)) * std::norm(v);
    });
    mp.p_values.push_back(p);
    mp.moments.push_back(m);
    // window truncation guard at top p
    if (p + p_step > p_max + 1e-12) {
      const double edge =
          std::pow(std::abs(f.x_min), 2.0 * p) * std::norm(f.samples.front()) +
          std::pow(std::abs(f.x_max()), 2.0 * p) * std::norm(f.samples.back());
      if (edge * f.step > 1e-8 * m) mp.truncation_tagged = true;
    }
  }
  detail::finish_profile(mp);
  return mp;
}

// Window radius adapted to the basis size and the top moment order.
inline GridFunction to_grid(const HermiteFunction& h, double extra_radius = 0.0,
                            double step = 1.0 / 128.0) {
  const double turning = std::sqrt((2.0 * double(h.basis_size()) + 1.0) /
                                   (2.0 * std::numbers::pi));
  const double radius = turning + 6.0 + extra_radius;
  GridSpec spec = symmetric_grid(radius, step);
  GridFunction g;
  g.x_min = spec.x_min;
  g.step = spec.step;
  g.samples.resize(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    g.samples[i] = eval(h, g.x(i));
  }
  g.symmetric_window = true;
  return g;
}

inline MomentProfile moments(const HermiteFunction& h, double p_max,
                             double p_step = 1.0) {
  return moments(to_grid(h, std::sqrt(2.0 * std::max(p_max, 1.0)) + 2.0), p_max, p_step);
}

struct DecayRateEstimate {
  double beta_hat = 0.0;  // int e^{beta x^2} |f|^2 < inf expected for beta < beta_hat
  std::vector<double> per_p;  // rho_hat_p = M_p / (p M_{p-1})
  bool indeterminate = false;
};

inline DecayRateEstimate decay_rate_estimate(const MomentProfile& mp) {
  // needs consecutive integer p values
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < mp.p_values.size(); ++i) {
    if (std::abs(mp.p_values[i] - std::round(mp.p_values[i])) < 1e-9) idx.push_back(i);
  }
  if (idx.size() < 6)
    throw std::invalid_argument("decay_rate_estimate: need at least 5 integer p values");
  DecayRateEstimate est;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const double p = mp.p_values[idx[j]];
    if (std::abs(p - mp.p_values[idx[j - 1]] - 1.0) > 1e-9) continue;
    est.per_p.push_back(mp.moments[idx[j]] / (p * mp.moments[idx[j - 1]]));
  }
  if (est.per_p.size() < 5)
    throw std::invalid_argument("decay_rate_estimate: need consecutive integer p");
  // rho_hat should settle monotonically; wiggles beyond noise -> indeterminate
  int dir = 0;
  for (std::size_t j = est.per_p.size() / 2; j + 1 < est.per_p.size(); ++j) {
    const double d = est.per_p[j + 1] - est.per_p[j];
    if (std::abs(d) < 1e-12 * est.per_p[j]) continue;
    const int sd = d > 0 ? 1 : -1;
    if (dir == 0) dir = sd;
    else if (dir != sd) est.indeterminate = true;
  }
  est.beta_hat = 1.0 / est.per_p.back();
  return est;
}

struct RiemannNodeBound {
  double sum = 0.0;
  double bound = 0.0;
  double rho = 0.0;  // fitted once per (node set, alpha) at p = 1
  bool holds = false;
  bool advisory = false;  // set when the node set is not subcritical at s = 1
};

// sum_lambda |lambda|^{2p-1} e^{-2 alpha lambda^2} vs rho^p Gamma(p+1).
inline RiemannNodeBound riemann_node_bound(const NodeSet& ns, double alpha, double p,
                                           int tail_window = 16) {
  if (alpha <= 0.0) throw std::invalid_argument("riemann_node_bound: alpha <= 0");
  if (p < 1.0) throw std::invalid_argument("riemann_node_bound: p >= 1 required");
  auto weighted_sum = [&](double q) {
    double s = 0.0;
    for (double lam : ns.nodes) {
      const double a = std::abs(lam);
      if (a == 0.0) continue;
      s += std::pow(a, 2.0 * q - 1.0) * std::exp(-2.0 * alpha * a * a);
    }
    return s;
  };
  RiemannNodeBound r;
  r.rho = weighted_sum(1.0);  // Gamma(2) = 1
  r.sum = weighted_sum(p);
  r.bound = std::pow(r.rho, p) * std::tgamma(p + 1.0);
  r.holds = r.sum <= r.bound * (1.0 + kVerdictTolRel);
  if (int(ns.nodes.size()) > tail_window + 1) {
    const auto rep = density_profile(ns, 1.0, tail_window);
    r.advisory = rep.verdict != DensityVerdict::subcritical;
  } else {
    r.advisory = true;
  }
  return r;
}

// ((K-3)/K)^{2p} int_{|x|>=Ku} |x|^{2p} |f|^2
//   <= sigma^{-2p} int |f_hat|^2 (|y| + k/(pi u))^{2p} dy
//    + C p sigma^{-1} sum_lambda |lambda|^{2p-1} |f(lambda)|^2,
// checked for f against ns_space and mirrored for f_hat against ns_freq.
inline InequalityVerdict moment_chain_check(const HermiteFunction& f,
                                            const NodeSet& ns_space,
                                            const NodeSet& ns_freq, double p, double K,
                                            double u, double sigma, int k_fold,
                                            double audit_C = 1.0,
                                            double tol_rel = kVerdictTolRel) {
  if (!(K > 4.0)) throw std::invalid_argument("moment_chain_check: K > 4 required");
  if (p < 1.0) throw std::invalid_argument("moment_chain_check: p >= 1 required");
  if (u <= 0.0 || sigma <= 0.0)
    throw std::invalid_argument("moment_chain_check: u, sigma > 0 required");
  const double pi = std::numbers::pi;
  if (!(double(k_fold) > p && double(k_fold) < pi * p))
    throw std::invalid_argument("moment_chain_check: k_fold must lie in (p, pi p)");

  const double extra = std::max(K * u, std::sqrt(2.0 * p)) + 2.0;
  auto one_side = [&](const HermiteFunction& g, const NodeSet& ns) {
    const GridFunction gf = to_grid(g, extra);
    const GridFunction gh = to_grid(fourier(g), extra);
    const double tail = integral_weighted(gf, [&](double x, const cplx& v) {
      return std::abs(x) >= K * u ? std::pow(std::abs(x), 2.0 * p) * std::norm(v) : 0.0;
    });
    const double lhs = std::pow((K - 3.0) / K, 2.0 * p) * tail;
    const double freq = integral_weighted(gh, [&](double y, const cplx& v) {
      return std::pow(std::abs(y) + double(k_fold) / (pi * u), 2.0 * p) * std::norm(v);
    });
    double node_sum = 0.0;
    for (double lam : ns.nodes) {
      const double a = std::abs(lam);
      if (a == 0.0) continue;
      node_sum += std::pow(a, 2.0 * p - 1.0) * std::norm(eval(g, lam));
    }
    const double rhs = std::pow(sigma, -2.0 * p) * freq +
                       audit_C * p / sigma * node_sum;
    return std::pair<double, double>(lhs, rhs);
  };

  const auto space_side = one_side(f, ns_space);
  const auto freq_side = one_side(fourier(f), ns_freq);

  InequalityVerdict v;
  v.method = "hermite_grid_quadrature";
  v.lhs = space_side.first;
  v.rhs = space_side.second;
  v.parameters = {{"p", p},         {"K", K},
                  {"u", u},         {"sigma", sigma},
                  {"k_fold", double(k_fold)}, {"C", audit_C},
                  {"lhs_freq", freq_side.first}, {"rhs_freq", freq_side.second}};
  v.finalize(tol_rel);
  const bool freq_holds =
      freq_side.second - freq_side.first >= -tol_rel * std::abs(freq_side.second);
  v.holds = v.holds && freq_holds;
  return v;
}

struct HardyCriterionResult {
  std::vector<double> p_values;
  std::vector<double> per_p_slack;  // rhs - M_p
  std::vector<int> failing_p;
  bool summed_series_finite = true;  // all slacks nonnegative
};

// M_p(f) <= min(eps/100, 1/(100 eps))^p Gamma(p+1) ||f||^2
//         + (1+eps/4)^p Gamma(p+1) / (2 A pi)^p,  eps = A - 1, integer p <= p_max.
inline HardyCriterionResult hardy_moment_criterion(const HermiteFunction& f, double A,
                                                   int p_max) {
  if (!(A > 1.0)) throw std::invalid_argument("hardy_moment_criterion: A > 1 required");
  const double eps = A - 1.0;
  const double c1 = std::min(eps / 100.0, 1.0 / (100.0 * eps));
  const double n2 = l2_norm(f) * l2_norm(f);
  const MomentProfile mp = moments(f, double(p_max), 1.0);
  HardyCriterionResult res;
  for (std::size_t i = 0; i < mp.p_values.size(); ++i) {
    const double p = mp.p_values[i];
    if (p < 1.0) continue;
    const double gamma = std::tgamma(p + 1.0);
    const double rhs = std::pow(c1, p) * gamma * n2 +
                       std::pow(1.0 + eps / 4.0, p) * gamma /
                           std::pow(2.0 * A * std::numbers::pi, p);
    const double slack = rhs - mp.moments[i];
    res.p_values.push_back(p);
    res.per_p_slack.push_back(slack);
    if (slack < -kVerdictTolRel * std::abs(rhs)) {
      res.failing_p.push_back(int(std::lround(p)));
      res.summed_series_finite = false;
    }
  }
  return res;
}

// Radial annulus Poincare inequality on Omega = B(0,R) \ B(0,r):
// ||u||^2 <= (1+eps)(R/r)^{d-1}(R-r)^2/pi^2 ||grad u||^2
//          + (1+1/eps) R^{d-1} (R-r) B,
// with B = omega_{d-1} (|u(r)|^2 + |u(R)|^2), the boundary functional the
// one-dimensional reduction produces.
inline InequalityVerdict annulus_poincare_check(const GridFunction& u_radial, int d,
                                                double eps,
                                                double tol_rel = kVerdictTolRel) {
  if (d < 1) throw std::invalid_argument("annulus_poincare_check: d >= 1 required");
  if (eps <= 0.0) throw std::invalid_argument("annulus_poincare_check: eps <= 0");
  const double r = u_radial.x_min;
  const double R = u_radial.x_max();
  if (r <= 0.0) throw std::invalid_argument("annulus_poincare_check: r <= 0");
  const double pi = std::numbers::pi;
  const double omega = 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
  auto weighted = [&](const GridFunction& g) {
    return omega * integral_weighted(g, [&](double t, const cplx& v) {
      return std::pow(t, double(d - 1)) * std::norm(v);
    });
  };
  InequalityVerdict v;
  v.method = "fd4_radial";
  v.lhs = weighted(u_radial);
  const double grad = weighted(fd_derivative(u_radial));
  const double boundary =
      omega * (std::norm(u_radial.samples.front()) + std::norm(u_radial.samples.back()));
  v.rhs = (1.0 + eps) * std::pow(R / r, double(d - 1)) * (R - r) * (R - r) / (pi * pi) *
              grad +
          (1.0 + 1.0 / eps) * std::pow(R, double(d - 1)) * (R - r) * boundary;
  v.parameters = {{"r", r}, {"R", R}, {"d", double(d)}, {"eps", eps}};
  v.finalize(tol_rel);
  return v;
}

}  // namespace pauli

#endif  // PAULI_INEQUALITIES_HPP
