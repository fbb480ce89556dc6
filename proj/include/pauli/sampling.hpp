#ifndef PAULI_SAMPLING_HPP
#define PAULI_SAMPLING_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pauli/grid.hpp"
#include "pauli/hermite.hpp"
#include "pauli/nodes.hpp"

namespace pauli {

struct WeightScheme {
  bool gaussian = false;
  double A = 0.0;  // weight e^{A pi x^2}

  static WeightScheme none() { return {}; }
  static WeightScheme gaussian_weight(double A) { return {true, A}; }

  // exponent capped so weighted rows stay finite in double precision
  static constexpr double kMaxExponent = 300.0;

  double operator()(double x) const {
    return gaussian ? std::exp(std::min(A * std::numbers::pi * x * x, kMaxExponent))
                    : 1.0;
  }
};

struct RowMeta {
  double node;
  Side side;
  double weight;
};

// Linear map from Hermite coefficients to (weighted) samples at space and
// frequency nodes. Frequency rows use the exact diagonal (-i)^n action.
struct SamplingOperator {
  Eigen::MatrixXcd matrix;
  std::vector<RowMeta> row_meta;
  std::size_t basis_size = 0;
  WeightScheme weights;
  double truncation_radius = 0.0;
  std::size_t rows_space = 0;
  std::size_t rows_freq = 0;
};

// Classical turning-point truncation: rows at |node| > R(N) carry only the
// exponentially small Hermite tail and contribute noise to sigma_min.
inline double truncation_radius(std::size_t N, double margin = 0.25) {
  return std::sqrt((2.0 * double(N) + 1.0) / (2.0 * std::numbers::pi)) * (1.0 + margin);
}

inline SamplingOperator build_operator(std::size_t N, const NodeSet& space_nodes,
                                       const NodeSet& freq_nodes,
                                       const WeightScheme& weights,
                                       double margin = 0.25) {
  if (N < 1) throw std::invalid_argument("build_operator: N >= 1 required");
  if (space_nodes.nodes.empty() && freq_nodes.nodes.empty())
    throw std::invalid_argument("build_operator: no nodes");
  SamplingOperator op;
  op.basis_size = N;
  op.weights = weights;
  op.truncation_radius = truncation_radius(N, margin);

  static const cplx eig[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  std::vector<std::vector<cplx>> rows;
  auto add_rows = [&](const NodeSet& ns, Side side) {
    for (double t : ns.nodes) {
      if (std::abs(t) > op.truncation_radius) continue;
      const double w = weights(t);
      const auto psi = hermite_basis_values(N, t);
      std::vector<cplx> row(N);
      for (std::size_t n = 0; n < N; ++n) {
        row[n] = (side == Side::frequency) ? eig[n % 4] * (w * psi[n])
                                           : cplx(w * psi[n], 0.0);
      }
      rows.push_back(std::move(row));
      op.row_meta.push_back({t, side, w});
      (side == Side::space ? op.rows_space : op.rows_freq)++;
    }
  };
  add_rows(space_nodes, Side::space);
  add_rows(freq_nodes, Side::frequency);
  if (rows.empty())
    throw std::invalid_argument("build_operator: all nodes truncated away");

  op.matrix.resize(Eigen::Index(rows.size()), Eigen::Index(N));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t n = 0; n < N; ++n) op.matrix(Eigen::Index(i), Eigen::Index(n)) = rows[i][n];
  return op;
}

namespace detail {

// Log-scale singular values of a row-scaled matrix with high relative
// accuracy (Demmel-Veselic / Drmac): rows sorted by descending norm, a
// column-pivoted QR in plain doubles, then one-sided Jacobi on the columns
// of R^H held as unit vectors with separate log magnitudes. Bidiagonalization
// SVD only resolves singular values down to eps * sigma_max, far too coarse
// once gaussian weights spread the rows over hundreds of orders of magnitude.
// Requires rows >= cols; returns logs sorted descending.
inline std::vector<double> scaled_log_singular_values(const Eigen::MatrixXcd& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  if (m < n)
    throw std::invalid_argument("scaled_log_singular_values: rows >= cols required");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) order[std::size_t(i)] = i;
  std::vector<double> rnorm(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) rnorm[std::size_t(i)] = A.row(i).norm();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return rnorm[std::size_t(a)] > rnorm[std::size_t(b)];
  });
  Eigen::MatrixXcd B(m, n);
  for (Eigen::Index i = 0; i < m; ++i) B.row(i) = A.row(order[std::size_t(i)]);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(B);
  Eigen::MatrixXcd R = qr.matrixR()
                           .topLeftCorner(n, n)
                           .template triangularView<Eigen::Upper>();

  // columns of R^H with log-magnitude bookkeeping
  Eigen::MatrixXcd Q = R.adjoint();
  std::vector<double> lg(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double nrm = Q.col(j).norm();
    if (nrm > 0.0) {
      lg[std::size_t(j)] = std::log(nrm);
      Q.col(j) /= nrm;
    } else {
      lg[std::size_t(j)] = -1e308;
      Q.col(j).setZero();
      Q(j, j) = cplx(1.0);
    }
  }

  // cyclic one-sided Jacobi sweeps: drive |q_i^H q_j| -> 0
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        Eigen::Index hi = i, lo = j;
        if (lg[std::size_t(lo)] > lg[std::size_t(hi)]) std::swap(hi, lo);
        const cplx g = Q.col(hi).dot(Q.col(lo));  // q_hi^H q_lo
        const double ga = std::abs(g);
        off = std::max(off, ga);
        if (ga < 1e-15) continue;
        const cplx phase = g / ga;
        // scaled 2x2 Gram [[1, t|g|],[t|g|, t^2]], t = e^{lg_lo - lg_hi} <= 1
        const double t = std::exp(std::max(lg[std::size_t(lo)] - lg[std::size_t(hi)],
                                           -745.0));
        // tan(theta) = t / (u + sqrt(u^2 + t^2)), u = (1 - t^2)/(2|g|);
        // written so tan(theta)/t stays finite as t -> 0
        const double u = (1.0 - t * t) / (2.0 * ga);
        const double root = std::sqrt(u * u + t * t);
        const double tan_over_t = 1.0 / (u + root);
        const double tanth = t * tan_over_t;
        const double costh = 1.0 / std::sqrt(1.0 + tanth * tanth);
        const double sinth = tanth * costh;
        // c_hi' =  cos * c_hi + sin * e^{-i phi} * c_lo
        // c_lo' = -sin * e^{+i phi} * c_hi + cos * c_lo, sin/t kept explicit
        const Eigen::VectorXcd vhi =
            costh * Q.col(hi) + (sinth * t) * std::conj(phase) * Q.col(lo);
        const Eigen::VectorXcd vlo =
            -(costh * tan_over_t) * phase * Q.col(hi) + costh * Q.col(lo);
        const double nhi = vhi.norm(), nlo = vlo.norm();
        if (nhi > 0.0) {
          Q.col(hi) = vhi / nhi;
          lg[std::size_t(hi)] += std::log(nhi);
        }
        if (nlo > 0.0) {
          Q.col(lo) = vlo / nlo;
          lg[std::size_t(lo)] += std::log(nlo);
        }
      }
    }
    if (off < 1e-13) break;
  }

  std::sort(lg.begin(), lg.end(), std::greater<double>());
  return lg;
}

inline double exp_clamped(double l) {
  if (l > 709.0) return std::numeric_limits<double>::max();
  if (l < -745.0) return 0.0;
  return std::exp(l);
}

}  // namespace detail

struct SpectrumReport {
  std::size_t N = 0;
  std::size_t rows_space = 0;
  std::size_t rows_freq = 0;
  std::vector<double> singular_values;  // descending
  double sigma_min = 0.0;
  std::size_t nullspace_dim_at_tol = 0;
  double tol = 1e-8;
};

inline SpectrumReport singular_spectrum(const SamplingOperator& op, double tol = 1e-8) {
  SpectrumReport rep;
  rep.N = op.basis_size;
  rep.rows_space = op.rows_space;
  rep.rows_freq = op.rows_freq;
  rep.tol = tol;
  if (op.weights.gaussian && op.matrix.rows() >= op.matrix.cols()) {
    // weighted rows span hundreds of orders of magnitude; use the
    // scaling-robust path so sigma_min keeps its relative accuracy
    const auto lg = detail::scaled_log_singular_values(op.matrix);
    rep.singular_values.reserve(lg.size());
    for (double l : lg) rep.singular_values.push_back(detail::exp_clamped(l));
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix);
    const auto& sv = svd.singularValues();
    rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  }
  // a short-and-wide operator has an implicit nullspace beyond its rank
  while (rep.singular_values.size() < op.basis_size) rep.singular_values.push_back(0.0);
  rep.sigma_min = rep.singular_values.back();
  for (double s : rep.singular_values)
    if (s <= tol) ++rep.nullspace_dim_at_tol;
  return rep;
}

struct Counterexample {
  HermiteFunction f;          // unit-norm least singular vector
  double sigma_min = 0.0;
  double max_node_residual = 0.0;
};

inline Counterexample extract_counterexample(const SamplingOperator& op,
                                             double tol = 1e-8) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index N = Eigen::Index(op.basis_size);
  // sigma_N is zero when the operator has fewer rows than columns
  const double sigma_min = (sv.size() >= N) ? sv(N - 1) : 0.0;
  if (sigma_min > tol)
    throw std::invalid_argument("extract_counterexample: no nullspace at tol");

  Counterexample ce;
  ce.sigma_min = sigma_min;
  const Eigen::VectorXcd v = svd.matrixV().col(N - 1);
  ce.f.coeffs.assign(v.data(), v.data() + v.size());
  const Eigen::VectorXcd resid = op.matrix * v;
  for (Eigen::Index i = 0; i < resid.size(); ++i)
    ce.max_node_residual = std::max(ce.max_node_residual, std::abs(resid(i)));
  return ce;
}

struct ScanRow {
  double c = 0.0;
  double A = 0.0;  // 0 when unweighted
  std::size_t N = 0;
  std::size_t rows_space = 0;
  std::size_t rows_freq = 0;
  double sigma_min = 0.0;
  std::size_t nullspace_dim = 0;
  double runtime_ms = 0.0;
};

// Symmetric nodes c i^a on both sides, Gamma = Lambda, truncated at R(N);
// count chosen so the family fills the truncation window.
inline NodeSet scan_nodes(double c, double a, std::size_t N, double margin = 0.25) {
  const double R = truncation_radius(N, margin);
  const int count = std::max(2, int(std::ceil(std::pow(R / c, 1.0 / a))) + 1);
  return gen_power_nodes(c, a, count, /*symmetric=*/true);
}

inline std::vector<ScanRow> uniqueness_scan(const std::vector<double>& c_values,
                                            const std::vector<std::size_t>& N_values,
                                            double a = 0.5, double tol = 1e-8,
                                            double margin = 0.25) {
  if (c_values.empty() || N_values.empty())
    throw std::invalid_argument("uniqueness_scan: empty parameter grid");
  std::vector<ScanRow> out;
  for (double c : c_values) {
    for (std::size_t N : N_values) {
      const auto t0 = std::chrono::steady_clock::now();
      const NodeSet ns = scan_nodes(c, a, N, margin);
      const SamplingOperator op = build_operator(N, ns, ns, WeightScheme::none(), margin);
      const SpectrumReport rep = singular_spectrum(op, tol);
      const auto t1 = std::chrono::steady_clock::now();
      ScanRow row;
      row.c = c;
      row.N = N;
      row.rows_space = rep.rows_space;
      row.rows_freq = rep.rows_freq;
      row.sigma_min = rep.sigma_min;
      row.nullspace_dim = rep.nullspace_dim_at_tol;
      row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      out.push_back(row);
    }
  }
  return out;
}

inline std::vector<ScanRow> hardy_scan(const std::vector<double>& A_values, double c,
                                       const std::vector<std::size_t>& N_values,
                                       double a = 0.5, double tol = 1e-8,
                                       double margin = 0.25) {
  if (A_values.empty() || N_values.empty())
    throw std::invalid_argument("hardy_scan: empty parameter grid");
  std::vector<ScanRow> out;
  for (double A : A_values) {
    if (A <= 0.0) throw std::invalid_argument("hardy_scan: A > 0 required");
    for (std::size_t N : N_values) {
      const auto t0 = std::chrono::steady_clock::now();
      const NodeSet ns = scan_nodes(c, a, N, margin);
      const SamplingOperator op =
          build_operator(N, ns, ns, WeightScheme::gaussian_weight(A), margin);
      const SpectrumReport rep = singular_spectrum(op, tol);
      const auto t1 = std::chrono::steady_clock::now();
      ScanRow row;
      row.c = c;
      row.A = A;
      row.N = N;
      row.rows_space = rep.rows_space;
      row.rows_freq = rep.rows_freq;
      row.sigma_min = rep.sigma_min;
      row.nullspace_dim = rep.nullspace_dim_at_tol;
      row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      out.push_back(row);
    }
  }
  return out;
}

struct ModulusCompareReport {
  double node_max_dev = 0.0;
  double global_max_dev = 0.0;
  Side side = Side::space;
  double window_radius = 0.0;
};

inline ModulusCompareReport modulus_compare(const HermiteFunction& f,
                                            const HermiteFunction& g,
                                            const NodeSet& nodes, double window_radius,
                                            Side side = Side::space,
                                            std::size_t per_unit = 32) {
  const HermiteFunction fu = (side == Side::frequency) ? fourier(f) : f;
  const HermiteFunction gu = (side == Side::frequency) ? fourier(g) : g;
  ModulusCompareReport rep;
  rep.side = side;
  rep.window_radius = window_radius;
  for (double t : nodes.nodes)
    rep.node_max_dev =
        std::max(rep.node_max_dev, std::abs(std::abs(eval(fu, t)) - std::abs(eval(gu, t))));
  const std::size_t n = std::size_t(2.0 * window_radius * double(per_unit)) + 1;
  const double step = 2.0 * window_radius / double(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -window_radius + double(i) * step;
    rep.global_max_dev =
        std::max(rep.global_max_dev, std::abs(std::abs(eval(fu, x)) - std::abs(eval(gu, x))));
  }
  return rep;
}

struct ZeroDensityCertificate {
  double node_quadratic_density = 0.0;  // n(r)/r^2 at the outermost node radius
  double pw_bound = 0.0;                // 2 theta(alpha) = 2 pi^2 / alpha
  bool contradiction = false;
  bool indeterminate = false;
};

// Compares the quadratic zero density forced by the node set against the
// order-2 type bound from Gaussian decay exp(-alpha x^2).
inline ZeroDensityCertificate zero_density_certificate(const NodeSet& ns, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("zero_density_certificate: alpha <= 0");
  ZeroDensityCertificate cert;
  cert.pw_bound = 2.0 * std::numbers::pi * std::numbers::pi / alpha;
  if (ns.nodes.size() < 16) {
    cert.indeterminate = true;
    return cert;
  }
  if (!ns.symmetric)
    throw std::invalid_argument("zero_density_certificate: symmetric node set required");
  double rmax = 0.0;
  for (double t : ns.nodes) rmax = std::max(rmax, std::abs(t));
  cert.node_quadratic_density = double(ns.nodes.size()) / (rmax * rmax);
  cert.contradiction = cert.node_quadratic_density > cert.pw_bound;
  return cert;
}

struct NegativePair {
  GridFunction f1;  // h + g
  GridFunction f2;  // h
  GridFunction g;   // bump in a Lambda-gap
  GridFunction psi; // inverse transform of a Gamma-gap bump
  ModulusCompareReport space_report;
  ModulusCompareReport freq_report;
  bool degenerate = false;  // psi == 0 would make the pair trivially equal
};

namespace detail {

struct Gap {
  double lo = 0.0, hi = 0.0;
  double width() const { return hi - lo; }
};

// Among the open intervals between consecutive nodes inside [lo, hi] that are
// at least min_width wide, the one whose center is closest to the origin.
// Bumps placed far from 0 barely overlap the other side's construction, which
// would make the modulus deviations vanish instead of being bounded below.
inline Gap pick_gap(const NodeSet& ns, double lo, double hi, double min_width) {
  std::vector<double> pts;
  pts.push_back(lo);
  for (double t : ns.nodes)
    if (t > lo && t < hi) pts.push_back(t);
  pts.push_back(hi);
  Gap best;
  bool found = false;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Gap g{pts[i - 1], pts[i]};
    if (g.width() < min_width) continue;
    const double center = 0.5 * (g.lo + g.hi);
    const double best_center = 0.5 * (best.lo + best.hi);
    if (!found || std::abs(center) < std::abs(best_center)) {
      best = g;
      found = true;
    }
  }
  if (!found) best = {0.0, 0.0};
  return best;
}

}  // namespace detail

// Explicit negative-pair construction: g a bump inside a Lambda-gap interval,
// psi with psi_hat a bump inside a Gamma-gap, h = -g/2 + psi, pair (h+g, h).
inline NegativePair negative_pair_construct(const NodeSet& space_nodes,
                                            const NodeSet& freq_nodes,
                                            const GridSpec& grid,
                                            double psi_amplitude = 1.0) {
  GridFunction probe;
  probe.x_min = grid.x_min;
  probe.step = grid.step;
  probe.samples.assign(grid.count, cplx(0.0));
  probe.validate();
  const double x_lo = probe.x_min, x_hi = probe.x_max();
  if (std::abs(x_lo + x_hi) > 0.5 * grid.step)
    throw std::invalid_argument("negative_pair_construct: symmetric grid required");

  // space side: bump supported in a Lambda-gap; radius 0.4*width keeps the
  // support strictly inside the gap while maximizing the bump mass (which
  // lower-bounds the global modulus deviations)
  const double min_space_gap = 10.0 * grid.step;
  const detail::Gap sgap = detail::pick_gap(space_nodes, x_lo, x_hi, min_space_gap);
  if (sgap.width() < min_space_gap)
    throw std::invalid_argument(
        "negative_pair_construct: need a space gap of width >= " +
        std::to_string(min_space_gap));
  const double g_center = 0.5 * (sgap.lo + sgap.hi);
  const double g_radius = 0.4 * sgap.width();
  const GridFunction g = make_bump(g_center, g_radius, grid);

  // frequency side: psi_hat supported in a Gamma-gap on the reciprocal grid
  const double dxi = 1.0 / (double(grid.count) * grid.step);
  const std::size_t K = grid.count / 2;
  const GridSpec fspec{-double(K) * dxi, dxi, grid.count};
  const double xi_hi = fspec.x_min + double(grid.count - 1) * dxi;
  const detail::Gap fgap =
      detail::pick_gap(freq_nodes, std::max(0.0, fspec.x_min), xi_hi, 16.0 * dxi);
  if (fgap.width() < 16.0 * dxi)
    throw std::invalid_argument(
        "negative_pair_construct: need a frequency gap of width >= " +
        std::to_string(16.0 * dxi));
  const double p_center = 0.5 * (fgap.lo + fgap.hi);
  const double p_radius = fgap.width() / 3.0;

  // mirror the bump when the mirrored interval is also node-free (real psi)
  bool mirror = true;
  for (double t : freq_nodes.nodes)
    if (t > -p_center - p_radius && t < -p_center + p_radius) mirror = false;
  GridFunction psi_hat = sample_grid(fspec, [&](double xi) {
    double v = psi_amplitude * bump_profile((xi - p_center) / p_radius);
    if (mirror) v += psi_amplitude * bump_profile((xi + p_center) / p_radius);
    return cplx(v, 0.0);
  });
  const GridFunction psi = quad_inverse_fourier(psi_hat);
  if (psi.size() != grid.count || std::abs(psi.step - grid.step) > 1e-12 * grid.step)
    throw std::logic_error("negative_pair_construct: reciprocal grid mismatch");

  NegativePair pair;
  pair.g = g;
  pair.psi = psi;
  pair.degenerate = sup_abs(psi) < 1e-12;

  pair.f1 = psi;
  pair.f2 = psi;
  for (std::size_t i = 0; i < grid.count; ++i) {
    pair.f1.samples[i] += 0.5 * g.samples[i];
    pair.f2.samples[i] -= 0.5 * g.samples[i];
  }

  // space report: node agreement is exact by construction (g vanishes at
  // every node), evaluated through the closed-form bump, not interpolation
  pair.space_report.side = Side::space;
  pair.space_report.window_radius = x_hi;
  for (double lam : space_nodes.nodes) {
    if (lam < x_lo || lam > x_hi) continue;
    const cplx p = interp(psi, lam);
    const double gb = bump_profile((lam - g_center) / g_radius);
    const double dev = std::abs(std::abs(p + 0.5 * gb) - std::abs(p - 0.5 * gb));
    pair.space_report.node_max_dev = std::max(pair.space_report.node_max_dev, dev);
  }
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double dev =
        std::abs(std::abs(pair.f1.samples[i]) - std::abs(pair.f2.samples[i]));
    pair.space_report.global_max_dev = std::max(pair.space_report.global_max_dev, dev);
  }

  // frequency report via quadrature transforms
  const GridFunction f1h = quad_fourier(pair.f1);
  const GridFunction f2h = quad_fourier(pair.f2);
  pair.freq_report.side = Side::frequency;
  pair.freq_report.window_radius = f1h.x_max();
  for (double gam : freq_nodes.nodes) {
    if (gam < f1h.x_min || gam > f1h.x_max()) continue;
    const double dev = std::abs(std::abs(interp(f1h, gam)) - std::abs(interp(f2h, gam)));
    pair.freq_report.node_max_dev = std::max(pair.freq_report.node_max_dev, dev);
  }
  for (std::size_t i = 0; i < f1h.size(); ++i) {
    const double dev = std::abs(std::abs(f1h.samples[i]) - std::abs(f2h.samples[i]));
    pair.freq_report.global_max_dev = std::max(pair.freq_report.global_max_dev, dev);
  }
  return pair;
}

}  // namespace pauli

#endif  // PAULI_SAMPLING_HPP
