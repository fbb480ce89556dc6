#ifndef PAULI_GRID_HPP
#define PAULI_GRID_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pauli/fft.hpp"

namespace pauli {

struct GridSpec {
  double x_min;
  double step;
  std::size_t count;
};

// Complex samples on a uniform grid; the carrier for quadrature transforms,
// convolutions and bump constructions.
struct GridFunction {
  double x_min = 0.0;
  double step = 1.0;
  std::vector<cplx> samples;
  bool symmetric_window = true;     // recorded construction flag
  bool edge_decay_warning = false;  // set by quad_fourier when edges do not decay

  std::size_t size() const { return samples.size(); }
  double x(std::size_t i) const { return x_min + double(i) * step; }
  double x_max() const { return x(size() - 1); }

  void validate() const {
    if (step <= 0.0) throw std::invalid_argument("GridFunction: step <= 0");
    if (samples.size() < 2) throw std::invalid_argument("GridFunction: need >= 2 samples");
  }
};

// Symmetric grid covering [-radius, radius] with the given step.
inline GridSpec symmetric_grid(double radius, double step) {
  const std::size_t half = std::size_t(std::llround(radius / step));
  return {-double(half) * step, step, 2 * half + 1};
}

inline GridFunction sample_grid(const GridSpec& spec,
                                const std::function<cplx(double)>& f) {
  GridFunction g;
  g.x_min = spec.x_min;
  g.step = spec.step;
  g.samples.resize(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) g.samples[i] = f(g.x(i));
  g.symmetric_window = std::abs(g.x_min + g.x_max()) < 0.5 * spec.step;
  g.validate();
  return g;
}

// Trapezoid quadrature of w(x_i) applied to the samples.
inline double integral_weighted(const GridFunction& g,
                                const std::function<double(double, const cplx&)>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double wt = (i == 0 || i + 1 == g.size()) ? 0.5 : 1.0;
    s += wt * w(g.x(i), g.samples[i]);
  }
  return s * g.step;
}

inline double l2_norm(const GridFunction& g) {
  return std::sqrt(integral_weighted(g, [](double, const cplx& v) { return std::norm(v); }));
}

inline double sup_abs(const GridFunction& g) {
  double m = 0.0;
  for (const cplx& v : g.samples) m = std::max(m, std::abs(v));
  return m;
}

// Linear interpolation; x must lie inside the grid window.
inline cplx interp(const GridFunction& g, double x) {
  const double t = (x - g.x_min) / g.step;
  if (t < 0.0 || t > double(g.size() - 1))
    throw std::out_of_range("interp: x outside grid window");
  const std::size_t i = std::min(std::size_t(t), g.size() - 2);
  const double frac = t - double(i);
  return g.samples[i] * (1.0 - frac) + g.samples[i + 1] * frac;
}

namespace detail {

// Trapezoid quadrature of int g(x) e^{sign 2 pi i x xi} dx on the reciprocal
// grid xi_k = (k - floor(n/2))/(n h), evaluated with a fast transform plus an
// explicit phase factor for the window offset.
inline GridFunction quad_transform(const GridFunction& g, int sign) {
  g.validate();
  const std::size_t n = g.size();
  const double h = g.step;
  const std::size_t K = n / 2;
  const double dxi = 1.0 / (double(n) * h);

  std::vector<cplx> a(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double wt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    // shift of the frequency origin to the grid center
    const cplx shift = std::polar(1.0, -sign * 2.0 * std::numbers::pi *
                                           double(j) * double(K) / double(n));
    a[j] = wt * g.samples[j] * shift;
  }
  a = dft(std::move(a), sign);

  GridFunction out;
  out.step = dxi;
  out.x_min = -double(K) * dxi;
  out.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = out.x_min + double(k) * dxi;
    out.samples[k] = h * std::polar(1.0, sign * 2.0 * std::numbers::pi * g.x_min * xi) * a[k];
  }
  out.symmetric_window = true;

  // aliasing guard: inputs must decay at the window edges
  const double edge = std::max(std::abs(g.samples.front()), std::abs(g.samples.back()));
  out.edge_decay_warning = edge > 1e-12 * std::max(1.0, sup_abs(g));
  return out;
}

}  // namespace detail

// Forward transform, e^{-2 pi i x xi} convention.
inline GridFunction quad_fourier(const GridFunction& g) {
  return detail::quad_transform(g, -1);
}

inline GridFunction quad_inverse_fourier(const GridFunction& g) {
  return detail::quad_transform(g, +1);
}

// Quadrature of the continuous convolution: step-scaled full discrete
// convolution; support grows additively.
inline GridFunction convolve(const GridFunction& a, const GridFunction& b) {
  a.validate();
  b.validate();
  if (std::abs(a.step - b.step) > 1e-14 * a.step)
    throw std::invalid_argument("convolve: mismatched grid steps");
  const std::size_t na = a.size(), nb = b.size();
  GridFunction out;
  out.step = a.step;
  out.x_min = a.x_min + b.x_min;
  out.samples.assign(na + nb - 1, cplx(0.0));
  for (std::size_t i = 0; i < na; ++i) {
    const cplx ai = a.samples[i];
    if (ai == cplx(0.0)) continue;
    for (std::size_t j = 0; j < nb; ++j) out.samples[i + j] += ai * b.samples[j];
  }
  for (cplx& v : out.samples) v *= a.step;
  out.symmetric_window = std::abs(out.x_min + out.x_max()) < 0.5 * out.step;
  return out;
}

// Smooth compactly supported bump: exp(1 - 1/(1-s^2)) with s the rescaled
// offset; unit peak, exactly zero outside [center-radius, center+radius].
inline double bump_profile(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

inline GridFunction make_bump(double center, double radius, const GridSpec& grid) {
  if (radius <= 0.0) throw std::invalid_argument("make_bump: radius <= 0");
  if (2.0 * radius / grid.step < 8.0)
    throw std::invalid_argument("make_bump: grid too coarse to resolve radius");
  return sample_grid(grid, [&](double x) {
    return cplx(bump_profile((x - center) / radius), 0.0);
  });
}

// CSV with columns x, re, im; header row mandatory.
inline void write_csv(const GridFunction& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  f << "x,re,im\n";
  char buf[128];
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x(i),
                  g.samples[i].real(), g.samples[i].imag());
    f << buf;
  }
}

inline GridFunction read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("x,re,im", 0) != 0)
    throw std::runtime_error("read_csv: missing x,re,im header in " + path);
  std::vector<double> xs;
  std::vector<cplx> vs;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    double x, re, im;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &re, &im) != 3)
      throw std::runtime_error("read_csv: malformed row: " + line);
    xs.push_back(x);
    vs.push_back(cplx(re, im));
  }
  if (xs.size() < 2) throw std::runtime_error("read_csv: need at least 2 rows");
  GridFunction g;
  g.x_min = xs.front();
  g.step = (xs.back() - xs.front()) / double(xs.size() - 1);
  g.samples = std::move(vs);
  g.symmetric_window = std::abs(g.x_min + g.x_max()) < 0.5 * g.step;
  g.validate();
  return g;
}

}  // namespace pauli

#endif  // PAULI_GRID_HPP
