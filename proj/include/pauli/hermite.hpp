#ifndef PAULI_HERMITE_HPP
#define PAULI_HERMITE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pauli/fft.hpp"
#include "pauli/nodes.hpp"

namespace pauli {

// Finite expansion in the L^2-orthonormal Hermite family normalized so that
// psi_0(x) = 2^{1/4} e^{-pi x^2} and the e^{-2 pi i x xi} Fourier transform
// acts diagonally: psi_n -> (-i)^n psi_n.
struct HermiteFunction {
  std::vector<cplx> coeffs;  // c_0 .. c_{N-1}

  std::size_t basis_size() const { return coeffs.size(); }
};

// Values of psi_0..psi_{N-1} at x, by the three-term recurrence
//   psi_{n+1}(x) = 2 sqrt(pi/(n+1)) x psi_n(x) - sqrt(n/(n+1)) psi_{n-1}(x).
inline std::vector<double> hermite_basis_values(std::size_t N, double x) {
  std::vector<double> psi(N);
  if (N == 0) return psi;
  const double pi = std::numbers::pi;
  psi[0] = std::pow(2.0, 0.25) * std::exp(-pi * x * x);
  if (N == 1) return psi;
  psi[1] = 2.0 * std::sqrt(pi) * x * psi[0];
  for (std::size_t n = 1; n + 1 < N; ++n) {
    psi[n + 1] = 2.0 * std::sqrt(pi / double(n + 1)) * x * psi[n] -
                 std::sqrt(double(n) / double(n + 1)) * psi[n - 1];
  }
  return psi;
}

inline double hermite_psi(std::size_t n, double x) {
  return hermite_basis_values(n + 1, x)[n];
}

inline cplx eval(const HermiteFunction& h, double x) {
  const auto psi = hermite_basis_values(h.basis_size(), x);
  cplx acc(0.0);
  for (std::size_t n = 0; n < psi.size(); ++n) acc += h.coeffs[n] * psi[n];
  return acc;
}

// Exact Fourier transform: c_n -> (-i)^n c_n.
inline HermiteFunction fourier(const HermiteFunction& h) {
  static const cplx eig[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  HermiteFunction out = h;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] *= eig[n % 4];
  return out;
}

// Exact ladder action of d/dx on the basis:
//   psi_n' = sqrt(pi n) psi_{n-1} - sqrt(pi (n+1)) psi_{n+1}.
inline HermiteFunction derivative(const HermiteFunction& h) {
  const double pi = std::numbers::pi;
  const std::size_t N = h.basis_size();
  HermiteFunction out;
  out.coeffs.assign(N + 1, cplx(0.0));
  for (std::size_t n = 0; n < N; ++n) {
    if (n >= 1) out.coeffs[n - 1] += std::sqrt(pi * double(n)) * h.coeffs[n];
    out.coeffs[n + 1] -= std::sqrt(pi * double(n + 1)) * h.coeffs[n];
  }
  return out;
}

// Exact band action of multiplication by x:
//   x psi_n = sqrt((n+1)/(4 pi)) psi_{n+1} + sqrt(n/(4 pi)) psi_{n-1}.
inline HermiteFunction multiply_by_x(const HermiteFunction& h) {
  const double pi = std::numbers::pi;
  const std::size_t N = h.basis_size();
  HermiteFunction out;
  out.coeffs.assign(N + 1, cplx(0.0));
  for (std::size_t n = 0; n < N; ++n) {
    out.coeffs[n + 1] += std::sqrt(double(n + 1) / (4.0 * pi)) * h.coeffs[n];
    if (n >= 1) out.coeffs[n - 1] += std::sqrt(double(n) / (4.0 * pi)) * h.coeffs[n];
  }
  return out;
}

inline double l2_norm(const HermiteFunction& h) {
  double s = 0.0;
  for (const cplx& c : h.coeffs) s += std::norm(c);
  return std::sqrt(s);
}

struct SobolevNorms {
  double l2;
  double h1;  // sqrt(||f||_2^2 + ||f'||_2^2), f' by the exact ladder
};

inline SobolevNorms norms(const HermiteFunction& h) {
  const double l2 = l2_norm(h);
  const double dl2 = l2_norm(derivative(h));
  return {l2, std::sqrt(l2 * l2 + dl2 * dl2)};
}

enum class Side { space, frequency };

inline std::vector<cplx> sample_on_nodes(const HermiteFunction& h, const NodeSet& ns,
                                         Side side) {
  if (ns.nodes.empty()) throw std::invalid_argument("sample_on_nodes: empty node set");
  const HermiteFunction use = (side == Side::frequency) ? fourier(h) : h;
  std::vector<cplx> out;
  out.reserve(ns.nodes.size());
  for (double t : ns.nodes) out.push_back(eval(use, t));
  return out;
}

// Window sup of |h(x)| e^{alpha x^2} over |x| <= domain_radius.
// A lower bound for the true sup over R; 16 samples per unit length minimum.
inline double gaussian_decay_margin(const HermiteFunction& h, double alpha,
                                    double domain_radius,
                                    std::size_t per_unit = 16) {
  if (alpha <= 0.0) throw std::invalid_argument("gaussian_decay_margin: alpha <= 0");
  if (domain_radius <= 0.0)
    throw std::invalid_argument("gaussian_decay_margin: radius <= 0");
  if (per_unit < 16) per_unit = 16;
  const std::size_t n = std::size_t(2.0 * domain_radius * double(per_unit)) + 1;
  const double step = 2.0 * domain_radius / double(n - 1);
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -domain_radius + double(i) * step;
    const double v = std::abs(eval(h, x)) * std::exp(alpha * x * x);
    if (v > sup) sup = v;
  }
  return sup;
}

}  // namespace pauli

#endif  // PAULI_HERMITE_HPP
