#ifndef PAULI_KERNEL_HPP
#define PAULI_KERNEL_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pauli {

// Plateau mollifier: the (k+1)-fold convolution
//   F = 1_{[-u,u]} * (k/u 1_{[-u/2k,u/2k]}) * ... * (k/u 1_{[-u/2k,u/2k]})
// with k unit-mass factors. F == 1 on [-u/2, u/2], supported on [-3u/2, 3u/2],
// total mass 2u. Evaluated exactly as a piecewise polynomial: the k-fold
// factor is a scaled B-spline and convolving with the indicator integrates it.
struct KernelF {
  double u;
  int k;

  KernelF(double u_, int k_) : u(u_), k(k_) {
    if (u <= 0.0) throw std::invalid_argument("KernelF: u <= 0");
    if (k < 1) throw std::invalid_argument("KernelF: k < 1");
  }

  double support_radius() const { return 1.5 * u; }
  double mass() const { return 2.0 * u; }
};

namespace detail {

// CDF of the cardinal B-spline of order k on [0,k]:
//   N_k(x) = (1/k!) sum_j (-1)^j C(k,j) (x-j)_+^k.
inline double bspline_cdf(int k, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= double(k)) return 1.0;
  double sum = 0.0;
  double binom = 1.0;
  double factk = 1.0;
  for (int j = 1; j <= k; ++j) factk *= double(j);
  for (int j = 0; j <= k; ++j) {
    const double t = x - double(j);
    if (t > 0.0) sum += ((j % 2) ? -binom : binom) * std::pow(t, double(k));
    binom = binom * double(k - j) / double(j + 1);
  }
  return sum / factk;
}

}  // namespace detail

inline double kernel_eval(const KernelF& K, double t) {
  // F(t) = C(t+u) - C(t-u), C the CDF of the k-fold factor (support width u)
  const double w = K.u / double(K.k);
  const double half = 0.5 * double(K.k);
  const double hi = detail::bspline_cdf(K.k, (t + K.u) / w + half);
  const double lo = detail::bspline_cdf(K.k, (t - K.u) / w + half);
  return hi - lo;
}

// Exact integral of F: 5-point Gauss-Legendre on each polynomial piece
// (breakpoints at -3u/2 + j*u/k, degree k <= 9 per piece).
inline double kernel_mass_exact(const KernelF& K) {
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  const double w = K.u / double(K.k);
  double total = 0.0;
  for (int j = 0; j < 3 * K.k; ++j) {
    const double a = -1.5 * K.u + double(j) * w;
    const double mid = a + 0.5 * w, half = 0.5 * w;
    for (int q = 0; q < 5; ++q)
      total += gw[q] * half * kernel_eval(K, mid + half * gx[q]);
  }
  return total;
}

// Closed form F_hat(xi) = [sin(2 pi u xi)/(pi xi)] [sin(pi u xi / k)/(pi u xi / k)]^k,
// removable singularity at xi = 0 evaluated as 2u.
inline double kernel_fourier(const KernelF& K, double xi) {
  const double pi = std::numbers::pi;
  auto sinc = [&](double y) { return y == 0.0 ? 1.0 : std::sin(pi * y) / (pi * y); };
  return 2.0 * K.u * sinc(2.0 * K.u * xi) * std::pow(sinc(K.u * xi / double(K.k)), K.k);
}

}  // namespace pauli

#endif  // PAULI_KERNEL_HPP
