#ifndef PAULI_FFT_HPP
#define PAULI_FFT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace pauli {

using cplx = std::complex<double>;

namespace detail {

// In-place iterative radix-2 transform, n must be a power of two.
// sign = -1 gives sum_j a_j e^{-2 pi i jk/n}.
inline void fft_pow2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / double(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx w = std::polar(1.0, ang * double(k));
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace detail

// Discrete Fourier transform of arbitrary length via Bluestein's chirp-z
// algorithm (power-of-two lengths go straight to the radix-2 kernel).
// sign = -1: X_k = sum_j x_j e^{-2 pi i jk/n}.
inline std::vector<cplx> dft(std::vector<cplx> x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return x;
  if ((n & (n - 1)) == 0) {
    detail::fft_pow2(x, sign);
    return x;
  }
  // Bluestein: jk = (j^2 + k^2 - (k-j)^2)/2, reduce j^2 mod 2n for phase
  // accuracy at large j.
  const std::size_t m = detail::next_pow2(2 * n - 1);
  std::vector<cplx> u(m, cplx(0.0)), v(m, cplx(0.0));
  auto chirp = [&](std::size_t j) {
    const std::int64_t q = (std::int64_t(j) * std::int64_t(j)) % std::int64_t(2 * n);
    return std::polar(1.0, sign * std::numbers::pi * double(q) / double(n));
  };
  for (std::size_t j = 0; j < n; ++j) {
    const cplx w = chirp(j);
    u[j] = x[j] * w;
    v[j] = std::conj(w);
    if (j > 0) v[m - j] = std::conj(w);
  }
  detail::fft_pow2(u, -1);
  detail::fft_pow2(v, -1);
  for (std::size_t j = 0; j < m; ++j) u[j] *= v[j];
  detail::fft_pow2(u, +1);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = chirp(k) * u[k] / double(m);
  return out;
}

}  // namespace pauli

#endif  // PAULI_FFT_HPP
