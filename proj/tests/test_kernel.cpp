#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pauli/grid.hpp"
#include "pauli/kernel.hpp"

using namespace pauli;
using std::numbers::pi;

namespace {

// Cell-average sampling of (1/(2r)) 1_{[-r,r]}-type indicators so the plain
// step-scaled convolution integrates them exactly (midpoint-quality edges).
GridFunction indicator_cells(double r, double height, const GridSpec& spec) {
  return sample_grid(spec, [&](double x) {
    const double lo = std::max(x - 0.5 * spec.step, -r);
    const double hi = std::min(x + 0.5 * spec.step, r);
    const double frac = std::max(0.0, hi - lo) / spec.step;
    return cplx(height * frac, 0.0);
  });
}

}  // namespace

TEST_CASE("constructor guards") {
  CHECK_THROWS(KernelF(0.0, 2));
  CHECK_THROWS(KernelF(-1.0, 2));
  CHECK_THROWS(KernelF(1.0, 0));
}

TEST_CASE("plateau, support, range, symmetry") {
  for (double u : {1.0, 2.0}) {
    for (int k : {1, 2, 3, 5}) {
      KernelF K(u, k);
      CHECK(K.support_radius() == doctest::Approx(1.5 * u));
      CHECK(K.mass() == doctest::Approx(2.0 * u));
      for (double t = -2.0 * u; t <= 2.0 * u; t += u / 64.0) {
        const double v = kernel_eval(K, t);
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
        CHECK(std::abs(v - kernel_eval(K, -t)) < 1e-12);
        if (std::abs(t) <= 0.5 * u) CHECK(std::abs(v - 1.0) < 1e-10);
        if (std::abs(t) >= 1.5 * u) CHECK(std::abs(v) < 1e-12);
      }
    }
  }
}

TEST_CASE("spot values") {
  KernelF K12(1.0, 2);
  CHECK(kernel_eval(K12, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(kernel_eval(K12, 1.5)) < 1e-12);
}

TEST_CASE("mass 2u via exact piecewise integration") {
  for (double u : {1.0, 2.0})
    for (int k : {2, 3, 5}) {
      KernelF K(u, k);
      CHECK(std::abs(kernel_mass_exact(K) - 2.0 * u) < 1e-10);
    }
}

TEST_CASE("grid convolution oracle at step 2^-12: (u=1, k=3, t=0.75)") {
  const double step = 1.0 / 4096.0;
  KernelF K(1.0, 3);
  GridSpec base = symmetric_grid(1.25, step);
  GridFunction acc = indicator_cells(1.0, 1.0, base);  // 1_{[-u,u]}
  GridSpec mspec = symmetric_grid(0.25, step);
  GridFunction m = indicator_cells(1.0 / 6.0, 3.0, mspec);  // unit-mass factor
  for (int j = 0; j < 3; ++j) acc = convolve(acc, m);
  for (double t : {0.75, 0.3, 1.1, 1.45}) {
    CHECK(std::abs(interp(acc, t).real() - kernel_eval(K, t)) < 1e-4);
  }
}

TEST_CASE("kernel_fourier closed form") {
  KernelF K12(1.0, 2);
  CHECK(kernel_fourier(K12, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(kernel_fourier(K12, 0.5)) < 1e-15);
  for (double xi : {0.1, 0.37, 1.9})
    CHECK(kernel_fourier(K12, xi) == doctest::Approx(kernel_fourier(K12, -xi)));
}

TEST_CASE("kernel_fourier vs quad_fourier of kernel_eval samples") {
  KernelF K(1.0, 3);
  GridSpec spec = symmetric_grid(6.0, 1.0 / 512.0);
  GridFunction g = sample_grid(spec, [&](double t) { return cplx(kernel_eval(K, t)); });
  GridFunction gh = quad_fourier(g);
  CHECK(!gh.edge_decay_warning);
  double dev = 0.0;
  for (std::size_t i = 0; i < gh.size(); ++i) {
    const double xi = gh.x(i);
    if (std::abs(xi) > 4.0) continue;
    dev = std::max(dev, std::abs(gh.samples[i].real() - kernel_fourier(K, xi)));
    dev = std::max(dev, std::abs(gh.samples[i].imag()));
  }
  CHECK(dev < 1e-6);
}
