#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pauli/grid.hpp"
#include "pauli/hermite.hpp"

using namespace pauli;
using std::numbers::pi;

namespace {

// Independent oracle: orthonormalize {x^k e^{-pi x^2}} by modified
// Gram-Schmidt under a quadrature inner product (long double), then evaluate.
// Deliberately avoids the three-term recurrence under test.
struct GramSchmidtOracle {
  std::vector<long double> xs;
  long double h;
  std::vector<std::vector<long double>> vals;    // grid values, for inner products
  std::vector<std::vector<long double>> coeffs;  // q_k = (sum a_j x^j) e^{-pi x^2}

  explicit GramSchmidtOracle(int max_degree, long double radius = 12.0L,
                             long double step = 1.0L / 512.0L) {
    h = step;
    const long long half = (long long)(radius / step);
    for (long long i = -half; i <= half; ++i) xs.push_back((long double)i * step);
    const std::size_t n = xs.size();
    auto dot = [&](const std::vector<long double>& a, const std::vector<long double>& b) {
      long double s = 0.0L;
      for (std::size_t i = 0; i < n; ++i) {
        const long double w = (i == 0 || i + 1 == n) ? 0.5L : 1.0L;
        s += w * a[i] * b[i];
      }
      return s * h;
    };
    for (int k = 0; k <= max_degree; ++k) {
      std::vector<long double> v(n);
      for (std::size_t i = 0; i < n; ++i)
        v[i] = powl(xs[i], (long double)k) * expl(-(long double)pi * xs[i] * xs[i]);
      std::vector<long double> a(std::size_t(k) + 1, 0.0L);
      a[std::size_t(k)] = 1.0L;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t m = 0; m < vals.size(); ++m) {
          const long double c = dot(v, vals[m]);
          for (std::size_t i = 0; i < n; ++i) v[i] -= c * vals[m][i];
          for (std::size_t j = 0; j < coeffs[m].size(); ++j) a[j] -= c * coeffs[m][j];
        }
      }
      const long double nrm = sqrtl(dot(v, v));
      for (auto& t : v) t /= nrm;
      for (auto& t : a) t /= nrm;
      // sign convention: leading monomial coefficient positive, as for psi_k
      if (a.back() < 0.0L) {
        for (auto& t : v) t = -t;
        for (auto& t : a) t = -t;
      }
      vals.push_back(std::move(v));
      coeffs.push_back(std::move(a));
    }
  }

  double eval(int k, double x) const {
    const auto& a = coeffs[std::size_t(k)];
    long double p = 0.0L;
    for (std::size_t j = a.size(); j-- > 0;) p = p * (long double)x + a[j];
    return double(p * expl(-(long double)pi * (long double)x * (long double)x));
  }
};

}  // namespace

TEST_CASE("psi_0 normalization and parity") {
  HermiteFunction h0{{cplx(1.0)}};
  CHECK(eval(h0, 0.0).real() == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
  HermiteFunction h1{{cplx(0.0), cplx(1.0)}};
  CHECK(std::abs(eval(h1, 0.0)) < 1e-15);
  CHECK(std::abs(eval(h1, 1.0) + eval(h1, -1.0)) < 1e-15);
}

TEST_CASE("eval matches Gram-Schmidt oracle") {
  GramSchmidtOracle oracle(32);
  // spec'd spot value: degree-5 basis function at x = 1.3
  HermiteFunction h5{{0, 0, 0, 0, 0, cplx(1.0)}};
  const double direct = eval(h5, 1.3).real();
  CHECK(direct == doctest::Approx(oracle.eval(5, 1.3)).epsilon(1e-8));

  for (int n : {0, 1, 2, 8, 17, 32}) {
    HermiteFunction hn;
    hn.coeffs.assign(n + 1, cplx(0.0));
    hn.coeffs[n] = 1.0;
    double sup = 0.0, dev = 0.0;
    for (double x = -6.0; x <= 6.0; x += 1.0 / 64.0) {
      const double v = eval(hn, x).real();
      sup = std::max(sup, std::abs(v));
      dev = std::max(dev, std::abs(v - oracle.eval(n, x)));
    }
    CHECK(dev / sup < 1e-9);
  }
}

TEST_CASE("orthonormality under quadrature") {
  const int N = 64;
  GridSpec spec = symmetric_grid(10.0, 1.0 / 128.0);
  std::vector<std::vector<double>> vals(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i)
    vals[i] = hermite_basis_values(N, spec.x_min + double(i) * spec.step);
  for (int m = 0; m < N; ++m) {
    for (int n = m; n < N; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < spec.count; ++i) {
        const double w = (i == 0 || i + 1 == spec.count) ? 0.5 : 1.0;
        s += w * vals[i][m] * vals[i][n];
      }
      s *= spec.step;
      CHECK(std::abs(s - (m == n ? 1.0 : 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("fourier is the diagonal (-i)^n action") {
  HermiteFunction h{{cplx(1.0)}};
  CHECK(fourier(h).coeffs[0] == cplx(1.0));

  HermiteFunction h2{{0, 0, cplx(1.0)}};
  CHECK(fourier(h2).coeffs[2] == cplx(-1.0));

  HermiteFunction mix{{cplx(0.3, 0.1), cplx(-0.2), cplx(0.0, 0.5), cplx(0.7)}};
  HermiteFunction four = fourier(fourier(fourier(fourier(mix))));
  for (std::size_t n = 0; n < mix.coeffs.size(); ++n)
    CHECK(std::abs(four.coeffs[n] - mix.coeffs[n]) < 1e-15);

  // Parseval is exact
  CHECK(l2_norm(fourier(mix)) == doctest::Approx(l2_norm(mix)).epsilon(1e-15));
}

TEST_CASE("quadrature transform reproduces the eigenrelation") {
  // sampled check for a few degrees; the acceptance suite covers n < 64
  GridSpec spec = symmetric_grid(8.0, 1.0 / 64.0);
  static const cplx eig[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  for (int n : {0, 1, 3, 10, 31}) {
    HermiteFunction hn;
    hn.coeffs.assign(n + 1, cplx(0.0));
    hn.coeffs[n] = 1.0;
    GridFunction g = sample_grid(spec, [&](double x) { return eval(hn, x); });
    GridFunction gh = quad_fourier(g);
    double dev = 0.0;
    for (std::size_t i = 0; i < gh.size(); ++i) {
      const double xi = gh.x(i);
      if (std::abs(xi) > 8.0) continue;
      dev = std::max(dev, std::abs(gh.samples[i] - eig[n % 4] * eval(hn, xi)));
    }
    CHECK(dev < 1e-6);
  }
}

TEST_CASE("norms: l2 and h1") {
  HermiteFunction unit{{cplx(1.0)}};
  auto n0 = norms(unit);
  CHECK(n0.l2 == doctest::Approx(1.0).epsilon(1e-15));
  // h1^2 = 1 + int |psi_0'|^2 = 1 + pi
  CHECK(n0.h1 * n0.h1 == doctest::Approx(1.0 + pi).epsilon(1e-12));

  HermiteFunction fiveth{{cplx(0.6), cplx(0.8)}};
  CHECK(norms(fiveth).l2 == doctest::Approx(1.0).epsilon(1e-15));

  // oracle: int |psi_0'|^2 by quadrature of |2 pi x 2^{1/4} e^{-pi x^2}|^2
  GridSpec spec = symmetric_grid(8.0, 1.0 / 256.0);
  GridFunction d = sample_grid(spec, [&](double x) {
    return cplx(-2.0 * pi * x * std::pow(2.0, 0.25) * std::exp(-pi * x * x), 0.0);
  });
  CHECK(l2_norm(d) * l2_norm(d) == doctest::Approx(pi).epsilon(1e-10));
}

TEST_CASE("derivative and multiply_by_x ladders agree with quadrature") {
  HermiteFunction mix{{cplx(0.5), cplx(-0.3, 0.2), cplx(0.1), cplx(0.0, 0.4)}};
  const HermiteFunction dh = derivative(mix);
  const HermiteFunction xh = multiply_by_x(mix);
  for (double x : {-2.3, -0.7, 0.0, 0.4, 1.9}) {
    const double eps = 1e-5;
    const cplx fd = (eval(mix, x + eps) - eval(mix, x - eps)) / (2.0 * eps);
    CHECK(std::abs(eval(dh, x) - fd) < 1e-8);
    CHECK(std::abs(eval(xh, x) - x * eval(mix, x)) < 1e-12);
  }
}

TEST_CASE("sample_on_nodes") {
  NodeSet ns;
  ns.nodes = {0.0};
  HermiteFunction h{{cplx(1.0)}};
  auto vals = sample_on_nodes(h, ns, Side::space);
  CHECK(vals[0].real() == doctest::Approx(std::pow(2.0, 0.25)));

  NodeSet sym;
  sym.nodes = {-1.0, 0.0, 1.0};
  HermiteFunction h1{{cplx(0.0), cplx(1.0)}};
  auto v = sample_on_nodes(h1, sym, Side::space);
  CHECK(std::abs(v[1]) < 1e-15);
  CHECK(std::abs(v[0] + v[2]) < 1e-15);

  // frequency sampling is sampling of the exact transform
  HermiteFunction mix{{cplx(0.3), cplx(0.4, -0.1), cplx(-0.2)}};
  auto a = sample_on_nodes(mix, sym, Side::frequency);
  auto b = sample_on_nodes(fourier(mix), sym, Side::space);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-15);
}

TEST_CASE("gaussian decay margins") {
  HermiteFunction h0{{cplx(1.0)}};
  // |psi_0| e^{pi x^2} is identically 2^{1/4}
  CHECK(gaussian_decay_margin(h0, pi, 6.0) ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
  // alpha above the decay rate: margin attained at the window edge
  const double m4 = gaussian_decay_margin(h0, 2.0 * pi, 4.0);
  const double m6 = gaussian_decay_margin(h0, 2.0 * pi, 6.0);
  CHECK(m6 > m4 * 1e10);
  CHECK(m6 == doctest::Approx(std::pow(2.0, 0.25) * std::exp(pi * 36.0)).epsilon(1e-9));

  // psi_1 margin: closed form c x e^{-pi x^2} with c = 2^{1/4} 2 sqrt(pi)
  HermiteFunction h1{{cplx(0.0), cplx(1.0)}};
  const double c = std::pow(2.0, 0.25) * 2.0 * std::sqrt(pi);
  CHECK(gaussian_decay_margin(h1, pi, 6.0) == doctest::Approx(c * 6.0).epsilon(1e-12));

  CHECK_THROWS(gaussian_decay_margin(h0, -1.0, 6.0));
}
