#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pauli/sampling.hpp"

using namespace pauli;
using std::numbers::pi;

namespace {

NodeSet from_values(std::vector<double> v, bool symmetric = false) {
  NodeSet ns;
  ns.nodes = std::move(v);
  ns.symmetric = symmetric;
  ns.validate();
  return ns;
}

NodeSet empty_nodes() { return NodeSet{}; }

}  // namespace

TEST_CASE("build_operator small cases") {
  NodeSet zero = from_values({0.0});
  SamplingOperator op1 = build_operator(1, zero, empty_nodes(), WeightScheme::none());
  REQUIRE(op1.matrix.rows() == 1);
  REQUIRE(op1.matrix.cols() == 1);
  CHECK(std::abs(op1.matrix(0, 0) - cplx(std::pow(2.0, 0.25))) < 1e-14);

  SpectrumReport rep = singular_spectrum(op1);
  REQUIRE(rep.singular_values.size() == 1);
  CHECK(rep.sigma_min == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));

  SamplingOperator op2 = build_operator(2, zero, empty_nodes(), WeightScheme::none());
  CHECK(std::abs(op2.matrix(0, 0) - cplx(std::pow(2.0, 0.25))) < 1e-14);
  CHECK(std::abs(op2.matrix(0, 1)) < 1e-14);

  CHECK_THROWS(build_operator(0, zero, empty_nodes(), WeightScheme::none()));
  CHECK_THROWS(build_operator(4, empty_nodes(), empty_nodes(), WeightScheme::none()));
}

TEST_CASE("frequency rows are the diagonal action of space rows") {
  // nodes kept inside the truncation radius R(6) ~ 1.80
  NodeSet nodes = from_values({-1.3, 0.4, 1.7});
  SamplingOperator sp = build_operator(6, nodes, empty_nodes(), WeightScheme::none());
  SamplingOperator fr = build_operator(6, empty_nodes(), nodes, WeightScheme::none());
  static const cplx eig[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  REQUIRE(sp.matrix.rows() == fr.matrix.rows());
  for (int i = 0; i < sp.matrix.rows(); ++i)
    for (int n = 0; n < 6; ++n)
      CHECK(std::abs(fr.matrix(i, n) - eig[n % 4] * sp.matrix(i, n)) < 1e-14);
  CHECK(sp.rows_space == 3);
  CHECK(fr.rows_freq == 3);
}

TEST_CASE("rank pattern of a handmade symmetric pair") {
  // N = 3, nodes {-t, t}: rows (p0, -p1, p2), (p0, p1, p2);
  // singular values sqrt(2)*||(p0,p2)||, sqrt(2)*p1, and an implicit 0
  const double t = 0.8;
  NodeSet ns = from_values({-t, t}, true);
  SamplingOperator op = build_operator(3, ns, empty_nodes(), WeightScheme::none());
  SpectrumReport rep = singular_spectrum(op);
  const auto psi = hermite_basis_values(3, t);
  const double s1 = std::sqrt(2.0 * (psi[0] * psi[0] + psi[2] * psi[2]));
  const double s2 = std::sqrt(2.0) * std::abs(psi[1]);
  REQUIRE(rep.singular_values.size() == 3);
  CHECK(rep.singular_values[0] == doctest::Approx(std::max(s1, s2)).epsilon(1e-12));
  CHECK(rep.singular_values[1] == doctest::Approx(std::min(s1, s2)).epsilon(1e-12));
  CHECK(rep.singular_values[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.nullspace_dim_at_tol == 1);
}

TEST_CASE("truncation radius drops far nodes") {
  // R(4) = sqrt(9/(2 pi)) * 1.25 ~ 1.50: node at 5 is dropped
  NodeSet ns = from_values({0.5, 5.0});
  SamplingOperator op = build_operator(4, ns, empty_nodes(), WeightScheme::none());
  CHECK(op.rows_space == 1);
  CHECK(op.row_meta.size() == 1);
  CHECK(op.row_meta[0].node == 0.5);
  NodeSet far = from_values({5.0});
  CHECK_THROWS(build_operator(4, far, empty_nodes(), WeightScheme::none()));
}

TEST_CASE("counterexample extraction in the supercritical regime") {
  const std::size_t N = 64;
  NodeSet ns = scan_nodes(1.6, 0.5, N);
  SamplingOperator op = build_operator(N, ns, ns, WeightScheme::none());
  SpectrumReport rep = singular_spectrum(op);
  CHECK(rep.nullspace_dim_at_tol >= 1);

  Counterexample ce = extract_counterexample(op);
  CHECK(l2_norm(ce.f) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ce.max_node_residual <= std::max(ce.sigma_min, 1e-12) * (1.0 + 1e-9));
  CHECK(ce.max_node_residual <= 1e-8);

  // against g == 0: nodes agree at residual scale, global modulus deviation large
  HermiteFunction zero;
  zero.coeffs.assign(N, cplx(0.0));
  ModulusCompareReport cmp = modulus_compare(ce.f, zero, ns, 8.0, Side::space);
  CHECK(cmp.node_max_dev <= 1e-8);
  // against zero, global_max_dev is the window sup of |f|; it must dominate
  // 0.1 * sup|f|, i.e. be of order one for a unit-norm f
  CHECK(cmp.global_max_dev >= 0.1);

  // subcritical: no nullspace to extract
  NodeSet sub = scan_nodes(0.2, 0.5, 32);
  SamplingOperator sop = build_operator(32, sub, sub, WeightScheme::none());
  CHECK_THROWS(extract_counterexample(sop));
}

TEST_CASE("phase invariance of modulus reports") {
  HermiteFunction f{{cplx(0.5, 0.1), cplx(-0.3), cplx(0.0, 0.7)}};
  HermiteFunction g = f;
  const cplx phase = std::polar(1.0, 1.234);
  for (auto& c : g.coeffs) c *= phase;
  NodeSet ns = from_values({-2.0, -0.5, 0.3, 1.7});
  for (Side side : {Side::space, Side::frequency}) {
    ModulusCompareReport rep = modulus_compare(f, g, ns, 4.0, side);
    CHECK(rep.node_max_dev < 1e-13);
    CHECK(rep.global_max_dev < 1e-13);
  }
}

TEST_CASE("truncation stability in the subcritical battery") {
  for (std::size_t N : {32, 64}) {
    NodeSet a = scan_nodes(0.2, 0.5, N, 0.25);
    NodeSet b = scan_nodes(0.2, 0.5, N, 0.50);
    const double sa = singular_spectrum(
        build_operator(N, a, a, WeightScheme::none(), 0.25)).sigma_min;
    const double sb = singular_spectrum(
        build_operator(N, b, b, WeightScheme::none(), 0.50)).sigma_min;
    CHECK(std::abs(sa - sb) < 0.01 * sa);
  }
}

TEST_CASE("uniqueness_scan phenomenology at desk scale") {
  auto rows = uniqueness_scan({0.2, 1.6}, {32, 64});
  REQUIRE(rows.size() == 4);
  // subcritical: sigma_min stays of order one
  CHECK(rows[0].sigma_min > 0.1);
  CHECK(rows[1].sigma_min > 0.5 * rows[0].sigma_min);
  // supercritical: nullspace present and nondecreasing
  CHECK(rows[2].nullspace_dim >= 1);
  CHECK(rows[3].nullspace_dim >= rows[2].nullspace_dim);
  CHECK_THROWS(uniqueness_scan({}, {32}));
}

TEST_CASE("scaled log-SVD: oracle agreement at benign scales") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  Eigen::MatrixXcd A(12, 5);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 5; ++j) A(i, j) = cplx(amp(rng), amp(rng));
  const auto lg = detail::scaled_log_singular_values(A);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  REQUIRE(lg.size() == 5);
  for (int j = 0; j < 5; ++j)
    CHECK(std::exp(lg[std::size_t(j)]) ==
          doctest::Approx(svd.singularValues()(j)).epsilon(1e-10));
}

TEST_CASE("scaled log-SVD: closed-form 2x2 across 300 orders of magnitude") {
  // A = [[e^a, x e^a], [0, e^b]]: sigma_1 = e^a sqrt(1+x^2) (1 + O(e^{2b-2a})),
  // sigma_2 = det/sigma_1 = e^b / sqrt(1+x^2); far beyond BDCSVD resolution
  const double a = 180.0, b = -120.0, x = 0.7;
  Eigen::MatrixXcd A(2, 2);
  A << std::exp(a), x * std::exp(a), 0.0, std::exp(b);
  const auto lg = detail::scaled_log_singular_values(A);
  REQUIRE(lg.size() == 2);
  CHECK(lg[0] == doctest::Approx(a + 0.5 * std::log1p(x * x)).epsilon(1e-13));
  CHECK(lg[1] == doctest::Approx(b - 0.5 * std::log1p(x * x)).epsilon(1e-13));
}

TEST_CASE("scaled log-SVD: uniform row scaling shifts the logs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  Eigen::MatrixXcd A(8, 4);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = cplx(amp(rng), amp(rng));
  const auto base = detail::scaled_log_singular_values(A);
  const auto shifted = detail::scaled_log_singular_values(std::exp(50.0) * A);
  REQUIRE(base.size() == shifted.size());
  for (std::size_t j = 0; j < base.size(); ++j)
    CHECK(shifted[j] == doctest::Approx(base[j] + 50.0).epsilon(1e-12));
}

TEST_CASE("hardy weights") {
  // A = 1: weighted psi_0 samples are identically 2^{1/4}
  WeightScheme w = WeightScheme::gaussian_weight(1.0);
  for (double x : {0.0, 0.7, 2.3, 3.9})
    CHECK(w(x) * hermite_psi(0, x) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-10));

  NodeSet ns = scan_nodes(0.2, 0.5, 16);
  SamplingOperator op = build_operator(16, ns, ns, w);
  for (std::size_t i = 0; i < op.rows_space; ++i) {
    CHECK(std::abs(op.matrix(Eigen::Index(i), 0)) ==
          doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-10));
  }

  // A = 1.5 weighted sigma_min grows with N (desk-scale check)
  auto rows = hardy_scan({1.5}, 0.2, {16, 64});
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].sigma_min > 2.0 * rows[0].sigma_min);
  CHECK_THROWS(hardy_scan({-1.0}, 0.2, {16}));
}

TEST_CASE("zero density certificate") {
  // flip at c = 1/sqrt(pi) for alpha = pi: D = 2/c^2 vs bound 2 pi
  const double c_crit = 1.0 / std::sqrt(pi);
  ZeroDensityCertificate below =
      zero_density_certificate(gen_power_nodes(0.8 * c_crit, 0.5, 512, true), pi);
  CHECK(below.contradiction);
  ZeroDensityCertificate above =
      zero_density_certificate(gen_power_nodes(1.25 * c_crit, 0.5, 512, true), pi);
  CHECK(!above.contradiction);
  CHECK(below.pw_bound == doctest::Approx(2.0 * pi).epsilon(1e-12));
  CHECK(below.node_quadratic_density ==
        doctest::Approx(2.0 / (0.64 / pi)).epsilon(0.01));

  // monotone in c: density only grows as c shrinks
  double prev_density = 0.0;
  for (double c : {2.0, 1.0, 0.5, 0.25}) {
    const auto cert = zero_density_certificate(gen_power_nodes(c, 0.5, 512, true), pi);
    CHECK(cert.node_quadratic_density >= prev_density);
    prev_density = cert.node_quadratic_density;
  }

  ZeroDensityCertificate few =
      zero_density_certificate(gen_power_nodes(1.0, 0.5, 4, true), pi);
  CHECK(few.indeterminate);
  CHECK_THROWS(zero_density_certificate(gen_power_nodes(1.0, 0.5, 32, false), pi));
  CHECK_THROWS(zero_density_certificate(gen_power_nodes(1.0, 0.5, 32, true), -1.0));
}

TEST_CASE("negative pair construction") {
  // integer nodes on both sides; frequency set reaches across the reciprocal window
  NodeSet lam;
  for (int i = -16; i <= 16; ++i) lam.nodes.push_back(double(i));
  lam.symmetric = true;
  lam.validate();
  NodeSet gam;
  for (int i = -40; i <= 40; ++i) gam.nodes.push_back(double(i));
  gam.symmetric = true;
  gam.validate();

  GridSpec grid = symmetric_grid(16.0, 1.0 / 64.0);
  NegativePair pair = negative_pair_construct(lam, gam, grid);
  CHECK(!pair.degenerate);
  CHECK(pair.space_report.node_max_dev < 1e-12);   // exact by construction
  CHECK(pair.freq_report.node_max_dev < 1e-5);     // quadrature transform
  CHECK(pair.space_report.global_max_dev >= 0.05);
  CHECK(pair.freq_report.global_max_dev >= 0.05);

  // scale covariance: tripling the bump amplitude preserves node agreement
  NegativePair scaled = negative_pair_construct(lam, gam, grid, 3.0);
  CHECK(scaled.space_report.node_max_dev < 1e-12);
  CHECK(scaled.freq_report.node_max_dev < 3e-5);

  // no adequate gap: dense nodes
  NodeSet dense;
  for (int i = -256; i <= 256; ++i) dense.nodes.push_back(double(i) / 16.0);
  dense.validate();
  CHECK_THROWS(negative_pair_construct(dense, gam, grid));
}

TEST_CASE("nullspace vector decay margins stay finite for small alpha") {
  const std::size_t N = 64;
  NodeSet ns = scan_nodes(1.6, 0.5, N);
  SamplingOperator op = build_operator(N, ns, ns, WeightScheme::none());
  Counterexample ce = extract_counterexample(op);
  const double m = gaussian_decay_margin(ce.f, 0.1, 6.0);
  CHECK(m > 0.0);
  CHECK(std::isfinite(m));
}
