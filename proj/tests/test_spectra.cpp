#include "doctest.h"

#include "mdisc/errors.hpp"
#include "mdisc/kernels.hpp"
#include "mdisc/quadrature.hpp"
#include "mdisc/specfun.hpp"
#include "mdisc/spectra.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <Eigen/QR>

#include <cmath>
#include <numbers>

using namespace mdisc;
using std::numbers::pi;
using namespace oracles;

namespace {

Eigen::Matrix4d random_projector(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix<double, 4, 2> A;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) A(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>> qr(A);
  Eigen::Matrix<double, 4, 2> Q = qr.householderQ() * Eigen::Matrix<double, 4, 2>::Identity();
  return Q * Q.transpose();
}

} // namespace

TEST_CASE("sphere coefficients: examples") {
  CHECK(sphere_coeff(3, 1, 0) == doctest::Approx(2 * std::sqrt(2.0) / 3).epsilon(1e-14));
  CHECK(sphere_coeff(3, 1, 1) == doctest::Approx(-2 * std::sqrt(2.0) / 15).epsilon(1e-14));
  CHECK(sphere_coeff(3, 2, 2) == 0.0);
  CHECK(sphere_coeff(3, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(sphere_coeff(3, -2, 0), PoleError);
  CHECK_THROWS_AS(sphere_coeff(3, -2.5, 0), PoleError);
}

TEST_CASE("sphere coefficients match the projection oracle") {
  for (double p : {1.0, 3.0, -1.0})
    for (int m = 0; m <= 20; ++m) {
      INFO("p=" << p << " m=" << m);
      CHECK(std::abs(sphere_coeff(3, p, m) - sphere_oracle(3, p, m)) <= 1e-9);
    }
  for (int d : {4, 5, 7})
    for (double p : {1.0, 0.5})
      for (int m = 0; m <= 10; ++m) {
        INFO("d=" << d << " p=" << p << " m=" << m);
        CHECK(std::abs(sphere_coeff(d, p, m) - sphere_oracle(d, p, m)) <= 1e-9);
      }
}

TEST_CASE("sphere coefficient decay") {
  // |a_m| m^{p+d-1} -> |2^d Gamma(d/2) / (4 sqrt pi) 2^{p/2} Gamma((d+p-1)/2) / Gamma(-p/2)|
  for (auto [d, p] : {std::pair{3, 1.0}, std::pair{5, 1.0}, std::pair{3, 3.0}}) {
    const double C = std::abs(std::pow(2.0, d) * std::tgamma(0.5 * d) / (4 * std::sqrt(pi)) * std::pow(2.0, 0.5 * p) *
                              std::tgamma(0.5 * (d + p - 1)) / std::tgamma(-0.5 * p));
    double prev = 1e300;
    for (int m : {50, 100, 200}) {
      double dev = std::abs(std::abs(sphere_coeff(d, p, m)) * std::pow(m, p + d - 1) / C - 1);
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev <= 0.05);
  }
  // large degrees stay finite
  CHECK(std::isfinite(sphere_coeff(3, 1, 5000)));
  CHECK(sphere_coeff(3, 1, 5000) != 0.0);
}

TEST_CASE("SO(3) coefficients") {
  CHECK(so3_coeff(1, 0) == doctest::Approx(16 / (3 * pi)).epsilon(1e-14));
  CHECK(so3_coeff(2, 2) == 0.0);
  CHECK_THROWS_AS(so3_coeff(-3, 1), PoleError);
  for (double p : {1.0, 3.0, 0.5})
    for (int m = 0; m <= 20; ++m) {
      INFO("p=" << p << " m=" << m);
      CHECK(std::abs(so3_coeff(p, m) - so3_oracle(p, m)) <= 1e-9);
    }
  const double dev = std::abs(std::pow(200.0, 4) * std::abs(so3_coeff(1, 200)) * pi - 1);
  CHECK(dev <= 0.05);
  // Monte Carlo over Haar pairs
  std::mt19937_64 rng(21);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    auto A = testutil::quat_matrix(testutil::random_quat(rng));
    auto B = testutil::quat_matrix(testutil::random_quat(rng));
    double v = (A - B).norm() / std::sqrt(2.0);
    s += v;
    s2 += v * v;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - so3_coeff(1, 0)) <= 3 * se);
}

TEST_CASE("termination for even exponents") {
  for (double p : {2.0, 4.0}) {
    const int h = static_cast<int>(p / 2);
    for (int m = h + 1; m <= h + 6; ++m) {
      CHECK(std::abs(sphere_coeff(3, p, m)) <= 1e-12);
      CHECK(std::abs(sphere_coeff(5, p, m)) <= 1e-12);
      CHECK(std::abs(so3_coeff(p, m)) <= 1e-12);
    }
    CHECK(sphere_coeff(3, p, h) != 0.0);
    CHECK(so3_coeff(p, h) != 0.0);
    for (const auto& lam : g24_partitions(h + 4))
      if (lam.size() > h) CHECK(std::abs(g24_coeff(p, lam)) <= 1e-12);
    CHECK(g24_coeff(p, {h, 0}) != 0.0);
  }
}

TEST_CASE("G(2,4) coefficients match the double integral") {
  for (const auto& lam : g24_partitions(4)) {
    INFO(lam.l1 << "," << lam.l2);
    CHECK(std::abs(g24_coeff(1, lam) - g24_oracle(1, lam.l1, lam.l2)) <= 1e-6);
  }
  CHECK(std::abs(g24_coeff(3, {2, 1}) - g24_oracle(3, 2, 1)) <= 1e-8);
  // high-precision series values
  CHECK(g24_coeff(1, {0, 0}) == doctest::Approx(0.98376601129041025962).epsilon(1e-13));
  CHECK(g24_coeff(1, {5, 3}) == doctest::Approx(-0.000018684803152137097523).epsilon(1e-11));
  CHECK(g24_coeff(1, {20, 0}) == doctest::Approx(-5.2177859529296760314e-8).epsilon(1e-11));
  CHECK(g24_coeff(1, {40, 0}) == doctest::Approx(-1.7240710932213484255e-9).epsilon(1e-11));
  CHECK(g24_coeff(1, {20, 20}) == doctest::Approx(-9.6902504737290076812e-9).epsilon(1e-11));
  CHECK(g24_coeff(1, {40, 40}) == doctest::Approx(-3.1339748036719937663e-10).epsilon(1e-11));
  CHECK_THROWS_AS(g24_coeff(-4, {1, 0}), DivergenceError);
  CHECK_THROWS_AS(Partition2(1, 2), DomainError);
}

TEST_CASE("G(2,4) coefficient decay along two rays") {
  for (int ray = 0; ray < 2; ++ray) {
    auto scaled = [&](int n) {
      Partition2 lam(n, ray ? n : 0);
      return std::pow(std::hypot(lam.l1, lam.l2), 5) * std::abs(g24_coeff(1, lam));
    };
    const double r = scaled(40) / scaled(20);
    CHECK(std::abs(r - 1) <= 0.10);
    CHECK(scaled(40) < 3.0 / 16.0);
  }
}

TEST_CASE("discrepancy kernel tables") {
  auto s3 = kernel_table(Manifold::sphere_of(3), 30);
  CHECK(s3.at(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  for (int m = 1; m <= 30; ++m) CHECK(s3.at(m) > 0);
  auto s5 = kernel_table(Manifold::sphere_of(5), 30);
  for (int m = 0; m <= 30; ++m) CHECK(s5.at(m) > 0);
  auto so = kernel_table(Manifold::so3_group(), 40);
  for (int m = 0; m <= 40; ++m) CHECK(so.at(m) > 0);
  auto g = kernel_table(Manifold::g24_space(), 12);
  CHECK(g.entries.size() == g24_partitions(12).size());
  for (const auto& e : g.entries) CHECK(e.value > 0);
  for (const auto& e : g.entries) CHECK(g.at(Partition2(e.index[0], e.index[1])) == e.value);
  CHECK_THROWS_AS(g.at(Partition2(13, 0)), IndexError);
  CHECK_THROWS_AS(s3.at(31), IndexError);

  // mean of the G(2,4) kernel over independent uniform planes
  std::mt19937_64 rng(22);
  const int n = 200000;
  const double c = distance_constant(16);
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    double v = std::sqrt(2.0) - c * (random_projector(rng) - random_projector(rng)).norm();
    s += v;
    s2 += v * v;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - g.at(Partition2(0, 0))) <= 3 * se);
}

TEST_CASE("interval eigen-systems") {
  CHECK(std::abs(cot_root(1) - 0.8603335890193797) <= 1e-12);
  for (int k = 1; k <= 50; ++k) {
    double u = cot_root(k);
    CHECK(std::abs(u * std::sin(u) - std::cos(u)) <= 1e-11 * std::max(1.0, u));
  }
  auto e1 = interval_eigs(1.0, 4);
  CHECK(e1[0].branch == IntervalEigen::cosine);
  CHECK(e1[1].branch == IntervalEigen::sine);
  CHECK(e1[1].lambda == doctest::Approx(4 / (pi * pi)).epsilon(1e-14));
  CHECK(brownian_eigs(1.0, 1)[0].lambda == doctest::Approx(4 / (pi * pi)).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(e1[i].lambda < e1[i - 1].lambda);

  // integral-equation residual for both kernels and two lengths
  for (double s : {0.7, 2.0}) {
    auto K = KernelId::interval(s);
    for (const auto& e : interval_eigs(s, 6))
      for (double x : {-0.9 * s, -0.2 * s, 0.5 * s, s}) {
        Eigen::VectorXd xv(1), yv(1);
        xv[0] = x;
        double Tf = integrate_adaptive(
            [&](double y) {
              yv[0] = y;
              return eval_kernel(K, xv, yv) * e(y);
            },
            -s, s, {1e-13, 1e-13, 40});
        CHECK(std::abs(Tf - e.lambda * e(x)) <= 1e-10 * s);
      }
    auto B = KernelId::brownian(s);
    for (const auto& e : brownian_eigs(s, 4))
      for (double x : {0.1 * s, 0.6 * s, s}) {
        Eigen::VectorXd xv(1), yv(1);
        xv[0] = x;
        double Tf = integrate_adaptive(
            [&](double y) {
              yv[0] = y;
              return eval_kernel(B, xv, yv) * e(y);
            },
            0, s, {1e-13, 1e-13, 40});
        CHECK(std::abs(Tf - e.lambda * e(x)) <= 1e-10 * s);
      }
    // orthonormality
    auto eig = interval_eigs(s, 6);
    const auto q = gauss_legendre(200, -s, s);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        double g = 0;
        for (std::size_t k = 0; k < q.nodes.size(); ++k) g += q.weights[k] * eig[i](q.nodes[k]) * eig[j](q.nodes[k]);
        CHECK(std::abs(g - (i == j)) <= 1e-12);
      }
  }

  // Mercer partial sums at s = 2
  const double s = 2.0;
  auto K = KernelId::interval(s);
  std::mt19937_64 rng(23);
  double prev = 1e300;
  for (int n : {500, 1000, 2000, 4000}) {
    auto eig = interval_eigs(s, n);
    std::mt19937_64 r2 = rng;
    double err = 0;
    for (int i = 0; i < 20; ++i) {
      Eigen::VectorXd x(1), y(1);
      x[0] = testutil::uniform(r2, -s, s);
      y[0] = testutil::uniform(r2, -s, s);
      double sum = 0;
      for (const auto& e : eig) sum += e.lambda * e(x[0]) * e(y[0]);
      err = std::max(err, std::abs(sum - eval_kernel(K, x, y)));
    }
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("ball-intersection kernel on the sphere") {
  for (double r : {1.0, 1.5}) {
    auto a = k3r_sphere_decay(r, 80);
    auto Kt = [&](double t) {
      double u = std::sqrt(std::max(0.0, 2 - 2 * t));
      return pi * (2 * r - u) * (2 * r - u) * (u + 4 * r) / 12;
    };
    for (int m = 0; m <= 10; ++m) {
      boost::math::quadrature::tanh_sinh<double> ts;
      double o = 0.5 * ts.integrate([&](double t) { return Kt(t) * legendre(m, t); }, -1.0, 1.0);
      CHECK(std::abs(a[m] - o) <= 1e-9);
    }
    CHECK(std::abs(a[0] - lens_volume_3d(0, r) + pi * r * r * std::sqrt(2.0) * sphere_coeff(3, 1, 0) -
                   pi / 12 * std::pow(2.0, 1.5) * sphere_coeff(3, 3, 0)) <= 1e-12);
    const double ratio = std::pow(80.0, 3) * a[80] / (std::pow(40.0, 3) * a[40]);
    CHECK(std::abs(ratio - 1) <= 0.10);
    for (int m = 1; m <= 80; ++m) CHECK(a[m] > 0);
  }
  CHECK_THROWS_AS(k3r_sphere_decay(0.5, 3), DomainError);
}
