#include "doctest.h"

#include "mdisc/errors.hpp"
#include "mdisc/kernels.hpp"
#include "mdisc/quadrature.hpp"
#include "test_util.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace mdisc;
using std::numbers::pi;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

// random point in the natural domain of the kernel
Eigen::VectorXd sample(const KernelId& id, std::mt19937_64& rng) {
  const int n = id.point_dim();
  Eigen::VectorXd x(n);
  std::normal_distribution<double> g;
  for (int i = 0; i < n; ++i) x[i] = g(rng);
  switch (id.kind) {
  case KernelKind::brownian: x[0] = testutil::uniform(rng, 0, id.s); break;
  case KernelKind::interval: x[0] = testutil::uniform(rng, -3 * id.s, 3 * id.s); break;
  case KernelKind::sphere_dist: x /= x.norm(); break;
  case KernelKind::ball_dist: x *= id.s * std::pow(testutil::uniform(rng, 0, 1), 1.0 / n) / x.norm(); break;
  default: x *= 0.5; break;
  }
  return x;
}

std::vector<KernelId> all_kernels() {
  return {KernelId::brownian(1.5), KernelId::interval(1.0), KernelId::askey(3), KernelId::askey(5),
          KernelId::sphere_dist(3), KernelId::sphere_dist(5), KernelId::ball_dist(3, 1.0),
          KernelId::ball_dist(4, 2.0), KernelId::ball_lens(1.3)};
}

} // namespace

TEST_CASE("kernel examples") {
  CHECK(eval_kernel(KernelId::askey(3), vec({0, 0, 0}), vec({0.5, 0, 0})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(eval_kernel(KernelId::sphere_dist(3), vec({0, 0, 1}), vec({0, 0, 1})) == 1.0);
  CHECK(eval_kernel(KernelId::interval(1.0), vec({0.5}), vec({-2})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(eval_kernel(KernelId::interval(1.0), vec({1.5}), vec({2.0})) == 1.0);
  CHECK(eval_kernel(KernelId::interval(1.0), vec({-1.5}), vec({2.0})) == 0.0);
  CHECK(eval_kernel(KernelId::brownian(1.0), vec({-0.5}), vec({0.7})) == 0.0);
  CHECK(eval_kernel(KernelId::brownian(1.0), vec({0.3}), vec({0.7})) == 0.3);
  CHECK(distance_constant(3) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(distance_constant(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(distance_constant(9) == doctest::Approx(35.0 / 256.0).epsilon(1e-14));
  CHECK_THROWS_AS(eval_kernel(KernelId::ball_dist(3, 1.0), vec({1.2, 0, 0}), vec({0, 0, 0})), DomainError);
  CHECK_THROWS_AS(eval_kernel(KernelId::sphere_dist(3), vec({1.2, 0, 0}), vec({0, 0, 1})), DomainError);
  CHECK_THROWS_AS(KernelId::askey(4), DomainError);
}

TEST_CASE("lens volume") {
  CHECK(lens_volume_3d(0, 1) == doctest::Approx(4 * pi / 3).epsilon(1e-15));
  CHECK(lens_volume_3d(2, 1) == 0.0);
  CHECK(lens_volume_3d(3, 1) == 0.0);
  // oracle: integrate disk cross sections perpendicular to the center line
  for (double t : {0.3, 1.0, 1.7}) {
    const double R = 1.0;
    double v = integrate_adaptive(
        [&](double x) {
          double r2 = std::min(R * R - x * x, R * R - (x - t) * (x - t));
          return r2 > 0 ? pi * r2 : 0.0;
        },
        t - R, R, {1e-12, 1e-12, 40});
    CHECK(lens_volume_3d(t, R) == doctest::Approx(v).epsilon(1e-10));
  }
  // Monte Carlo at t = 1: pi * 5 / 12
  std::mt19937_64 rng(11);
  const int n = 2000000;
  int hit = 0;
  for (int i = 0; i < n; ++i) {
    double x = testutil::uniform(rng, 0, 1), y = testutil::uniform(rng, -1, 1), z = testutil::uniform(rng, -1, 1);
    if (x * x + y * y + z * z <= 1 && (x - 1) * (x - 1) + y * y + z * z <= 1) ++hit;
  }
  CHECK(std::abs(4.0 * hit / n - lens_volume_3d(1, 1)) < 1e-2);
  CHECK(lens_volume_3d(1, 1) == doctest::Approx(pi * 5 / 12).epsilon(1e-15));
  // normalized lens kernel equals Euclid's hat 1 - 3u/2 + u^3/2 at u = t/r
  for (double t : {0.0, 0.2, 0.6, 0.99})
    CHECK(ball_lens_3d(t, 1.0) == doctest::Approx(1 - 1.5 * t + 0.5 * t * t * t).epsilon(1e-14));
}

TEST_CASE("G_d weight") {
  CHECK(g_weight(3, 0) == 1.0);
  CHECK(g_weight(3, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(g_weight(5, 0.5) == doctest::Approx(1 - 0.6 * 0.25).epsilon(1e-15));
  CHECK(g_weight(7, 0.8) == doctest::Approx(1 - 6.0 / 7 * 0.64 + 3.0 / 35 * 0.64 * 0.64).epsilon(1e-15));
  CHECK(g_weight(3, 1.2) == 0.0);
}

TEST_CASE("Askey identity through the lens-kernel integral") {
  CHECK(std::abs(askey_pipeline_3d(0.0) - 1.0) < 1e-8);
  CHECK(askey_pipeline_3d(1.0) == 0.0);
  CHECK(askey_pipeline_3d(1.1) == 0.0);
  CHECK(std::abs(askey_pipeline_3d(0.5) - 0.25) < 1e-6);
  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) grid.push_back(1.2 * i / 24.0);
  CHECK(verify_askey_3d(grid) <= 1e-6);
}

TEST_CASE("kernel symmetry") {
  std::mt19937_64 rng(12);
  for (const auto& id : all_kernels())
    for (int i = 0; i < 1000; ++i) {
      auto x = sample(id, rng), y = sample(id, rng);
      CHECK(std::abs(eval_kernel(id, x, y) - eval_kernel(id, y, x)) <= 1e-14);
    }
}

TEST_CASE("kernel Gram matrices are positive semidefinite") {
  std::mt19937_64 rng(13);
  for (const auto& id : all_kernels()) {
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(sample(id, rng));
    Eigen::MatrixXd G(40, 40);
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j) G(i, j) = eval_kernel(id, pts[i], pts[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    INFO(id.name());
    CHECK(es.eigenvalues().minCoeff() >= -1e-8 * es.eigenvalues().maxCoeff());
  }
}

TEST_CASE("ball distance kernel on the unit sphere and its discrepancy identity") {
  std::mt19937_64 rng(14);
  for (int d : {3, 5}) {
    auto ball = KernelId::ball_dist(d, 1.0), sph = KernelId::sphere_dist(d);
    for (int i = 0; i < 100; ++i) {
      auto x = sample(sph, rng), y = sample(sph, rng);
      CHECK(std::abs(eval_kernel(ball, x, y) - eval_kernel(sph, x, y)) <= 1e-14);
    }
  }
  for (int d : {2, 3, 6}) {
    auto ball = KernelId::ball_dist(d, 1.7);
    for (int i = 0; i < 100; ++i) {
      auto x = sample(ball, rng), y = sample(ball, rng);
      double lhs = eval_kernel(ball, x, x) + eval_kernel(ball, y, y) - 2 * eval_kernel(ball, x, y);
      CHECK(std::abs(lhs - 2 * distance_constant(d) * (x - y).norm()) <= 1e-12);
    }
  }
}
