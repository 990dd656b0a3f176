#include "mdisc/kernels.hpp"

#include "mdisc/errors.hpp"
#include "mdisc/quadrature.hpp"
#include "mdisc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mdisc {

KernelId KernelId::brownian(double s) {
  if (!(s > 0)) throw DomainError("brownian kernel: s must be positive");
  return {KernelKind::brownian, 1, s, 1.0};
}
KernelId KernelId::interval(double s) {
  if (!(s > 0)) throw DomainError("interval kernel: s must be positive");
  return {KernelKind::interval, 1, s, 1.0};
}
KernelId KernelId::askey(int d) {
  if (d < 1 || d % 2 == 0) throw DomainError("askey kernel: d must be odd and positive");
  return {KernelKind::askey, d, 1.0, 1.0};
}
KernelId KernelId::sphere_dist(int d) {
  if (d < 2) throw DomainError("sphere distance kernel: d must be at least 2");
  return {KernelKind::sphere_dist, d, 1.0, 1.0};
}
KernelId KernelId::ball_dist(int d, double s) {
  if (d < 1 || !(s > 0)) throw DomainError("ball distance kernel: need d >= 1 and s > 0");
  return {KernelKind::ball_dist, d, s, 1.0};
}
KernelId KernelId::ball_lens(double r) {
  if (!(r > 0)) throw DomainError("lens kernel: r must be positive");
  return {KernelKind::ball_lens, 3, 1.0, r};
}

int KernelId::point_dim() const {
  switch (kind) {
  case KernelKind::brownian:
  case KernelKind::interval: return 1;
  default: return d;
  }
}

std::string KernelId::name() const {
  switch (kind) {
  case KernelKind::brownian: return "brownian";
  case KernelKind::interval: return "interval";
  case KernelKind::askey: return "askey";
  case KernelKind::sphere_dist: return "sphere_dist";
  case KernelKind::ball_dist: return "ball_dist";
  case KernelKind::ball_lens: return "ball_lens";
  }
  return "unknown";
}

double distance_constant(int d) {
  return std::exp(std::lgamma(0.5 * d) - std::lgamma(0.5 * (d + 1))) / (2.0 * std::sqrt(std::numbers::pi));
}

double lens_volume_3d(double t, double R) {
  if (t >= 2.0 * R) return 0.0;
  const double a = 2.0 * R - t;
  return std::numbers::pi * a * a * (t + 4.0 * R) / 12.0;
}

double ball_lens_3d(double t, double r) {
  const double R = 0.5 * r;
  return lens_volume_3d(t, R) / (4.0 * std::numbers::pi / 3.0 * R * R * R);
}

double eval_kernel(const KernelId& id, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != id.point_dim() || y.size() != id.point_dim())
    throw DomainError("eval_kernel: point dimension does not match the kernel");
  switch (id.kind) {
  case KernelKind::brownian: return std::max(std::min(x[0], y[0]), 0.0);
  case KernelKind::interval: {
    const double s = id.s, ax = std::abs(x[0]), ay = std::abs(y[0]);
    if (ax <= s && ay <= s) return s - 0.5 * std::abs(x[0] - y[0]);
    if (ax <= s) return 0.5 * s + x[0] * y[0] / (2.0 * ay);
    if (ay <= s) return 0.5 * s + x[0] * y[0] / (2.0 * ax);
    return x[0] * y[0] > 0 ? s : 0.0;
  }
  case KernelKind::askey: {
    const double t = (x - y).norm();
    return t >= 1.0 ? 0.0 : std::pow(1.0 - t, 0.5 * (id.d + 1));
  }
  case KernelKind::sphere_dist: {
    if (std::abs(x.norm() - 1.0) > 1e-10 || std::abs(y.norm() - 1.0) > 1e-10)
      throw DomainError("sphere distance kernel: points must have unit length");
    return 1.0 - distance_constant(id.d) * (x - y).norm();
  }
  case KernelKind::ball_dist: {
    if (x.norm() > id.s * (1.0 + 1e-12) || y.norm() > id.s * (1.0 + 1e-12))
      throw DomainError("ball distance kernel: point outside the ball of radius s");
    return id.s - distance_constant(id.d) * (x - y).norm();
  }
  case KernelKind::ball_lens: return ball_lens_3d((x - y).norm(), id.r);
  }
  return 0.0;
}

double g_weight(int d, double r) {
  if (d < 1 || d % 2 == 0) throw DomainError("g_weight: d must be odd and positive");
  if (r > 1.0) return 0.0;
  return pfq({-(d + 1) / 4.0, -(d - 1) / 4.0}, {-d / 2.0}, r * r);
}

namespace {

// derivative of G_d on [0, 1] from the terminating series
double g_weight_derivative(int d, double r) {
  const double a = -(d + 1) / 4.0, b = -(d - 1) / 4.0, c = -d / 2.0;
  double coef = 1.0, sum = 0.0;
  for (int k = 0;; ++k) {
    if (k > 0) {
      coef *= (a + k - 1) * (b + k - 1) / ((c + k - 1) * k);
      if (coef == 0.0) break;
      sum += coef * 2.0 * k * std::pow(r, 2 * k - 1);
    }
    if (k > d) break;
  }
  return sum;
}

} // namespace

double askey_pipeline_3d(double t) {
  if (t >= 1.0) return 0.0;
  // -dG_3 is a positive measure: density -G_3'(r) on (t, 1) and an atom of
  // mass G_3(1) at r = 1.
  AdaptiveOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-12;
  double density = integrate_adaptive(
      [t](double r) { return -ball_lens_3d(t, r) * g_weight_derivative(3, r); }, t, 1.0, opts);
  return density + ball_lens_3d(t, 1.0) * g_weight(3, 1.0);
}

double verify_askey_3d(const std::vector<double>& t_grid) {
  double worst = 0.0;
  for (double t : t_grid) {
    double target = t >= 1.0 ? 0.0 : (1.0 - t) * (1.0 - t);
    worst = std::max(worst, std::abs(askey_pipeline_3d(std::max(t, 0.0)) - target));
  }
  return worst;
}

} // namespace mdisc
