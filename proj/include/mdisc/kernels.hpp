#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace mdisc {

enum class KernelKind { brownian, interval, askey, sphere_dist, ball_dist, ball_lens };

struct KernelId {
  KernelKind kind;
  int d = 1;      // ambient dimension (askey, sphere_dist, ball_dist, ball_lens)
  double s = 1.0; // radius parameter (brownian, interval, ball_dist)
  double r = 1.0; // ball diameter (ball_lens)

  static KernelId brownian(double s);
  static KernelId interval(double s);
  static KernelId askey(int d);
  static KernelId sphere_dist(int d);
  static KernelId ball_dist(int d, double s);
  static KernelId ball_lens(double r);

  // Dimension of the points the kernel accepts.
  int point_dim() const;
  std::string name() const;
};

// Gamma(d/2) / (2 sqrt(pi) Gamma((d+1)/2)), the distance weight of the
// discrepancy kernel s - c_d |x - y| on the ball of radius s.
double distance_constant(int d);

double eval_kernel(const KernelId& id, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Volume of the intersection of two radius-R balls whose centers are t apart.
double lens_volume_3d(double t, double R);

// Lens kernel for d = 3: intersection volume of balls of radius r/2 at
// distance t, normalized by the ball volume.
double ball_lens_3d(double t, double r);

// Weight function G_d of the Askey representation; zero beyond r = 1.
double g_weight(int d, double r);

// Integral of the lens kernels against the weight: the density part on
// (t, 1) plus the jump at r = 1. Should reproduce (1 - t)^2_+.
double askey_pipeline_3d(double t);

// max_t |askey_pipeline_3d(t) - (1 - t)^2_+| over the grid.
double verify_askey_3d(const std::vector<double>& t_grid);

} // namespace mdisc
