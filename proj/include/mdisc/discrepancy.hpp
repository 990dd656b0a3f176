#pragma once

#include "mdisc/grassmann.hpp"
#include "mdisc/nufft.hpp"
#include "mdisc/spectra.hpp"

#include <Eigen/Core>

#include <random>
#include <vector>

namespace mdisc {

// n points stored as columns: unit vectors (S^2, 3 rows), unit quaternions
// (SO(3), 4 rows) or sphere pairs x then y (G(2,4) via the double cover, 6 rows).
struct PointSet {
  Manifold manifold;
  Eigen::MatrixXd coords;

  int size() const { return int(coords.cols()); }
  Eigen::Vector3d sphere_point(int j) const { return coords.col(j).head<3>(); }
  Eigen::Vector4d quat(int j) const { return coords.col(j).head<4>(); }
  SpherePair pair(int j) const { return {coords.col(j).head<3>(), coords.col(j).tail<3>()}; }

  // Sign representative: w >= 0 for quaternions (ties: first nonzero
  // component positive), SpherePair::canonical for pairs.
  void canonicalize();
  // Throws DomainError unless every point satisfies its unit constraints.
  void validate(double tol = 1e-10) const;

  static PointSet on_sphere(const std::vector<Eigen::Vector3d>& pts);
  static PointSet on_so3(const std::vector<Eigen::Vector4d>& quats);
  static PointSet on_g24(const std::vector<SpherePair>& pairs);
};

// Rows per point; only S^2 among the spheres.
int point_dim(const Manifold& mf);
// Number of basis coefficients retained at truncation M.
int basis_size(const Manifold& mf, int M);

// Unit quaternion of R_z(alpha) R_y(beta) R_z(gamma).
Eigen::Vector4d quat_from_euler(double alpha, double beta, double gamma);

struct TargetMeasure {
  Manifold manifold;
  int M = 0;
  std::vector<cplx> mu_hat; // sh_index / wd_index / pair_index layout
};

TargetMeasure target_empty(const Manifold& mf, int M);
TargetMeasure target_uniform(const Manifold& mf, int M);
// mu_hat = sum_j w_j conj(phi(x_j)); weights must be nonnegative and sum to 1.
TargetMeasure target_discrete(const PointSet& pts, const std::vector<double>& weights, int M);
// Adds weight * (uniform measure on a circle) to an S^2 target. The circle is
// the set of points at the given polar angle from the axis.
void add_circle_s2(TargetMeasure& t, const Eigen::Vector3d& axis, double polar, double weight);
TargetMeasure target_circle_s2(const Eigen::Vector3d& axis, double polar, double weight, int M);
// Adds weight * (discrete measure with the given weights); weights sum to 1.
void add_discrete(TargetMeasure& t, const PointSet& pts, const std::vector<double>& weights, double weight);
// Throws DomainError unless the degree-zero coefficient equals 1.
void check_probability(const TargetMeasure& t, double tol = 1e-10);

// a_m (or a_lambda) for each basis index; zero for indices not on G(2,4).
std::vector<double> coefficient_weights(const SpectralTable& table, int M);

// nu_hat = (1/n) sum_j conj(phi(x_j)) via the adjoint transform.
std::vector<cplx> empirical_coeffs(const PointSet& ps, int M, int threads = 1);

double objective(const SpectralTable& table, const TargetMeasure& target, const PointSet& ps);
// Riemannian gradient, one tangent vector per point (same layout as coords).
Eigen::MatrixXd gradient(const SpectralTable& table, const TargetMeasure& target, const PointSet& ps);

// Closed-form L2 discrepancy to the uniform measure for the distance kernels
// s - c |x - y| of kernel_table: (1/n^2) sum K(x_i, x_j) - a_0.
double kernel_discrepancy_uniform(const PointSet& ps);

struct MinimizeOptions {
  int max_iters = 2000;
  double tol = 1e-9;
  unsigned long long seed = 1;
  int restarts = 3;
  int memory = 5; // L-BFGS pairs; 0 gives plain gradient descent
};

struct TraceRow {
  int iter;
  double objective;
  double grad_norm;
};

struct MinimizeResult {
  PointSet points;
  std::vector<TraceRow> trace; // of the best restart
  double objective = 0.0;
  bool converged = false;
  int best_restart = 0;
};

// Farthest-point selection from a random pool.
PointSet initial_points(const Manifold& mf, int n, std::mt19937_64& rng);

MinimizeResult minimize_from(const SpectralTable& table, const TargetMeasure& target, PointSet init,
                             const MinimizeOptions& opts);
MinimizeResult minimize(const SpectralTable& table, const TargetMeasure& target, int n, const MinimizeOptions& opts);

// Two circles at polar angle pi/4 around +e3 and -e3 with weights 0.9 / 0.1.
TargetMeasure two_circle_target(int M);
// Number of points with positive third coordinate.
int count_upper(const PointSet& ps);

// Torus {R_z(a) R_y(pi/2) R_z(g)} with weight 0.9 and the circle {R_z(t)}
// with weight 0.1.
TargetMeasure torus_circle_target(int M);
// Number of rotations whose image of e3 lies closer to the equator than to
// the poles, i.e. points near the torus.
int count_near_torus(const PointSet& ps);

struct StudyRow {
  int n;
  int M;
  double discrepancy;
  double objective;
};

// Minimizes on G(2,4) for the uniform target with M = round(n^{1/4}) and
// reports the closed-form discrepancy of the result.
std::vector<StudyRow> convergence_study(const std::vector<int>& n_list, const MinimizeOptions& opts);
// Least-squares slope of log(discrepancy) against log(n).
double loglog_slope(const std::vector<StudyRow>& rows);

} // namespace mdisc
