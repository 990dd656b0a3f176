#pragma once

#include "mdisc/specfun.hpp"

#include <Eigen/Core>

#include <functional>

#include <vector>

namespace mdisc {

// Radial part of |x - y|^p on the unit ball in R^d for angular degree m.
struct BallProblem {
  int d, p, m;
  BallProblem(int d, int p, int m); // d >= 3 odd, p odd with p > 1 - d, m >= 0
  int size() const { return (d + p) / 2; }
  double nu0() const { return m + 0.5 * d - 1.0; } // order of the eigenfunction Bessel terms
};

// K_m^{d,p}(r, s) = (-p/2)_m / (d/2-1)_m (min/max)^m max^p
//                   2F1(m - p/2, 1 - (d+p)/2; m + d/2; (min/max)^2)
double radial_kernel(const BallProblem& prob, double r, double s);

// +1: the branch with (-p/2)_{N-1} lambda > 0, -1: the other one.
using Branch = int;

// Angles of the Bessel arguments z_l = e^{i theta_l} omega.
std::vector<double> branch_angles(const BallProblem& prob, Branch branch);

Eigen::MatrixXcd matrix_A(const BallProblem& prob, double omega, Branch branch);
cplx det_A(const BallProblem& prob, double omega, Branch branch);

// det A with the positive row and column scalings removed and the unimodular
// column phases divided out; real up to rounding, sign changes at the roots.
double det_A_real(const BallProblem& prob, double omega, Branch branch);

double lambda_from_omega(const BallProblem& prob, double omega, Branch branch);
double omega_from_lambda(const BallProblem& prob, double lambda);

struct BallEigenpair {
  double omega = 0.0;
  double lambda = 0.0;
  Branch branch = 1;
  // eigenfunction r^m sum_l coeffs_l J~_{nu0}(z_l r) / phase, scaled to unit norm
  Eigen::VectorXcd coeffs;
  double singular_gap = 0.0; // second smallest / largest singular value at the root
  double det_residual = 0.0; // smallest / largest singular value at the root
  double imag_residue = 0.0; // max |Im phi| / max |Re phi| on a grid
};

// Roots of det A on both branches, sorted by |lambda| descending. The scan
// range is extended past omega_max until count roots are found.
std::vector<BallEigenpair> find_eigs(const BallProblem& prob, int count, double omega_max = 0.0);

// Normalized eigenfunction; r in [-1, 1] evaluates the analytic continuation.
double eigenfunction(const BallEigenpair& pair, const BallProblem& prob, double r);
cplx eigenfunction_complex(const BallEigenpair& pair, const BallProblem& prob, double r);

// max |T_m phi - lambda phi| / (|lambda| max |phi|) on a midpoint grid.
double eigen_residual(const BallEigenpair& pair, const BallProblem& prob, int grid = 64);

// (T_m f)(s) = int_0^1 K_m(s, r) f(r) r^{d-1} dr by adaptive quadrature split at s.
double apply_radial_operator(const BallProblem& prob, const std::function<double(double)>& f, double s);

// Eigenvalues of the Nystrom discretization on an n-point Gauss-Legendre grid
// with weight r^{d-1}, sorted by |lambda| descending. The diagonal correction
// integrates the kernel row exactly (singularity subtraction), which removes
// the leading error from the kink at r = s and keeps the matrix symmetric.
std::vector<double> nystrom_eigs(const BallProblem& prob, int n, bool diagonal_correction = true);

// Radial eigen-systems for m = 0..M with J functions each.
struct BallExpansion {
  int d = 3, p = 1, M = 0, J = 0;
  std::vector<std::vector<BallEigenpair>> radial; // radial[m][j]

  // lambda (d-2) vol(S^{d-1}) / (2m + d - 2)
  double scaled(int m, int j) const;
  // partial sum of |x - y|^p over m <= M', j <= J'
  double partial_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int Mp, int Jp) const;
};

BallExpansion assemble_ball_expansion(int d, int p, int M, int J);

// Scaled eigenvalues of the discrepancy kernel s - c_d |x - y| (p = 1): for
// m >= 1 the negated |x - y| values, for m = 0 the constant enters through a
// rank-one update in the truncated eigenbasis. Entry [m] lists J values,
// descending.
std::vector<std::vector<double>> discrepancy_ball_spectrum(const BallExpansion& exp, double s);

double sphere_volume(int d); // surface area of S^{d-1}

} // namespace mdisc
