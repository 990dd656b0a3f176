#pragma once

#include <string>
#include <vector>

namespace mdisc {

struct Partition2 {
  int l1 = 0, l2 = 0;
  Partition2() = default;
  Partition2(int a, int b); // throws DomainError unless a >= b >= 0
  int size() const { return l1 + l2; }
};

// All partitions with |lambda| <= M, ordered by |lambda| then by l2.
std::vector<Partition2> g24_partitions(int M);

// Fourier coefficients of the monomial kernels 2^{-p/2} |x - y|^p. For even
// p >= 0 the ratio Gamma(-p/2 + m) / Gamma(-p/2) is read as (-p/2)_m.
double sphere_coeff(int d, double p, int m);
double so3_coeff(double p, int m);
double g24_coeff(double p, const Partition2& lam);

struct Manifold {
  enum Kind { sphere, so3, g24, interval, brownian } kind;
  int d = 3;      // sphere dimension parameter (S^{d-1})
  double s = 1.0; // half-length of [-s, s] or length of [0, s]

  static Manifold sphere_of(int d) { return {sphere, d, 1.0}; }
  static Manifold so3_group() { return {so3, 9, 1.0}; }
  static Manifold g24_space() { return {g24, 16, 1.0}; }
  static Manifold interval_of(double s) { return {interval, 1, s}; }
  static Manifold brownian_of(double s) { return {brownian, 1, s}; }
  std::string name() const;
};

struct TableEntry {
  std::vector<int> index; // [m] or [l1, l2]
  double value;
};

// Coefficients of the discrepancy kernel restricted to the manifold: the
// distance kernel s - c_d |x - y| for sphere / so3 / g24, and the eigenvalues
// (descending) for interval / brownian.
struct SpectralTable {
  Manifold manifold;
  double p = 1.0;
  int M = 0;
  std::vector<TableEntry> entries;

  double at(int m) const;
  double at(const Partition2& lam) const;
};

SpectralTable kernel_table(const Manifold& manifold, int M);

// Eigenpairs of the discrepancy kernels on [-s, s] and [0, s].
struct IntervalEigen {
  enum Branch { sine, cosine } branch;
  double lambda;
  double freq;      // eigenfunction is amp * sin(freq x) or amp * cos(freq x)
  double amp;
  double root = 0.0; // u with tan u = 1/u for the cosine branch
  double operator()(double x) const;
};

// Root of tan(u) = 1/u in ((k-1) pi, (k-1) pi + pi/2), k >= 1.
double cot_root(int k);

std::vector<IntervalEigen> interval_eigs(double s, int count);
std::vector<IntervalEigen> brownian_eigs(double s, int count);

// Spherical coefficients of the ball-intersection kernel
// pi (2r - t)^2 (t + 4r) / 12 restricted to S^2, for m = 0..M.
std::vector<double> k3r_sphere_decay(double r, int M);

} // namespace mdisc
