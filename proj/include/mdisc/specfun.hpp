#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace mdisc {

using cplx = std::complex<double>;

// ---- gamma family -------------------------------------------------------

// Rising factorial (f)_n = f (f+1) ... (f+n-1), (f)_0 = 1.
double pochhammer(double f, int n);

// log|Gamma(x)| together with the sign of Gamma(x). Throws PoleError at
// non-positive integers.
struct SignedLog {
  double log_abs;
  int sign;
};
SignedLog log_gamma_signed(double x);

// Gamma(a) / Gamma(b) evaluated in log space.
double gamma_ratio(double a, double b);

// Generalized hypergeometric series pFq(upper; lower; z).
double pfq(const std::vector<double>& upper, const std::vector<double>& lower, double z);

// ---- orthogonal polynomials ----------------------------------------------

// Gegenbauer polynomial C^alpha_m(t) with C^alpha_m(1) = binom(m+2alpha-1, m).
// alpha = 0 is read as the limit C^alpha_m / alpha = (2/m) T_m (m >= 1).
double gegenbauer(double alpha, int m, double t);

inline double legendre(int m, double t) { return gegenbauer(0.5, m, t); }

// ---- spherical harmonics ---------------------------------------------------
// Orthonormal with respect to the normalized surface measure, Condon-Shortley
// phase, Y^0_0 = 1.

inline int sh_index(int m, int l) { return m * m + m + l; }
inline int sh_count(int M) { return (M + 1) * (M + 1); }

// Polar angle theta in [0, pi] and azimuth phi in (-pi, pi] of a unit vector.
void to_spherical(const Eigen::Vector3d& x, double& theta, double& phi);
Eigen::Vector3d from_spherical(double theta, double phi);

cplx sph_harm(int m, int l, const Eigen::Vector3d& x);

// All Y^m_l for m <= M, stored at sh_index(m, l).
void sph_harm_all(int M, double theta, double phi, std::vector<cplx>& Y);

// Values plus dY/dtheta and (dY/dphi)/sin(theta). The last table is finite at
// the poles.
void sph_harm_all_grad(int M, double theta, double phi, std::vector<cplx>& Y, std::vector<cplx>& dtheta,
                       std::vector<cplx>& dphi_over_sin);

// ---- Wigner functions ------------------------------------------------------

// Unit quaternions are Eigen::Vector4d (w, x, y, z).
struct EulerZYZ {
  double alpha, beta, gamma;
};
// Euler angles of R = R_z(alpha) R_y(beta) R_z(gamma) for the rotation of q.
EulerZYZ quat_to_euler(const Eigen::Vector4d& q);

// Small Wigner d^m_{kl}(beta) without the sqrt(2m+1) factor.
double wigner_d(int m, int k, int l, double beta);

// sqrt(2m+1) e^{-ik alpha} d^m_{kl}(beta) e^{-il gamma}, orthonormal under the
// normalized Haar measure.
cplx wigner_D(int m, int k, int l, const Eigen::Vector4d& q);

inline int wd_offset(int m) { return m * (2 * m - 1) * (2 * m + 1) / 3; }
inline int wd_index(int m, int k, int l) { return wd_offset(m) + (k + m) * (2 * m + 1) + (l + m); }
inline int wd_count(int M) { return wd_offset(M + 1); }

// All D^m_{kl} for m <= M at wd_index(m, k, l).
void wigner_D_all(int M, const Eigen::Vector4d& q, std::vector<cplx>& D);

// ---- Bessel functions ------------------------------------------------------

// Spherical Bessel j_n(z) for any integer n (negative n via j_{-1} = cos z / z).
cplx sph_bessel_j(int n, cplx z);

// J_nu(z) for nu in Z + 1/2 or nu in Z, principal branch.
cplx bessel_j_halfint(double nu, cplx z);

// J_nu(w) / w^nu for half-integer nu, an entire even function of w.
cplx bessel_j_scaled(double nu, cplx w);

} // namespace mdisc
