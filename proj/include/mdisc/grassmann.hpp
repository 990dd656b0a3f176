#pragma once

#include "mdisc/specfun.hpp"
#include "mdisc/spectra.hpp"

#include <Eigen/Core>

#include <random>
#include <utility>
#include <vector>

namespace mdisc {

// A point of G(2,4) through its double cover: (x, y) ~ (-x, -y).
struct SpherePair {
  Eigen::Vector3d x, y;
  // Representative with the first nonzero coordinate of x (then y) positive.
  static SpherePair canonical(const Eigen::Vector3d& x, const Eigen::Vector3d& y);
};

// Rank-2 orthogonal projector built from a pair of unit vectors.
Eigen::Matrix4d embed(const Eigen::Vector3d& x, const Eigen::Vector3d& y);
inline Eigen::Matrix4d embed(const SpherePair& p) { return embed(p.x, p.y); }

bool is_projector(const Eigen::Matrix4d& P, double tol = 1e-10);

// The 3x3 matrix L(P) with L(embed(x, y)) = x y^T.
Eigen::Matrix3d lift_matrix(const Eigen::Matrix4d& P);
// Inverse of embed up to the sign ambiguity; throws DomainError if L(P) is not
// rank one.
SpherePair lift(const Eigen::Matrix4d& P);

// Quaternions (a1, a2, a3, a4) = (w, x, y, z).
Eigen::Matrix4d isoclinic_left(const Eigen::Vector4d& a);
Eigen::Matrix4d isoclinic_right(const Eigen::Vector4d& b);
inline Eigen::Matrix4d isoclinic(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return isoclinic_left(a) * isoclinic_right(b);
}
Eigen::Matrix3d euler_rodrigues(const Eigen::Vector4d& a);

// Principal angles theta1 <= theta2 in [0, pi/2].
std::pair<double, double> principal_angles(const Eigen::Matrix4d& P, const Eigen::Matrix4d& Q);
double geodesic_distance(const Eigen::Matrix4d& P, const Eigen::Matrix4d& Q);

// Y^m_k(x) Y^n_l(y); requires m + n even.
cplx basis_Y(int m, int n, int k, int l, const SpherePair& p);
cplx basis_Y(int m, int n, int k, int l, const Eigen::Matrix4d& P);

struct TensorIndex {
  int m, n, k, l;
};
// Orthonormal basis of H_lambda as tensor products Y^m_k(x) Y^n_l(y). For
// m != n both orders are listed; for m == n the two families coincide and are
// listed once.
std::vector<TensorIndex> h_lambda_basis(const Partition2& lam);

// Dimension of H_lambda: (2 - delta_{0,l2}) ((2 l1 + 1)^2 - 4 l2^2).
int g24_dim(const Partition2& lam);

// Reproducing kernel of H_lambda as a function of xi_+ = cos(theta1 + theta2)
// and xi_- = cos(theta1 - theta2) (any order and signs).
double q_lambda_xi(const Partition2& lam, double xi_plus, double xi_minus);
double q_lambda(const Partition2& lam, const Eigen::Matrix4d& P, const Eigen::Matrix4d& Q);
// Same kernel evaluated from representatives: xi_{+-} = <x,u>, <y,v>.
double q_lambda(const Partition2& lam, const SpherePair& a, const SpherePair& b);

// Independent uniform unit vectors, canonicalized; the image under embed is
// distributed by the invariant measure of G(2,4).
SpherePair haar_sample(std::mt19937_64& rng);
SpherePair haar_sample(unsigned long long seed);

} // namespace mdisc
