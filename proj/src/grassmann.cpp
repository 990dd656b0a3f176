#include "mdisc/grassmann.hpp"

#include "mdisc/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace mdisc {

namespace {

int first_sign(const Eigen::Vector3d& v) {
  for (int i = 0; i < 3; ++i)
    if (std::abs(v[i]) > 1e-12) return v[i] > 0 ? 1 : -1;
  return 1;
}

Eigen::Matrix<double, 4, 2> range_basis(const Eigen::Matrix4d& P) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(P);
  return es.eigenvectors().rightCols<2>();
}

} // namespace

SpherePair SpherePair::canonical(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  int s = first_sign(x);
  if (x.cwiseAbs().maxCoeff() <= 1e-12) s = first_sign(y);
  return s > 0 ? SpherePair{x, y} : SpherePair{-x, -y};
}

Eigen::Matrix4d embed(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  const double t = x.dot(y);
  const Eigen::Vector3d c = x.cross(y);
  Eigen::Matrix4d P;
  P(0, 0) = 1.0 + t;
  P.block<1, 3>(0, 1) = -c.transpose();
  P.block<3, 1>(1, 0) = -c;
  P.block<3, 3>(1, 1) = x * y.transpose() + y * x.transpose() + (1.0 - t) * Eigen::Matrix3d::Identity();
  return 0.5 * P;
}

bool is_projector(const Eigen::Matrix4d& P, double tol) {
  return (P - P.transpose()).norm() <= tol && (P * P - P).norm() <= tol && std::abs(P.trace() - 2.0) <= tol;
}

Eigen::Matrix3d lift_matrix(const Eigen::Matrix4d& P) {
  auto p = [&](int i, int j) { return P(i - 1, j - 1); };
  Eigen::Matrix3d L;
  L << 0.5 * (p(1, 1) + p(2, 2) - p(3, 3) - p(4, 4)), p(2, 3) - p(1, 4), p(2, 4) + p(1, 3),
       p(2, 3) + p(1, 4), 0.5 * (p(1, 1) - p(2, 2) + p(3, 3) - p(4, 4)), p(3, 4) - p(1, 2),
       p(2, 4) - p(1, 3), p(3, 4) + p(1, 2), 0.5 * (p(1, 1) - p(2, 2) - p(3, 3) + p(4, 4));
  return L;
}

SpherePair lift(const Eigen::Matrix4d& P) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(lift_matrix(P), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s[1] > 1e-8 || std::abs(s[0] - 1.0) > 1e-8) throw DomainError("lift: L(P) is not rank one; input is not a valid projector");
  Eigen::Vector3d x = svd.matrixU().col(0), y = svd.matrixV().col(0);
  return SpherePair::canonical(x / x.norm(), y / y.norm());
}

Eigen::Matrix4d isoclinic_left(const Eigen::Vector4d& a) {
  Eigen::Matrix4d L;
  L << a[0], -a[1], -a[2], -a[3],
       a[1], a[0], -a[3], a[2],
       a[2], a[3], a[0], -a[1],
       a[3], -a[2], a[1], a[0];
  return L.transpose();
}

Eigen::Matrix4d isoclinic_right(const Eigen::Vector4d& b) {
  Eigen::Matrix4d R;
  R << b[0], -b[1], -b[2], -b[3],
       b[1], b[0], b[3], -b[2],
       b[2], -b[3], b[0], b[1],
       b[3], b[2], -b[1], b[0];
  return R;
}

Eigen::Matrix3d euler_rodrigues(const Eigen::Vector4d& a) {
  const double a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3];
  Eigen::Matrix3d S;
  S << a1 * a1 + a2 * a2 - a3 * a3 - a4 * a4, 2 * (a2 * a3 - a1 * a4), 2 * (a2 * a4 + a1 * a3),
       2 * (a2 * a3 + a1 * a4), a1 * a1 - a2 * a2 + a3 * a3 - a4 * a4, 2 * (a3 * a4 - a1 * a2),
       2 * (a2 * a4 - a1 * a3), 2 * (a3 * a4 + a1 * a2), a1 * a1 - a2 * a2 - a3 * a3 + a4 * a4;
  return S.transpose();
}

std::pair<double, double> principal_angles(const Eigen::Matrix4d& P, const Eigen::Matrix4d& Q) {
  const auto U = range_basis(P), V = range_basis(Q);
  // cosines from U^T V, sines from (I - U U^T) V; both sorted to pair up
  Eigen::JacobiSVD<Eigen::Matrix2d> c_svd(U.transpose() * V);
  Eigen::Matrix<double, 4, 2> W = V - U * (U.transpose() * V);
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> s_svd(W);
  const auto& c = c_svd.singularValues(); // descending
  const auto& s = s_svd.singularValues(); // descending, pairs with ascending cosines
  double t1 = std::atan2(std::clamp(s[1], 0.0, 1.0), std::clamp(c[0], 0.0, 1.0));
  double t2 = std::atan2(std::clamp(s[0], 0.0, 1.0), std::clamp(c[1], 0.0, 1.0));
  return {t1, t2};
}

double geodesic_distance(const Eigen::Matrix4d& P, const Eigen::Matrix4d& Q) {
  auto [t1, t2] = principal_angles(P, Q);
  return std::sqrt(2.0) * std::hypot(t1, t2);
}

cplx basis_Y(int m, int n, int k, int l, const SpherePair& p) {
  if ((m + n) % 2 != 0) throw DomainError("basis_Y: m + n must be even");
  if (std::abs(k) > m || std::abs(l) > n) throw IndexError("basis_Y: order out of range");
  return sph_harm(m, k, p.x) * sph_harm(n, l, p.y);
}

cplx basis_Y(int m, int n, int k, int l, const Eigen::Matrix4d& P) { return basis_Y(m, n, k, l, lift(P)); }

std::vector<TensorIndex> h_lambda_basis(const Partition2& lam) {
  const int m = lam.l1 + lam.l2, n = lam.l1 - lam.l2;
  std::vector<TensorIndex> out;
  for (int k = -m; k <= m; ++k)
    for (int l = -n; l <= n; ++l) out.push_back({m, n, k, l});
  if (m != n)
    for (int l = -n; l <= n; ++l)
      for (int k = -m; k <= m; ++k) out.push_back({n, m, l, k});
  return out;
}

int g24_dim(const Partition2& lam) {
  return (lam.l2 == 0 ? 1 : 2) * ((2 * lam.l1 + 1) * (2 * lam.l1 + 1) - 4 * lam.l2 * lam.l2);
}

double q_lambda_xi(const Partition2& lam, double xp, double xm) {
  const int m = lam.l1 + lam.l2, n = lam.l1 - lam.l2;
  return 0.5 * g24_dim(lam) * (legendre(m, xp) * legendre(n, xm) + legendre(n, xp) * legendre(m, xm));
}

double q_lambda(const Partition2& lam, const Eigen::Matrix4d& P, const Eigen::Matrix4d& Q) {
  auto [t1, t2] = principal_angles(P, Q);
  return q_lambda_xi(lam, std::cos(t1 + t2), std::cos(t1 - t2));
}

double q_lambda(const Partition2& lam, const SpherePair& a, const SpherePair& b) {
  return q_lambda_xi(lam, std::clamp(a.x.dot(b.x), -1.0, 1.0), std::clamp(a.y.dot(b.y), -1.0, 1.0));
}

SpherePair haar_sample(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d x(g(rng), g(rng), g(rng)), y(g(rng), g(rng), g(rng));
  return SpherePair::canonical(x / x.norm(), y / y.norm());
}

SpherePair haar_sample(unsigned long long seed) {
  std::mt19937_64 rng(seed);
  return haar_sample(rng);
}

} // namespace mdisc
