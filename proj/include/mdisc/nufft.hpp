#pragma once

#include "mdisc/grassmann.hpp"
#include "mdisc/specfun.hpp"

#include <Eigen/Core>

#include <array>
#include <memory>
#include <vector>

namespace mdisc {

// Fourier coefficients of theta -> Y^m_k(z(theta, 0)):
//   Y^m_k(z(theta, phi)) = e^{ik phi} sum_{k'} c^m_{k,k'} e^{ik' theta}.
class CTable {
public:
  CTable() = default;
  explicit CTable(int M);
  int degree() const { return M_; }
  cplx operator()(int m, int k, int kp) const { return c_[index(m, k, kp)]; }
  // max over (m, k) of sum_{k'} |c^m_{k,k'}|
  double row_l1_max() const { return row_l1_max_; }

private:
  int index(int m, int k, int kp) const { return (m * (2 * M_ + 1) + (k + M_)) * (2 * M_ + 1) + (kp + M_); }
  int M_ = 0;
  std::vector<cplx> c_;
  double row_l1_max_ = 0.0;
};

inline CTable build_c_table(int M) { return CTable(M); }

// d-variate trigonometric sums f(t) = sum_{|k_i| <= M} fhat_k e^{2 pi i k.t},
// t in [0,1)^d, at nonuniform nodes. Gaussian gridding on an oversampled grid
// (factor 2). Coefficients are stored row-major with the last dimension
// fastest, index k_i + M.
class Nfft {
public:
  Nfft(int dims, int M, double eps, std::vector<double> nodes);
  int dims() const { return d_; }
  int degree() const { return M_; }
  std::size_t node_count() const { return nodes_.size() / d_; }
  int half_width() const { return m_; }
  int grid_size() const { return n_; }
  std::size_t coeff_count() const;

  std::vector<cplx> forward(const std::vector<cplx>& fhat, int threads = 1) const;
  std::vector<cplx> adjoint(const std::vector<cplx>& v, int threads = 1) const;
  // Literal O(n (2M+1)^d) sums, for checking.
  std::vector<cplx> forward_direct(const std::vector<cplx>& fhat) const;
  std::vector<cplx> adjoint_direct(const std::vector<cplx>& v) const;

private:
  int d_, M_, m_, n_;
  double b_;
  std::vector<double> nodes_;
  std::vector<int> idx_;        // 2m+2 wrapped grid indices per node and dimension
  std::vector<double> weights_; // 2m+2 window values per node and dimension
  std::vector<double> deconv_;  // per frequency k + M
};

enum class NuManifold { s2, so3, s2xs2 };
enum class NuMode { direct, fast };

// Coefficient layouts: s2 uses sh_index(m, k); so3 uses wd_index(m, k, l);
// s2xs2 uses pair_index below, sh_count(M)^2 entries.
inline int pair_index(int M, int m1, int k, int m2, int l) { return sh_index(m1, k) * sh_count(M) + sh_index(m2, l); }
int coeff_count(NuManifold manifold, int M);

class NuPlan {
public:
  static NuPlan s2(int M, const std::vector<Eigen::Vector3d>& nodes, NuMode mode, double eps = 1e-10);
  static NuPlan so3(int M, const std::vector<Eigen::Vector4d>& nodes, NuMode mode = NuMode::direct);
  static NuPlan s2xs2(int M, const std::vector<SpherePair>& nodes, NuMode mode, double eps = 1e-10);

  NuManifold manifold() const { return manifold_; }
  NuMode mode() const { return mode_; }
  int degree() const { return M_; }
  double epsilon() const { return eps_; }
  std::size_t node_count() const { return n_; }
  std::size_t coeff_count() const { return mdisc::coeff_count(manifold_, M_); }
  // Built on first use in direct mode (not safe to call concurrently then).
  const CTable& c_table() const;
  void set_threads(int t) { threads_ = t < 1 ? 1 : t; }

  // Values of sum_i f_i phi_i at the nodes.
  std::vector<cplx> forward(const std::vector<cplx>& f) const;
  // h_i = sum_j v_j conj(phi_i(node_j)).
  std::vector<cplx> adjoint(const std::vector<cplx>& v) const;

  // Trigonometric coefficients of the expansion in the angle variables,
  // dimensions ordered (theta, phi) for s2 and (theta1, phi1, theta2, phi2)
  // for s2xs2.
  std::vector<cplx> build_b(const std::vector<cplx>& f) const;

private:
  NuPlan() = default;
  std::vector<cplx> forward_direct(const std::vector<cplx>& f) const;
  std::vector<cplx> adjoint_direct(const std::vector<cplx>& v) const;
  std::vector<cplx> adjoint_from_trig(const std::vector<cplx>& h) const;

  NuManifold manifold_ = NuManifold::s2;
  NuMode mode_ = NuMode::direct;
  int M_ = 0;
  double eps_ = 0.0;
  std::size_t n_ = 0;
  int threads_ = 1;
  mutable std::shared_ptr<const CTable> c_;
  std::vector<double> angles_; // (theta, phi) per sphere factor
  std::vector<Eigen::Vector4d> quats_;
  std::vector<Nfft> nfft_; // empty in direct mode
};

} // namespace mdisc
