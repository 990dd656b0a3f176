#include "mdisc/nufft.hpp"

#include "mdisc/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <thread>

namespace mdisc {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap01(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Window sums over the tensor stencil; last dimension contiguous.
template <int D> cplx gather(const cplx* grid, const int* idx, const double* w, int W, std::size_t n) {
  cplx s = 0.0;
  if constexpr (D == 1) {
    for (int i = 0; i < W; ++i) s += w[i] * grid[idx[i]];
  } else {
    const std::size_t stride = ipow(n, D - 1);
    for (int i = 0; i < W; ++i) s += w[i] * gather<D - 1>(grid + idx[i] * stride, idx + W, w + W, W, n);
  }
  return s;
}

template <int D> void spread(cplx* grid, const int* idx, const double* w, int W, std::size_t n, cplx v) {
  if constexpr (D == 1) {
    for (int i = 0; i < W; ++i) grid[idx[i]] += w[i] * v;
  } else {
    const std::size_t stride = ipow(n, D - 1);
    for (int i = 0; i < W; ++i) spread<D - 1>(grid + idx[i] * stride, idx + W, w + W, W, n, w[i] * v);
  }
}

cplx gather_any(int d, const cplx* grid, const int* idx, const double* w, int W, std::size_t n) {
  switch (d) {
  case 1: return gather<1>(grid, idx, w, W, n);
  case 2: return gather<2>(grid, idx, w, W, n);
  case 3: return gather<3>(grid, idx, w, W, n);
  default: return gather<4>(grid, idx, w, W, n);
  }
}

void spread_any(int d, cplx* grid, const int* idx, const double* w, int W, std::size_t n, cplx v) {
  switch (d) {
  case 1: spread<1>(grid, idx, w, W, n, v); break;
  case 2: spread<2>(grid, idx, w, W, n, v); break;
  case 3: spread<3>(grid, idx, w, W, n, v); break;
  default: spread<4>(grid, idx, w, W, n, v); break;
  }
}

void fft_inplace(std::vector<cplx>& grid, int d, int n, int sign) {
  std::vector<int> dims(d, n);
  auto* p = reinterpret_cast<fftw_complex*>(grid.data());
  fftw_plan plan = fftw_plan_dft(d, dims.data(), p, p, sign, FFTW_ESTIMATE);
  if (!plan) throw NumericalError("nufft: FFT planning failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

// Calls body(begin, end, thread_index) over a node range split into chunks.
template <class F> void parallel_chunks(std::size_t count, int threads, F body) {
  threads = std::max(1, std::min<int>(threads, int(count)));
  if (threads <= 1) {
    body(std::size_t(0), count, 0);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t b = t * chunk, e = std::min(count, b + chunk);
    pool.emplace_back([=] { body(b, e, t); });
  }
  for (auto& th : pool) th.join();
}

// Multi-index iteration over [-M, M]^d in row-major order.
bool next_index(std::vector<int>& k, int M) {
  for (int i = int(k.size()) - 1; i >= 0; --i) {
    if (k[i] < M) {
      ++k[i];
      return true;
    }
    k[i] = -M;
  }
  return false;
}

} // namespace

// ---- c-table ----------------------------------------------------------------

CTable::CTable(int M) : M_(M) {
  if (M < 0) throw DomainError("c-table: degree must be nonnegative");
  const int W = 2 * M + 1, L = 2 * M + 2;
  c_.assign(std::size_t(M + 1) * W * W, cplx(0.0));
  std::vector<std::vector<cplx>> samples(L);
  for (int j = 0; j < L; ++j) sph_harm_all(M, kTwoPi * j / L, 0.0, samples[j]);
  for (int m = 0; m <= M; ++m)
    for (int k = -m; k <= m; ++k) {
      double l1 = 0.0;
      for (int kp = -m; kp <= m; ++kp) {
        cplx s = 0.0;
        for (int j = 0; j < L; ++j) s += samples[j][sh_index(m, k)] * std::polar(1.0, -kp * kTwoPi * j / L);
        s /= double(L);
        c_[index(m, k, kp)] = s;
        l1 += std::abs(s);
      }
      row_l1_max_ = std::max(row_l1_max_, l1);
    }
}

// ---- trigonometric NFFT -----------------------------------------------------

Nfft::Nfft(int dims, int M, double eps, std::vector<double> nodes) : d_(dims), M_(M), nodes_(std::move(nodes)) {
  if (d_ < 1 || d_ > 4) throw DomainError("nfft: dimension must be 1..4");
  if (M_ < 0) throw DomainError("nfft: degree must be nonnegative");
  if (!(eps >= 1e-14)) throw DomainError("nfft: accuracy below 1e-14 is unreachable");
  if (nodes_.size() % d_ != 0) throw DomainError("nfft: node array length is not a multiple of the dimension");
  // Gaussian window with oversampling 2: per-dimension error 4 exp(-2 pi m / 3)
  m_ = 1;
  while (d_ * 4.0 * std::exp(-kTwoPi * m_ / 3.0) > eps) ++m_;
  b_ = 4.0 * m_ / (3.0 * M_PI);
  n_ = 2 * (2 * M_ + 2);
  const int W = 2 * m_ + 2;
  const std::size_t count = node_count();
  idx_.resize(count * d_ * W);
  weights_.resize(count * d_ * W);
  for (std::size_t j = 0; j < count; ++j)
    for (int i = 0; i < d_; ++i) {
      double& t = nodes_[j * d_ + i];
      t = wrap01(t);
      const double u = t * n_;
      const long l0 = long(std::floor(u)) - m_;
      for (int s = 0; s < W; ++s) {
        const long l = l0 + s;
        const std::size_t at = (j * d_ + i) * W + s;
        idx_[at] = int(((l % n_) + n_) % n_);
        weights_[at] = std::exp(-(u - l) * (u - l) / b_);
      }
    }
  deconv_.resize(2 * M_ + 1);
  for (int k = -M_; k <= M_; ++k) {
    const double a = M_PI * k / n_;
    deconv_[k + M_] = 1.0 / (std::sqrt(M_PI * b_) * std::exp(-b_ * a * a));
  }
}

std::size_t Nfft::coeff_count() const { return ipow(2 * M_ + 1, d_); }

std::vector<cplx> Nfft::forward(const std::vector<cplx>& fhat, int threads) const {
  if (fhat.size() != coeff_count()) throw DomainError("nfft: coefficient array has the wrong size");
  const std::size_t n = n_;
  std::vector<cplx> grid(ipow(n, d_), cplx(0.0));
  std::vector<int> k(d_, -M_);
  std::size_t at = 0;
  do {
    std::size_t g = 0;
    double scale = 1.0;
    for (int i = 0; i < d_; ++i) {
      g = g * n + std::size_t((k[i] + n_) % n_);
      scale *= deconv_[k[i] + M_];
    }
    grid[g] = fhat[at++] * scale;
  } while (next_index(k, M_));
  fft_inplace(grid, d_, n_, FFTW_BACKWARD);

  const int W = 2 * m_ + 2;
  std::vector<cplx> out(node_count());
  parallel_chunks(node_count(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t j = b; j < e; ++j) {
      const std::size_t o = j * d_ * W;
      out[j] = gather_any(d_, grid.data(), idx_.data() + o, weights_.data() + o, W, n);
    }
  });
  return out;
}

std::vector<cplx> Nfft::adjoint(const std::vector<cplx>& v, int threads) const {
  if (v.size() != node_count()) throw DomainError("nfft: value array has the wrong size");
  const std::size_t n = n_, cells = ipow(n, d_);
  const int W = 2 * m_ + 2;
  threads = std::max(1, std::min<int>(threads, int(std::max<std::size_t>(1, node_count()))));
  std::vector<std::vector<cplx>> grids(threads);
  parallel_chunks(node_count(), threads, [&](std::size_t b, std::size_t e, int t) {
    grids[t].assign(cells, cplx(0.0));
    for (std::size_t j = b; j < e; ++j) {
      const std::size_t o = j * d_ * W;
      spread_any(d_, grids[t].data(), idx_.data() + o, weights_.data() + o, W, n, v[j]);
    }
  });
  std::vector<cplx>& grid = grids[0];
  if (grid.empty()) grid.assign(cells, cplx(0.0));
  for (std::size_t t = 1; t < grids.size(); ++t)
    if (!grids[t].empty())
      for (std::size_t c = 0; c < cells; ++c) grid[c] += grids[t][c];
  fft_inplace(grid, d_, n_, FFTW_FORWARD);

  std::vector<cplx> out(coeff_count());
  std::vector<int> k(d_, -M_);
  std::size_t at = 0;
  do {
    std::size_t g = 0;
    double scale = 1.0;
    for (int i = 0; i < d_; ++i) {
      g = g * n + std::size_t((k[i] + n_) % n_);
      scale *= deconv_[k[i] + M_];
    }
    out[at++] = grid[g] * scale;
  } while (next_index(k, M_));
  return out;
}

std::vector<cplx> Nfft::forward_direct(const std::vector<cplx>& fhat) const {
  if (fhat.size() != coeff_count()) throw DomainError("nfft: coefficient array has the wrong size");
  std::vector<cplx> out(node_count());
  for (std::size_t j = 0; j < node_count(); ++j) {
    std::vector<int> k(d_, -M_);
    std::size_t at = 0;
    cplx s = 0.0;
    do {
      double ph = 0.0;
      for (int i = 0; i < d_; ++i) ph += k[i] * nodes_[j * d_ + i];
      s += fhat[at++] * std::polar(1.0, kTwoPi * ph);
    } while (next_index(k, M_));
    out[j] = s;
  }
  return out;
}

std::vector<cplx> Nfft::adjoint_direct(const std::vector<cplx>& v) const {
  if (v.size() != node_count()) throw DomainError("nfft: value array has the wrong size");
  std::vector<cplx> out(coeff_count(), cplx(0.0));
  for (std::size_t j = 0; j < node_count(); ++j) {
    std::vector<int> k(d_, -M_);
    std::size_t at = 0;
    do {
      double ph = 0.0;
      for (int i = 0; i < d_; ++i) ph += k[i] * nodes_[j * d_ + i];
      out[at++] += v[j] * std::polar(1.0, -kTwoPi * ph);
    } while (next_index(k, M_));
  }
  return out;
}

// ---- plans on S^2, SO(3), S^2 x S^2 ---------------------------------------

int coeff_count(NuManifold manifold, int M) {
  switch (manifold) {
  case NuManifold::s2: return sh_count(M);
  case NuManifold::so3: return wd_count(M);
  default: return sh_count(M) * sh_count(M);
  }
}

NuPlan NuPlan::s2(int M, const std::vector<Eigen::Vector3d>& nodes, NuMode mode, double eps) {
  if (M < 0) throw DomainError("nufft: degree must be nonnegative");
  NuPlan p;
  p.manifold_ = NuManifold::s2;
  p.mode_ = mode;
  p.M_ = M;
  p.eps_ = eps;
  p.n_ = nodes.size();
  p.angles_.resize(2 * p.n_);
  for (std::size_t j = 0; j < p.n_; ++j) to_spherical(nodes[j], p.angles_[2 * j], p.angles_[2 * j + 1]);
  if (mode == NuMode::fast) {
    std::vector<double> t(p.angles_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = p.angles_[i] / kTwoPi;
    p.nfft_.emplace_back(2, M, eps / p.c_table().row_l1_max(), std::move(t));
  }
  return p;
}

NuPlan NuPlan::so3(int M, const std::vector<Eigen::Vector4d>& nodes, NuMode mode) {
  if (M < 0) throw DomainError("nufft: degree must be nonnegative");
  if (mode == NuMode::fast) throw DomainError("nufft: fast mode is not available on SO(3); use direct");
  NuPlan p;
  p.manifold_ = NuManifold::so3;
  p.mode_ = NuMode::direct;
  p.M_ = M;
  p.n_ = nodes.size();
  p.quats_ = nodes;
  return p;
}

NuPlan NuPlan::s2xs2(int M, const std::vector<SpherePair>& nodes, NuMode mode, double eps) {
  if (M < 0) throw DomainError("nufft: degree must be nonnegative");
  NuPlan p;
  p.manifold_ = NuManifold::s2xs2;
  p.mode_ = mode;
  p.M_ = M;
  p.eps_ = eps;
  p.n_ = nodes.size();
  p.angles_.resize(4 * p.n_);
  for (std::size_t j = 0; j < p.n_; ++j) {
    to_spherical(nodes[j].x, p.angles_[4 * j], p.angles_[4 * j + 1]);
    to_spherical(nodes[j].y, p.angles_[4 * j + 2], p.angles_[4 * j + 3]);
  }
  if (mode == NuMode::fast) {
    std::vector<double> t(p.angles_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = p.angles_[i] / kTwoPi;
    const double g = p.c_table().row_l1_max();
    p.nfft_.emplace_back(4, M, eps / (g * g), std::move(t));
  }
  return p;
}

const CTable& NuPlan::c_table() const {
  if (!c_) c_ = std::make_shared<const CTable>(M_);
  return *c_;
}

std::vector<cplx> NuPlan::build_b(const std::vector<cplx>& f) const {
  if (f.size() != coeff_count()) throw DomainError("nufft: coefficient array has the wrong shape");
  const int M = M_, W = 2 * M + 1;
  const CTable& ct = c_table();
  if (manifold_ == NuManifold::s2) {
    std::vector<cplx> b(std::size_t(W) * W, cplx(0.0));
    for (int kp = -M; kp <= M; ++kp)
      for (int k = -M; k <= M; ++k) {
        cplx s = 0.0;
        for (int m = std::max(std::abs(k), std::abs(kp)); m <= M; ++m) s += ct(m, k, kp) * f[sh_index(m, k)];
        b[(kp + M) * W + (k + M)] = s;
      }
    return b;
  }
  if (manifold_ != NuManifold::s2xs2) throw DomainError("nufft: trigonometric form is defined on S^2 and S^2 x S^2");
  // T[m1][k][l'][l] = sum_{m2} f^{m1,m2}_{k,l} c^{m2}_{l,l'}
  std::vector<cplx> T(std::size_t(M + 1) * W * W * W, cplx(0.0));
  auto t_at = [&](int m1, int k, int lp, int l) { return ((std::size_t(m1) * W + (k + M)) * W + (lp + M)) * W + (l + M); };
  for (int m1 = 0; m1 <= M; ++m1)
    for (int k = -m1; k <= m1; ++k)
      for (int lp = -M; lp <= M; ++lp)
        for (int l = -M; l <= M; ++l) {
          cplx s = 0.0;
          for (int m2 = std::max(std::abs(l), std::abs(lp)); m2 <= M; ++m2)
            s += f[pair_index(M, m1, k, m2, l)] * ct(m2, l, lp);
          T[t_at(m1, k, lp, l)] = s;
        }
  std::vector<cplx> b(std::size_t(W) * W * W * W, cplx(0.0));
  for (int kp = -M; kp <= M; ++kp)
    for (int k = -M; k <= M; ++k)
      for (int lp = -M; lp <= M; ++lp)
        for (int l = -M; l <= M; ++l) {
          cplx s = 0.0;
          for (int m1 = std::max(std::abs(k), std::abs(kp)); m1 <= M; ++m1) s += ct(m1, k, kp) * T[t_at(m1, k, lp, l)];
          b[((std::size_t(kp + M) * W + (k + M)) * W + (lp + M)) * W + (l + M)] = s;
        }
  return b;
}

std::vector<cplx> NuPlan::adjoint_from_trig(const std::vector<cplx>& h) const {
  const int M = M_, W = 2 * M + 1;
  const CTable& ct = c_table();
  std::vector<cplx> out(coeff_count(), cplx(0.0));
  if (manifold_ == NuManifold::s2) {
    for (int m = 0; m <= M; ++m)
      for (int k = -m; k <= m; ++k) {
        cplx s = 0.0;
        for (int kp = -m; kp <= m; ++kp) s += std::conj(ct(m, k, kp)) * h[(kp + M) * W + (k + M)];
        out[sh_index(m, k)] = s;
      }
    return out;
  }
  // U[k'][k][m2][l] = sum_{l'} conj(c^{m2}_{l,l'}) h[k',k,l',l]
  std::vector<cplx> U(std::size_t(W) * W * (M + 1) * W, cplx(0.0));
  auto u_at = [&](int kp, int k, int m2, int l) { return ((std::size_t(kp + M) * W + (k + M)) * (M + 1) + m2) * W + (l + M); };
  for (int kp = -M; kp <= M; ++kp)
    for (int k = -M; k <= M; ++k)
      for (int m2 = 0; m2 <= M; ++m2)
        for (int l = -m2; l <= m2; ++l) {
          cplx s = 0.0;
          for (int lp = -m2; lp <= m2; ++lp)
            s += std::conj(ct(m2, l, lp)) * h[((std::size_t(kp + M) * W + (k + M)) * W + (lp + M)) * W + (l + M)];
          U[u_at(kp, k, m2, l)] = s;
        }
  for (int m1 = 0; m1 <= M; ++m1)
    for (int k = -m1; k <= m1; ++k)
      for (int m2 = 0; m2 <= M; ++m2)
        for (int l = -m2; l <= m2; ++l) {
          cplx s = 0.0;
          for (int kp = -m1; kp <= m1; ++kp) s += std::conj(ct(m1, k, kp)) * U[u_at(kp, k, m2, l)];
          out[pair_index(M, m1, k, m2, l)] = s;
        }
  return out;
}

std::vector<cplx> NuPlan::forward(const std::vector<cplx>& f) const {
  if (f.size() != coeff_count()) throw DomainError("nufft: coefficient array has the wrong shape");
  if (mode_ == NuMode::direct) return forward_direct(f);
  return nfft_.front().forward(build_b(f), threads_);
}

std::vector<cplx> NuPlan::adjoint(const std::vector<cplx>& v) const {
  if (v.size() != n_) throw DomainError("nufft: value array length differs from the node count");
  if (mode_ == NuMode::direct) return adjoint_direct(v);
  return adjoint_from_trig(nfft_.front().adjoint(v, threads_));
}

std::vector<cplx> NuPlan::forward_direct(const std::vector<cplx>& f) const {
  std::vector<cplx> out(n_);
  const int S = sh_count(M_);
  parallel_chunks(n_, threads_, [&](std::size_t b, std::size_t e, int) {
    std::vector<cplx> A, B;
    for (std::size_t j = b; j < e; ++j) {
      cplx s = 0.0;
      if (manifold_ == NuManifold::so3) {
        wigner_D_all(M_, quats_[j], A);
        for (std::size_t i = 0; i < A.size(); ++i) s += f[i] * A[i];
      } else if (manifold_ == NuManifold::s2) {
        sph_harm_all(M_, angles_[2 * j], angles_[2 * j + 1], A);
        for (int i = 0; i < S; ++i) s += f[i] * A[i];
      } else {
        sph_harm_all(M_, angles_[4 * j], angles_[4 * j + 1], A);
        sph_harm_all(M_, angles_[4 * j + 2], angles_[4 * j + 3], B);
        for (int a = 0; a < S; ++a) {
          cplx inner = 0.0;
          const cplx* row = f.data() + std::size_t(a) * S;
          for (int c = 0; c < S; ++c) inner += row[c] * B[c];
          s += A[a] * inner;
        }
      }
      out[j] = s;
    }
  });
  return out;
}

std::vector<cplx> NuPlan::adjoint_direct(const std::vector<cplx>& v) const {
  const std::size_t C = coeff_count();
  const int S = sh_count(M_);
  const int threads = std::max(1, std::min<int>(threads_, int(std::max<std::size_t>(1, n_))));
  std::vector<std::vector<cplx>> acc(threads, std::vector<cplx>(C, cplx(0.0)));
  parallel_chunks(n_, threads, [&](std::size_t b, std::size_t e, int t) {
    std::vector<cplx> A, B;
    auto& out = acc[t];
    for (std::size_t j = b; j < e; ++j) {
      if (manifold_ == NuManifold::so3) {
        wigner_D_all(M_, quats_[j], A);
        for (std::size_t i = 0; i < A.size(); ++i) out[i] += v[j] * std::conj(A[i]);
      } else if (manifold_ == NuManifold::s2) {
        sph_harm_all(M_, angles_[2 * j], angles_[2 * j + 1], A);
        for (int i = 0; i < S; ++i) out[i] += v[j] * std::conj(A[i]);
      } else {
        sph_harm_all(M_, angles_[4 * j], angles_[4 * j + 1], A);
        sph_harm_all(M_, angles_[4 * j + 2], angles_[4 * j + 3], B);
        for (int a = 0; a < S; ++a) {
          const cplx va = v[j] * std::conj(A[a]);
          cplx* row = out.data() + std::size_t(a) * S;
          for (int c = 0; c < S; ++c) row[c] += va * std::conj(B[c]);
        }
      }
    }
  });
  for (int t = 1; t < threads; ++t)
    for (std::size_t i = 0; i < C; ++i) acc[0][i] += acc[t][i];
  return acc[0];
}

} // namespace mdisc
