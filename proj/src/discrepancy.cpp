#include "mdisc/discrepancy.hpp"

#include "mdisc/errors.hpp"
#include "mdisc/kernels.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace mdisc {

namespace {

Eigen::Vector4d qmul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

void require_supported(const Manifold& mf) {
  if (mf.kind == Manifold::sphere && mf.d != 3) throw DomainError("discrepancy: only the sphere S^2 (d = 3) is supported");
  if (mf.kind == Manifold::interval || mf.kind == Manifold::brownian)
    throw DomainError("discrepancy: manifold must be sphere, so3 or g24");
}

void require_same(const Manifold& a, const Manifold& b) {
  if (a.kind != b.kind || (a.kind == Manifold::sphere && a.d != b.d))
    throw DomainError("discrepancy: manifold mismatch between " + a.name() + " and " + b.name());
}

Eigen::Vector3d e_theta(double th, double ph) {
  return {std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)};
}

Eigen::Vector3d e_phi(double ph) { return {-std::sin(ph), std::cos(ph), 0.0}; }

// Sum_i g_i grad Y_i(x) as a tangent vector (complex components).
Eigen::Vector3cd sphere_grad(const std::vector<cplx>& dth, const std::vector<cplx>& dph, const cplx* g, int S, int stride,
                             double th, double ph) {
  cplx a = 0.0, b = 0.0;
  for (int i = 0; i < S; ++i) {
    a += g[std::size_t(i) * stride] * dth[i];
    b += g[std::size_t(i) * stride] * dph[i];
  }
  return a * e_theta(th, ph).cast<cplx>() + b * e_phi(ph).cast<cplx>();
}

double point_distance(const Manifold& mf, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  switch (mf.kind) {
  case Manifold::sphere: return (a - b).norm();
  case Manifold::so3:
    // |R(p) - R(q)|_F^2 = 8 (1 - <p,q>^2), written without cancellation
    return std::sqrt(2.0) * (a.head<4>() - b.head<4>()).norm() * (a.head<4>() + b.head<4>()).norm();
  default: {
    const Eigen::Matrix3d d = a.head<3>() * a.tail<3>().transpose() - b.head<3>() * b.tail<3>().transpose();
    return d.norm();
  }
  }
}

Eigen::VectorXd random_point(const Manifold& mf, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const int dim = point_dim(mf);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  if (mf.kind == Manifold::g24) {
    v.head<3>().normalize();
    v.tail<3>().normalize();
  } else {
    v.normalize();
  }
  return v;
}

void retract(const Manifold& mf, Eigen::MatrixXd& X) {
  for (int j = 0; j < X.cols(); ++j) {
    if (mf.kind == Manifold::g24) {
      X.col(j).head<3>().normalize();
      X.col(j).tail<3>().normalize();
    } else {
      X.col(j).normalize();
    }
  }
}

void project_tangent(const Manifold& mf, const Eigen::MatrixXd& X, Eigen::MatrixXd& V) {
  for (int j = 0; j < X.cols(); ++j) {
    if (mf.kind == Manifold::g24) {
      V.col(j).head<3>() -= X.col(j).head<3>().dot(V.col(j).head<3>()) * X.col(j).head<3>();
      V.col(j).tail<3>() -= X.col(j).tail<3>().dot(V.col(j).tail<3>()) * X.col(j).tail<3>();
    } else {
      V.col(j) -= X.col(j).dot(V.col(j)) * X.col(j);
    }
  }
}

double frob_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a.cwiseProduct(b).sum(); }

} // namespace

// ---- point sets --------------------------------------------------------------

int point_dim(const Manifold& mf) {
  require_supported(mf);
  switch (mf.kind) {
  case Manifold::sphere: return 3;
  case Manifold::so3: return 4;
  default: return 6;
  }
}

int basis_size(const Manifold& mf, int M) {
  require_supported(mf);
  if (M < 0) throw DomainError("discrepancy: truncation degree must be nonnegative");
  switch (mf.kind) {
  case Manifold::sphere: return sh_count(M);
  case Manifold::so3: return wd_count(M);
  default: return sh_count(M) * sh_count(M);
  }
}

void PointSet::canonicalize() {
  for (int j = 0; j < size(); ++j) {
    if (manifold.kind == Manifold::so3) {
      Eigen::Vector4d q = quat(j);
      int s = 0;
      if (q[0] > 0) s = 1;
      else if (q[0] < 0) s = -1;
      else
        for (int i = 1; i < 4 && s == 0; ++i) s = q[i] > 0 ? 1 : (q[i] < 0 ? -1 : 0);
      if (s < 0) coords.col(j) = -q;
    } else if (manifold.kind == Manifold::g24) {
      SpherePair p = SpherePair::canonical(coords.col(j).head<3>(), coords.col(j).tail<3>());
      coords.col(j).head<3>() = p.x;
      coords.col(j).tail<3>() = p.y;
    }
  }
}

void PointSet::validate(double tol) const {
  if (coords.rows() != point_dim(manifold)) throw DomainError("point set: wrong coordinate count for " + manifold.name());
  for (int j = 0; j < size(); ++j) {
    bool ok = coords.col(j).allFinite();
    if (manifold.kind == Manifold::g24)
      ok = ok && std::abs(coords.col(j).head<3>().norm() - 1.0) <= tol && std::abs(coords.col(j).tail<3>().norm() - 1.0) <= tol;
    else
      ok = ok && std::abs(coords.col(j).norm() - 1.0) <= tol;
    if (!ok) throw DomainError("point set: point " + std::to_string(j) + " violates the unit constraint");
  }
}

PointSet PointSet::on_sphere(const std::vector<Eigen::Vector3d>& pts) {
  PointSet ps{Manifold::sphere_of(3), Eigen::MatrixXd(3, pts.size())};
  for (std::size_t j = 0; j < pts.size(); ++j) ps.coords.col(j) = pts[j];
  return ps;
}

PointSet PointSet::on_so3(const std::vector<Eigen::Vector4d>& quats) {
  PointSet ps{Manifold::so3_group(), Eigen::MatrixXd(4, quats.size())};
  for (std::size_t j = 0; j < quats.size(); ++j) ps.coords.col(j) = quats[j];
  return ps;
}

PointSet PointSet::on_g24(const std::vector<SpherePair>& pairs) {
  PointSet ps{Manifold::g24_space(), Eigen::MatrixXd(6, pairs.size())};
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    ps.coords.col(j).head<3>() = pairs[j].x;
    ps.coords.col(j).tail<3>() = pairs[j].y;
  }
  return ps;
}

Eigen::Vector4d quat_from_euler(double alpha, double beta, double gamma) {
  const Eigen::Vector4d a(std::cos(alpha / 2), 0, 0, std::sin(alpha / 2));
  const Eigen::Vector4d b(std::cos(beta / 2), 0, std::sin(beta / 2), 0);
  const Eigen::Vector4d c(std::cos(gamma / 2), 0, 0, std::sin(gamma / 2));
  return qmul(qmul(a, b), c);
}

// ---- targets -----------------------------------------------------------------

TargetMeasure target_empty(const Manifold& mf, int M) {
  return {mf, M, std::vector<cplx>(basis_size(mf, M), cplx(0.0))};
}

TargetMeasure target_uniform(const Manifold& mf, int M) {
  auto t = target_empty(mf, M);
  t.mu_hat[0] = 1.0;
  return t;
}

void add_discrete(TargetMeasure& t, const PointSet& pts, const std::vector<double>& weights, double weight) {
  require_same(t.manifold, pts.manifold);
  pts.validate(1e-8);
  if (weights.size() != std::size_t(pts.size())) throw DomainError("target: one weight per point required");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("target: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw DomainError("target: weights must sum to 1");
  if (!(weight >= 0.0)) throw DomainError("target: component weight must be nonnegative");
  std::vector<cplx> v(weights.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = weight * weights[j];
  std::vector<cplx> h;
  switch (t.manifold.kind) {
  case Manifold::sphere: {
    std::vector<Eigen::Vector3d> x(pts.size());
    for (int j = 0; j < pts.size(); ++j) x[j] = pts.sphere_point(j);
    h = NuPlan::s2(t.M, x, NuMode::direct).adjoint(v);
    break;
  }
  case Manifold::so3: {
    std::vector<Eigen::Vector4d> q(pts.size());
    for (int j = 0; j < pts.size(); ++j) q[j] = pts.quat(j);
    h = NuPlan::so3(t.M, q).adjoint(v);
    break;
  }
  default: {
    std::vector<SpherePair> p(pts.size());
    for (int j = 0; j < pts.size(); ++j) p[j] = pts.pair(j);
    h = NuPlan::s2xs2(t.M, p, NuMode::direct).adjoint(v);
    break;
  }
  }
  for (std::size_t i = 0; i < h.size(); ++i) t.mu_hat[i] += h[i];
}

TargetMeasure target_discrete(const PointSet& pts, const std::vector<double>& weights, int M) {
  auto t = target_empty(pts.manifold, M);
  add_discrete(t, pts, weights, 1.0);
  return t;
}

void add_circle_s2(TargetMeasure& t, const Eigen::Vector3d& axis, double polar, double weight) {
  if (t.manifold.kind != Manifold::sphere) throw DomainError("circle target: manifold must be the sphere");
  if (!(axis.norm() > 0)) throw DomainError("circle target: axis must be nonzero");
  const Eigen::Vector3d a = axis.normalized();
  // orthonormal frame (u, v, a)
  Eigen::Vector3d u = std::abs(a[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  u = (u - u.dot(a) * a).normalized();
  const Eigen::Vector3d v = a.cross(u);
  // trapezoid rule with 2M+2 nodes is exact for the degree-M restriction
  const int N = 2 * t.M + 2;
  std::vector<Eigen::Vector3d> pts;
  for (int j = 0; j < N; ++j) {
    const double s = 2.0 * M_PI * j / N;
    pts.push_back(std::cos(polar) * a + std::sin(polar) * (std::cos(s) * u + std::sin(s) * v));
  }
  add_discrete(t, PointSet::on_sphere(pts), std::vector<double>(N, 1.0 / N), weight);
}

TargetMeasure target_circle_s2(const Eigen::Vector3d& axis, double polar, double weight, int M) {
  auto t = target_empty(Manifold::sphere_of(3), M);
  add_circle_s2(t, axis, polar, weight);
  return t;
}

void check_probability(const TargetMeasure& t, double tol) {
  if (t.mu_hat.size() != std::size_t(basis_size(t.manifold, t.M))) throw DomainError("target: coefficient count mismatch");
  if (std::abs(t.mu_hat[0] - cplx(1.0)) > tol) throw DomainError("target: total mass must be 1");
}

// ---- objective -------------------------------------------------------------

std::vector<double> coefficient_weights(const SpectralTable& table, int M) {
  require_supported(table.manifold);
  if (table.M < M) throw DomainError("discrepancy: spectral table shorter than the truncation degree");
  std::vector<double> w(basis_size(table.manifold, M), 0.0);
  switch (table.manifold.kind) {
  case Manifold::sphere:
    for (int m = 0; m <= M; ++m)
      for (int l = -m; l <= m; ++l) w[sh_index(m, l)] = table.at(m);
    break;
  case Manifold::so3:
    for (int m = 0; m <= M; ++m)
      for (int k = -m; k <= m; ++k)
        for (int l = -m; l <= m; ++l) w[wd_index(m, k, l)] = table.at(m);
    break;
  default:
    for (int m1 = 0; m1 <= M; ++m1)
      for (int m2 = m1 % 2; m2 <= M; m2 += 2) {
        const double a = table.at(Partition2((m1 + m2) / 2, std::abs(m1 - m2) / 2));
        for (int k = -m1; k <= m1; ++k)
          for (int l = -m2; l <= m2; ++l) w[pair_index(M, m1, k, m2, l)] = a;
      }
    break;
  }
  return w;
}

std::vector<cplx> empirical_coeffs(const PointSet& ps, int M, int threads) {
  if (ps.size() < 1) throw DomainError("discrepancy: empty point set");
  std::vector<cplx> v(ps.size(), cplx(1.0 / ps.size()));
  switch (ps.manifold.kind) {
  case Manifold::sphere: {
    std::vector<Eigen::Vector3d> x(ps.size());
    for (int j = 0; j < ps.size(); ++j) x[j] = ps.sphere_point(j);
    auto plan = NuPlan::s2(M, x, NuMode::direct);
    plan.set_threads(threads);
    return plan.adjoint(v);
  }
  case Manifold::so3: {
    std::vector<Eigen::Vector4d> q(ps.size());
    for (int j = 0; j < ps.size(); ++j) q[j] = ps.quat(j);
    auto plan = NuPlan::so3(M, q);
    plan.set_threads(threads);
    return plan.adjoint(v);
  }
  default: {
    std::vector<SpherePair> p(ps.size());
    for (int j = 0; j < ps.size(); ++j) p[j] = ps.pair(j);
    auto plan = NuPlan::s2xs2(M, p, NuMode::direct);
    plan.set_threads(threads);
    return plan.adjoint(v);
  }
  }
}

namespace {

struct Residual {
  std::vector<cplx> g; // w_i (nu_hat_i - mu_hat_i)
  double value;
};

Residual residual(const SpectralTable& table, const TargetMeasure& target, const PointSet& ps) {
  require_same(table.manifold, target.manifold);
  require_same(table.manifold, ps.manifold);
  check_probability(target);
  const auto w = coefficient_weights(table, target.M);
  const auto nu = empirical_coeffs(ps, target.M);
  Residual r{std::vector<cplx>(w.size()), 0.0};
  for (std::size_t i = 0; i < w.size(); ++i) {
    const cplx d = nu[i] - target.mu_hat[i];
    r.g[i] = w[i] * d;
    r.value += w[i] * std::norm(d);
  }
  return r;
}

} // namespace

double objective(const SpectralTable& table, const TargetMeasure& target, const PointSet& ps) {
  return residual(table, target, ps).value;
}

Eigen::MatrixXd gradient(const SpectralTable& table, const TargetMeasure& target, const PointSet& ps) {
  const auto r = residual(table, target, ps);
  const int M = target.M, n = ps.size();
  const double scale = 2.0 / n;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(ps.coords.rows(), n);
  std::vector<cplx> Y, dth, dph, Y2, dth2, dph2, D;
  switch (ps.manifold.kind) {
  case Manifold::sphere: {
    for (int j = 0; j < n; ++j) {
      double th, ph;
      to_spherical(ps.sphere_point(j), th, ph);
      sph_harm_all_grad(M, th, ph, Y, dth, dph);
      G.col(j) = scale * sphere_grad(dth, dph, r.g.data(), sh_count(M), 1, th, ph).real();
    }
    break;
  }
  case Manifold::so3: {
    // right-invariant generators: d/dt D(R exp(t X_e)) = D(R) A_e
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector4d q = ps.quat(j);
      wigner_D_all(M, q, D);
      cplx dx = 0.0, dy = 0.0, dz = 0.0;
      for (int m = 0; m <= M; ++m)
        for (int k = -m; k <= m; ++k)
          for (int l = -m; l <= m; ++l) {
            const cplx g = r.g[wd_index(m, k, l)];
            if (g == cplx(0.0)) continue;
            dz += g * D[wd_index(m, k, l)] * cplx(0.0, -double(l));
            // (A_y)_{l', l} for l' = l +- 1, and (A_x)_{l', l} = i^{l' - l} (A_y)_{l', l}
            if (l + 1 <= m) {
              const double ay = -0.5 * std::sqrt(double(m - l) * (m + l + 1));
              const cplx Dk = D[wd_index(m, k, l + 1)];
              dy += g * Dk * ay;
              dx += g * Dk * cplx(0.0, ay);
            }
            if (l - 1 >= -m) {
              const double ay = 0.5 * std::sqrt(double(m + l) * (m - l + 1));
              const cplx Dk = D[wd_index(m, k, l - 1)];
              dy += g * Dk * ay;
              dx += g * Dk * cplx(0.0, -ay);
            }
          }
      const Eigen::Vector4d ux = qmul(q, {0, 1, 0, 0}), uy = qmul(q, {0, 0, 1, 0}), uz = qmul(q, {0, 0, 0, 1});
      G.col(j) = scale * 2.0 * (dx.real() * ux + dy.real() * uy + dz.real() * uz);
    }
    break;
  }
  default: {
    const int S = sh_count(M);
    std::vector<cplx> bx(S), by(S);
    for (int j = 0; j < n; ++j) {
      const SpherePair p = ps.pair(j);
      double t1, p1, t2, p2;
      to_spherical(p.x, t1, p1);
      to_spherical(p.y, t2, p2);
      sph_harm_all_grad(M, t1, p1, Y, dth, dph);
      sph_harm_all_grad(M, t2, p2, Y2, dth2, dph2);
      // bx_a = sum_b g_ab Y_b(y), by_b = sum_a g_ab Y_a(x)
      std::fill(by.begin(), by.end(), cplx(0.0));
      for (int a = 0; a < S; ++a) {
        cplx s = 0.0;
        const cplx* row = r.g.data() + std::size_t(a) * S;
        for (int b = 0; b < S; ++b) {
          s += row[b] * Y2[b];
          by[b] += row[b] * Y[a];
        }
        bx[a] = s;
      }
      G.col(j).head<3>() = scale * sphere_grad(dth, dph, bx.data(), S, 1, t1, p1).real();
      G.col(j).tail<3>() = scale * sphere_grad(dth2, dph2, by.data(), S, 1, t2, p2).real();
    }
    break;
  }
  }
  return G;
}

double kernel_discrepancy_uniform(const PointSet& ps) {
  const Manifold& mf = ps.manifold;
  require_supported(mf);
  double s0, c;
  switch (mf.kind) {
  case Manifold::sphere: s0 = 1.0, c = distance_constant(3); break;
  case Manifold::so3: s0 = std::sqrt(3.0), c = distance_constant(9); break;
  default: s0 = std::sqrt(2.0), c = distance_constant(16); break;
  }
  const int n = ps.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum += s0 - c * point_distance(mf, ps.coords.col(i), ps.coords.col(j));
  return sum / (double(n) * n) - kernel_table(mf, 0).entries[0].value;
}

// ---- minimization ------------------------------------------------------------

PointSet initial_points(const Manifold& mf, int n, std::mt19937_64& rng) {
  if (n < 1) throw DomainError("minimize: n must be positive");
  const int pool_size = std::max(20 * n, 200);
  std::vector<Eigen::VectorXd> pool;
  for (int i = 0; i < pool_size; ++i) pool.push_back(random_point(mf, rng));
  PointSet ps{mf, Eigen::MatrixXd(point_dim(mf), n)};
  std::vector<double> best(pool_size, 1e300);
  int pick = 0;
  for (int j = 0; j < n; ++j) {
    ps.coords.col(j) = pool[pick];
    best[pick] = -1.0;
    int next = 0;
    for (int i = 0; i < pool_size; ++i) {
      if (best[i] < 0) continue;
      best[i] = std::min(best[i], point_distance(mf, pool[i], pool[pick]));
      if (best[i] > best[next] || best[next] < 0) next = i;
    }
    pick = next;
  }
  return ps;
}

MinimizeResult minimize_from(const SpectralTable& table, const TargetMeasure& target, PointSet x,
                             const MinimizeOptions& opts) {
  const Manifold& mf = x.manifold;
  x.validate(1e-8);
  retract(mf, x.coords);
  MinimizeResult res;
  double f = objective(table, target, x);
  Eigen::MatrixXd g = gradient(table, target, x);
  res.trace.push_back({0, f, g.norm()});
  std::deque<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> mem; // (s, y)
  double last_t = 0.0;
  for (int it = 1; it <= opts.max_iters; ++it) {
    const double gn = g.norm();
    if (gn <= opts.tol) {
      res.converged = true;
      break;
    }
    // two-loop recursion with ambient differences, projected back to the tangent space
    Eigen::MatrixXd d = -g;
    if (!mem.empty()) {
      std::vector<double> alpha(mem.size());
      Eigen::MatrixXd qv = g;
      for (int i = int(mem.size()) - 1; i >= 0; --i) {
        alpha[i] = frob_dot(mem[i].first, qv) / frob_dot(mem[i].second, mem[i].first);
        qv -= alpha[i] * mem[i].second;
      }
      const auto& [s_last, y_last] = mem.back();
      qv *= frob_dot(s_last, y_last) / frob_dot(y_last, y_last);
      for (std::size_t i = 0; i < mem.size(); ++i) {
        const double beta = frob_dot(mem[i].second, qv) / frob_dot(mem[i].second, mem[i].first);
        qv += (alpha[i] - beta) * mem[i].first;
      }
      d = -qv;
      project_tangent(mf, x.coords, d);
      if (frob_dot(d, g) >= -1e-12 * d.norm() * gn) {
        d = -g;
        mem.clear();
      }
    }
    double t = mem.empty() ? (last_t > 0 ? 2.0 * last_t : 0.1 / gn) : 1.0;
    const double slope = frob_dot(g, d);
    PointSet xn = x;
    double fn = f;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      xn.coords = x.coords + t * d;
      retract(mf, xn.coords);
      fn = objective(table, target, xn);
      if (fn <= f + 1e-4 * t * slope && fn < f) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (!mem.empty()) {
        mem.clear();
        continue;
      }
      res.converged = true; // no further decrease representable
      break;
    }
    const Eigen::MatrixXd gnew = gradient(table, target, xn);
    if (opts.memory > 0) {
      Eigen::MatrixXd s = xn.coords - x.coords, y = gnew - g;
      if (frob_dot(s, y) > 1e-16 * s.norm() * y.norm()) {
        mem.emplace_back(std::move(s), std::move(y));
        if (int(mem.size()) > opts.memory) mem.pop_front();
      }
    }
    last_t = t;
    x = std::move(xn);
    f = fn;
    g = gnew;
    res.trace.push_back({it, f, g.norm()});
  }
  x.canonicalize();
  res.points = std::move(x);
  res.objective = f;
  return res;
}

MinimizeResult minimize(const SpectralTable& table, const TargetMeasure& target, int n, const MinimizeOptions& opts) {
  if (n < 1) throw DomainError("minimize: n must be positive");
  MinimizeResult best;
  bool have = false;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    std::seed_seq seq{(unsigned long long)(opts.seed & 0xffffffffu), (unsigned long long)(opts.seed >> 32),
                      (unsigned long long)r};
    std::mt19937_64 rng(seq);
    auto res = minimize_from(table, target, initial_points(target.manifold, n, rng), opts);
    res.best_restart = r;
    if (!have || res.objective < best.objective) {
      best = std::move(res);
      have = true;
    }
  }
  return best;
}

// ---- scenarios -------------------------------------------------------------

TargetMeasure two_circle_target(int M) {
  auto t = target_empty(Manifold::sphere_of(3), M);
  add_circle_s2(t, Eigen::Vector3d::UnitZ(), M_PI / 4, 0.9);
  add_circle_s2(t, -Eigen::Vector3d::UnitZ(), M_PI / 4, 0.1);
  return t;
}

int count_upper(const PointSet& ps) {
  int c = 0;
  for (int j = 0; j < ps.size(); ++j) c += ps.coords(2, j) > 0 ? 1 : 0;
  return c;
}

TargetMeasure torus_circle_target(int M) {
  auto t = target_empty(Manifold::so3_group(), M);
  const int N = 2 * M + 2;
  std::vector<Eigen::Vector4d> torus, circle;
  for (int a = 0; a < N; ++a) {
    circle.push_back(quat_from_euler(2 * M_PI * a / N, 0.0, 0.0));
    for (int b = 0; b < N; ++b) torus.push_back(quat_from_euler(2 * M_PI * a / N, M_PI / 2, 2 * M_PI * b / N));
  }
  add_discrete(t, PointSet::on_so3(torus), std::vector<double>(torus.size(), 1.0 / torus.size()), 0.9);
  add_discrete(t, PointSet::on_so3(circle), std::vector<double>(circle.size(), 1.0 / circle.size()), 0.1);
  return t;
}

int count_near_torus(const PointSet& ps) {
  int c = 0;
  for (int j = 0; j < ps.size(); ++j) {
    const Eigen::Vector4d q = ps.quat(j);
    // third component of R(q) e3
    const double z = 1.0 - 2.0 * (q[1] * q[1] + q[2] * q[2]);
    c += std::abs(z) < std::sqrt(0.5) ? 1 : 0;
  }
  return c;
}

std::vector<StudyRow> convergence_study(const std::vector<int>& n_list, const MinimizeOptions& opts) {
  std::vector<StudyRow> rows;
  for (int n : n_list) {
    const int M = std::max(1, int(std::lround(std::pow(double(n), 0.25))));
    const auto table = kernel_table(Manifold::g24_space(), M);
    const auto target = target_uniform(Manifold::g24_space(), M);
    auto res = minimize(table, target, n, opts);
    rows.push_back({n, M, kernel_discrepancy_uniform(res.points), res.objective});
  }
  return rows;
}

double loglog_slope(const std::vector<StudyRow>& rows) {
  if (rows.size() < 2) throw DomainError("slope fit needs at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    if (!(r.discrepancy > 0)) throw NumericalError("slope fit: nonpositive discrepancy");
    const double x = std::log(double(r.n)), y = std::log(r.discrepancy);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double k = double(rows.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

} // namespace mdisc
