#include "mdisc/ball_eigen.hpp"

#include "mdisc/errors.hpp"
#include "mdisc/kernels.hpp"
#include "mdisc/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mdisc {

namespace {

constexpr double kPi = std::numbers::pi;

// (-p/2)_{N-1}
double lead_pochhammer(const BallProblem& prob) { return pochhammer(-0.5 * prob.p, prob.size() - 1); }

// B_{il} = e^{-2 i row theta_l} J~_{nu_i}(z_l), rows i = 1..N; A equals
// diag(omega^{nu_i}) B diag(e^{i nu0 theta_l}).
Eigen::MatrixXcd matrix_B(const BallProblem& prob, double omega, const std::vector<double>& th) {
  const int N = prob.size();
  Eigen::MatrixXcd B(N, N);
  for (int l = 0; l < N; ++l) {
    const cplx z = std::polar(omega, th[l]);
    for (int i = 1; i <= N; ++i)
      B(i - 1, l) = std::polar(1.0, -2.0 * i * th[l]) * bessel_j_scaled(prob.nu0() - i, z);
  }
  return B;
}

// +1 if det B is real, -1 if it is imaginary: conjugation permutes the
// columns by a reversal.
int conj_parity(const BallProblem& prob, Branch branch) {
  const int N = prob.size();
  const int reversed = branch > 0 ? N - 1 : N;
  return (reversed / 2) % 2 == 0 ? 1 : -1;
}

void normalize_columns(Eigen::MatrixXcd& B, Eigen::VectorXd& norms) {
  norms.resize(B.cols());
  for (int l = 0; l < B.cols(); ++l) {
    norms[l] = B.col(l).norm();
    if (norms[l] > 0) B.col(l) /= norms[l];
  }
}

double scaled_det(const BallProblem& prob, double omega, Branch branch, const std::vector<double>& th) {
  Eigen::MatrixXcd B = matrix_B(prob, omega, th);
  Eigen::VectorXd norms;
  normalize_columns(B, norms);
  const cplx det = B.determinant();
  return conj_parity(prob, branch) > 0 ? det.real() : det.imag();
}

} // namespace

BallProblem::BallProblem(int d_, int p_, int m_) : d(d_), p(p_), m(m_) {
  if (d < 3 || d % 2 == 0) throw DomainError("ball problem: d must be odd and at least 3");
  if (p % 2 == 0 || p <= 1 - d) throw DomainError("ball problem: p must be odd with p > 1 - d");
  if (m < 0) throw DomainError("ball problem: negative degree");
}

double radial_kernel(const BallProblem& prob, double r, double s) {
  if (r < 0 || r > 1 || s < 0 || s > 1) throw DomainError("radial_kernel: arguments must lie in [0, 1]");
  const double lo = std::min(r, s), hi = std::max(r, s);
  if (hi == 0.0) {
    if (prob.m > 0 || prob.p > 0) return 0.0;
    throw DomainError("radial_kernel: singular at r = s = 0");
  }
  const double rho = lo / hi, a = 0.5 * prob.d - 1.0, h = -0.5 * prob.p;
  double pre = 1.0;
  for (int i = 0; i < prob.m; ++i) pre *= (h + i) / (a + i);
  const double F = pfq({prob.m + h, 1.0 - prob.size()}, {prob.m + 0.5 * prob.d}, rho * rho);
  return pre * std::pow(rho, prob.m) * std::pow(hi, prob.p) * F;
}

std::vector<double> branch_angles(const BallProblem& prob, Branch branch) {
  const int N = prob.size(), D = prob.d + prob.p;
  std::vector<double> th(N);
  for (int l = 0; l < N; ++l) th[l] = branch > 0 ? 2.0 * kPi * l / D : kPi * (2.0 * l + 1.0) / D;
  return th;
}

Eigen::MatrixXcd matrix_A(const BallProblem& prob, double omega, Branch branch) {
  if (!(omega > 0)) throw DomainError("matrix_A: omega must be positive");
  const auto th = branch_angles(prob, branch);
  const int N = prob.size();
  Eigen::MatrixXcd A(N, N);
  for (int l = 0; l < N; ++l) {
    const cplx z = std::polar(omega, th[l]);
    for (int i = 1; i <= N; ++i)
      A(i - 1, l) = std::polar(1.0, -double(i) * th[l]) * bessel_j_halfint(prob.nu0() - i, z);
  }
  return A;
}

cplx det_A(const BallProblem& prob, double omega, Branch branch) { return matrix_A(prob, omega, branch).determinant(); }

double det_A_real(const BallProblem& prob, double omega, Branch branch) {
  if (!(omega > 0)) throw DomainError("det_A_real: omega must be positive");
  return scaled_det(prob, omega, branch, branch_angles(prob, branch));
}

double lambda_from_omega(const BallProblem& prob, double omega, Branch branch) {
  const int N = prob.size();
  const double lead = lead_pochhammer(prob);
  const double mag = std::pow(2.0, prob.d + prob.p - 2) * (prob.d + 2 * prob.m - 2) * std::abs(lead) *
                     std::tgamma(double(N)) / std::pow(omega, prob.d + prob.p);
  return (branch > 0 ? 1.0 : -1.0) * (lead > 0 ? 1.0 : -1.0) * mag;
}

double omega_from_lambda(const BallProblem& prob, double lambda) {
  const int N = prob.size();
  const double c = std::pow(2.0, prob.d + prob.p - 2) * (prob.d + 2 * prob.m - 2) *
                   std::abs(lead_pochhammer(prob)) * std::tgamma(double(N));
  return std::pow(std::abs(c / lambda), 1.0 / (prob.d + prob.p));
}

namespace {

BallEigenpair build_pair(const BallProblem& prob, double omega, Branch branch) {
  const auto th = branch_angles(prob, branch);
  const int N = prob.size();
  BallEigenpair out;
  out.omega = omega;
  out.branch = branch;
  out.lambda = lambda_from_omega(prob, omega, branch);

  Eigen::MatrixXcd B = matrix_B(prob, omega, th);
  Eigen::VectorXd norms;
  normalize_columns(B, norms);
  for (int i = 0; i < N; ++i) B.row(i) /= B.row(i).norm();
  Eigen::VectorXcd b(N);
  if (N == 1) {
    // 1x1: compare J_nu(omega) with the local envelope of the Bessel pair
    b[0] = 1.0;
    out.singular_gap = 1.0;
    const double nu = prob.nu0() - 1.0;
    const double j0 = std::abs(bessel_j_halfint(nu, omega)), j1 = std::abs(bessel_j_halfint(nu + 1.0, omega));
    out.det_residual = j0 / std::hypot(j0, j1);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    out.det_residual = sv[N - 1] / sv[0];
    out.singular_gap = sv[N - 2] / sv[0];
    if (out.singular_gap < 1e-8)
      throw NumericalError("find_eigs: nullspace of A is not one-dimensional at omega = " + std::to_string(omega));
    b = svd.matrixV().col(N - 1);
  }
  for (int l = 0; l < N; ++l) b[l] /= norms[l];
  out.coeffs = b;

  // phase and norm from a Gauss-Legendre grid
  const auto q = gauss_legendre(200, 0.0, 1.0);
  std::vector<cplx> vals(q.nodes.size());
  std::size_t imax = 0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    vals[k] = eigenfunction_complex(out, prob, q.nodes[k]);
    if (std::abs(vals[k]) > std::abs(vals[imax])) imax = k;
  }
  const cplx phase = vals[imax] / std::abs(vals[imax]);
  double nrm = 0.0, re_max = 0.0, im_max = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    const cplx v = vals[k] / phase;
    nrm += q.weights[k] * v.real() * v.real() * std::pow(q.nodes[k], prob.d - 1);
    re_max = std::max(re_max, std::abs(v.real()));
    im_max = std::max(im_max, std::abs(v.imag()));
  }
  out.imag_residue = im_max / re_max;
  out.coeffs /= phase * std::sqrt(nrm);
  return out;
}

double bisect(const BallProblem& prob, Branch branch, const std::vector<double>& th, double lo, double hi, double flo) {
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi), fm = scaled_det(prob, mid, branch, th);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

std::vector<BallEigenpair> find_eigs(const BallProblem& prob, int count, double omega_max) {
  if (count < 1) throw DomainError("find_eigs: count must be positive");
  constexpr double kStart = 0.05, kStep = kPi / 8.0, kCap = 4000.0;
  const double target = std::max(omega_max, kStart + kStep);
  struct Root {
    double omega;
    Branch branch;
  };
  std::vector<Root> roots;
  const Branch branches[2] = {1, -1};
  std::vector<double> th[2] = {branch_angles(prob, 1), branch_angles(prob, -1)};
  double f[2] = {scaled_det(prob, kStart, 1, th[0]), scaled_det(prob, kStart, -1, th[1])};
  double w = kStart;
  while (static_cast<int>(roots.size()) < count || w < target) {
    if (w > kCap) throw NumericalError("find_eigs: scan exhausted before finding enough roots");
    const double w2 = w + kStep;
    for (int b = 0; b < 2; ++b) {
      const double f2 = scaled_det(prob, w2, branches[b], th[b]);
      if (!std::isfinite(f2)) throw NumericalError("find_eigs: determinant overflow");
      if (f2 == 0.0 || (f[b] < 0) != (f2 < 0)) roots.push_back({bisect(prob, branches[b], th[b], w, w2, f[b]), branches[b]});
      f[b] = f2;
    }
    w = w2;
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.omega < b.omega; });
  roots.resize(count);
  std::vector<BallEigenpair> out;
  for (const auto& r : roots) out.push_back(build_pair(prob, r.omega, r.branch));
  return out;
}

cplx eigenfunction_complex(const BallEigenpair& pair, const BallProblem& prob, double r) {
  if (r < -1 || r > 1) throw DomainError("eigenfunction: r must lie in [-1, 1]");
  const auto th = branch_angles(prob, pair.branch);
  cplx s = 0.0;
  for (int l = 0; l < prob.size(); ++l) s += pair.coeffs[l] * bessel_j_scaled(prob.nu0(), std::polar(pair.omega, th[l]) * r);
  return std::pow(r, prob.m) * s;
}

double eigenfunction(const BallEigenpair& pair, const BallProblem& prob, double r) {
  return eigenfunction_complex(pair, prob, r).real();
}

double apply_radial_operator(const BallProblem& prob, const std::function<double(double)>& f, double s) {
  auto g = [&](double r) { return radial_kernel(prob, s, r) * f(r) * std::pow(r, prob.d - 1); };
  AdaptiveOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-13;
  return integrate_adaptive(g, 0.0, s, opts) + integrate_adaptive(g, s, 1.0, opts);
}

std::vector<double> nystrom_eigs(const BallProblem& prob, int n, bool diagonal_correction) {
  if (n < 2) throw DomainError("nystrom_eigs: need at least two nodes");
  const auto q = gauss_legendre(n, 0.0, 1.0);
  Eigen::MatrixXd K(n, n);
  std::vector<double> w(n), sw(n);
  for (int i = 0; i < n; ++i) {
    w[i] = q.weights[i] * std::pow(q.nodes[i], prob.d - 1);
    sw[i] = std::sqrt(w[i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) K(i, j) = K(j, i) = radial_kernel(prob, q.nodes[i], q.nodes[j]);
  Eigen::MatrixXd S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S(i, j) = sw[i] * sw[j] * K(i, j);
  if (diagonal_correction) {
    // int K(s, r) f(r) w(r) dr = int K(s, r) (f(r) - f(s)) w(r) dr + f(s) int K(s, r) w(r) dr:
    // the rule sees only the first integrand, the second is integrated exactly
    for (int i = 0; i < n; ++i) {
      const double exact = apply_radial_operator(prob, [](double) { return 1.0; }, q.nodes[i]);
      double rule = 0.0;
      for (int j = 0; j < n; ++j) rule += K(i, j) * w[j];
      S(i, i) += exact - rule;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  return ev;
}

double sphere_volume(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

double BallExpansion::scaled(int m, int j) const {
  return radial.at(m).at(j).lambda * (d - 2) * sphere_volume(d) / (2.0 * m + d - 2);
}

double BallExpansion::partial_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int Mp, int Jp) const {
  const double r = x.norm(), s = y.norm();
  const double t = (r > 0 && s > 0) ? std::clamp(x.dot(y) / (r * s), -1.0, 1.0) : 1.0;
  const double alpha = 0.5 * d - 1.0;
  double sum = 0.0;
  for (int m = 0; m <= std::min(Mp, M); ++m) {
    const BallProblem prob(d, p, m);
    double km = 0.0;
    for (int j = 0; j < std::min(Jp, J); ++j) {
      const auto& e = radial[m][j];
      km += e.lambda * eigenfunction(e, prob, r) * eigenfunction(e, prob, s);
    }
    sum += km * gegenbauer(alpha, m, t);
  }
  return sum;
}

BallExpansion assemble_ball_expansion(int d, int p, int M, int J) {
  if (M < 0 || J < 1) throw DomainError("assemble_ball_expansion: need M >= 0 and J >= 1");
  BallExpansion e;
  e.d = d;
  e.p = p;
  e.M = M;
  e.J = J;
  for (int m = 0; m <= M; ++m) e.radial.push_back(find_eigs(BallProblem(d, p, m), J));
  return e;
}

std::vector<std::vector<double>> discrepancy_ball_spectrum(const BallExpansion& ex, double s) {
  if (ex.p != 1) throw DomainError("discrepancy_ball_spectrum: requires p = 1");
  const double c = distance_constant(ex.d), vol = sphere_volume(ex.d);
  std::vector<std::vector<double>> out(ex.M + 1);
  // m = 0: s 1 1^T - c K_0 in the eigenbasis of K_0
  {
    const BallProblem prob(ex.d, 1, 0);
    const auto q = gauss_legendre(200, 0.0, 1.0);
    Eigen::VectorXd u(ex.J);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(ex.J, ex.J);
    for (int j = 0; j < ex.J; ++j) {
      double uj = 0.0;
      for (std::size_t k = 0; k < q.nodes.size(); ++k)
        uj += q.weights[k] * eigenfunction(ex.radial[0][j], prob, q.nodes[k]) * std::pow(q.nodes[k], ex.d - 1);
      u[j] = uj;
      T(j, j) = -c * ex.radial[0][j].lambda;
    }
    T += s * u * u.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
    for (int j = ex.J - 1; j >= 0; --j) out[0].push_back(es.eigenvalues()[j] * vol);
  }
  for (int m = 1; m <= ex.M; ++m) {
    for (int j = 0; j < ex.J; ++j) out[m].push_back(-c * ex.scaled(m, j));
    std::sort(out[m].rbegin(), out[m].rend());
  }
  return out;
}

double eigen_residual(const BallEigenpair& pair, const BallProblem& prob, int grid) {
  if (grid < 1) throw DomainError("eigen_residual: grid must be positive");
  auto phi = [&](double r) { return eigenfunction(pair, prob, r); };
  double res = 0.0, fmax = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double s = (k + 0.5) / grid, v = phi(s);
    res = std::max(res, std::abs(apply_radial_operator(prob, phi, s) - pair.lambda * v));
    fmax = std::max(fmax, std::abs(v));
  }
  return res / (std::abs(pair.lambda) * fmax);
}

} // namespace mdisc
