#include "mdisc/specfun.hpp"

#include "mdisc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mdisc {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Bernoulli polynomials B_2 .. B_7
double bernoulli_poly(int n, double a) {
  const double a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
  switch (n) {
  case 2: return a2 - a + 1.0 / 6.0;
  case 3: return a3 - 1.5 * a2 + 0.5 * a;
  case 4: return a4 - 2.0 * a3 + a2 - 1.0 / 30.0;
  case 5: return a5 - 2.5 * a4 + 5.0 / 3.0 * a3 - a / 6.0;
  case 6: return a5 * a - 3.0 * a5 + 2.5 * a4 - 0.5 * a2 + 1.0 / 42.0;
  case 7: return a5 * a2 - 3.5 * a5 * a + 3.5 * a5 - 7.0 / 6.0 * a3 + a / 6.0;
  }
  return 0.0;
}

// log Gamma(x+a) - log Gamma(x+b) and its x-derivative for x >> |a|, |b|
struct LogGammaPair {
  double a, b;
  double c[7]; // c[n] multiplies x^{-n}
  LogGammaPair(double a_, double b_) : a(a_), b(b_) {
    c[0] = 0.0;
    for (int n = 1; n <= 6; ++n)
      c[n] = ((n % 2) ? 1.0 : -1.0) * (bernoulli_poly(n + 1, a) - bernoulli_poly(n + 1, b)) / (n * (n + 1.0));
  }
  double value(double x) const {
    double s = (a - b) * std::log(x), xn = 1.0;
    for (int n = 1; n <= 6; ++n) s += c[n] * (xn /= x);
    return s;
  }
  double deriv(double x) const {
    double s = (a - b) / x, xn = 1.0 / x;
    for (int n = 1; n <= 6; ++n) s -= n * c[n] * (xn /= x);
    return s;
  }
};

// Balanced p+1Fp(...; 1): direct sum up to K, then the Euler-Maclaurin tail
// int_K^inf t + t(K)/2 - t'(K)/12 + t'''(K)/720 - t^(5)(K)/30240 with t(x)
// the continuation of the terms. For K >> |parameters|,
// t(x) = C x^{-sigma} sum_n d_n x^{-n} and every piece has a closed form.
template <class Ratio>
double pfq_unit_balanced(const std::vector<double>& upper, const std::vector<double>& lower, Ratio ratio) {
  const std::size_t q = lower.size();
  double pmax = 1.0, sigma = 1.0;
  for (double a : upper) pmax = std::max(pmax, std::abs(a)), sigma -= a;
  for (double b : lower) pmax = std::max(pmax, std::abs(b)), sigma += b;
  const long K = std::max(1000L, static_cast<long>(100.0 * (1.0 + pmax)));

  double term = 1.0, sum = 1.0;
  for (long k = 0; k < K; ++k) {
    term *= ratio(k);
    sum += term;
    if (!std::isfinite(sum)) throw NumericalError("pfq: overflow while summing");
  }
  if (term == 0.0) return sum;

  // log t(x) = -sigma log x + sum_n c_n x^{-n} + const
  constexpr int N = 6;
  double c[N + 1] = {0.0};
  for (std::size_t i = 0; i <= q; ++i) {
    LogGammaPair pr(upper[i], i < q ? lower[i] : 1.0);
    for (int n = 1; n <= N; ++n) c[n] += pr.c[n];
  }
  double d[N + 1] = {1.0};
  for (int n = 1; n <= N; ++n) {
    d[n] = 0.0;
    for (int k = 1; k <= n; ++k) d[n] += k * c[k] * d[n - k];
    d[n] /= n;
  }
  const double Kd = static_cast<double>(K);
  auto deriv = [&](int j) { // t^(j)(K) / (C K^{-sigma})
    double s = 0.0;
    for (int n = 0; n <= N; ++n) {
      double f = d[n] * std::pow(Kd, -n - j);
      for (int i = 0; i < j; ++i) f *= -(sigma + n + i);
      s += f;
    }
    return s;
  };
  double integral = 0.0;
  for (int n = 0; n <= N; ++n) integral += d[n] * std::pow(Kd, 1 - n) / (sigma + n - 1.0);
  const double t0 = deriv(0);
  const double tail = integral + 0.5 * t0 - deriv(1) / 12.0 + deriv(3) / 720.0 - deriv(5) / 30240.0;
  return sum - term + term * tail / t0; // tail includes t_K
}

} // namespace

double pochhammer(double f, int n) {
  if (n < 0) throw DomainError("pochhammer: negative length");
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= f + i;
  return p;
}

SignedLog log_gamma_signed(double x) {
  if (is_nonpositive_integer(x)) throw PoleError("gamma pole at " + std::to_string(x));
  int sgn = 1;
  if (x < 0.0) sgn = (static_cast<long>(std::ceil(-x)) % 2 == 0) ? 1 : -1;
  int dummy = 0;
  double la = ::lgamma_r(x, &dummy);
  return {la, sgn};
}

double gamma_ratio(double a, double b) {
  if (is_nonpositive_integer(b)) throw PoleError("gamma_ratio: Gamma(b) has a pole");
  if (is_nonpositive_integer(a)) throw PoleError("gamma_ratio: Gamma(a) has a pole");
  SignedLog la = log_gamma_signed(a), lb = log_gamma_signed(b);
  return la.sign * lb.sign * std::exp(la.log_abs - lb.log_abs);
}

double pfq(const std::vector<double>& upper, const std::vector<double>& lower, double z) {
  if (z == 0.0) return 1.0;

  long last = -1; // index of the last nonzero term of a terminating series
  for (double a : upper)
    if (is_nonpositive_integer(a)) {
      long n = static_cast<long>(-a);
      last = (last < 0) ? n : std::min(last, n);
    }
  for (double b : lower)
    if (is_nonpositive_integer(b)) {
      long q = static_cast<long>(-b);
      if (last < 0 || q < last) throw PoleError("pfq: lower parameter hits a pole before termination");
    }

  auto ratio = [&](long k) {
    double r = z / (k + 1.0);
    for (double a : upper) r *= a + k;
    for (double b : lower) r /= b + k;
    return r;
  };

  if (last >= 0) {
    double term = 1.0, sum = 1.0;
    for (long k = 0; k < last; ++k) {
      term *= ratio(k);
      sum += term;
    }
    return sum;
  }

  const std::size_t p = upper.size(), q = lower.size();
  double balance = 0.0;
  for (double b : lower) balance += b;
  for (double a : upper) balance -= a;
  const bool on_circle = (p == q + 1) && std::abs(z) == 1.0;
  if (p > q + 1 || (p == q + 1 && std::abs(z) > 1.0) || (on_circle && !(balance > 0.0)))
    throw DivergenceError("pfq: series neither terminates nor converges");

  if (on_circle && z == 1.0) return pfq_unit_balanced(upper, lower, ratio);

  constexpr long kCap = 1000000;
  double term = 1.0, sum = 1.0;
  for (long k = 0; k < kCap; ++k) {
    double r = ratio(k);
    term *= r;
    sum += term;
    if (!std::isfinite(sum)) throw NumericalError("pfq: overflow while summing");
    double rn = std::abs(ratio(k + 1));
    if (rn < 1.0 && std::abs(term) * rn / (1.0 - rn) <= 1e-16 * std::abs(sum)) return sum;
    if (term == 0.0) return sum;
  }
  throw NumericalError("pfq: term cap reached before convergence");
}

double gegenbauer(double alpha, int m, double t) {
  if (std::abs(t) > 1.0 + 1e-12) throw DomainError("gegenbauer: |t| > 1");
  if (m < 0) throw DomainError("gegenbauer: negative degree");
  if (alpha <= -0.5) throw DomainError("gegenbauer: alpha <= -1/2");
  if (m == 0) return 1.0;
  if (alpha == 0.0) {
    // limit C^alpha_m / alpha = (2/m) T_m
    double t0 = 1.0, t1 = t;
    for (int n = 1; n < m; ++n) {
      double t2 = 2.0 * t * t1 - t0;
      t0 = t1;
      t1 = t2;
    }
    return 2.0 / m * t1;
  }
  double c0 = 1.0, c1 = 2.0 * alpha * t;
  for (int n = 1; n < m; ++n) {
    double c2 = (2.0 * (n + alpha) * t * c1 - (n + 2.0 * alpha - 1.0) * c0) / (n + 1.0);
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

// ---- spherical harmonics ---------------------------------------------------

void to_spherical(const Eigen::Vector3d& x, double& theta, double& phi) {
  theta = std::atan2(std::hypot(x[0], x[1]), x[2]);
  phi = std::atan2(x[1], x[0]);
}

Eigen::Vector3d from_spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

namespace {

inline int alf_index(int m, int l) { return m * (m + 1) / 2 + l; }

// Normalized associated Legendre values Q^l_m(cos theta) for 0 <= l <= m <= M
// and, optionally, Q^l_m / sin(theta) for l >= 1 (computed without division).
void alf_table(int M, double t, double s, std::vector<double>& Q, std::vector<double>* Qs) {
  const int size = (M + 1) * (M + 2) / 2;
  Q.assign(size, 0.0);
  if (Qs) Qs->assign(size, 0.0);
  double qll = 1.0, qll_s = 0.0;
  for (int l = 0; l <= M; ++l) {
    if (l > 0) {
      qll_s = -std::sqrt((2.0 * l + 1.0) / (2.0 * l)) * qll;
      qll = qll_s * s;
    }
    Q[alf_index(l, l)] = qll;
    if (Qs && l > 0) (*Qs)[alf_index(l, l)] = qll_s;
    if (l + 1 <= M) {
      double f = std::sqrt(2.0 * l + 3.0) * t;
      Q[alf_index(l + 1, l)] = f * qll;
      if (Qs && l > 0) (*Qs)[alf_index(l + 1, l)] = f * qll_s;
    }
    for (int m = l + 2; m <= M; ++m) {
      double a = std::sqrt((4.0 * m * m - 1.0) / (double(m) * m - double(l) * l));
      double b = std::sqrt((double(m - 1) * (m - 1) - double(l) * l) / (4.0 * (m - 1) * (m - 1) - 1.0));
      Q[alf_index(m, l)] = a * (t * Q[alf_index(m - 1, l)] - b * Q[alf_index(m - 2, l)]);
      if (Qs && l > 0)
        (*Qs)[alf_index(m, l)] = a * (t * (*Qs)[alf_index(m - 1, l)] - b * (*Qs)[alf_index(m - 2, l)]);
    }
  }
}

} // namespace

void sph_harm_all(int M, double theta, double phi, std::vector<cplx>& Y) {
  std::vector<double> Q;
  alf_table(M, std::cos(theta), std::sin(theta), Q, nullptr);
  Y.assign(sh_count(M), cplx(0.0));
  for (int l = 0; l <= M; ++l) {
    cplx e = std::polar(1.0, l * phi);
    double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    for (int m = l; m <= M; ++m) {
      cplx y = Q[alf_index(m, l)] * e;
      Y[sh_index(m, l)] = y;
      if (l > 0) Y[sh_index(m, -l)] = sgn * std::conj(y);
    }
  }
}

void sph_harm_all_grad(int M, double theta, double phi, std::vector<cplx>& Y, std::vector<cplx>& dtheta,
                       std::vector<cplx>& dphi_over_sin) {
  std::vector<double> Q, Qs;
  const double t = std::cos(theta);
  alf_table(M, t, std::sin(theta), Q, &Qs);
  const int n = sh_count(M);
  Y.assign(n, cplx(0.0));
  dtheta.assign(n, cplx(0.0));
  dphi_over_sin.assign(n, cplx(0.0));
  for (int l = 0; l <= M; ++l) {
    cplx e = std::polar(1.0, l * phi);
    double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    for (int m = l; m <= M; ++m) {
      double q = Q[alf_index(m, l)];
      double dq;
      if (l == 0) {
        dq = (m == 0) ? 0.0 : std::sqrt(double(m) * (m + 1)) * Q[alf_index(m, 1)];
      } else {
        dq = m * t * Qs[alf_index(m, l)];
        if (m - 1 >= l)
          dq -= std::sqrt((2.0 * m + 1.0) * (double(m) * m - double(l) * l) / (2.0 * m - 1.0)) *
                Qs[alf_index(m - 1, l)];
      }
      cplx y = q * e, yt = dq * e, yp = cplx(0.0, l) * Qs[alf_index(m, l)] * e;
      if (l == 0) yp = 0.0;
      Y[sh_index(m, l)] = y;
      dtheta[sh_index(m, l)] = yt;
      dphi_over_sin[sh_index(m, l)] = yp;
      if (l > 0) {
        Y[sh_index(m, -l)] = sgn * std::conj(y);
        dtheta[sh_index(m, -l)] = sgn * std::conj(yt);
        dphi_over_sin[sh_index(m, -l)] = sgn * std::conj(yp);
      }
    }
  }
}

cplx sph_harm(int m, int l, const Eigen::Vector3d& x) {
  if (m < 0 || std::abs(l) > m) throw IndexError("sph_harm: need |l| <= m");
  if (std::abs(x.norm() - 1.0) > 1e-10) throw DomainError("sph_harm: point not on the unit sphere");
  double theta, phi;
  to_spherical(x, theta, phi);
  std::vector<double> Q;
  alf_table(m, std::cos(theta), std::sin(theta), Q, nullptr);
  int al = std::abs(l);
  cplx y = Q[alf_index(m, al)] * std::polar(1.0, al * phi);
  if (l < 0) y = ((al % 2 == 0) ? 1.0 : -1.0) * std::conj(y);
  return y;
}

// ---- Wigner functions ------------------------------------------------------

EulerZYZ quat_to_euler(const Eigen::Vector4d& q) {
  const double cb = std::hypot(q[0], q[3]), sb = std::hypot(q[1], q[2]);
  const double sigma = std::atan2(q[3], q[0]);  // (alpha + gamma) / 2
  const double delta = std::atan2(-q[1], q[2]); // (alpha - gamma) / 2
  return {sigma + delta, 2.0 * std::atan2(sb, cb), sigma - delta};
}

namespace {

double jacobi_p(int n, double a, double b, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int k = 2; k <= n; ++k) {
    double c = 2.0 * k + a + b;
    double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
    double a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
    double a3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    double p2 = (a2 * p1 - a3 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double wigner_d_half(int j, int mp, int m, double cb2, double sb2, double cosb) {
  // d^j_{m' m}(beta) through Jacobi polynomials
  int k = std::min({j + m, j - m, j + mp, j - mp});
  int a, lam;
  if (k == j + m) {
    a = mp - m;
    lam = mp - m;
  } else if (k == j - m) {
    a = m - mp;
    lam = 0;
  } else if (k == j + mp) {
    a = m - mp;
    lam = 0;
  } else {
    a = mp - m;
    lam = mp - m;
  }
  int b = 2 * j - 2 * k - a;
  double logpre = 0.5 * log_binom(2 * j - k, k + a) - 0.5 * log_binom(k + b, b);
  double val = std::exp(logpre) * std::pow(sb2, a) * std::pow(cb2, b) * jacobi_p(k, a, b, cosb);
  return (lam % 2 == 0) ? val : -val;
}

} // namespace

double wigner_d(int m, int k, int l, double beta) {
  if (m < 0 || std::abs(k) > m || std::abs(l) > m) throw IndexError("wigner_d: need |k|,|l| <= m");
  return wigner_d_half(m, k, l, std::cos(0.5 * beta), std::sin(0.5 * beta), std::cos(beta));
}

cplx wigner_D(int m, int k, int l, const Eigen::Vector4d& q) {
  if (m < 0 || std::abs(k) > m || std::abs(l) > m) throw IndexError("wigner_D: need |k|,|l| <= m");
  if (std::abs(q.norm() - 1.0) > 1e-10) throw DomainError("wigner_D: quaternion not of unit length");
  EulerZYZ e = quat_to_euler(q);
  double d = wigner_d(m, k, l, e.beta);
  return std::sqrt(2.0 * m + 1.0) * d * std::polar(1.0, -k * e.alpha - l * e.gamma);
}

void wigner_D_all(int M, const Eigen::Vector4d& q, std::vector<cplx>& D) {
  D.assign(wd_count(M), cplx(0.0));
  EulerZYZ e = quat_to_euler(q);
  const double cb2 = std::cos(0.5 * e.beta), sb2 = std::sin(0.5 * e.beta), cosb = std::cos(e.beta);
  std::vector<cplx> ea(2 * M + 1), eg(2 * M + 1);
  for (int k = -M; k <= M; ++k) {
    ea[k + M] = std::polar(1.0, -k * e.alpha);
    eg[k + M] = std::polar(1.0, -k * e.gamma);
  }
  for (int m = 0; m <= M; ++m) {
    double s = std::sqrt(2.0 * m + 1.0);
    for (int k = -m; k <= m; ++k)
      for (int l = -m; l <= m; ++l)
        D[wd_index(m, k, l)] = s * wigner_d_half(m, k, l, cb2, sb2, cosb) * ea[k + M] * eg[l + M];
  }
}

// ---- Bessel functions ------------------------------------------------------

namespace {

// j_n(z) / z^n for n >= 0 by its power series.
cplx scaled_series(int n, cplx z) {
  double dfact = 1.0;
  for (int i = 1; i <= 2 * n + 1; i += 2) dfact *= i;
  const cplx h = -0.5 * z * z;
  cplx term = 1.0, sum = 1.0;
  for (int k = 0; k < 500; ++k) {
    term *= h / ((k + 1.0) * (2.0 * n + 2.0 * k + 3.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > std::abs(z)) break;
  }
  return sum / dfact;
}

cplx j0_of(cplx z) { return std::abs(z) < 1.0 ? scaled_series(0, z) : std::sin(z) / z; }

cplx j1_of(cplx z) { return std::abs(z) < 1.0 ? z * scaled_series(1, z) : (std::sin(z) / z - std::cos(z)) / z; }

// j_n(z) for n >= 0, z != 0.
cplx sph_j_nonneg(int n, cplx z) {
  const double az = std::abs(z);
  if (az < 1.0) return std::pow(z, n) * scaled_series(n, z);
  if (n == 0) return j0_of(z);
  if (n == 1) return j1_of(z);
  if (az > n) {
    cplx a = j0_of(z), b = j1_of(z);
    for (int k = 1; k < n; ++k) {
      cplx c = (2.0 * k + 1.0) / z * b - a;
      a = b;
      b = c;
    }
    return b;
  }
  // Miller's backward recurrence
  const int N = n + 30 + static_cast<int>(az) + static_cast<int>(std::sqrt(10.0 * n));
  cplx jp1 = 0.0, jk = 1e-30, saved = 0.0;
  for (int k = N; k >= 1; --k) {
    cplx jm1 = (2.0 * k + 1.0) / z * jk - jp1;
    jp1 = jk;
    jk = jm1;
    if (k - 1 == n) saved = jk;
    if (std::abs(jk) > 1e200) {
      jk *= 1e-200;
      jp1 *= 1e-200;
      saved *= 1e-200;
    }
  }
  // jk = j_0 (unnormalized), jp1 = j_1
  cplx t0 = j0_of(z), t1 = j1_of(z);
  cplx scale = (std::abs(t0) >= std::abs(t1)) ? t0 / jk : t1 / jp1;
  if (n == 0) return t0;
  return saved * scale;
}

} // namespace

cplx sph_bessel_j(int n, cplx z) {
  if (n >= 0) {
    if (z == cplx(0.0)) return n == 0 ? 1.0 : 0.0;
    return sph_j_nonneg(n, z);
  }
  if (z == cplx(0.0)) throw DomainError("sph_bessel_j: negative order at z = 0");
  // u_k = j_{-k}(z) z^k:  u_{k+1} = (1 - 2k) u_k - z^2 u_{k-1}
  cplx u0 = j0_of(z), u1 = std::cos(z);
  for (int k = 1; k < -n; ++k) {
    cplx u2 = (1.0 - 2.0 * k) * u1 - z * z * u0;
    u0 = u1;
    u1 = u2;
  }
  return u1 / std::pow(z, -n);
}

cplx bessel_j_scaled(double nu, cplx w) {
  const double n_real = nu - 0.5;
  if (n_real != std::nearbyint(n_real)) throw DomainError("bessel_j_scaled: order must be a half-integer");
  const int n = static_cast<int>(std::nearbyint(n_real));
  const double c = std::sqrt(2.0 / kPi);
  cplx val;
  if (n >= 0) {
    const double aw = std::abs(w);
    if (aw <= std::max(1.5, std::sqrt(2.0 * n + 3.0)))
      val = scaled_series(n, w);
    else
      val = sph_j_nonneg(n, w) / std::pow(w, n);
  } else {
    cplx u0 = j0_of(w), u1 = std::cos(w);
    for (int k = 1; k < -n; ++k) {
      cplx u2 = (1.0 - 2.0 * k) * u1 - w * w * u0;
      u0 = u1;
      u1 = u2;
    }
    val = u1;
  }
  val *= c;
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
    throw NumericalError("bessel_j_scaled: overflow");
  return val;
}

namespace {

cplx bessel_j_integer(int n, cplx z) {
  if (n < 0) return ((-n) % 2 == 0 ? 1.0 : -1.0) * bessel_j_integer(-n, z);
  if (std::abs(z) <= 25.0) {
    const cplx h = -0.25 * z * z;
    cplx term = std::pow(0.5 * z, n) / std::tgamma(n + 1.0), sum = term;
    for (int k = 0; k < 2000; ++k) {
      term *= h / ((k + 1.0) * (n + k + 1.0));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum) && k > std::abs(z)) break;
    }
    return sum;
  }
  // Hankel asymptotic expansion
  const double mu = 4.0 * n * n;
  cplx P = 0.0, Q = 0.0, term = 1.0;
  cplx prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * z);
    if (std::abs(term) > std::abs(prev)) break;
    prev = term;
    if (k % 2 == 0)
      P += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    else
      Q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
  }
  cplx chi = z - (0.5 * n + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * z)) * (P * std::cos(chi) - Q * std::sin(chi));
}

} // namespace

cplx bessel_j_halfint(double nu, cplx z) {
  if (std::abs(z) > 1e4) throw DomainError("bessel_j_halfint: |z| > 1e4");
  const bool half = (nu - 0.5) == std::nearbyint(nu - 0.5);
  const bool integer = nu == std::nearbyint(nu);
  if (!half && !integer) throw DomainError("bessel_j_halfint: order must be integer or half-integer");
  if (z == cplx(0.0)) {
    if (nu < 0.0 && !integer) throw DomainError("bessel_j_halfint: negative order at z = 0");
    return nu == 0.0 ? 1.0 : 0.0;
  }
  cplx val;
  if (integer) {
    val = bessel_j_integer(static_cast<int>(nu), z);
  } else {
    int n = static_cast<int>(std::nearbyint(nu - 0.5));
    val = std::sqrt(2.0 / kPi) * std::sqrt(z) * sph_bessel_j(n, z);
  }
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) throw NumericalError("bessel_j_halfint: overflow");
  return val;
}

} // namespace mdisc
