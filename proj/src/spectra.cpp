#include "mdisc/spectra.hpp"

#include "mdisc/errors.hpp"
#include "mdisc/kernels.hpp"
#include "mdisc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mdisc {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_even_nonneg(double p) { return p >= 0.0 && std::fmod(p, 2.0) == 0.0; }

// log-space product with sign tracking
struct Signed {
  double log_abs = 0.0;
  int sign = 1;
  void mul_gamma(double x) {
    SignedLog g = log_gamma_signed(x);
    log_abs += g.log_abs;
    sign *= g.sign;
  }
  void div_gamma(double x) {
    SignedLog g = log_gamma_signed(x);
    log_abs -= g.log_abs;
    sign *= g.sign;
  }
  void mul(double x) {
    if (x == 0.0) sign = 0;
    else {
      log_abs += std::log(std::abs(x));
      if (x < 0) sign = -sign;
    }
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// Gamma(-p/2 + m) / Gamma(-p/2), with the Pochhammer reading for even p.
void mul_shifted_ratio(Signed& acc, double p, int m) {
  const double h = -0.5 * p;
  if (is_even_nonneg(p)) {
    if (m > p / 2) {
      acc.sign = 0;
      return;
    }
    for (int i = 0; i < m; ++i) acc.mul(h + i);
    return;
  }
  acc.mul_gamma(h + m);
  acc.div_gamma(h);
}

// log of (f)_n for f > 0
double log_poch(double f, int n) { return std::lgamma(f + n) - std::lgamma(f); }

} // namespace

Partition2::Partition2(int a, int b) : l1(a), l2(b) {
  if (!(a >= b && b >= 0)) throw DomainError("partition requires l1 >= l2 >= 0");
}

std::vector<Partition2> g24_partitions(int M) {
  std::vector<Partition2> out;
  for (int L = 0; L <= M; ++L)
    for (int l2 = 0; 2 * l2 <= L; ++l2) out.emplace_back(L - l2, l2);
  return out;
}

double sphere_coeff(int d, double p, int m) {
  if (d < 2) throw DomainError("sphere_coeff: d must be at least 2");
  if (m < 0) throw DomainError("sphere_coeff: negative degree");
  if (!(p > -(d - 1.0))) throw PoleError("sphere_coeff: p must exceed -(d-1)");
  Signed a;
  a.log_abs = d * std::log(2.0) - std::log(4.0 * std::sqrt(kPi)) + 0.5 * p * std::log(2.0);
  a.mul_gamma(0.5 * d);
  a.mul_gamma(0.5 * (d + p - 1.0));
  mul_shifted_ratio(a, p, m);
  if (a.sign == 0) return 0.0;
  a.div_gamma(0.5 * p + d - 1.0 + m);
  return a.value();
}

double so3_coeff(double p, int m) {
  if (m < 0) throw DomainError("so3_coeff: negative degree");
  if (!(p > -3.0)) throw PoleError("so3_coeff: p must exceed -3");
  Signed a;
  a.log_abs = p * std::log(2.0) - 0.5 * std::log(kPi) - std::log(m + 0.5);
  a.mul_gamma(0.5 * p + 1.5);
  mul_shifted_ratio(a, p, m);
  if (a.sign == 0) return 0.0;
  a.div_gamma(0.5 * p + 2.0 + m);
  return a.value();
}

double g24_coeff(double p, const Partition2& lam) {
  if (!(p > -4.0)) throw DivergenceError("g24_coeff: p must exceed -4");
  const int L = lam.size();
  if (is_even_nonneg(p) && L > p / 2) return 0.0;
  // 4^{-L} L! / ((3/2)_L (3/2)_{l1} (1)_{l2}) (-p/2)_L
  Signed a;
  a.log_abs = -L * std::log(4.0) + std::lgamma(L + 1.0) - log_poch(1.5, L) - log_poch(1.5, lam.l1) -
              std::lgamma(lam.l2 + 1.0);
  for (int i = 0; i < L; ++i) a.mul(-0.5 * p + i);
  if (a.sign == 0) return 0.0;
  const double F = pfq({0.5 * (L + 1), 0.5 * (L + 2), 0.5 * L - 0.25 * p, 0.5 * (L + 1) - 0.25 * p},
                       {L + 1.5, lam.l1 + 1.5, lam.l2 + 1.0}, 1.0);
  return a.value() * F;
}

std::string Manifold::name() const {
  switch (kind) {
  case sphere: return "sphere";
  case so3: return "so3";
  case g24: return "g24";
  case interval: return "interval";
  case brownian: return "brownian";
  }
  return "unknown";
}

double SpectralTable::at(int m) const {
  if (manifold.kind == Manifold::g24) throw DomainError("table lookup: g24 entries are indexed by partitions");
  if (m < 0 || m >= static_cast<int>(entries.size())) throw IndexError("table lookup: degree out of range");
  return entries[m].value;
}

double SpectralTable::at(const Partition2& lam) const {
  if (manifold.kind != Manifold::g24) throw DomainError("table lookup: partition index on a non-g24 table");
  if (lam.size() > M) throw IndexError("table lookup: partition out of range");
  const int L = lam.size();
  // entries before size L: sum_{j<L} (j/2 + 1)
  int off = 0;
  for (int j = 0; j < L; ++j) off += j / 2 + 1;
  return entries[off + lam.l2].value;
}

SpectralTable kernel_table(const Manifold& mf, int M) {
  if (M < 0) throw DomainError("kernel_table: M must be nonnegative");
  SpectralTable t{mf, 1.0, M, {}};
  const double r2 = std::sqrt(2.0);
  switch (mf.kind) {
  case Manifold::sphere: {
    const double c = distance_constant(mf.d);
    for (int m = 0; m <= M; ++m)
      t.entries.push_back({{m}, (m == 0 ? 1.0 : 0.0) - c * r2 * sphere_coeff(mf.d, 1.0, m)});
    break;
  }
  case Manifold::so3: {
    const double c = distance_constant(9);
    for (int m = 0; m <= M; ++m)
      t.entries.push_back({{m}, (m == 0 ? std::sqrt(3.0) : 0.0) - c * r2 * so3_coeff(1.0, m)});
    break;
  }
  case Manifold::g24: {
    const double c = distance_constant(16);
    for (const auto& lam : g24_partitions(M))
      t.entries.push_back({{lam.l1, lam.l2}, (lam.size() == 0 ? r2 : 0.0) - c * r2 * g24_coeff(1.0, lam)});
    break;
  }
  case Manifold::interval:
  case Manifold::brownian: {
    auto eig = mf.kind == Manifold::interval ? interval_eigs(mf.s, M + 1) : brownian_eigs(mf.s, M + 1);
    for (int m = 0; m <= M; ++m) t.entries.push_back({{m}, eig[m].lambda});
    break;
  }
  }
  return t;
}

double IntervalEigen::operator()(double x) const {
  return branch == sine ? amp * std::sin(freq * x) : amp * std::cos(freq * x);
}

double cot_root(int k) {
  if (k < 1) throw DomainError("cot_root: k must be positive");
  // g(u) = u sin u - cos u changes sign exactly once on the bracket
  double lo = (k - 1) * kPi, hi = lo + 0.5 * kPi;
  auto g = [](double u) { return u * std::sin(u) - std::cos(u); };
  double glo = g(lo);
  if (glo * g(hi) > 0) throw NumericalError("cot_root: bracket does not contain a root");
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi), gm = g(mid);
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<IntervalEigen> interval_eigs(double s, int count) {
  if (!(s > 0)) throw DomainError("interval_eigs: s must be positive");
  if (count < 1) throw DomainError("interval_eigs: count must be positive");
  // eigenvalues interlace: u_1 < pi/2 < u_2 < 3pi/2 < ..., so count of each suffices
  std::vector<IntervalEigen> out;
  for (int k = 1; k <= count; ++k) {
    const double w = (2 * k - 1) * kPi / (2 * s);
    out.push_back({IntervalEigen::sine, 1.0 / (w * w), w, 1.0 / std::sqrt(s)});
    const double u = cot_root(k), su = std::sin(u);
    out.push_back({IntervalEigen::cosine, s * s / (u * u), u / s, 1.0 / std::sqrt(s * (1.0 + su * su)), u});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lambda > b.lambda; });
  out.resize(count);
  return out;
}

std::vector<IntervalEigen> brownian_eigs(double s, int count) {
  if (!(s > 0)) throw DomainError("brownian_eigs: s must be positive");
  if (count < 1) throw DomainError("brownian_eigs: count must be positive");
  std::vector<IntervalEigen> out;
  for (int k = 1; k <= count; ++k) {
    const double w = (2 * k - 1) * kPi / (2 * s);
    out.push_back({IntervalEigen::sine, 1.0 / (w * w), w, 1.0 / std::sqrt(0.5 * s)});
  }
  return out;
}

std::vector<double> k3r_sphere_decay(double r, int M) {
  if (!(r >= 1.0)) throw DomainError("k3r_sphere_decay: r must be at least 1");
  if (M < 0) throw DomainError("k3r_sphere_decay: M must be nonnegative");
  // pi/12 (16 r^3 - 12 r^2 t + t^3), t^p = 2^{p/2} (2^{-p/2} t^p); no t^2 term
  std::vector<double> a(M + 1);
  for (int m = 0; m <= M; ++m) {
    double v = -12.0 * r * r * std::sqrt(2.0) * sphere_coeff(3, 1.0, m) +
               std::pow(2.0, 1.5) * sphere_coeff(3, 3.0, m);
    if (m == 0) v += 16.0 * r * r * r;
    a[m] = kPi / 12.0 * v;
  }
  return a;
}

} // namespace mdisc
