#pragma once

#include <functional>
#include <vector>

namespace mdisc {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 40;
};

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// Throws NumericalError if a panel still fails the tolerance at max_depth.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opts = {});

} // namespace mdisc
