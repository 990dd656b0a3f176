#pragma once

#include <stdexcept>
#include <string>

namespace mdisc {

// Input outside the domain of a formula (bad point, bad parameter range).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Index out of the admissible range (|l| > m and similar).
class IndexError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Gamma or Pochhammer pole hit by a parameter choice.
class PoleError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Hypergeometric series that neither terminates nor converges.
class DivergenceError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Numerical failure: overflow, quadrature or root scan exhausted,
// degenerate nullspace, rank defect.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mdisc
