#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fspair {

/// Precondition violated by an argument (out-of-range parameter, point outside
/// the upper half-plane, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pair file or JSON document does not match the pair schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant (ordering, antipodality, ...) does not hold.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature did not reach its tolerance before the subdivision cap; carries
/// the best estimate found.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::complex<double> best, double error)
      : std::runtime_error(what), best_(best), error_(error) {}

  std::complex<double> best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  std::complex<double> best_;
  double error_;
};

/// Least-squares fit of the polynomial part failed (ill-conditioned or the
/// residual exceeds the error budget).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fspair
