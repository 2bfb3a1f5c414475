#pragma once

// Smooth test functions phi, their Fourier transforms
//   phihat(xi) = int phi(x) exp(-2 pi i x xi) dx,
// and end-to-end verification of int phihat dmu = sum a(lambda) phi(lambda).

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "fspair/measures.hpp"

namespace fspair::testfn {

using cplx = std::complex<double>;

enum class Kind { bump, plateau, gaussian_diag };

std::string to_string(Kind k);
/// Accepts "bump", "plateau", "gaussian" / "gaussian_diag".
Kind kind_from_string(const std::string& s);

/// phi(x) = profile((x - shift) / scale).
struct TestFunctionSpec {
  Kind kind = Kind::bump;
  double scale = 1.0;
  double shift = 0.0;
  /// Plateau only: profile is 1 on |u| <= inner and 0 on |u| >= outer.
  double inner = 0.5;
  double outer = 1.0;

  bool compact() const noexcept { return kind != Kind::gaussian_diag; }
  /// Throws DomainError on an invalid spec.
  void validate() const;
};

/// Unit profile (scale 1, shift 0). Even in u.
double eval_profile(const TestFunctionSpec& spec, double u);
double eval_testfn(const TestFunctionSpec& spec, double x);

/// Fourier transform of phi with absolute error <= tol. Throws QuadratureError
/// carrying the best estimate when tol cannot be reached.
cplx ft_testfn(const TestFunctionSpec& spec, double xi, double tol);

/// Fourier transform of one spec with memoized unit-profile quadratures.
/// Not safe for concurrent use.
class FourierTransform {
 public:
  FourierTransform(TestFunctionSpec spec, double tol);
  cplx operator()(double xi) const;
  /// Sum of the quadrature error estimates of all evaluations so far.
  double accumulated_error() const noexcept { return accumulated_error_; }
  /// Largest error estimate of a single evaluation so far.
  double max_error() const noexcept { return max_error_; }
  bool degraded() const noexcept { return degraded_; }

 private:
  double unit(double eta) const;

  TestFunctionSpec spec_;
  double tol_;
  mutable std::map<double, std::pair<double, double>> cache_;
  mutable double accumulated_error_ = 0.0;
  mutable double max_error_ = 0.0;
  mutable bool degraded_ = false;
};

struct VerificationReport {
  std::string pair_name;
  TestFunctionSpec testfn;
  cplx lhs;
  cplx rhs;
  double mu_truncation = 0.0;
  double a_truncation = 0.0;
  double quadrature_tol = 0.0;
  std::int64_t runtime_ms = 0;
  /// Quadrature error plus the bound on the mu tail beyond the truncation.
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  /// A quadrature missed its tolerance or phi reaches past the a truncation.
  bool degraded = false;

  double abs_residual() const { return std::abs(lhs - rhs); }
  /// Serialized fields: pair_name, testfn, lhs, rhs, abs_residual, mu_truncation,
  /// a_truncation, quadrature_tol, runtime_ms.
  std::string to_json() const;
};

VerificationReport verify_pair(const measures::FSPair& pair, const TestFunctionSpec& spec,
                               double quadrature_tol);

}  // namespace fspair::testfn
