#pragma once

// The holomorphic function attached to an FS-pair,
//
//   F(z) = a(0)/2 + sum_{lambda > 0} a(lambda) exp(2 pi i lambda z)
//        = (z^2+1)^k / (2 pi i) int (1+tz)/(t-z) dmu(t)/(1+t^2)^{k+1} + i Q(z),
//
// its Bohr-Fourier coefficients, Stieltjes-type recovery of mu, the Nevanlinna
// matrix and the tapered kernel sum that links a to mu.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fspair/measures.hpp"

namespace fspair::nevanlinna {

using cplx = std::complex<double>;
using measures::FSPair;

struct Evaluation {
  cplx value;
  double error = 0.0;
};

/// Series side; requires Im z > strip constant. The error includes a tail
/// bound derived from the growth constant.
Evaluation f_series(const FSPair& pair, cplx z);
/// Series restricted to the first n_terms positive frequencies (plus a(0)/2).
cplx f_series_partial(const FSPair& pair, cplx z, std::size_t n_terms);

/// Smallest k >= 0 with 2(k+1) >= the declared degree bound.
int default_k(const FSPair& pair);

class HolomorphicModel {
 public:
  HolomorphicModel(FSPair pair, int k, std::vector<double> q_poly = {}, double fit_residual = 0.0);

  const FSPair& pair() const noexcept { return pair_; }
  int k() const noexcept { return k_; }
  const std::vector<double>& q_poly() const noexcept { return q_poly_; }
  double valid_strip() const noexcept { return pair_.strip_constant(); }
  double fit_residual() const noexcept { return fit_residual_; }

  /// (z^2+1)^k/(2 pi i) int (1+tz)/(t-z) dmu/(1+t^2)^{k+1} over the truncated mu,
  /// with an estimate of the contribution beyond the truncation.
  Evaluation integral_part(cplx z) const;
  /// int (1+tz)/((t-z)(1+t^2)^{k+1}) dmu / (2 pi i), i.e. integral_part / (z^2+1)^k.
  Evaluation reduced_integral(cplx z) const;
  cplx q(cplx z) const;

 private:
  Evaluation kernel_integral(cplx z) const;
  friend HolomorphicModel fit_model(FSPair pair, int k);

  FSPair pair_;
  int k_;
  std::vector<double> q_poly_;
  double fit_residual_;
  double growth_exponent_ = 0.0;
  double variation_ = 0.0;
};

/// integral_part(z) + i Q(z). Valid on the whole upper half-plane.
Evaluation f_integral(const HolomorphicModel& model, cplx z);

struct QFit {
  std::vector<double> coeffs;  // q_0 .. q_{2k}
  double residual = 0.0;       // max_j |f_series - integral_part - iQ| on the sample
  double budget = 0.0;         // max_j of the combined error estimates
  double condition = 0.0;
};

/// Real least-squares fit of Q (degree <= 2k). Throws FitError when the design
/// is ill-conditioned or the residual exceeds 10x the error budget.
QFit fit_q(const FSPair& pair, int k, std::span<const cplx> sample);
/// Same, reusing the integral side of an existing model (its own Q is ignored).
QFit fit_q(const HolomorphicModel& model, std::span<const cplx> sample);

/// 4 x 3 grid of points above the strip: x in {-1.7,-0.6,0.45,1.3}, y in {0.35,1.2,2.5}
/// shifted by the strip constant where needed.
std::vector<cplx> default_fit_sample(double strip);
/// 5 x 5 grid: x in {-2,...,2}, y = c + j (4 - c)/5 for j = 1..5.
std::vector<cplx> validation_grid(double strip);

/// Fit Q on the default sample and return the model (k = default_k when k < 0).
HolomorphicModel fit_model(FSPair pair, int k = -1);

/// (1/2T) int_{-T}^{T} F(x+iy) exp(-2 pi i lambda (x+iy)) dx with F from f_series.
Evaluation ef_coeff(const FSPair& pair, double lambda, double y, double big_t);

/// Re int_a^b (F(z) - iQ(z)) / (z^2+1)^{k+1} dx along z = x + is. Tends to
/// (1/2) int_a^b dmu/(1+t^2)^{k+1} as s -> 0 when a, b are not atoms.
/// (With the power k instead of k+1 the limit is (1/2) int_a^b dmu/(1+t^2)^k.)
Evaluation recover_measure(const HolomorphicModel& model, double a, double b, double s);

struct RecoveryReport {
  std::vector<double> s_values;
  std::vector<double> values;
  double extrapolated = 0.0;
};

/// Values at s = 1e-1, 1e-2, 1e-3 and their two-level Richardson extrapolation.
RecoveryReport recover_measure_extrapolated(const HolomorphicModel& model, double a, double b);

struct NevMatrix {
  std::vector<cplx> points;
  Eigen::MatrixXcd entries;
};

/// entries(n, m) = i (F(z_n) + conj F(z_m)) / (z_n - conj z_m), F from f_integral.
NevMatrix nev_matrix(const HolomorphicModel& model, std::span<const cplx> points);
/// Same matrix for precomputed values F(z_n).
NevMatrix nev_matrix_from_values(std::span<const cplx> points, std::span<const cplx> values);
int neg_index(const NevMatrix& m, double tol_rel = 1e-9);

/// sum_{|lambda| <= T(k+1)} a(lambda) G_k(w, z, lambda) Shat_k(lambda / T).
cplx bridge_sum(const FSPair& pair, int k, cplx w, cplx z, double big_t);
/// int Ghat_k(w, z, t) dmu(t) over the truncated mu.
Evaluation bridge_rhs(const FSPair& pair, int k, cplx w, cplx z, double tol = 1e-12);

/// For each N: sup over 1024 points x in [-16, 16] of |F_N(x+iy) - F(x+iy)|.
std::vector<double> ap_proxy(const FSPair& pair, double y, std::span<const std::size_t> truncs);

}  // namespace fspair::nevanlinna
