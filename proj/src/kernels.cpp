#include "fspair/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fspair/error.hpp"
#include "fspair/qseries.hpp"

namespace fspair::kernels {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

void require_upper(cplx v, const char* name) {
  if (!(v.imag() > 0.0))
    throw DomainError(std::string(name) + " must lie in the upper half-plane");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sum_{l=0}^{j} x^l / l!
cplx exp_partial(cplx x, int j) {
  cplx term = 1.0, acc = 1.0;
  for (int l = 1; l <= j; ++l) {
    term *= x / static_cast<double>(l);
    acc += term;
  }
  return acc;
}

struct KernelTables {
  std::array<std::vector<double>, kMaxRIndex + 1> r;
  std::array<std::vector<double>, kMaxRIndex + 1> profile;
};

const KernelTables& tables() {
  static const KernelTables t = [] {
    KernelTables out;
    for (int k = 0; k <= kMaxRIndex; ++k) {
      const auto p = r_poly(k);
      out.r[k] = p.coeffs();
      out.profile[k] = p.profile_coeffs();
    }
    return out;
  }();
  return t;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

const std::vector<double>& profile(int k) {
  if (k < 0 || k > kMaxRIndex)
    throw DomainError("kernel index must be in [1, " + std::to_string(kMaxRIndex + 1) + "]");
  return tables().profile[k];
}

// Closed form of G_k for lambda >= 0, k >= 1.
cplx g_nonnegative(int k, cplx w, cplx z, double lambda) {
  const auto& b = profile(k - 1);
  const cplx wb = std::conj(w);
  const cplx uw = 1.0 + kI * wb;
  const cplx uz = 1.0 + kI * z;
  const double decay = std::exp(-2.0 * kPi * lambda);
  const double two_pi_lambda = 2.0 * kPi * lambda;
  cplx acc = 0.0;
  for (int j = 0; j < k; ++j) {
    const double c = factorial(j) * b[j] / std::pow(2.0 * kPi, j + 1);
    acc += decay * c / std::pow(uw, j + 1) * exp_partial(two_pi_lambda * uw, j);
    acc -= decay * c / std::pow(uz, j + 1) * exp_partial(two_pi_lambda * uz, j);
  }
  acc += std::exp(2.0 * kPi * kI * lambda * z) / std::pow(kPi, k) / std::pow(1.0 + z * z, k);
  return acc / (z - wb);
}

}  // namespace

RPolynomial::RPolynomial(int k, std::vector<double> coeffs) : k_(k), coeffs_(std::move(coeffs)) {}

double RPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> RPolynomial::profile_coeffs() const {
  std::vector<double> b(coeffs_.size());
  const double scale = std::pow(kPi, -k_);
  double two_pi_j = 1.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    b[j] = scale * two_pi_j * coeffs_[j];
    two_pi_j *= 2.0 * kPi;
  }
  return b;
}

RPolynomial r_poly(int k) {
  if (k < 0 || k > kMaxRIndex)
    throw DomainError("r_poly: index must be in [0, 16], got " + std::to_string(k));
  using qseries::TruncatedPowerSeries;
  // u(q) = 1 - sqrt(1-q) and w(q) = (1-q)^{-1/2}, both to order k.
  std::vector<double> one_minus_q(static_cast<std::size_t>(k) + 1, 0.0);
  one_minus_q[0] = 1.0;
  if (k >= 1) one_minus_q[1] = -1.0;
  const TruncatedPowerSeries base(0.0, one_minus_q);
  const auto root = qseries::series_pow(base, 0.5);
  const auto weight = qseries::series_pow(base, -0.5);
  std::vector<double> u(static_cast<std::size_t>(k) + 1, 0.0);
  for (int n = 1; n <= k; ++n) u[n] = -root[n];

  // r_k(X) = sum_m X^m / m! [q^k] u^m w.
  std::vector<double> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
  TruncatedPowerSeries term = weight;
  const TruncatedPowerSeries useries(0.0, u);
  double inv_fact = 1.0;
  for (int m = 0; m <= k; ++m) {
    if (m > 0) {
      term = qseries::multiply(term, useries);
      inv_fact /= m;
    }
    coeffs[m] = term[k] * inv_fact;
  }
  return {k, std::move(coeffs)};
}

KernelPoint::KernelPoint(cplx w, cplx z) : w_(w), z_(z) {
  require_upper(w, "w");
  require_upper(z, "z");
}

double eval_A(int k, double x) {
  if (k < 1) throw DomainError("eval_A: k must be >= 1");
  const double ax = std::abs(x);
  if (k - 1 > kMaxRIndex) throw DomainError("eval_A: k must be <= " + std::to_string(kMaxRIndex + 1));
  return std::exp(-2.0 * kPi * ax) * std::pow(kPi, 1 - k) * horner(tables().r[k - 1], 2.0 * kPi * ax);
}

double central_bspline(int n, double t) {
  if (n < 1) throw DomainError("B-spline order must be >= 1");
  if (n == 1) return std::abs(t) <= 0.5 ? 1.0 : 0.0;
  const double x = t + 0.5 * n;  // uncentred M_n lives on [0, n]
  if (x <= 0.0 || x >= n) return 0.0;
  // m[j] = M_order(x - j); M_r(y) = (y M_{r-1}(y) + (r - y) M_{r-1}(y - 1)) / (r - 1)
  std::vector<double> m(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double y = x - j;
    m[j] = (y >= 0.0 && y < 1.0) ? 1.0 : 0.0;
  }
  for (int order = 2; order <= n; ++order)
    for (int j = 0; j + order <= n; ++j) {
      const double y = x - j;
      m[j] = (y * m[j] + (order - y) * m[j + 1]) / (order - 1);
    }
  return m[0];
}

double spline_normalizer(int k) {
  if (k < 0) throw DomainError("kernel index must be >= 0");
  return central_bspline(2 * (k + 1), 0.0);
}

double eval_S(int k, double x) {
  const double v = spline_normalizer(k);
  const double px = kPi * x;
  const double sinc = px == 0.0 ? 1.0 : std::sin(px) / px;
  return std::pow(sinc, 2 * (k + 1)) / v;
}

double eval_Shat(int k, double t) {
  if (std::abs(t) >= k + 1.0) return 0.0;
  return central_bspline(2 * (k + 1), t) / spline_normalizer(k);
}

cplx eval_Ghat(int k, cplx w, cplx z, double t) {
  if (k < 0) throw DomainError("kernel index must be >= 0");
  require_upper(w, "w");
  require_upper(z, "z");
  const cplx denom = 2.0 * std::pow(kPi, k + 1) * kI * (t - z) * (t - std::conj(w)) *
                     std::pow(1.0 + t * t, k);
  return 1.0 / denom;
}

cplx eval_G(int k, cplx w, cplx z, double lambda) {
  if (k < 0) throw DomainError("kernel index must be >= 0");
  require_upper(w, "w");
  require_upper(z, "z");
  if (k >= 1 && (std::abs(z - kI) < kSingularRadius || std::abs(w - kI) < kSingularRadius))
    throw DomainError("eval_G: arguments within 1e-6 of i are not supported for k >= 1");
  if (lambda < 0.0) return -std::conj(eval_G(k, z, w, -lambda));
  if (k == 0) return std::exp(2.0 * kPi * kI * z * lambda) / (z - std::conj(w));
  return g_nonnegative(k, w, z, lambda);
}

double pf_identity_residual(int k, cplx z) {
  if (k < 1) throw DomainError("pf_identity_residual: k must be >= 1");
  if (std::abs(z - kI) == 0.0 || std::abs(z + kI) == 0.0)
    throw DomainError("pf_identity_residual: z must differ from +-i");
  const auto& b = profile(k - 1);
  cplx lhs = 0.0;
  for (int j = 0; j < k; ++j) {
    const double c = factorial(j) * b[j] / std::pow(2.0 * kPi, j + 1);
    lhs += c * (1.0 / std::pow(1.0 + kI * z, j + 1) + 1.0 / std::pow(1.0 - kI * z, j + 1));
  }
  const cplx rhs = 1.0 / (std::pow(kPi, k) * std::pow(1.0 + z * z, k));
  return std::abs(lhs - rhs);
}

}  // namespace fspair::kernels
