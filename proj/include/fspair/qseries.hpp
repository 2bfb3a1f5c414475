#pragma once

// Truncated q-series over doubles: Euler product, theta series, the
// eta-quotient family q^c * sum alpha_{n,c} q^n, and r_3(n).

#include <cstdint>
#include <span>
#include <vector>

namespace fspair::qseries {

/// q^{leading_exponent} * sum_{n=0}^{n_max} coeffs[n] q^n.
class TruncatedPowerSeries {
 public:
  TruncatedPowerSeries(double leading_exponent, std::vector<double> coeffs);

  static TruncatedPowerSeries zero(int n_max, double leading_exponent = 0.0);

  double leading_exponent() const noexcept { return leading_exponent_; }
  int n_max() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }

 private:
  double leading_exponent_;
  std::vector<double> coeffs_;
};

/// Cauchy product truncated at min(a.n_max, b.n_max); exponents add.
TruncatedPowerSeries multiply(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);

/// s(q^m) on the same q-grid and order (coefficients interleaved with zeros).
TruncatedPowerSeries dilate(const TruncatedPowerSeries& s, int m);

/// log s for s[0] = 1, via n L_n = n s_n - sum_{j<n} j L_j s_{n-j}.
TruncatedPowerSeries series_log(const TruncatedPowerSeries& s);

/// exp s for s[0] = 0, via n E_n = sum_{j<=n} j s_j E_{n-j}.
TruncatedPowerSeries series_exp(const TruncatedPowerSeries& s);

/// s^e = exp(e log s) for s[0] = 1, via the equivalent recurrence
/// n P_n = sum_{j<=n} ((e+1) j - n) s_j P_{n-j}. The leading exponent is scaled by e.
TruncatedPowerSeries series_pow(const TruncatedPowerSeries& s, double e);

/// prod_{n>=1} (1 - q^n) to order n_max (pentagonal number theorem).
TruncatedPowerSeries euler_coeffs(int n_max);

/// log prod_{n>=1} (1 - q^n) = -sum_n sigma(n)/n q^n, from divisor sums.
TruncatedPowerSeries euler_log_coeffs(int n_max);

/// sum_{m in Z} q^{m^2} to order n_max by direct enumeration.
TruncatedPowerSeries theta_coeffs(int n_max);

/// alpha_{0..n_max,c} of eta(z)^{24c-2} eta(4z)^{24c-2} / eta(2z)^{48c-5} with
/// eta(z) = q^{1/24} prod (1 - q^n); leading exponent is c. Requires c in [0, 1/8].
TruncatedPowerSeries guinand_coeffs(double c, int n_max);

/// max_{n <= n_max} |alpha_{n,c}| / (n+1)^{1/4}.
double hecke_ratio(const TruncatedPowerSeries& alpha);

struct R3Table {
  std::vector<std::uint64_t> values;  // values[n] = r_3(n)
  int n_max() const noexcept { return static_cast<int>(values.size()) - 1; }
};

/// r_3(n) for n <= n_max by enumerating integer triples with |m|^2 <= n_max.
R3Table r3_sequence(int n_max);

/// True when n = 4^a (8b + 7).
bool is_three_square_exception(std::uint64_t n) noexcept;

}  // namespace fspair::qseries
