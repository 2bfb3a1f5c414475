#include "fspair/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fspair/error.hpp"

namespace fspair::qseries {

TruncatedPowerSeries::TruncatedPowerSeries(double leading_exponent, std::vector<double> coeffs)
    : leading_exponent_(leading_exponent), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("power series needs at least the constant term");
}

TruncatedPowerSeries TruncatedPowerSeries::zero(int n_max, double leading_exponent) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  return {leading_exponent, std::vector<double>(static_cast<std::size_t>(n_max) + 1, 0.0)};
}

TruncatedPowerSeries multiply(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
  const int n = std::min(a.n_max(), b.n_max());
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
  }
  return {a.leading_exponent() + b.leading_exponent(), std::move(c)};
}

TruncatedPowerSeries dilate(const TruncatedPowerSeries& s, int m) {
  if (m < 1) throw DomainError("dilation factor must be positive");
  std::vector<double> c(s.coeffs().size(), 0.0);
  for (int n = 0; n * m <= s.n_max(); ++n) c[static_cast<std::size_t>(n * m)] = s[n];
  return {s.leading_exponent() * m, std::move(c)};
}

TruncatedPowerSeries series_log(const TruncatedPowerSeries& s) {
  if (s[0] != 1.0) throw DomainError("series_log requires constant term 1");
  const int n_max = s.n_max();
  std::vector<double> log(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    double acc = n * s[n];
    for (int j = 1; j < n; ++j) acc -= j * log[j] * s[n - j];
    log[n] = acc / n;
  }
  return {0.0, std::move(log)};
}

TruncatedPowerSeries series_exp(const TruncatedPowerSeries& s) {
  if (s[0] != 0.0) throw DomainError("series_exp requires constant term 0");
  const int n_max = s.n_max();
  std::vector<double> e(static_cast<std::size_t>(n_max) + 1, 0.0);
  e[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    long double acc = 0.0L;
    for (int j = 1; j <= n; ++j) acc += static_cast<long double>(j) * s[j] * e[n - j];
    e[n] = static_cast<double>(acc / n);
  }
  return {0.0, std::move(e)};
}

TruncatedPowerSeries series_pow(const TruncatedPowerSeries& s, double e) {
  if (s[0] != 1.0)
    throw DomainError("series_pow requires constant term 1, got " + std::to_string(s[0]));
  const int n_max = s.n_max();
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1, 0.0);
  p[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    long double acc = 0.0L;
    for (int j = 1; j <= n; ++j) {
      if (s[j] == 0.0) continue;
      acc += ((static_cast<long double>(e) + 1.0L) * j - n) * s[j] * p[static_cast<std::size_t>(n - j)];
    }
    p[static_cast<std::size_t>(n)] = static_cast<double>(acc / n);
  }
  return {s.leading_exponent() * e, std::move(p)};
}

TruncatedPowerSeries euler_coeffs(int n_max) {
  auto out = TruncatedPowerSeries::zero(n_max);
  std::vector<double> c(out.coeffs().begin(), out.coeffs().end());
  // sum_{k in Z} (-1)^k q^{k(3k-1)/2}
  c[0] = 1.0;
  for (long k = 1;; ++k) {
    const long p1 = k * (3 * k - 1) / 2;
    const long p2 = k * (3 * k + 1) / 2;
    if (p1 > n_max) break;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(p1)] += sign;
    if (p2 <= n_max) c[static_cast<std::size_t>(p2)] += sign;
  }
  return {0.0, std::move(c)};
}

TruncatedPowerSeries euler_log_coeffs(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<double> sigma(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int d = 1; d <= n_max; ++d)
    for (int m = d; m <= n_max; m += d) sigma[static_cast<std::size_t>(m)] += d;
  std::vector<double> c(sigma.size(), 0.0);
  for (int n = 1; n <= n_max; ++n) c[static_cast<std::size_t>(n)] = -sigma[static_cast<std::size_t>(n)] / n;
  return {0.0, std::move(c)};
}

TruncatedPowerSeries theta_coeffs(int n_max) {
  auto out = TruncatedPowerSeries::zero(n_max);
  std::vector<double> c(out.coeffs().begin(), out.coeffs().end());
  for (long m = -n_max; m <= n_max; ++m) {
    const long sq = m * m;
    if (sq <= n_max) c[static_cast<std::size_t>(sq)] += 1.0;
  }
  return {0.0, std::move(c)};
}

TruncatedPowerSeries guinand_coeffs(double c, int n_max) {
  if (!(c >= 0.0 && c <= 0.125))
    throw DomainError("guinand_coeffs: c must lie in [0, 1/8], got " + std::to_string(c));
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  const double outer = 24.0 * c - 2.0;  // exponent of eta(z) and eta(4z)
  const double inner = 48.0 * c - 5.0;  // exponent of eta(2z) in the denominator

  const auto log_euler = euler_log_coeffs(n_max);
  const auto log4 = dilate(log_euler, 4);
  const auto log2 = dilate(log_euler, 2);
  std::vector<double> total(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 0; n <= n_max; ++n)
    total[n] = outer * log_euler[n] + outer * log4[n] - inner * log2[n];
  auto body = series_exp(TruncatedPowerSeries(0.0, std::move(total)));

  // q^{1/24} per eta: (outer + 4 outer - 2 inner) / 24 == c exactly.
  return {c, std::vector<double>(body.coeffs().begin(), body.coeffs().end())};
}

double hecke_ratio(const TruncatedPowerSeries& alpha) {
  double k = 0.0;
  for (int n = 0; n <= alpha.n_max(); ++n)
    k = std::max(k, std::abs(alpha[n]) / std::pow(n + 1.0, 0.25));
  return k;
}

R3Table r3_sequence(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  R3Table t;
  t.values.assign(static_cast<std::size_t>(n_max) + 1, 0);
  long r = 0;
  while ((r + 1) * (r + 1) <= n_max) ++r;
  for (long x = -r; x <= r; ++x) {
    for (long y = -r; y <= r; ++y) {
      const long xy = x * x + y * y;
      if (xy > n_max) continue;
      for (long z = -r; z <= r; ++z) {
        const long s = xy + z * z;
        if (s <= n_max) ++t.values[static_cast<std::size_t>(s)];
      }
    }
  }
  return t;
}

bool is_three_square_exception(std::uint64_t n) noexcept {
  if (n == 0) return false;
  while (n % 4 == 0) n /= 4;
  return n % 8 == 7;
}

}  // namespace fspair::qseries
