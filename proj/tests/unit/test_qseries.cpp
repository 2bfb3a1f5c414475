#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fspair/error.hpp"
#include "fspair/qseries.hpp"

using namespace fspair;
using namespace fspair::qseries;

namespace {

using Poly = std::vector<double>;

Poly poly_mul(const Poly& a, const Poly& b, std::size_t order) {
  Poly c(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// (1 - q^n)^e by the generalized binomial series.
Poly binomial_factor(int n, double e, std::size_t order) {
  Poly p(order + 1, 0.0);
  double binom = 1.0;
  for (std::size_t j = 0; j * n <= order; ++j) {
    p[j * n] = binom * ((j % 2) ? -1.0 : 1.0);
    binom *= (e - static_cast<double>(j)) / static_cast<double>(j + 1);
  }
  return p;
}

// prod_n (1-q^n)^a (1-q^{4n})^a (1-q^{2n})^{-b}, one factor at a time.
Poly eta_quotient_oracle(double c, std::size_t order) {
  const double a = 24.0 * c - 2.0, b = 48.0 * c - 5.0;
  Poly acc(order + 1, 0.0);
  acc[0] = 1.0;
  for (std::size_t n = 1; n <= order; ++n) {
    acc = poly_mul(acc, binomial_factor(static_cast<int>(n), a, order), order);
    if (4 * n <= order) acc = poly_mul(acc, binomial_factor(static_cast<int>(4 * n), a, order), order);
    if (2 * n <= order) acc = poly_mul(acc, binomial_factor(static_cast<int>(2 * n), -b, order), order);
  }
  return acc;
}

bool legendre_exception(std::uint64_t n) {
  if (n == 0) return false;
  while (n % 4 == 0) n /= 4;
  return n % 8 == 7;
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("euler product coefficients") {
    CHECK(euler_coeffs(0).coeffs().size() == 1);
    CHECK(euler_coeffs(0)[0] == 1.0);
    const auto e2 = euler_coeffs(2);
    CHECK(e2[0] == 1.0);
    CHECK(e2[1] == -1.0);
    CHECK(e2[2] == -1.0);
    CHECK(euler_coeffs(5)[5] == 1.0);

    const std::size_t order = 60;
    Poly prod{1.0};
    for (std::size_t n = 1; n <= order; ++n) {
      Poly f(n + 1, 0.0);
      f[0] = 1.0;
      f[n] = -1.0;
      prod = poly_mul(prod, f, order);
    }
    const auto e = euler_coeffs(static_cast<int>(order));
    for (std::size_t n = 0; n <= order; ++n) CHECK(e[static_cast<int>(n)] == prod[n]);
    CHECK(e.leading_exponent() == 0.0);
  }

  TEST_CASE("series_pow examples") {
    const auto sq = series_pow(TruncatedPowerSeries(0.0, {1.0, -1.0}), 2.0);
    CHECK(sq.n_max() == 1);
    CHECK(sq[1] == doctest::Approx(-2.0).epsilon(1e-15));
    const auto geo = series_pow(TruncatedPowerSeries(0.0, {1.0, -1.0, 0.0}), -1.0);
    for (int n = 0; n <= 2; ++n) CHECK(geo[n] == doctest::Approx(1.0).epsilon(1e-15));

    // sqrt of the Euler product to order 4 by the binomial series of sqrt(1 + u).
    const auto e4 = euler_coeffs(4);
    Poly u(e4.coeffs().begin(), e4.coeffs().end());
    u[0] = 0.0;
    Poly oracle(5, 0.0), upow{1.0};
    double binom = 1.0;
    for (int j = 0; j <= 4; ++j) {
      for (std::size_t n = 0; n < upow.size() && n <= 4; ++n) oracle[n] += binom * upow[n];
      upow = poly_mul(upow, u, 4);
      binom *= (0.5 - j) / (j + 1);
    }
    const auto root = series_pow(e4, 0.5);
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(root[n] - oracle[static_cast<std::size_t>(n)]) < 1e-14);
  }

  TEST_CASE("series_pow rejects a zero constant term") {
    CHECK_THROWS_AS(series_pow(TruncatedPowerSeries(0.0, {0.0, 1.0}), 0.5), DomainError);
    CHECK_THROWS_AS(series_pow(TruncatedPowerSeries(0.0, {2.0, 1.0}), 0.5), DomainError);
  }

  TEST_CASE("series_pow exponent law") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ue(-5.0, 5.0);
    const auto s = euler_coeffs(48);
    for (int trial = 0; trial < 20; ++trial) {
      const double e1 = ue(rng), e2 = ue(rng);
      const auto lhs = series_pow(s, e1 + e2);
      const auto rhs = multiply(series_pow(s, e1), series_pow(s, e2));
      const auto a = series_pow(s, e1), b = series_pow(s, e2);
      for (int n = 0; n <= 48; ++n) {
        double scale = 1.0;
        for (int i = 0; i <= n; ++i) scale += std::abs(a[i] * b[n - i]);
        CAPTURE(n);
        CHECK(std::abs(lhs[n] - rhs[n]) <= 1e-12 * std::max(scale, std::abs(lhs[n])));
      }
    }
  }

  TEST_CASE("arithmetic never extends the truncation") {
    const auto a = euler_coeffs(3);
    const auto b = theta_coeffs(5);
    CHECK(multiply(a, b).n_max() == 3);
    CHECK(dilate(b, 2).n_max() == 5);
    CHECK(series_log(a).n_max() == 3);
    const auto d = dilate(euler_coeffs(8), 2);
    CHECK(d[2] == -1.0);
    CHECK(d[1] == 0.0);
    CHECK(d[4] == -1.0);
  }

  TEST_CASE("log and exp are inverse") {
    const auto s = guinand_coeffs(0.07, 40);
    const auto back = series_exp(series_log(s));
    for (int n = 0; n <= 40; ++n) CHECK(std::abs(back[n] - s[n]) < 1e-12);
  }

  TEST_CASE("log of the Euler product from divisor sums") {
    const auto exact = euler_log_coeffs(30);
    CHECK(exact[1] == -1.0);
    CHECK(exact[6] == doctest::Approx(-2.0).epsilon(1e-15));
    const auto rec = series_log(euler_coeffs(30));
    for (int n = 0; n <= 30; ++n) CHECK(std::abs(exact[n] - rec[n]) < 1e-10);
    const auto back = series_exp(euler_log_coeffs(200));
    const auto e = euler_coeffs(200);
    for (int n = 0; n <= 200; ++n) CHECK(std::abs(back[n] - e[n]) < 1e-11);
  }

  TEST_CASE("theta coefficients") {
    const auto t = theta_coeffs(4);
    const double expect[] = {1, 2, 0, 0, 2};
    for (int n = 0; n <= 4; ++n) CHECK(t[n] == expect[n]);
    CHECK(theta_coeffs(9)[9] == 2.0);
    CHECK(theta_coeffs(3)[3] == 0.0);
  }

  TEST_CASE("guinand low-order coefficients") {
    for (double c : {0.0, 1.0 / 12.0, 1.0 / 9.0, 0.125}) {
      const auto a = guinand_coeffs(c, 8);
      CHECK(a[0] == 1.0);
      CHECK(std::abs(a[1] + (24 * c - 2)) < 1e-12);
      CHECK(std::abs(a[2] - (288 * c * c - 36 * c)) < 1e-12);
      CHECK(a.leading_exponent() == c);
    }
    const auto a = guinand_coeffs(1.0 / 9.0, 2);
    CHECK(std::abs(a[1] + 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(a[2] + 4.0 / 9.0) < 1e-12);
  }

  TEST_CASE("guinand matches a factor-by-factor eta product") {
    for (double c : {0.0, 0.03, 1.0 / 9.0, 0.125}) {
      const auto oracle = eta_quotient_oracle(c, 40);
      const auto a = guinand_coeffs(c, 40);
      for (int n = 0; n <= 40; ++n) CHECK(std::abs(a[n] - oracle[static_cast<std::size_t>(n)]) < 1e-10);
    }
  }

  TEST_CASE("guinand at c = 0 is the theta series") {
    const auto a = guinand_coeffs(0.0, 256);
    const auto t = theta_coeffs(256);
    for (int n = 0; n <= 256; ++n) CHECK(std::abs(a[n] - t[n]) < 1e-10);
  }

  TEST_CASE("guinand domain") {
    CHECK_THROWS_AS(guinand_coeffs(0.2, 4), DomainError);
    CHECK_THROWS_AS(guinand_coeffs(-0.01, 4), DomainError);
    CHECK_NOTHROW(guinand_coeffs(0.125, 4));
  }

  TEST_CASE("Hecke-type growth constant") {
    double k_max = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double c = 0.125 * i / 19.0;
      const auto a = guinand_coeffs(c, 512);
      const double k = hecke_ratio(a);
      CHECK(std::isfinite(k));
      k_max = std::max(k_max, k);
    }
    MESSAGE("measured K = " << k_max);
    // The coefficients stay polynomially bounded: K is a modest constant.
    CHECK(k_max < 100.0);
  }

  TEST_CASE("r3 examples") {
    const auto t = r3_sequence(16);
    CHECK(t.values[0] == 1);
    CHECK(t.values[1] == 6);
    CHECK(t.values[7] == 0);
    CHECK(t.values[4] == 6);
    CHECK(t.values[2] == 12);
    CHECK(t.values[3] == 8);
  }

  TEST_CASE("r3 Legendre zero set and 4n invariance") {
    const int n_max = 10000;
    const auto t = r3_sequence(n_max);
    REQUIRE(t.n_max() == n_max);
    for (int n = 0; n <= n_max; ++n) {
      const auto un = static_cast<std::uint64_t>(n);
      CHECK((t.values[un] == 0) == legendre_exception(un));
      CHECK(is_three_square_exception(un) == legendre_exception(un));
      if (4 * n <= n_max) CHECK(t.values[4 * un] == t.values[un]);
    }
  }

  TEST_CASE("r3 partial sums follow the ball volume") {
    const auto t = r3_sequence(10000);
    for (int x : {100, 1000, 10000}) {
      double sum = 0.0;
      for (int n = 0; n <= x; ++n) sum += static_cast<double>(t.values[static_cast<std::size_t>(n)]);
      const double main = 4.0 / 3.0 * std::numbers::pi * std::pow(x, 1.5);
      CHECK(std::abs(sum - main) <= 20.0 * std::pow(x, 0.8));
    }
  }
}
