#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fspair/error.hpp"
#include "fspair/kernels.hpp"
#include "oracles.hpp"

using namespace fspair;
using namespace fspair::kernels;

namespace {

constexpr double kPi = std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

// Boost's adaptive Gauss-Kronrod on panels of width <= 1/4.
template <class F>
double quad(F f, double a, double b) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) * 4.0)));
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int j = 0; j < panels; ++j) s += GK::integrate(f, a + j * h, a + (j + 1) * h, 6, 1e-13);
  return s;
}

template <class F>
cplx cquad(F f, double a, double b) {
  return {quad([&](double x) { return f(x).real(); }, a, b),
          quad([&](double x) { return f(x).imag(); }, a, b)};
}

// Closed form of the generating series exp((1 - sqrt(1-q)) X) / sqrt(1-q).
double generating(double q, double x) {
  const double s = std::sqrt(1.0 - q);
  return std::exp((1.0 - s) * x) / s;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("r_k examples") {
    CHECK(r_poly(0).coeffs() == std::vector<double>{1.0});
    const auto r1 = r_poly(1).coeffs();
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r1[1] == doctest::Approx(0.5).epsilon(1e-15));
    const auto r2 = r_poly(2).coeffs();
    REQUIRE(r2.size() == 3);
    CHECK(r2[0] == doctest::Approx(3.0 / 8).epsilon(1e-15));
    CHECK(r2[1] == doctest::Approx(3.0 / 8).epsilon(1e-15));
    CHECK(r2[2] == doctest::Approx(1.0 / 8).epsilon(1e-15));
  }

  TEST_CASE("r_k has degree k and r_k(0) = (2k-1)!!/(2k)!!") {
    double ratio = 1.0;
    for (int k = 0; k <= kMaxRIndex; ++k) {
      const auto r = r_poly(k);
      CHECK(r.coeffs().size() == static_cast<std::size_t>(k + 1));
      CHECK(r.coeffs().back() != 0.0);
      CHECK(r(0.0) == doctest::Approx(ratio).epsilon(1e-14));
      ratio *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    }
  }

  TEST_CASE("r_k index range") {
    CHECK_THROWS_AS(r_poly(-1), DomainError);
    CHECK_THROWS_AS(r_poly(kMaxRIndex + 1), DomainError);
  }

  TEST_CASE("partial generating sums approach the closed form") {
    const double q = 0.3;
    for (double x : {0.0, 1.0, 5.0}) {
      double partial = 0.0;
      std::vector<double> terms;
      for (int k = 0; k <= kMaxRIndex; ++k) terms.push_back(std::pow(q, k) * r_poly(k)(x));
      const double exact = generating(q, x);
      for (int big = 0; big <= 8; ++big) {
        partial += terms[big];
        double tail = 0.0;
        for (int k = big + 1; k <= kMaxRIndex; ++k) tail += std::abs(terms[k]);
        CHECK(std::abs(partial - exact) <= 1e-8 + 2.0 * tail);
      }
      double full = 0.0;
      for (double t : terms) full += t;
      CHECK(std::abs(full - exact) < 1e-6 * exact);
    }
  }

  TEST_CASE("A_k examples") {
    CHECK(eval_A(1, 0.0) == doctest::Approx(1.0));
    CHECK(eval_A(1, 0.3) == doctest::Approx(std::exp(-0.6 * kPi)).epsilon(1e-15));
    CHECK(eval_A(2, 0.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
    CHECK(eval_A(3, 0.0) == doctest::Approx(3.0 / (8.0 * kPi * kPi)).epsilon(1e-15));
    CHECK_THROWS_AS(eval_A(0, 0.0), DomainError);
  }

  TEST_CASE("A_k is even") {
    for (int k = 1; k <= 6; ++k)
      for (double x : {0.1, 0.77, 2.5}) CHECK(eval_A(k, x) == eval_A(k, -x));
  }

  TEST_CASE("A_{k+1} matches a numerical convolution oracle") {
    const int npts = 50;
    for (int k = 0; k <= 5; ++k) {
      const auto ref = oracle::convolution_power(k, npts);
      double worst = 0.0;
      for (int i = 0; i < npts; ++i)
        worst = std::max(worst, std::abs(eval_A(k + 1, i / 16.0) - ref[i]));
      CAPTURE(k);
      CHECK(worst < 1e-8);
    }
  }

  TEST_CASE("Fourier transform of A_k is pi^-k (1+xi^2)^-k") {
    for (int k = 1; k <= 4; ++k) {
      for (double xi : {-10.0, -3.3, -0.5, 0.0, 0.25, 1.0, 4.7, 10.0}) {
        const double ft =
            2.0 * quad([&](double x) { return eval_A(k, x) * std::cos(2.0 * kPi * x * xi); }, 0.0, 12.0);
        const double expect = std::pow(kPi * (1.0 + xi * xi), -k);
        CAPTURE(k);
        CAPTURE(xi);
        CHECK(std::abs(ft - expect) < 1e-8);
      }
    }
  }

  TEST_CASE("spline normalizer and B-spline transform") {
    CHECK(spline_normalizer(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spline_normalizer(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    for (int k = 0; k <= 4; ++k) {
      CHECK(eval_Shat(k, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(eval_Shat(k, k + 1.0) == 0.0);
      CHECK(eval_Shat(k, -(k + 1.0)) == 0.0);
      CHECK(eval_Shat(k, k + 1.5) == 0.0);
      CHECK(eval_S(k, 0.0) == doctest::Approx(1.0 / spline_normalizer(k)).epsilon(1e-14));
    }
    for (double x : {0.3, 1.7, 12.25}) {
      const double sinc = std::sin(kPi * x) / (kPi * x);
      CHECK(eval_S(0, x) == doctest::Approx(sinc * sinc).epsilon(1e-13));
    }
    // Order-2 spline is the unit triangle.
    CHECK(eval_Shat(0, 0.4) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(central_bspline(1, 0.2) == 1.0);
    CHECK(central_bspline(1, 0.7) == 0.0);
  }

  TEST_CASE("spline normalizer is the integral of the sinc power") {
    for (int k = 1; k <= 3; ++k) {
      const int p = 2 * (k + 1);
      auto sinc = [&](double x) {
        if (x == 0.0) return 1.0;
        return std::pow(std::sin(kPi * x) / (kPi * x), p);
      };
      const double s = quad(sinc, 0.0, 200.0);
      CHECK(2.0 * s == doctest::Approx(spline_normalizer(k)).epsilon(1e-6));
    }
  }

  TEST_CASE("S_k and Shat_k are a Fourier pair") {
    // S_k is band-limited to [-(k+1), k+1]; with step h < 1/(2(k+1)) the
    // sampled transform has no aliasing at |t| < 1/h - (k+1).
    for (int k = 1; k <= 3; ++k) {
      const double h = 1.0 / (4.0 * (k + 1));
      const long n = 100'000L;
      for (double t : {0.0, 0.3, 0.5 * (k + 1), 0.9 * (k + 1), k + 1.2}) {
        double s = eval_S(k, 0.0);
        for (long j = 1; j <= n; ++j) s += 2.0 * eval_S(k, j * h) * std::cos(2.0 * kPi * j * h * t);
        s *= h;
        CAPTURE(k);
        CAPTURE(t);
        CHECK(std::abs(s - eval_Shat(k, t)) < 1e-6);
      }
    }
  }

  TEST_CASE("KernelPoint validation") {
    CHECK_NOTHROW(KernelPoint(cplx(0, 1), cplx(1, 2)));
    CHECK_THROWS_AS(KernelPoint(cplx(0, 0), cplx(1, 2)), DomainError);
    CHECK_THROWS_AS(KernelPoint(cplx(0, 1), cplx(1, -2)), DomainError);
  }

  TEST_CASE("Ghat examples") {
    const cplx w(0, 2), z(0, 2);
    const cplx i(0, 1);
    for (double t : {-1.0, 0.0, 2.0}) {
      const cplx g0 = 1.0 / (2.0 * kPi * i * (t - z) * (t - std::conj(w)));
      CHECK(std::abs(eval_Ghat(0, w, z, t) - g0) < 1e-15);
      CHECK(std::abs(eval_Ghat(2, w, z, t) - g0 / std::pow(kPi * (1 + t * t), 2)) < 1e-15);
    }
    CHECK_THROWS_AS(eval_Ghat(0, cplx(0, -1), z, 0.0), DomainError);
  }

  TEST_CASE("G_0 examples") {
    const cplx w(0.3, 1.5), z(-0.4, 2.0), i(0, 1);
    const cplx d = z - std::conj(w);
    CHECK(std::abs(eval_G(0, w, z, 0.7) - std::exp(2.0 * kPi * i * z * 0.7) / d) < 1e-15);
    CHECK(std::abs(eval_G(0, w, z, -0.7) - std::exp(-2.0 * kPi * i * std::conj(w) * 0.7) / d) < 1e-15);
  }

  TEST_CASE("G_k matches direct convolution of G_0 with A_k") {
    const cplx w(0, 2), z(0, 3);
    for (int k = 1; k <= 3; ++k) {
      for (double lam : {-0.9, 0.0, 0.7}) {
        auto f = [&](double t) { return eval_G(0, w, z, lam - t) * eval_A(k, t); };
        const double lo = std::min(0.0, lam), hi = std::max(0.0, lam);
        cplx direct = cquad(f, -14.0, lo) + cquad(f, hi, 14.0);
        if (hi > lo) direct += cquad(f, lo, hi);
        CAPTURE(k);
        CAPTURE(lam);
        CHECK(std::abs(eval_G(k, w, z, lam) - direct) < 1e-8);
      }
    }
  }

  TEST_CASE("G_k at zero is anti-Hermitian in (w, z)") {
    const cplx pts[] = {cplx(0.2, 0.6), cplx(-1.1, 1.4), cplx(0.5, 3.0)};
    for (int k = 0; k <= 4; ++k)
      for (cplx w : pts)
        for (cplx z : pts) {
          const cplx a = eval_G(k, w, z, 0.0), b = eval_G(k, z, w, 0.0);
          CHECK(std::abs(a + std::conj(b)) < 1e-12 * std::max(1.0, std::abs(a)));
        }
  }

  TEST_CASE("G_k and Ghat_k are a Fourier pair") {
    const cplx pts[] = {cplx(-1.0, 0.7), cplx(0.5, 1.2), cplx(1.5, 2.0)};
    const cplx i(0, 1);
    for (int k = 0; k <= 3; ++k)
      for (cplx w : pts)
        for (cplx z : pts)
          for (double t : {-1.3, 0.0, 0.8, 2.5}) {
            auto f = [&](double lam) { return eval_G(k, w, z, lam) * std::exp(-2.0 * kPi * i * lam * t); };
            cplx ft(0.0, 0.0);
            for (int j = -28; j < 28; ++j) ft += cquad(f, j * 0.5, (j + 1) * 0.5);
            CAPTURE(k);
            CAPTURE(t);
            CHECK(std::abs(ft - eval_Ghat(k, w, z, t)) < 1e-7);
          }
  }

  TEST_CASE("G_k is continuous as the arguments approach i") {
    const cplx w(0.4, 1.3), i(0, 1);
    for (int k = 1; k <= 3; ++k) {
      cplx prev = eval_G(k, w, i + cplx(1e-2, 1e-2), 0.3);
      for (int e = 3; e <= 5; ++e) {
        const double d = std::pow(10.0, -e);
        const cplx cur = eval_G(k, w, i + cplx(d, d), 0.3);
        CHECK(std::abs(cur - prev) < 50.0 * 10.0 * d * std::max(1.0, std::abs(cur)));
        prev = cur;
      }
    }
    CHECK_THROWS_AS(eval_G(1, w, i, 0.3), DomainError);
  }

  TEST_CASE("partial-fraction identity") {
    CHECK(pf_identity_residual(1, cplx(0.3, 0.8)) < 1e-14);
    CHECK(pf_identity_residual(2, cplx(1, 2)) < 1e-10);
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.2, 3.0);
    for (int k = 1; k <= 4; ++k) {
      double worst = 0.0;
      for (int s = 0; s < 100; ++s) worst = std::max(worst, pf_identity_residual(k, cplx(ux(rng), uy(rng))));
      CAPTURE(k);
      CHECK(worst < 1e-10);
    }
    CHECK_THROWS_AS(pf_identity_residual(2, cplx(0, 1)), DomainError);
    CHECK_THROWS_AS(pf_identity_residual(2, cplx(0, -1)), DomainError);
  }
}
