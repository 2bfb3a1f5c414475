#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "fspair/hermitian.hpp"
#include "oracles.hpp"

using namespace fspair::hermitian;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng, double spread = 1.0) {
  std::normal_distribution<double> g(0.0, spread);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = {g(rng), g(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("hermitian") {

TEST_CASE("diagonal and 2x2 examples") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  d(2, 2) = 2.0;
  const auto r = jacobi_eigenvalues(d);
  CHECK(r.converged);
  REQUIRE(r.eigenvalues.size() == 3);
  CHECK(r.eigenvalues[0] == -1.0);
  CHECK(r.eigenvalues[1] == 2.0);
  CHECK(r.eigenvalues[2] == 3.0);

  // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, cplx(0, 1), cplx(0, -1), 1.0;
  const auto e = jacobi_eigenvalues(m);
  CHECK(e.converged);
  CHECK(std::abs(e.eigenvalues[0]) < 1e-14);
  CHECK(std::abs(e.eigenvalues[1] - 2.0) < 1e-14);
}

TEST_CASE("3x3 agrees with the trigonometric cubic") {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_hermitian(3, rng, trial % 2 ? 1.0 : 10.0);
    std::array<std::array<cplx, 3>, 3> a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
    const auto ref = oracle::hermitian3_eigenvalues(a);
    const auto r = jacobi_eigenvalues(m);
    REQUIRE(r.converged);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(r.eigenvalues[i] - ref[i]) / scale);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("larger matrices against an independent solver") {
  std::mt19937_64 rng(11);
  for (int n : {1, 4, 9, 16, 25}) {
    const auto m = random_hermitian(n, rng);
    const auto r = jacobi_eigenvalues(m);
    REQUIRE(r.converged);
    REQUIRE(static_cast<int>(r.eigenvalues.size()) == n);
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, m.norm());
    double trace = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(r.eigenvalues[i] - es.eigenvalues()(i)) < 1e-12 * scale);
      trace += m(i, i).real();
      sum += r.eigenvalues[i];
    }
    CHECK(std::abs(trace - sum) < 1e-12 * scale);
    // Sum of squares equals the Frobenius norm squared.
    double sq = 0.0;
    for (double e : r.eigenvalues) sq += e * e;
    CHECK(std::abs(sq - m.squaredNorm()) < 1e-11 * m.squaredNorm());
  }
}

TEST_CASE("repeated eigenvalues and zero matrix") {
  const Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(4, 4);
  const auto r = jacobi_eigenvalues(z);
  CHECK(r.converged);
  for (double e : r.eigenvalues) CHECK(e == 0.0);

  // Unitary conjugate of diag(1, 1, -2).
  std::mt19937_64 rng(3);
  const auto h = random_hermitian(3, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(h + cplx(0, 1) * Eigen::MatrixXcd::Identity(3, 3));
  const Eigen::MatrixXcd u = qr.householderQ();
  Eigen::VectorXcd d(3);
  d << 1.0, 1.0, -2.0;
  const Eigen::MatrixXcd m = u * d.asDiagonal() * u.adjoint();
  const auto e = jacobi_eigenvalues(m);
  CHECK(e.converged);
  CHECK(std::abs(e.eigenvalues[0] + 2.0) < 1e-13);
  CHECK(std::abs(e.eigenvalues[1] - 1.0) < 1e-13);
  CHECK(std::abs(e.eigenvalues[2] - 1.0) < 1e-13);
}

TEST_CASE("hermitian defect") {
  std::mt19937_64 rng(5);
  auto m = random_hermitian(4, rng);
  CHECK(hermitian_defect(m) == 0.0);
  m(0, 2) += cplx(0.0, 1e-3);
  CHECK(hermitian_defect(m) > 1e-4);
  CHECK(hermitian_defect(m) < 1e-2);
}

TEST_CASE("sweep cap reports non-convergence") {
  std::mt19937_64 rng(9);
  const auto m = random_hermitian(12, rng);
  const auto r = jacobi_eigenvalues(m, 1e-14, 1);
  CHECK_FALSE(r.converged);
  CHECK(r.sweeps == 1);
}

}  // TEST_SUITE
