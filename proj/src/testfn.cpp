#include "fspair/testfn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "fspair/error.hpp"
#include "fspair/quadrature.hpp"

namespace fspair::testfn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGaussianCutoff = 7.0;  // exp(-pi * 49) is far below double resolution
constexpr double kEps = std::numeric_limits<double>::epsilon();

double bump(double u) {
  const double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double p = std::exp(-1.0 / x);
  const double q = std::exp(-1.0 / (1.0 - x));
  return p / (p + q);
}

double profile_radius(const TestFunctionSpec& s) {
  switch (s.kind) {
    case Kind::bump: return 1.0;
    case Kind::plateau: return s.outer;
    case Kind::gaussian_diag: return kGaussianCutoff;
  }
  return 1.0;
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::bump: return "bump";
    case Kind::plateau: return "plateau";
    case Kind::gaussian_diag: return "gaussian_diag";
  }
  return "bump";
}

Kind kind_from_string(const std::string& s) {
  if (s == "bump") return Kind::bump;
  if (s == "plateau") return Kind::plateau;
  if (s == "gaussian" || s == "gaussian_diag") return Kind::gaussian_diag;
  throw DomainError("unknown test function kind '" + s + "'");
}

void TestFunctionSpec::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("test function scale must be > 0");
  if (!std::isfinite(shift)) throw DomainError("test function shift must be finite");
  if (kind == Kind::plateau && !(0.0 < inner && inner < outer && outer <= 1.0))
    throw DomainError("plateau radii must satisfy 0 < inner < outer <= 1");
}

double eval_profile(const TestFunctionSpec& spec, double u) {
  const double au = std::abs(u);
  switch (spec.kind) {
    case Kind::bump: return bump(u);
    case Kind::plateau:
      if (au <= spec.inner) return 1.0;
      if (au >= spec.outer) return 0.0;
      return smooth_step((spec.outer - au) / (spec.outer - spec.inner));
    case Kind::gaussian_diag: return std::exp(-kPi * u * u);
  }
  return 0.0;
}

double eval_testfn(const TestFunctionSpec& spec, double x) {
  return eval_profile(spec, (x - spec.shift) / spec.scale);
}

FourierTransform::FourierTransform(TestFunctionSpec spec, double tol)
    : spec_(spec), tol_(tol) {
  spec_.validate();
  if (!(tol_ > 0.0)) throw DomainError("ft tolerance must be positive");
}

double FourierTransform::unit(double eta) const {
  eta = std::abs(eta);
  if (auto it = cache_.find(eta); it != cache_.end()) return it->second.first;

  const double radius = profile_radius(spec_);
  const auto f = [this, eta](double u) {
    return eval_profile(spec_, u) * std::cos(2.0 * kPi * u * eta);
  };
  std::vector<double> bp;
  if (spec_.kind == Kind::plateau) bp.push_back(spec_.inner);
  const quad::Options opt{.abs_tol = std::max(0.5 * tol_ / spec_.scale, 1e-16),
                          .rel_tol = 0.0,
                          .max_panel_width = 1.0 / (4.0 * eta + 1.0),
                          .max_panels = 200000};
  const auto est = quad::integrate(f, 0.0, radius, opt, bp);
  if (!est.converged) degraded_ = true;
  const double value = 2.0 * est.value;
  const double err = 2.0 * est.error;
  accumulated_error_ += spec_.scale * err;
  max_error_ = std::max(max_error_, spec_.scale * err);
  cache_.emplace(eta, std::make_pair(value, err));
  return value;
}

cplx FourierTransform::operator()(double xi) const {
  const double a = spec_.scale;
  const cplx phase = spec_.shift == 0.0 ? cplx{1.0, 0.0}
                                        : std::polar(1.0, -2.0 * kPi * spec_.shift * xi);
  return a * phase * unit(a * xi);
}

cplx ft_testfn(const TestFunctionSpec& spec, double xi, double tol) {
  FourierTransform ft(spec, tol);
  const cplx v = ft(xi);
  if (ft.degraded() || ft.accumulated_error() > tol)
    throw QuadratureError("ft_testfn: tolerance not reached at xi=" + std::to_string(xi), v,
                          ft.accumulated_error());
  return v;
}

std::string VerificationReport::to_json() const {
  using json = nlohmann::json;
  json tf = {{"kind", to_string(testfn.kind)}, {"scale", testfn.scale}, {"shift", testfn.shift}};
  if (testfn.kind == Kind::plateau) {
    tf["inner"] = testfn.inner;
    tf["outer"] = testfn.outer;
  }
  json j = {{"pair_name", pair_name},
            {"testfn", tf},
            {"lhs", {{"re", lhs.real()}, {"im", lhs.imag()}}},
            {"rhs", {{"re", rhs.real()}, {"im", rhs.imag()}}},
            {"abs_residual", abs_residual()},
            {"mu_truncation", mu_truncation},
            {"a_truncation", a_truncation},
            {"quadrature_tol", quadrature_tol},
            {"runtime_ms", runtime_ms}};
  return j.dump(2);
}

VerificationReport verify_pair(const measures::FSPair& pair, const TestFunctionSpec& spec,
                               double quadrature_tol) {
  const auto start = std::chrono::steady_clock::now();
  spec.validate();
  if (!(quadrature_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!spec.compact() && !pair.admits_gaussian())
    throw DomainError("gaussian_diag is only admitted on pairs flagged for absolute convergence");

  VerificationReport rep;
  rep.pair_name = pair.name();
  rep.testfn = spec;
  rep.quadrature_tol = quadrature_tol;
  const auto& mu = pair.mu();
  rep.mu_truncation = mu.truncation_radius();
  rep.a_truncation = pair.a().truncation_radius();

  // lhs: the per-evaluation tolerance is shared out over the total variation.
  const double big_t = mu.truncation_radius();
  const double variation = mu.empty() ? 0.0 : mu.variation(big_t);
  const double eval_tol = std::max(quadrature_tol / std::max(1.0, variation), 1e-15);
  FourierTransform ft(spec, eval_tol);
  if (!mu.empty()) {
    const auto est = measures::integrate_against(
        mu, [&ft](double t) { return ft(t); }, big_t, quadrature_tol);
    rep.lhs = est.value;
    rep.lhs_error = est.error + variation * ft.max_error();
    if (!est.converged) rep.degraded = true;

    if (big_t > 0.0) {
      const int d = std::max(mu.degree_bound(), 1);
      const int m = d + 2;
      double c_m = 0.0;
      for (int j = 0; j <= 16; ++j) {
        const double xi = 0.5 * big_t * (1.0 + j / 16.0);
        c_m = std::max(c_m, std::abs(ft(xi)) * std::pow(xi, m));
      }
      rep.lhs_error += c_m * variation * std::pow(big_t, -m) * d / (m - d);
    }
  }
  if (ft.degraded()) rep.degraded = true;

  // rhs
  double scale_sum = 0.0;
  const double lo = spec.shift - spec.scale * profile_radius(spec);
  const double hi = spec.shift + spec.scale * profile_radius(spec);
  for (const auto& p : pair.a().support()) {
    if (spec.compact() && (p.lambda <= lo || p.lambda >= hi)) continue;
    const cplx term = p.value * eval_testfn(spec, p.lambda);
    rep.rhs += term;
    scale_sum += std::abs(term);
  }
  rep.rhs_error = 4.0 * kEps * scale_sum;
  if (spec.compact() && !pair.a().empty() &&
      (hi > rep.a_truncation || lo < -rep.a_truncation))
    rep.degraded = true;

  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace fspair::testfn
