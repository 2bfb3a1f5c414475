#include "fspair/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fspair/error.hpp"
#include "fspair/hermitian.hpp"
#include "fspair/kernels.hpp"
#include "fspair/quadrature.hpp"

namespace fspair::nevanlinna {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
const cplx kI{0.0, 1.0};

void require_upper(cplx z, const char* what) {
  if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError(std::string(what) + ": point must lie in the upper half-plane");
}

// Local growth exponent g of t -> |mu|([-t, t]) at the truncation radius.
double growth_exponent(const measures::TemperedMeasure& mu, double& variation) {
  const double big_t = mu.truncation_radius();
  variation = mu.empty() || big_t <= 0.0 ? 0.0 : mu.variation(big_t);
  if (variation == 0.0) return 0.0;
  const double half = mu.variation(0.5 * big_t);
  if (half <= 0.0) return 0.0;
  return std::max(0.0, std::log2(variation / half));
}

// Bound for int_{|t| > T} |t|^{-p} d|mu| when |mu|([-t, t]) ~ V (t/T)^g.
double power_tail(double variation, double big_t, double g, double p) {
  if (variation == 0.0) return 0.0;
  if (big_t <= 0.0 || p <= g) return kInf;
  return variation * std::pow(big_t, -p) * g / (p - g);
}

struct PositiveTerms {
  cplx half_a0;
  std::vector<measures::SupportPoint> terms;  // lambda > 0, ascending
};

PositiveTerms positive_terms(const FSPair& pair) {
  PositiveTerms out{0.5 * pair.a().at(0.0), {}};
  for (const auto& p : pair.a().support())
    if (p.lambda > 1e-12) out.terms.push_back(p);
  return out;
}

// Tail bound for sum_{lambda > Lambda} |a| e^{-2 pi lambda y} from the declared growth.
double series_tail(const FSPair& pair, double y) {
  const auto& a = pair.a();
  if (a.empty()) return 0.0;
  const double c = std::max(a.growth_constant(), kPi * y);
  if (2.0 * kPi * y <= c) return kInf;
  double s = 0.0;
  for (const auto& p : a.support())
    if (p.lambda > 0.0) s += std::abs(p.value) * std::exp(-c * p.lambda);
  return s * std::exp(-(2.0 * kPi * y - c) * a.truncation_radius());
}

}  // namespace

// ---------------------------------------------------------------------------
// Series side

Evaluation f_series(const FSPair& pair, cplx z) {
  if (!(z.imag() > pair.strip_constant()))
    throw DomainError("f_series: Im z must exceed the strip constant " +
                      std::to_string(pair.strip_constant()));
  const auto pt = positive_terms(pair);
  Evaluation out{pt.half_a0, 0.0};
  double scale = std::abs(pt.half_a0);
  for (const auto& p : pt.terms) {
    const cplx term = p.value * std::exp(2.0 * kPi * kI * p.lambda * z);
    out.value += term;
    scale += std::abs(term);
  }
  out.error = 4.0 * kEps * scale + series_tail(pair, z.imag());
  return out;
}

cplx f_series_partial(const FSPair& pair, cplx z, std::size_t n_terms) {
  const auto pt = positive_terms(pair);
  cplx v = pt.half_a0;
  for (std::size_t i = 0; i < std::min(n_terms, pt.terms.size()); ++i)
    v += pt.terms[i].value * std::exp(2.0 * kPi * kI * pt.terms[i].lambda * z);
  return v;
}

int default_k(const FSPair& pair) {
  const int d = pair.mu().degree_bound();
  int k = 0;
  while (2 * (k + 1) < d) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// Integral side

HolomorphicModel::HolomorphicModel(FSPair pair, int k, std::vector<double> q_poly,
                                   double fit_residual)
    : pair_(std::move(pair)), k_(k), q_poly_(std::move(q_poly)), fit_residual_(fit_residual) {
  if (k_ < 0) throw DomainError("HolomorphicModel: k must be >= 0");
  if (q_poly_.size() > static_cast<std::size_t>(2 * k_ + 1))
    throw DomainError("HolomorphicModel: Q must have degree <= 2k");
  growth_exponent_ = growth_exponent(pair_.mu(), variation_);
}

cplx HolomorphicModel::q(cplx z) const {
  cplx v{};
  for (auto it = q_poly_.rbegin(); it != q_poly_.rend(); ++it) v = v * z + *it;
  return v;
}

Evaluation HolomorphicModel::kernel_integral(cplx z) const {
  require_upper(z, "f_integral");
  const auto& mu = pair_.mu();
  const int p = k_ + 1;
  auto kernel = [z, p](double t) {
    const cplx den = t - z;
    double damp = 1.0 / std::norm(den);
    for (int j = 0; j < p; ++j) damp /= 1.0 + t * t;
    return (1.0 + t * z) * std::conj(den) * damp;
  };
  cplx sum{};
  double scale = 0.0;
  for (const auto& a : mu.atoms()) {
    const cplx term = a.weight * kernel(a.location);
    sum += term;
    scale += std::abs(term);
  }
  double err = 8.0 * kEps * scale;
  const double big_t = mu.truncation_radius();
  if (mu.density() && big_t > 0.0) {
    const auto& d = *mu.density();
    auto bp = d.breakpoints(-big_t, big_t);
    bp.push_back(z.real());
    const auto est = quad::integrate([&](double t) { return d(t) * kernel(t); }, -big_t, big_t,
                                     {.abs_tol = 1e-11, .max_panel_width = 1.0}, bp);
    sum += est.value;
    err += est.error;
  }
  const double az = std::abs(z);
  const double lead = big_t > az ? (1.0 + big_t * az) / (big_t - az) : kInf;
  const double tail = power_tail(variation_, big_t, growth_exponent_, 2.0 * p);
  if (tail > 0.0) err += lead * tail;
  return {sum / (2.0 * kPi * kI), err / (2.0 * kPi)};
}

Evaluation HolomorphicModel::reduced_integral(cplx z) const { return kernel_integral(z); }

Evaluation HolomorphicModel::integral_part(cplx z) const {
  auto e = kernel_integral(z);
  const cplx factor = std::pow(z * z + 1.0, k_);
  return {factor * e.value, std::abs(factor) * e.error};
}

Evaluation f_integral(const HolomorphicModel& model, cplx z) {
  auto e = model.integral_part(z);
  e.value += kI * model.q(z);
  return e;
}

// ---------------------------------------------------------------------------
// Polynomial part

QFit fit_q(const FSPair& pair, int k, std::span<const cplx> sample) {
  if (k < 0) throw DomainError("fit_q: k must be >= 0");
  return fit_q(HolomorphicModel(pair, k), sample);
}

QFit fit_q(const HolomorphicModel& bare, std::span<const cplx> sample) {
  const FSPair& pair = bare.pair();
  const int k = bare.k();
  const std::size_t need = static_cast<std::size_t>(4 * k + 4);
  if (sample.size() < need)
    throw DomainError("fit_q: need at least " + std::to_string(need) + " sample points");
  for (cplx z : sample)
    if (!(z.imag() > pair.strip_constant()))
      throw DomainError("fit_q: sample points must lie above the strip constant");

  const int ncoef = 2 * k + 1;
  const auto rows = static_cast<Eigen::Index>(2 * sample.size());
  Eigen::MatrixXd design(rows, ncoef);
  Eigen::VectorXd rhs(rows);
  std::vector<cplx> target(sample.size());
  QFit fit;
  double magnitude = 1.0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    const cplx z = sample[j];
    const auto s = f_series(pair, z);
    auto h = bare.integral_part(z);
    target[j] = s.value - h.value;
    fit.budget = std::max(fit.budget, s.error + h.error);
    magnitude = std::max({magnitude, std::abs(s.value), std::abs(h.value)});
    cplx zm{1.0, 0.0};
    const auto r = static_cast<Eigen::Index>(2 * j);
    for (int m = 0; m < ncoef; ++m) {
      const cplx col = kI * zm;
      design(r, m) = col.real();
      design(r + 1, m) = col.imag();
      zm *= z;
    }
    rhs(r) = target[j].real();
    rhs(r + 1) = target[j].imag();
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto& sv = svd.singularValues();
  fit.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : kInf;
  if (!(fit.condition <= 1e12))
    throw FitError("fit_q: ill-conditioned design (condition " + std::to_string(fit.condition) +
                   "); sample too clustered");

  const Eigen::VectorXd q = design.colPivHouseholderQr().solve(rhs);
  fit.coeffs.assign(q.data(), q.data() + q.size());
  for (std::size_t j = 0; j < sample.size(); ++j) {
    cplx qz{};
    for (auto it = fit.coeffs.rbegin(); it != fit.coeffs.rend(); ++it) qz = qz * sample[j] + *it;
    fit.residual = std::max(fit.residual, std::abs(target[j] - kI * qz));
  }
  const double allowed = 10.0 * fit.budget + 1e-12 * magnitude;
  if (!(fit.residual <= allowed))
    throw FitError("fit_q: residual " + std::to_string(fit.residual) + " exceeds budget " +
                   std::to_string(allowed) + " (wrong k or truncation)");
  return fit;
}

std::vector<cplx> default_fit_sample(double strip) {
  std::vector<cplx> out;
  for (double y : {0.25, 1.1, 2.4})
    for (double x : {-1.7, -0.6, 0.45, 1.3}) out.emplace_back(x, strip + y);
  return out;
}

std::vector<cplx> validation_grid(double strip) {
  std::vector<cplx> out;
  for (int j = 1; j <= 5; ++j)
    for (int i = -2; i <= 2; ++i) out.emplace_back(i, strip + j * (4.0 - strip) / 5.0);
  return out;
}

HolomorphicModel fit_model(FSPair pair, int k) {
  if (k < 0) k = default_k(pair);
  const auto sample = default_fit_sample(pair.strip_constant());
  HolomorphicModel model(std::move(pair), k);
  auto fit = fit_q(model, sample);
  model.q_poly_ = std::move(fit.coeffs);
  model.fit_residual_ = fit.residual;
  return model;
}

// ---------------------------------------------------------------------------
// Bohr-Fourier coefficients

Evaluation ef_coeff(const FSPair& pair, double lambda, double y, double big_t) {
  if (!(y > pair.strip_constant()))
    throw DomainError("ef_coeff: y must exceed the strip constant");
  if (!(big_t > 0.0)) throw DomainError("ef_coeff: T must be positive");

  const auto pt = positive_terms(pair);
  double ref = std::abs(pt.half_a0);
  for (const auto& p : pt.terms)
    ref = std::max(ref, std::abs(p.value) * std::exp(-2.0 * kPi * p.lambda * y));
  std::vector<measures::SupportPoint> kept;
  double dropped = 0.0;
  for (const auto& p : pt.terms) {
    const double mag = std::abs(p.value) * std::exp(-2.0 * kPi * p.lambda * y);
    if (mag >= 1e-17 * ref)
      kept.push_back(p);
    else
      dropped += mag;
  }
  const double lambda_eff = kept.empty() ? 0.0 : kept.back().lambda;

  const cplx half_a0 = pt.half_a0;
  auto integrand = [&](double x) {
    const cplx z{x, y};
    cplx f = half_a0;
    for (const auto& p : kept) f += p.value * std::exp(2.0 * kPi * kI * p.lambda * z);
    return f * std::exp(-2.0 * kPi * kI * lambda * z) / (2.0 * big_t);
  };
  const double freq = std::abs(lambda) + lambda_eff;
  quad::Options opt{.abs_tol = 1e-12};
  if (freq > 0.0) {
    opt.max_panel_width = 1.0 / (4.0 * freq);
    opt.max_panels = std::max<std::size_t>(
        20000, 4 * static_cast<std::size_t>(std::ceil(2.0 * big_t / opt.max_panel_width)));
  }
  const auto est = quad::integrate(integrand, -big_t, big_t, opt);
  const double amp = std::exp(2.0 * kPi * lambda * y);
  return {est.value, est.error + (dropped + series_tail(pair, y)) * amp};
}

// ---------------------------------------------------------------------------
// Measure recovery

Evaluation recover_measure(const HolomorphicModel& model, double a, double b, double s) {
  if (!(a < b)) throw DomainError("recover_measure: need a < b");
  if (!(s > 0.0 && s <= 0.1)) throw DomainError("recover_measure: need 0 < s <= 0.1");
  std::vector<double> bp;
  for (const auto& atom : model.pair().mu().atoms()) {
    const double t = atom.location;
    if (std::abs(t - a) < 1e-3 || std::abs(t - b) < 1e-3)
      throw DomainError("recover_measure: endpoint within 1e-3 of an atom at t=" +
                        std::to_string(t));
    if (t > a && t < b)
      for (double off : {0.0, -s, s, -10.0 * s, 10.0 * s, -100.0 * s, 100.0 * s})
        bp.push_back(t + off);
  }
  auto f = [&](double x) {
    const cplx z{x, s};
    return (model.reduced_integral(z).value / (z * z + 1.0)).real();
  };
  const auto est = quad::integrate(f, a, b, {.abs_tol = 1e-10, .max_panels = 50000}, bp);
  if (!est.converged && !est.rounding_limited)
    throw QuadratureError("recover_measure: quadrature did not converge", est.value, est.error);
  const double mid_err = model.reduced_integral({0.5 * (a + b), s}).error;
  return {est.value, est.error + (b - a) * mid_err};
}

RecoveryReport recover_measure_extrapolated(const HolomorphicModel& model, double a, double b) {
  RecoveryReport rep;
  rep.s_values = {1e-1, 1e-2, 1e-3};
  for (double s : rep.s_values) rep.values.push_back(recover_measure(model, a, b, s).value.real());
  const auto& v = rep.values;
  const double r1 = (10.0 * v[1] - v[0]) / 9.0;
  const double r2 = (10.0 * v[2] - v[1]) / 9.0;
  rep.extrapolated = (100.0 * r2 - r1) / 99.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Nevanlinna matrix

NevMatrix nev_matrix_from_values(std::span<const cplx> points, std::span<const cplx> values) {
  if (points.size() != values.size()) throw DomainError("nev_matrix: size mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_upper(points[i], "nev_matrix");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(points[i] - points[j]) < 1e-8)
        throw DomainError("nev_matrix: points closer than 1e-8");
  }
  NevMatrix m;
  m.points.assign(points.begin(), points.end());
  const auto n = static_cast<Eigen::Index>(points.size());
  m.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto iu = static_cast<std::size_t>(i), ju = static_cast<std::size_t>(j);
      m.entries(i, j) = kI * (values[iu] + std::conj(values[ju])) /
                        (points[iu] - std::conj(points[ju]));
    }
  return m;
}

NevMatrix nev_matrix(const HolomorphicModel& model, std::span<const cplx> points) {
  std::vector<cplx> values;
  values.reserve(points.size());
  for (cplx z : points) {
    require_upper(z, "nev_matrix");
    values.push_back(f_integral(model, z).value);
  }
  return nev_matrix_from_values(points, values);
}

int neg_index(const NevMatrix& m, double tol_rel) {
  if (!(tol_rel > 0.0)) throw DomainError("neg_index: tol_rel must be positive");
  if (m.entries.size() == 0) return 0;
  const auto res = hermitian::jacobi_eigenvalues(m.entries);
  if (!res.converged) throw InvariantError("neg_index: Jacobi iteration did not converge");
  double norm = 0.0;
  for (double e : res.eigenvalues) norm = std::max(norm, std::abs(e));
  int count = 0;
  for (double e : res.eigenvalues)
    if (e < -tol_rel * norm) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Tapered kernel sum

cplx bridge_sum(const FSPair& pair, int k, cplx w, cplx z, double big_t) {
  if (k < 0) throw DomainError("bridge_sum: k must be >= 0");
  if (!(big_t > 0.0)) throw DomainError("bridge_sum: T must be positive");
  require_upper(w, "bridge_sum");
  require_upper(z, "bridge_sum");
  const double cut = big_t * (k + 1);
  cplx sum{};
  for (const auto& p : pair.a().support()) {
    if (std::abs(p.lambda) > cut) continue;
    const double taper = kernels::eval_Shat(k, p.lambda / big_t);
    if (taper == 0.0) continue;
    sum += p.value * kernels::eval_G(k, w, z, p.lambda) * taper;
  }
  return sum;
}

Evaluation bridge_rhs(const FSPair& pair, int k, cplx w, cplx z, double tol) {
  if (k < 0) throw DomainError("bridge_rhs: k must be >= 0");
  require_upper(w, "bridge_rhs");
  require_upper(z, "bridge_rhs");
  const auto& mu = pair.mu();
  const double big_t = mu.truncation_radius();
  const auto est = measures::integrate_against(
      mu, [&](double t) { return kernels::eval_Ghat(k, w, z, t); }, big_t, tol);
  double variation = 0.0;
  const double g = growth_exponent(mu, variation);
  const double tail = power_tail(variation, big_t, g, 2.0 * k + 2.0) /
                      (2.0 * std::pow(kPi, k + 1));
  return {est.value, est.error + tail};
}

// ---------------------------------------------------------------------------
// Almost-periodicity proxy

std::vector<double> ap_proxy(const FSPair& pair, double y, std::span<const std::size_t> truncs) {
  if (!(y > pair.strip_constant()))
    throw DomainError("ap_proxy: y must exceed the strip constant");
  const auto pt = positive_terms(pair);
  constexpr int kPoints = 1024;
  std::vector<double> out;
  out.reserve(truncs.size());
  for (std::size_t n : truncs) {
    double sup = 0.0;
    for (int j = 0; j < kPoints; ++j) {
      const cplx z{-16.0 + 32.0 * j / (kPoints - 1), y};
      cplx tail{};
      for (std::size_t i = n; i < pt.terms.size(); ++i)
        tail += pt.terms[i].value * std::exp(2.0 * kPi * kI * pt.terms[i].lambda * z);
      sup = std::max(sup, std::abs(tail));
    }
    out.push_back(sup);
  }
  return out;
}

}  // namespace fspair::nevanlinna
