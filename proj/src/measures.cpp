#include "fspair/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include "fspair/error.hpp"
#include "fspair/qseries.hpp"

namespace fspair::measures {

namespace {

constexpr double kLocationTol = 1e-12;
// Eta-quotient coefficients below this are floating-point residue of exact zeros.
constexpr double kCoefficientFloor = 1e-13;

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <class Points, class Loc, class Val>
void check_sorted_nonzero(const Points& pts, Loc loc, Val val, const char* what) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(loc(pts[i])) || !std::isfinite(val(pts[i]).real()) ||
        !std::isfinite(val(pts[i]).imag()))
      throw InvariantError(std::string(what) + ": non-finite entry at index " + std::to_string(i));
    if (val(pts[i]) == cplx{})
      throw InvariantError(std::string(what) + ": zero value stored at " + fmt_double(loc(pts[i])));
    if (i > 0 && !(loc(pts[i]) > loc(pts[i - 1])))
      throw InvariantError(std::string(what) + ": locations not strictly increasing at index " +
                           std::to_string(i));
  }
}

// Sort by location and merge entries that coincide within kLocationTol.
std::vector<Atom> normalise_atoms(std::vector<Atom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& x, const Atom& y) { return x.location < y.location; });
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (!out.empty() && a.location - out.back().location < kLocationTol)
      out.back().weight += a.weight;
    else
      out.push_back(a);
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == cplx{}; });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Density

Density::Density(Kind kind, double scale, std::vector<std::pair<double, double>> samples)
    : kind_(kind), scale_(scale), samples_(std::move(samples)) {}

Density Density::r_tanh_pi_r(double scale) {
  if (!std::isfinite(scale)) throw DomainError("density scale must be finite");
  return {Kind::r_tanh_pi_r, scale, {}};
}

Density Density::grid(double scale, std::vector<std::pair<double, double>> samples) {
  if (!std::isfinite(scale)) throw DomainError("density scale must be finite");
  if (samples.size() < 2) throw DomainError("grid density needs at least two samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first))
      throw InvariantError("grid density samples must be strictly increasing in t");
  return {Kind::grid, scale, std::move(samples)};
}

std::string Density::kind_name() const {
  return kind_ == Kind::r_tanh_pi_r ? "r_tanh_pi_r" : "grid";
}

double Density::operator()(double t) const {
  if (kind_ == Kind::r_tanh_pi_r) return scale_ * t * std::tanh(std::numbers::pi * t);
  if (t < samples_.front().first || t > samples_.back().first) return 0.0;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double x, const auto& s) { return x < s.first; });
  if (it == samples_.end()) return scale_ * samples_.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double u = (t - lo.first) / (hi.first - lo.first);
  return scale_ * ((1.0 - u) * lo.second + u * hi.second);
}

std::vector<double> Density::breakpoints(double lo, double hi) const {
  std::vector<double> out;
  if (kind_ == Kind::grid)
    for (const auto& s : samples_)
      if (s.first > lo && s.first < hi) out.push_back(s.first);
  return out;
}

// ---------------------------------------------------------------------------
// TemperedMeasure / SummationFunction / FSPair

TemperedMeasure::TemperedMeasure(std::vector<Atom> atoms, std::optional<Density> density,
                                 int degree_bound, double truncation_radius,
                                 std::string truncation_note)
    : atoms_(std::move(atoms)),
      density_(std::move(density)),
      degree_bound_(degree_bound),
      truncation_radius_(truncation_radius),
      truncation_note_(std::move(truncation_note)) {
  check_sorted_nonzero(
      atoms_, [](const Atom& a) { return a.location; }, [](const Atom& a) { return a.weight; },
      "measure atoms");
  if (degree_bound_ < 0) throw InvariantError("degree bound must be non-negative");
}

bool TemperedMeasure::is_real() const noexcept {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.weight.imag() == 0.0; });
}

double TemperedMeasure::variation(double t) const {
  double v = 0.0;
  for (const auto& a : atoms_)
    if (std::abs(a.location) <= t) v += std::abs(a.weight);
  if (density_) {
    const auto& d = *density_;
    auto est = quad::integrate([&d](double x) { return std::abs(d(x)); }, -t, t,
                               {.abs_tol = 1e-10, .rel_tol = 1e-10, .max_panel_width = 1.0},
                               d.breakpoints(-t, t));
    v += est.value;
  }
  return v;
}

SummationFunction::SummationFunction(std::vector<SupportPoint> support, double growth_constant,
                                     double truncation_radius)
    : support_(std::move(support)),
      growth_constant_(growth_constant),
      truncation_radius_(truncation_radius) {
  check_sorted_nonzero(
      support_, [](const SupportPoint& p) { return p.lambda; },
      [](const SupportPoint& p) { return p.value; }, "summation support");
  if (!(growth_constant_ > 0.0)) throw InvariantError("growth constant must be positive");
}

cplx SummationFunction::at(double lambda) const {
  auto it = std::lower_bound(
      support_.begin(), support_.end(), lambda - kLocationTol,
      [](const SupportPoint& p, double x) { return p.lambda < x; });
  if (it != support_.end() && std::abs(it->lambda - lambda) <= kLocationTol) return it->value;
  return {};
}

FSPair::FSPair(std::string name, TemperedMeasure mu, SummationFunction a, bool antipodal,
               double strip_constant, bool admits_gaussian)
    : name_(std::move(name)),
      mu_(std::move(mu)),
      a_(std::move(a)),
      antipodal_(antipodal),
      strip_constant_(strip_constant),
      admits_gaussian_(admits_gaussian) {
  if (!(strip_constant_ > 0.0)) throw InvariantError("strip constant must be positive");
  if (antipodal_) {
    if (auto v = antipodality_violation(mu_, a_)) throw InvariantError(*v);
  }
}

FSPair FSPair::scaled(double factor) const {
  if (factor == 0.0) throw DomainError("scale factor must be non-zero");
  std::vector<Atom> atoms(mu_.atoms().begin(), mu_.atoms().end());
  for (auto& x : atoms) x.weight *= factor;
  std::optional<Density> density;
  if (mu_.density()) {
    const auto& d = *mu_.density();
    density = d.kind() == Density::Kind::r_tanh_pi_r
                  ? Density::r_tanh_pi_r(d.scale() * factor)
                  : Density::grid(d.scale() * factor, d.samples());
  }
  std::vector<SupportPoint> pts(a_.support().begin(), a_.support().end());
  for (auto& p : pts) p.value *= factor;
  return {name_,
          TemperedMeasure(std::move(atoms), std::move(density), mu_.degree_bound(),
                          mu_.truncation_radius(), mu_.truncation_note()),
          SummationFunction(std::move(pts), a_.growth_constant(), a_.truncation_radius()),
          antipodal_,
          strip_constant_,
          admits_gaussian_};
}

std::optional<std::string> antipodality_violation(const TemperedMeasure& mu,
                                                  const SummationFunction& a) {
  for (const auto& x : mu.atoms())
    if (x.weight.imag() != 0.0)
      return "antipodality violation: measure weight at t=" + fmt_double(x.location) +
             " is not real";
  for (const auto& p : a.support()) {
    const cplx mirror = a.at(-p.lambda);
    if (mirror != std::conj(p.value))
      return "antipodality violation: a(-lambda) != conj(a(lambda)) at lambda=" +
             fmt_double(p.lambda);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Builders

FSPair make_poisson(double t_max, double lambda_max) {
  if (!(t_max > 0.0) || !(lambda_max > 0.0))
    throw DomainError("make_poisson: truncation radii must be positive");
  const long nt = static_cast<long>(std::floor(t_max));
  const long nl = static_cast<long>(std::floor(lambda_max));
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(2 * nt + 1));
  for (long n = -nt; n <= nt; ++n) atoms.push_back({static_cast<double>(n), 1.0});
  std::vector<SupportPoint> pts;
  pts.reserve(static_cast<std::size_t>(2 * nl + 1));
  for (long n = -nl; n <= nl; ++n) pts.push_back({static_cast<double>(n), 1.0});
  TemperedMeasure mu(std::move(atoms), std::nullopt, 2, t_max,
                     "Dirac comb truncated to |t| <= " + fmt_double(t_max));
  return {"poisson", std::move(mu), SummationFunction(std::move(pts), 1.0, lambda_max), true,
          0.1, true};
}

FSPair make_guinand(double c, int n_max) {
  const auto alpha = qseries::guinand_coeffs(c, n_max);
  std::vector<Atom> atoms;
  atoms.reserve(2 * alpha.coeffs().size());
  for (int n = 0; n <= n_max; ++n) {
    if (std::abs(alpha[n]) < kCoefficientFloor) continue;
    const double t = std::sqrt(n + c);
    atoms.push_back({t, alpha[n]});
    atoms.push_back({-t, alpha[n]});
  }
  atoms = normalise_atoms(std::move(atoms));
  std::vector<SupportPoint> pts;
  pts.reserve(atoms.size());
  for (const auto& x : atoms) pts.push_back({x.location, x.weight});
  const double radius = std::sqrt(n_max + c);
  TemperedMeasure mu(std::move(atoms), std::nullopt, 3, radius,
                     "eta-quotient atoms sqrt(n+c), n <= " + std::to_string(n_max));
  return {"guinand", std::move(mu), SummationFunction(std::move(pts), 1.0, radius), true, 0.1,
          true};
}

double meyer_character(long n) {
  if (n <= 0) return 0.0;
  if (n % 16 == 0) return 0.0;
  if (n % 4 == 0) return 4.0;
  return -0.5;
}

FSPair make_meyer(int n_max) {
  if (n_max < 1) throw DomainError("make_meyer: n_max must be >= 1");
  const auto r3 = qseries::r3_sequence(n_max);
  std::vector<Atom> atoms;
  for (long n = 1; n <= n_max; ++n) {
    const double chi = meyer_character(n);
    const auto r = r3.values[static_cast<std::size_t>(n)];
    if (chi == 0.0 || r == 0) continue;
    const double root = std::sqrt(static_cast<double>(n));
    const double w = chi * static_cast<double>(r) / root;
    atoms.push_back({0.5 * root, w});
    atoms.push_back({-0.5 * root, -w});
  }
  atoms = normalise_atoms(std::move(atoms));
  std::vector<SupportPoint> pts;
  pts.reserve(atoms.size());
  const cplx minus_i{0.0, -1.0};
  for (const auto& x : atoms) pts.push_back({x.location, minus_i * x.weight});
  const double radius = 0.5 * std::sqrt(static_cast<double>(n_max));
  TemperedMeasure mu(std::move(atoms), std::nullopt, 3, radius,
                     "three-squares atoms sqrt(n)/2, n <= " + std::to_string(n_max));
  return {"meyer", std::move(mu), SummationFunction(std::move(pts), 1.0, radius), true, 0.1,
          true};
}

// ---------------------------------------------------------------------------
// Antipodal splitting

std::pair<FSPair, FSPair> antipodal_split(const FSPair& pair) {
  const auto& mu = pair.mu();
  std::vector<Atom> re_atoms, im_atoms;
  for (const auto& x : mu.atoms()) {
    if (x.weight.real() != 0.0) re_atoms.push_back({x.location, x.weight.real()});
    if (x.weight.imag() != 0.0) im_atoms.push_back({x.location, -x.weight.imag()});
  }

  // Union of the support and its reflection.
  std::vector<double> lambdas;
  for (const auto& p : pair.a().support()) {
    lambdas.push_back(p.lambda);
    lambdas.push_back(-p.lambda);
  }
  std::sort(lambdas.begin(), lambdas.end());
  std::vector<double> uniq;
  for (double l : lambdas)
    if (uniq.empty() || l - uniq.back() >= kLocationTol) uniq.push_back(l);

  std::vector<SupportPoint> a1, a2;
  const cplx i{0.0, 1.0};
  for (double l : uniq) {
    const cplx here = pair.a().at(l);
    const cplx mirror = std::conj(pair.a().at(-l));
    const cplx v1 = (here + mirror) / 2.0;
    const cplx v2 = -i * (mirror - here) / 2.0;
    if (v1 != cplx{}) a1.push_back({l, v1});
    if (v2 != cplx{}) a2.push_back({l, v2});
  }

  const auto& a = pair.a();
  FSPair first(pair.name() + ".re",
               TemperedMeasure(std::move(re_atoms), mu.density(), mu.degree_bound(),
                               mu.truncation_radius(), mu.truncation_note()),
               SummationFunction(std::move(a1), a.growth_constant(), a.truncation_radius()), true,
               pair.strip_constant(), pair.admits_gaussian());
  FSPair second(pair.name() + ".im",
                TemperedMeasure(std::move(im_atoms), std::nullopt, mu.degree_bound(),
                                mu.truncation_radius(), mu.truncation_note()),
                SummationFunction(std::move(a2), a.growth_constant(), a.truncation_radius()),
                true, pair.strip_constant(), pair.admits_gaussian());
  return {std::move(first), std::move(second)};
}

// ---------------------------------------------------------------------------
// Degree probe

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converging: return "converging";
    case Verdict::diverging: return "diverging";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DegreeProbeReport degree_probe(const TemperedMeasure& mu, int n, std::span<const double> t_grid) {
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("degree_probe: T grid must increase");
  DegreeProbeReport rep;
  rep.n = n;
  rep.t_grid.assign(t_grid.begin(), t_grid.end());
  const auto weight = [n](double t) { return std::pow(1.0 + t * t, -0.5 * n); };

  double prev_t = 0.0, acc = 0.0;
  for (double big_t : t_grid) {
    // Shell (prev_t, big_t]; the first shell also holds t = 0.
    for (const auto& a : mu.atoms()) {
      const double at = std::abs(a.location);
      const bool first = rep.partial_integrals.empty();
      if ((first ? at <= big_t : (at > prev_t && at <= big_t)))
        acc += std::abs(a.weight) * weight(a.location);
    }
    if (mu.density()) {
      const auto& d = *mu.density();
      auto f = [&](double t) { return std::abs(d(t)) * weight(t); };
      const double lo = rep.partial_integrals.empty() ? 0.0 : prev_t;
      const quad::Options opt{.abs_tol = 1e-13, .rel_tol = 1e-12, .max_panel_width = 4.0};
      acc += quad::integrate(f, lo, big_t, opt, d.breakpoints(lo, big_t)).value;
      acc += quad::integrate(f, -big_t, -lo, opt, d.breakpoints(-big_t, -lo)).value;
    }
    rep.partial_integrals.push_back(acc);
    prev_t = big_t;
  }

  const auto& p = rep.partial_integrals;
  if (p.size() >= 4) {
    const std::size_t m = p.size();
    const double d1 = p[m - 3] - p[m - 4];
    const double d2 = p[m - 2] - p[m - 3];
    const double d3 = p[m - 1] - p[m - 2];
    if (d3 == 0.0 && d2 == 0.0)
      rep.verdict = Verdict::converging;
    else if (d1 > 0.0 && d2 < 0.9 * d1 && d3 < 0.9 * d2)
      rep.verdict = Verdict::converging;
    else if (d2 > 0.0 && d3 >= d2)
      rep.verdict = Verdict::diverging;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pairing

quad::Estimate<cplx> integrate_against(const TemperedMeasure& mu,
                                       const std::function<cplx(double)>& f, double t_max,
                                       double tol) {
  quad::Estimate<cplx> out;
  double scale = 0.0;
  for (const auto& a : mu.atoms()) {
    if (std::abs(a.location) > t_max) continue;
    const cplx term = a.weight * f(a.location);
    out.value += term;
    scale += std::abs(term);
  }
  out.error = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  if (mu.density()) {
    const auto& d = *mu.density();
    auto g = [&](double t) { return d(t) * f(t); };
    auto est = quad::integrate(g, -t_max, t_max,
                               {.abs_tol = tol, .rel_tol = 0.0, .max_panel_width = 0.25},
                               d.breakpoints(-t_max, t_max));
    out.value += est.value;
    out.error += est.error;
    out.converged = est.converged;
    out.panels = est.panels;
  }
  return out;
}

}  // namespace fspair::measures
