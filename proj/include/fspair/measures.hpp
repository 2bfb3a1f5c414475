#pragma once

// Data model of a Fourier summation pair (mu, a):
//
//   int phihat(t) dmu(t) = sum_lambda a(lambda) phi(lambda)   for all test phi.
//
// Infinite objects are always stored truncated; the truncation radius travels
// with the object so every downstream report can state it.

#include <complex>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fspair/quadrature.hpp"

namespace fspair::measures {

using cplx = std::complex<double>;

struct Atom {
  double location;
  cplx weight;
};

/// Absolutely continuous part of a measure: either scale * r tanh(pi r) or a
/// piecewise-linear profile through samples (zero outside the sample range).
class Density {
 public:
  enum class Kind { r_tanh_pi_r, grid };

  static Density r_tanh_pi_r(double scale);
  static Density grid(double scale, std::vector<std::pair<double, double>> samples);

  Kind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }
  const std::vector<std::pair<double, double>>& samples() const noexcept { return samples_; }
  std::string kind_name() const;

  double operator()(double t) const;
  /// Exponent g with |density(t)| = O(|t|^g); grid profiles are compactly supported (g = 0).
  double growth_exponent() const noexcept { return kind_ == Kind::r_tanh_pi_r ? 1.0 : 0.0; }
  /// Kinks of the profile inside [lo, hi].
  std::vector<double> breakpoints(double lo, double hi) const;

 private:
  Density(Kind kind, double scale, std::vector<std::pair<double, double>> samples);
  Kind kind_;
  double scale_;
  std::vector<std::pair<double, double>> samples_;
};

class TemperedMeasure {
 public:
  TemperedMeasure() = default;
  /// Atoms must be strictly increasing with non-zero weights.
  TemperedMeasure(std::vector<Atom> atoms, std::optional<Density> density, int degree_bound,
                  double truncation_radius, std::string truncation_note);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  const std::optional<Density>& density() const noexcept { return density_; }
  int degree_bound() const noexcept { return degree_bound_; }
  double truncation_radius() const noexcept { return truncation_radius_; }
  const std::string& truncation_note() const noexcept { return truncation_note_; }

  bool is_real() const noexcept;
  bool empty() const noexcept { return atoms_.empty() && !density_; }
  /// Total variation of the atoms (and density) on [-t, t].
  double variation(double t) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
  int degree_bound_ = 0;
  double truncation_radius_ = 0.0;
  std::string truncation_note_;
};

struct SupportPoint {
  double lambda;
  cplx value;
};

class SummationFunction {
 public:
  SummationFunction() = default;
  /// Support must be strictly increasing with non-zero values.
  SummationFunction(std::vector<SupportPoint> support, double growth_constant,
                    double truncation_radius);

  std::span<const SupportPoint> support() const noexcept { return support_; }
  double growth_constant() const noexcept { return growth_constant_; }
  double truncation_radius() const noexcept { return truncation_radius_; }
  /// a(lambda), zero off the stored support (locations matched within 1e-12).
  cplx at(double lambda) const;
  bool empty() const noexcept { return support_.empty(); }

 private:
  std::vector<SupportPoint> support_;
  double growth_constant_ = 1.0;
  double truncation_radius_ = 0.0;
};

class FSPair {
 public:
  FSPair(std::string name, TemperedMeasure mu, SummationFunction a, bool antipodal,
         double strip_constant, bool admits_gaussian = false);

  const std::string& name() const noexcept { return name_; }
  const TemperedMeasure& mu() const noexcept { return mu_; }
  const SummationFunction& a() const noexcept { return a_; }
  bool antipodal() const noexcept { return antipodal_; }
  double strip_constant() const noexcept { return strip_constant_; }
  /// Both sides converge absolutely against Gaussians, so the non-compact
  /// gaussian test function may be used as a diagnostic.
  bool admits_gaussian() const noexcept { return admits_gaussian_; }

  /// Same pair with every weight multiplied by a real factor.
  FSPair scaled(double factor) const;

 private:
  std::string name_;
  TemperedMeasure mu_;
  SummationFunction a_;
  bool antipodal_;
  double strip_constant_;
  bool admits_gaussian_;
};

/// Description of the first antipodality violation, if any.
std::optional<std::string> antipodality_violation(const TemperedMeasure& mu,
                                                  const SummationFunction& a);

FSPair make_poisson(double t_max, double lambda_max);
FSPair make_guinand(double c, int n_max);
FSPair make_meyer(int n_max);
/// chi(n) of the three-squares crystalline measure: -1/2, 4 or 0.
double meyer_character(long n);

/// Real-antipodal parts (mu_1, a_1), (mu_2, a_2) with mu = mu_1 - i mu_2 and a = a_1 - i a_2.
std::pair<FSPair, FSPair> antipodal_split(const FSPair& pair);

enum class Verdict { converging, diverging, inconclusive };
std::string to_string(Verdict v);

struct DegreeProbeReport {
  int n = 0;
  std::vector<double> t_grid;
  std::vector<double> partial_integrals;  // int_{|t|<=T} (1+t^2)^{-n/2} d|mu|
  Verdict verdict = Verdict::inconclusive;
};

/// Heuristic convergence probe for int (1+t^2)^{-n/2} d|mu|; never a proof.
DegreeProbeReport degree_probe(const TemperedMeasure& mu, int n, std::span<const double> t_grid);

/// sum_{|t|<=T} w f(t) + int_{-T}^{T} density f.
quad::Estimate<cplx> integrate_against(const TemperedMeasure& mu,
                                       const std::function<cplx(double)>& f, double t_max,
                                       double tol);

// Pair files (JSON, UTF-8). Unknown fields are rejected.
FSPair parse_pair(const std::string& json_text);
FSPair load_pair(const std::filesystem::path& path);
std::string pair_to_json(const FSPair& pair);

}  // namespace fspair::measures
