#include "fspair/cli.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "fspair/error.hpp"
#include "fspair/measures.hpp"
#include "fspair/nevanlinna.hpp"
#include "fspair/qseries.hpp"
#include "fspair/testfn.hpp"

namespace fspair::cli {

namespace {

using json = nlohmann::json;
using cplx = std::complex<double>;

constexpr int kPoissonTrunc = 64;
constexpr int kGuinandTrunc = 512;
constexpr int kMeyerTrunc = 2000;
// Measure truncation used by bridge for the Dirac comb; its rhs tail decays like 1/T.
constexpr double kBridgeCombRadius = 1e5;

struct PairArgs {
  std::string pair;
  std::string file;
  double c = 1.0 / 9.0;
  int trunc = 0;
};

void add_pair_options(CLI::App* sub, PairArgs& pa) {
  sub->add_option("--pair", pa.pair, "Pair: poisson, guinand, meyer or file")
      ->required()
      ->check(CLI::IsMember({"poisson", "guinand", "meyer", "file"}));
  sub->add_option("--file", pa.file, "Pair file (JSON) for --pair file");
  sub->add_option("--c", pa.c, "Guinand parameter c in [0, 1/8]")->capture_default_str();
  sub->add_option("--trunc", pa.trunc, "Truncation: comb radius or n_max")
      ->check(CLI::PositiveNumber);
}

measures::FSPair build_pair(const PairArgs& pa, double comb_t = 0.0, double comb_lambda = 0.0) {
  if (pa.pair == "poisson") {
    const double n = pa.trunc > 0 ? pa.trunc : kPoissonTrunc;
    return measures::make_poisson(pa.trunc > 0 ? n : std::max(n, comb_t),
                                  std::max(n, comb_lambda));
  }
  if (pa.pair == "guinand") return measures::make_guinand(pa.c, pa.trunc > 0 ? pa.trunc : kGuinandTrunc);
  if (pa.pair == "meyer") return measures::make_meyer(pa.trunc > 0 ? pa.trunc : kMeyerTrunc);
  if (pa.file.empty()) throw DomainError("--pair file requires --file PATH");
  return measures::load_pair(pa.file);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path);
  f << text << '\n';
}

json pair_params(const measures::FSPair& p) {
  return {{"pair_name", p.name()},
          {"mu_truncation", p.mu().truncation_radius()},
          {"a_truncation", p.a().truncation_radius()}};
}

// --- subcommands -----------------------------------------------------------

int cmd_pairs(std::ostream& out) {
  out << "poisson  Dirac comb, self-dual (default truncation " << kPoissonTrunc << ")\n"
      << "guinand  eta-quotient family mu_c, c in [0, 1/8] (default n_max " << kGuinandTrunc
      << ")\n"
      << "meyer    three-squares measure with mu-hat = -i mu (default n_max " << kMeyerTrunc
      << ")\n"
      << "file     user-supplied pair file (JSON)\n";
  return kOk;
}

struct VerifyArgs {
  PairArgs pa;
  std::string testfn;
  double scale = 1.0;
  double shift = 0.0;
  double tol = 1e-8;
  std::string json_path;
};

int cmd_verify(const VerifyArgs& v, std::ostream& out) {
  const auto pair = build_pair(v.pa);
  testfn::TestFunctionSpec spec;
  spec.kind = testfn::kind_from_string(v.testfn);
  spec.scale = v.scale;
  spec.shift = v.shift;
  const auto rep = testfn::verify_pair(pair, spec, v.tol);
  if (v.json_path.empty()) {
    out << rep.to_json() << '\n';
  } else {
    emit(rep.to_json(), v.json_path, out);
    out << "abs_residual " << format_double(rep.abs_residual()) << '\n';
  }
  return rep.abs_residual() <= v.tol ? kOk : kToleranceViolation;
}

struct CoeffArgs {
  std::string family;
  double c = 1.0 / 9.0;
  int n = 0;
  std::string csv_path;
};

int cmd_coeffs(const CoeffArgs& a, std::ostream& out) {
  std::string text;
  if (a.family == "r3") {
    const auto t = qseries::r3_sequence(a.n);
    text = "n,r3\n";
    for (int i = 0; i <= a.n; ++i)
      text += std::to_string(i) + "," + std::to_string(t.values[static_cast<std::size_t>(i)]) + "\n";
  } else {
    const auto s = a.family == "theta" ? qseries::theta_coeffs(a.n) : qseries::guinand_coeffs(a.c, a.n);
    text = "n,alpha_n\n";
    for (int i = 0; i <= a.n; ++i) text += std::to_string(i) + "," + format_double(s[i]) + "\n";
  }
  if (a.csv_path.empty()) {
    out << text;
  } else {
    std::ofstream f(a.csv_path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + a.csv_path);
    f << text;
  }
  return kOk;
}

struct BridgeArgs {
  PairArgs pa;
  int k = 0;
  std::string z, w;
  double tmax = 0.0;
  bool sweep = false;
  std::string json_path;
};

int cmd_bridge(const BridgeArgs& b, std::ostream& out) {
  const cplx z = parse_complex(b.z);
  const cplx w = parse_complex(b.w);
  const auto pair = build_pair(b.pa, kBridgeCombRadius, std::ceil(b.tmax * (b.k + 1)));
  const auto rhs = nevanlinna::bridge_rhs(pair, b.k, w, z);
  json j = pair_params(pair);
  j["k"] = b.k;
  j["z"] = format_complex(z);
  j["w"] = format_complex(w);
  j["tmax"] = b.tmax;
  j["target_re"] = rhs.value.real();
  j["target_im"] = rhs.value.imag();
  j["target_error"] = rhs.error;
  std::vector<double> ts;
  if (b.sweep)
    for (double t = b.tmax; t >= 1.0 && ts.size() < 8; t /= 2.0) ts.insert(ts.begin(), t);
  else
    ts.push_back(b.tmax);
  json rows = json::array();
  cplx last{};
  for (double t : ts) {
    last = nevanlinna::bridge_sum(pair, b.k, w, z, t);
    rows.push_back({{"T", t},
                    {"value_re", last.real()},
                    {"value_im", last.imag()},
                    {"abs_residual", std::abs(last - rhs.value)}});
  }
  j["value_re"] = last.real();
  j["value_im"] = last.imag();
  j["abs_residual"] = std::abs(last - rhs.value);
  if (b.sweep) j["sweep"] = rows;
  emit(j.dump(2), b.json_path, out);
  return kOk;
}

struct EfArgs {
  PairArgs pa;
  double lambda = 0.0, y = 1.0, big_t = 256.0;
  std::string json_path;
};

int cmd_efcoef(const EfArgs& e, std::ostream& out) {
  const auto pair = build_pair(e.pa);
  const auto v = nevanlinna::ef_coeff(pair, e.lambda, e.y, e.big_t);
  json j = pair_params(pair);
  j["lambda"] = e.lambda;
  j["y"] = e.y;
  j["T"] = e.big_t;
  j["value_re"] = v.value.real();
  j["value_im"] = v.value.imag();
  j["error_estimate"] = v.error;
  // Limit value: a(lambda) for lambda > 0, a(0)/2 at 0, zero for lambda < 0.
  const cplx target = e.lambda > 0.0 ? pair.a().at(e.lambda)
                      : e.lambda == 0.0 ? 0.5 * pair.a().at(0.0)
                                        : cplx{};
  j["target_re"] = target.real();
  j["target_im"] = target.imag();
  j["abs_residual"] = std::abs(v.value - target);
  emit(j.dump(2), e.json_path, out);
  return kOk;
}

struct RecoverArgs {
  PairArgs pa;
  int k = 0;
  double a = 0.0, b = 1.0, s = 1e-3;
  std::string json_path;
};

int cmd_recover(const RecoverArgs& r, std::ostream& out) {
  const auto pair = build_pair(r.pa);
  const nevanlinna::HolomorphicModel model(pair, r.k);
  const auto v = nevanlinna::recover_measure(model, r.a, r.b, r.s);
  json j = pair_params(pair);
  j["k"] = r.k;
  j["a"] = r.a;
  j["b"] = r.b;
  j["s"] = r.s;
  j["value_re"] = v.value.real();
  j["value_im"] = 0.0;
  j["error_estimate"] = v.error;
  double target = 0.0;
  for (const auto& atom : pair.mu().atoms())
    if (atom.location > r.a && atom.location < r.b)
      target += 0.5 * atom.weight.real() / std::pow(1.0 + atom.location * atom.location, r.k + 1);
  j["target_re"] = target;
  j["target_im"] = 0.0;
  j["abs_residual"] = std::abs(v.value.real() - target);
  emit(j.dump(2), r.json_path, out);
  return kOk;
}

struct NevArgs {
  PairArgs pa;
  int points = 4;
  std::uint64_t seed = 0;
  std::string json_path;
};

int cmd_nevindex(const NevArgs& n, std::ostream& out) {
  const auto pair = build_pair(n.pa);
  const auto model = nevanlinna::fit_model(pair);
  std::mt19937_64 rng(n.seed);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.2, 2.0);
  std::vector<cplx> pts;
  for (int i = 0; i < n.points; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    pts.emplace_back(x, y);
  }
  const auto m = nevanlinna::nev_matrix(model, pts);
  const int index = nevanlinna::neg_index(m);
  json j = pair_params(pair);
  j["k"] = model.k();
  j["points"] = n.points;
  j["seed"] = n.seed;
  j["q_poly"] = model.q_poly();
  j["neg_index"] = index;
  emit(j.dump(2), n.json_path, out);
  return index <= model.k() ? kOk : kToleranceViolation;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  auto bad = [&] { return DomainError("malformed complex value '" + text + "' (expected a+bi)"); };
  if (text.empty()) throw bad();
  for (char ch : text)
    if (std::isspace(static_cast<unsigned char>(ch))) throw bad();
  auto parse = [&](std::string_view sv) {
    if (sv.empty()) throw bad();
    if (sv.front() == '+') sv.remove_prefix(1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || p != sv.data() + sv.size()) throw bad();
    return v;
  };
  const std::string_view s(text);
  if (s.back() != 'i') return {parse(s), 0.0};
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  auto imag_of = [&](std::string_view sv) {
    if (sv == "+" || sv.empty()) return 1.0;
    if (sv == "-") return -1.0;
    return parse(sv);
  };
  if (split == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse(body.substr(0, split)), imag_of(body.substr(split))};
}

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, p) : std::string("nan");
}

std::string format_complex(cplx z) {
  const std::string im = format_double(std::abs(z.imag()));
  return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier summation pairs: construction, verification and analytic diagnostics",
               "fspair"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto* pairs = app.add_subcommand("pairs", "List the built-in pairs");
  pairs->add_subcommand("list", "List the built-in pairs")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check int phihat dmu = sum a(lambda) phi(lambda)");
  add_pair_options(verify, va.pa);
  verify->add_option("--testfn", va.testfn, "bump, plateau or gaussian")
      ->required()
      ->check(CLI::IsMember({"bump", "plateau", "gaussian"}));
  verify->add_option("--scale", va.scale)->capture_default_str();
  verify->add_option("--shift", va.shift)->capture_default_str();
  verify->add_option("--tol", va.tol)->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--json", va.json_path, "Write the report here");

  CoeffArgs ca;
  auto* coeffs = app.add_subcommand("coeffs", "Coefficient tables");
  coeffs->add_option("--family", ca.family)
      ->required()
      ->check(CLI::IsMember({"guinand", "theta", "r3"}));
  coeffs->add_option("--c", ca.c)->capture_default_str();
  coeffs->add_option("--n", ca.n)->required()->check(CLI::NonNegativeNumber);
  coeffs->add_option("--csv", ca.csv_path);

  BridgeArgs ba;
  auto* bridge = app.add_subcommand("bridge", "Tapered kernel sum against its mu-integral");
  add_pair_options(bridge, ba.pa);
  bridge->add_option("--k", ba.k)->required()->check(CLI::NonNegativeNumber);
  bridge->add_option("--z", ba.z, "Complex a+bi")->required();
  bridge->add_option("--w", ba.w, "Complex a+bi")->required();
  bridge->add_option("--tmax", ba.tmax)->required()->check(CLI::PositiveNumber);
  bridge->add_flag("--sweep", ba.sweep, "Also report T = tmax/2^j");
  bridge->add_option("--json", ba.json_path);

  EfArgs ea;
  auto* efcoef = app.add_subcommand("efcoef", "Bohr-Fourier coefficient of F");
  add_pair_options(efcoef, ea.pa);
  efcoef->add_option("--lambda", ea.lambda)->required();
  efcoef->add_option("--y", ea.y)->required();
  efcoef->add_option("--T", ea.big_t)->required()->check(CLI::PositiveNumber);
  efcoef->add_option("--json", ea.json_path);

  RecoverArgs ra;
  auto* recover = app.add_subcommand("recover", "Stieltjes-type recovery of mu on [a, b]");
  add_pair_options(recover, ra.pa);
  recover->add_option("--k", ra.k)->required()->check(CLI::NonNegativeNumber);
  recover->add_option("--a", ra.a)->required();
  recover->add_option("--b", ra.b)->required();
  recover->add_option("--s", ra.s)->required();
  recover->add_option("--json", ra.json_path);

  NevArgs na;
  auto* nevindex = app.add_subcommand("nevindex", "Negative index of the Nevanlinna matrix");
  add_pair_options(nevindex, na.pa);
  nevindex->add_option("--points", na.points)->required()->check(CLI::PositiveNumber);
  nevindex->add_option("--seed", na.seed)->required();
  nevindex->add_option("--json", na.json_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*pairs) return cmd_pairs(out);
    if (*verify) return cmd_verify(va, out);
    if (*coeffs) return cmd_coeffs(ca, out);
    if (*bridge) return cmd_bridge(ba, out);
    if (*efcoef) return cmd_efcoef(ea, out);
    if (*recover) return cmd_recover(ra, out);
    if (*nevindex) return cmd_nevindex(na, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceViolation;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace fspair::cli
