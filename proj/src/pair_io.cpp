#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fspair/error.hpp"
#include "fspair/measures.hpp"

namespace fspair::measures {

namespace {

using json = nlohmann::json;

constexpr double kMergeTol = 1e-12;
// Integration radius for an unbounded density read from a file.
constexpr double kDensityRadius = 100.0;

void only_keys(const json& obj, const std::string& path,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw SchemaError(path + "." + key + ": unknown field");
  }
}

const json& required(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key + ": missing required field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path + ": must be finite");
  return x;
}

template <class T>
std::vector<T> merged(std::vector<T> pts, const std::string& path) {
  std::vector<T> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i].first;
    if (!out.empty()) {
      if (x < out.back().first - kMergeTol)
        throw InvariantError(path + "[" + std::to_string(i) +
                             "]: locations must be sorted ascending");
      if (x - out.back().first <= kMergeTol) {
        out.back().second += pts[i].second;
        continue;
      }
    }
    out.push_back(pts[i]);
  }
  std::erase_if(out, [](const T& p) { return p.second == cplx{}; });
  return out;
}

std::vector<std::pair<double, cplx>> weighted_points(const json& arr, const std::string& path,
                                                     const char* loc_key) {
  if (!arr.is_array()) throw SchemaError(path + ": expected an array");
  std::vector<std::pair<double, cplx>> pts;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    only_keys(arr[i], p, {loc_key, "re", "im"});
    const double loc = number(required(arr[i], p, loc_key), p + "." + loc_key);
    const double re = number(required(arr[i], p, "re"), p + ".re");
    const double im = arr[i].contains("im") ? number(arr[i]["im"], p + ".im") : 0.0;
    pts.emplace_back(loc, cplx{re, im});
  }
  return merged(std::move(pts), path);
}

std::optional<Density> parse_density(const json& d, const std::string& path) {
  if (d.is_null()) return std::nullopt;
  only_keys(d, path, {"kind", "scale", "grid"});
  const auto& kind = required(d, path, "kind");
  if (!kind.is_string()) throw SchemaError(path + ".kind: expected a string");
  const double scale = number(required(d, path, "scale"), path + ".scale");
  const auto k = kind.get<std::string>();
  if (k == "r_tanh_pi_r") {
    if (d.contains("grid")) throw SchemaError(path + ".grid: not allowed for kind r_tanh_pi_r");
    return Density::r_tanh_pi_r(scale);
  }
  if (k == "grid") {
    const auto& g = required(d, path, "grid");
    if (!g.is_array()) throw SchemaError(path + ".grid: expected an array");
    std::vector<std::pair<double, double>> samples;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string p = path + ".grid[" + std::to_string(i) + "]";
      only_keys(g[i], p, {"t", "value"});
      samples.emplace_back(number(required(g[i], p, "t"), p + ".t"),
                           number(required(g[i], p, "value"), p + ".value"));
    }
    try {
      return Density::grid(scale, std::move(samples));
    } catch (const std::exception& e) {
      throw SchemaError(path + ".grid: " + e.what());
    }
  }
  throw SchemaError(path + ".kind: unknown density kind '" + k + "'");
}

json cplx_fields(json obj, cplx v) {
  obj["re"] = v.real();
  obj["im"] = v.imag();
  return obj;
}

}  // namespace

FSPair parse_pair(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("$: malformed JSON: ") + e.what());
  }
  only_keys(root, "$", {"name", "antipodal", "strip_constant", "mu", "a"});

  const auto& name = required(root, "$", "name");
  if (!name.is_string()) throw SchemaError("$.name: expected a string");
  const auto& antipodal = required(root, "$", "antipodal");
  if (!antipodal.is_boolean()) throw SchemaError("$.antipodal: expected a boolean");
  const double strip = number(required(root, "$", "strip_constant"), "$.strip_constant");
  if (!(strip > 0.0)) throw SchemaError("$.strip_constant: must be positive");

  const auto& mu = required(root, "$", "mu");
  only_keys(mu, "$.mu", {"degree_bound", "atoms", "density"});
  const auto& deg = required(mu, "$.mu", "degree_bound");
  if (!deg.is_number_integer() || deg.get<long long>() < 0)
    throw SchemaError("$.mu.degree_bound: expected a non-negative integer");
  auto atom_pts = weighted_points(required(mu, "$.mu", "atoms"), "$.mu.atoms", "t");
  auto density =
      mu.contains("density") ? parse_density(mu["density"], "$.mu.density") : std::nullopt;

  const auto& a = required(root, "$", "a");
  only_keys(a, "$.a", {"growth_constant", "support"});
  const double growth = number(required(a, "$.a", "growth_constant"), "$.a.growth_constant");
  if (!(growth > 0.0)) throw SchemaError("$.a.growth_constant: must be positive");
  auto a_pts = weighted_points(required(a, "$.a", "support"), "$.a.support", "lambda");

  std::vector<Atom> atoms;
  double t_rad = 0.0;
  for (auto& [t, w] : atom_pts) {
    atoms.push_back({t, w});
    t_rad = std::max(t_rad, std::abs(t));
  }
  if (density) {
    if (density->kind() == Density::Kind::grid)
      for (const auto& [t, v] : density->samples()) t_rad = std::max(t_rad, std::abs(t));
    else
      t_rad = std::max(t_rad, kDensityRadius);
  }
  std::vector<SupportPoint> support;
  double l_rad = 0.0;
  for (auto& [l, v] : a_pts) {
    support.push_back({l, v});
    l_rad = std::max(l_rad, std::abs(l));
  }

  const int degree = static_cast<int>(deg.get<long long>());
  return {name.get<std::string>(),
          TemperedMeasure(std::move(atoms), std::move(density), degree, t_rad,
                          "loaded from file; integrated over |t| <= " + std::to_string(t_rad)),
          SummationFunction(std::move(support), growth, l_rad),
          antipodal.get<bool>(),
          strip};
}

FSPair load_pair(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open pair file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pair(buf.str());
}

std::string pair_to_json(const FSPair& pair) {
  json atoms = json::array();
  for (const auto& x : pair.mu().atoms()) atoms.push_back(cplx_fields({{"t", x.location}}, x.weight));
  json density = nullptr;
  if (const auto& d = pair.mu().density()) {
    density = {{"kind", d->kind_name()}, {"scale", d->scale()}};
    if (d->kind() == Density::Kind::grid) {
      json g = json::array();
      for (const auto& [t, v] : d->samples()) g.push_back({{"t", t}, {"value", v}});
      density["grid"] = std::move(g);
    }
  }
  json support = json::array();
  for (const auto& p : pair.a().support())
    support.push_back(cplx_fields({{"lambda", p.lambda}}, p.value));

  json root = {{"name", pair.name()},
               {"antipodal", pair.antipodal()},
               {"strip_constant", pair.strip_constant()},
               {"mu",
                {{"degree_bound", pair.mu().degree_bound()},
                 {"atoms", std::move(atoms)},
                 {"density", std::move(density)}}},
               {"a",
                {{"growth_constant", pair.a().growth_constant()},
                 {"support", std::move(support)}}}};
  return root.dump(2);
}

}  // namespace fspair::measures
