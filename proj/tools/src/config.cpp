#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "dispent/errors.hpp"

namespace dispent::cli {

namespace pt = boost::property_tree;

namespace {

double to_double(const std::string& s, const std::string& where) {
  const std::string t = boost::trim_copy(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw ConfigError(where + ": expected a number, got '" + s + "'");
  return v;
}

int to_int(const std::string& s, const std::string& where) {
  const double v = to_double(s, where);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(where + ": expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

std::string key_path(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  c.text_ = text;
  std::istringstream in(text);
  try {
    pt::read_ini(in, c.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [name, sec] : c.tree_)
    if (sec.empty() && !sec.data().empty()) throw ConfigError("key '" + name + "' must sit inside a [section]");
  return c;
}

std::optional<std::string> RunConfig::raw(const std::string& section, const std::string& key) const {
  const auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
  if (!sec) return std::nullopt;
  const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
  if (!v) return std::nullopt;
  return boost::trim_copy(*v);
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  return raw(section, key).has_value();
}

double RunConfig::number(const std::string& section, const std::string& key, double fallback) const {
  const auto v = raw(section, key);
  return v ? to_double(*v, key_path(section, key)) : fallback;
}

int RunConfig::integer(const std::string& section, const std::string& key, int fallback) const {
  const auto v = raw(section, key);
  return v ? to_int(*v, key_path(section, key)) : fallback;
}

bool RunConfig::flag(const std::string& section, const std::string& key, bool fallback) const {
  const auto v = raw(section, key);
  if (!v) return fallback;
  const std::string s = boost::to_lower_copy(*v);
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ConfigError(key_path(section, key) + ": expected a boolean, got '" + *v + "'");
}

std::string RunConfig::string(const std::string& section, const std::string& key, const std::string& fallback) const {
  return raw(section, key).value_or(fallback);
}

std::vector<double> parse_grid(const std::string& value) {
  static const std::regex spaced(R"(\s*(logspace|linspace)\s*\(([^,]+),([^,]+),([^,)]+)\)\s*)");
  std::smatch m;
  std::vector<double> out;
  if (std::regex_match(value, m, spaced)) {
    const double a = to_double(m[2], "grid"), b = to_double(m[3], "grid");
    const int n = to_int(m[4], "grid");
    if (n < 1) throw ConfigError("grid: point count must be at least 1");
    const bool log = m[1] == "logspace";
    if (log && !(a > 0.0 && b > 0.0)) throw ConfigError("grid: logspace endpoints must be positive");
    for (int i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      out.push_back(log ? a * std::pow(b / a, t) : a + (b - a) * t);
    }
    // Pin the endpoints exactly.
    if (n > 1) out.back() = b;
  } else {
    std::vector<std::string> parts;
    boost::split(parts, value, boost::is_any_of(","));
    for (const auto& p : parts) out.push_back(to_double(p, "grid"));
  }
  if (out.empty()) throw ConfigError("grid: empty");
  for (double v : out)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("grid: values must be positive and finite");
  return out;
}

std::vector<double> RunConfig::grid(const std::string& section, const std::string& key,
                                    const std::vector<double>& fallback) const {
  const auto v = raw(section, key);
  if (!v) return fallback;
  try {
    return parse_grid(*v);
  } catch (const ConfigError& e) {
    throw ConfigError(key_path(section, key) + ": " + e.what());
  }
}

std::vector<std::pair<std::string, const pt::ptree*>> RunConfig::sections(const std::string& prefix) const {
  std::vector<std::pair<std::string, const pt::ptree*>> out;
  for (const auto& [name, sec] : tree_)
    if (name == prefix || boost::starts_with(name, prefix + ".")) out.emplace_back(name, &sec);
  return out;
}

SusceptibilityModel parse_material(const std::string& name, const pt::ptree& sec) {
  auto num = [&](const char* key, double fallback) {
    const auto v = sec.get_optional<std::string>(key);
    return v ? to_double(*v, key_path(name, key)) : fallback;
  };
  auto need = [&](const char* key) {
    if (!sec.get_optional<std::string>(key)) throw ConfigError(key_path(name, key) + ": required");
    return num(key, 0.0);
  };
  const std::string model = boost::to_lower_copy(boost::trim_copy(sec.get<std::string>("model", "")));
  SusceptibilityModel m;
  if (model == "free")
    m = Free{};
  else if (model == "plasma")
    m = Plasma{need("omega_p")};
  else if (model == "lorentz" || model == "drude-lorentz")
    m = Lorentz{need("omega_p"), need("omega_0"), num("gamma", 0.0)};
  else if (model == "spatial")
    m = SpatiallyDispersive{num("eps_0", 1.0), need("f"), need("A"), num("gamma", 0.0), need("omega_0")};
  else
    throw ConfigError(key_path(name, "model") + ": unknown model '" + model + "'");
  try {
    validate(m);
  } catch (const std::exception& e) {
    throw ConfigError("[" + name + "]: " + e.what());
  }
  return m;
}

std::vector<NamedMaterial> RunConfig::materials(const std::vector<NamedMaterial>& fallback) const {
  std::vector<NamedMaterial> out;
  for (const auto& [name, sec] : sections("material")) {
    const std::string label = sec->get<std::string>("name", name == "material" ? "" : name.substr(9));
    const SusceptibilityModel m = parse_material(name, *sec);
    out.push_back({label.empty() ? describe(m) : label, m});
  }
  return out.empty() ? fallback : out;
}

std::vector<int> parse_sites(const std::string& value) {
  std::vector<int> out;
  std::vector<std::string> parts;
  boost::split(parts, value, boost::is_any_of(","));
  for (std::string p : parts) {
    boost::trim(p);
    if (p.empty()) continue;
    const auto dash = p.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(to_int(p, "sites"));
    } else {
      const int a = to_int(p.substr(0, dash), "sites"), b = to_int(p.substr(dash + 1), "sites");
      if (b < a) throw ConfigError("sites: range '" + p + "' is reversed");
      for (int i = a; i <= b; ++i) out.push_back(i);
    }
  }
  return out;
}

std::vector<NamedChain> RunConfig::chains(const std::vector<NamedChain>& fallback) const {
  std::vector<NamedChain> out;
  for (const auto& [name, sec] : sections("chain")) {
    ChainSpec s;
    auto get = [&](const char* key) { return sec->get_optional<std::string>(key); };
    if (auto v = get("N")) s.N = to_int(*v, key_path(name, "N"));
    if (auto v = get("sites_A")) s.body_sites_A = parse_sites(*v);
    if (auto v = get("sites_B")) s.body_sites_B = parse_sites(*v);
    if (auto v = get("omega_0")) s.omega_0 = to_double(*v, key_path(name, "omega_0"));
    if (auto v = get("omega_p")) s.omega_p = to_double(*v, key_path(name, "omega_p"));
    if (auto v = get("field_mass")) s.field_mass = to_double(*v, key_path(name, "field_mass"));
    try {
      validate(s);
    } catch (const std::exception& e) {
      throw ConfigError("[" + name + "]: " + e.what());
    }
    out.push_back({name == "chain" ? "chain" : name.substr(6), s});
  }
  return out.empty() ? fallback : out;
}

double RunConfig::tolerance(std::optional<double> override_tol, double fallback) const {
  const double tol = override_tol.value_or(number("run", "tol", fallback));
  if (!(tol > 0.0 && tol <= 1e-2)) throw ConfigError("tolerance must lie in (0, 1e-2]");
  return tol;
}

}  // namespace dispent::cli
