#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "dispent/dielectric.hpp"
#include "dispent/lattice_oracle.hpp"

namespace dispent::cli {

struct NamedMaterial {
  std::string name;
  SusceptibilityModel model;
};

struct NamedChain {
  std::string name;
  ChainSpec spec;
};

// Flat INI-style run configuration. Sections group keys; repeated objects use
// dotted section names ([material.gold], [chain.short]) and keep file order.
class RunConfig {
 public:
  RunConfig() = default;
  static RunConfig load(const std::string& path);
  static RunConfig parse(const std::string& text);

  // Raw bytes the configuration was parsed from (empty when none was given).
  const std::string& text() const { return text_; }

  bool has(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  int integer(const std::string& section, const std::string& key, int fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;
  std::string string(const std::string& section, const std::string& key, const std::string& fallback) const;

  // A list "a, b, c", or logspace(a, b, n) / linspace(a, b, n). Values must be positive.
  std::vector<double> grid(const std::string& section, const std::string& key,
                           const std::vector<double>& fallback) const;

  std::vector<NamedMaterial> materials(const std::vector<NamedMaterial>& fallback) const;
  std::vector<NamedChain> chains(const std::vector<NamedChain>& fallback) const;

  // Tolerance from [run] tol, overridden by the command line; must lie in (0, 1e-2].
  double tolerance(std::optional<double> override_tol, double fallback) const;

 private:
  std::vector<std::pair<std::string, const boost::property_tree::ptree*>> sections(const std::string& prefix) const;
  std::optional<std::string> raw(const std::string& section, const std::string& key) const;

  std::string text_;
  boost::property_tree::ptree tree_;
};

std::vector<double> parse_grid(const std::string& value);
std::vector<int> parse_sites(const std::string& value);
SusceptibilityModel parse_material(const std::string& name, const boost::property_tree::ptree& section);

}  // namespace dispent::cli
