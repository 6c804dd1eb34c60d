#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dispent/errors.hpp"
#include "dispent/parallel.hpp"

namespace cli = dispent::cli;

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of a scalar field with dispersive dielectrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DISPENT_VERSION);

  std::string config_path, out_path;
  int threads = 0;
  std::optional<double> tol;

  const std::map<std::string, std::pair<std::string, std::function<int(const cli::CommandContext&)>>> commands = {
      {"dispersion", {"Mode records over a k grid for each material", cli::cmd_dispersion}},
      {"entropy-density", {"Entropy density against the UV cutoff", cli::cmd_entropy_density}},
      {"soft-modes", {"Soft-mode quanta, energy and number fluctuations", cli::cmd_soft_modes}},
      {"asymptotics-check", {"Closed forms and asymptotic laws against quadrature", cli::cmd_asymptotics_check}},
      {"casimir", {"Two-body entanglement scan in separation", cli::cmd_casimir}},
      {"plate", {"Plate-pair sum against pi/R^2", cli::cmd_plate}},
      {"scattering-check", {"T-operator positivity, bound and dilute limit", cli::cmd_scattering_check}},
      {"verify", {"Cross-validation identities on lattice triples", cli::cmd_verify}},
      {"lattice", {"Lattice chain entropies and non-thermality witness", cli::cmd_lattice}},
  };
  for (const auto& [name, c] : commands) {
    CLI::App* sub = app.add_subcommand(name, c.first);
    sub->add_option("--config", config_path, "INI-style configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "CSV output path; the summary goes next to it as .json");
    sub->add_option("--threads", threads, "Worker cap for parallel scans (0: runtime default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tol, "Verification tolerance in (0, 1e-2]");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    dispent::set_max_threads(threads);
    cli::CommandContext ctx{name, config_path.empty() ? cli::RunConfig{} : cli::RunConfig::load(config_path),
                            {out_path}, tol};
    return commands.at(name).second(ctx);
  } catch (const dispent::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const dispent::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const dispent::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const dispent::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << " (best estimate " << e.best_estimate << ", error estimate "
              << e.error_estimate << ")\n";
    return cli::kExitNumerical;
  }
}
