#pragma once

#include <optional>
#include <string>

#include "config.hpp"
#include "output.hpp"

namespace dispent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerification = 3;

struct CommandContext {
  std::string command;
  RunConfig config;
  OutputTarget out;
  std::optional<double> tol;
};

// Each command writes its CSV and summary and returns a process exit code.
int cmd_dispersion(const CommandContext& ctx);
int cmd_entropy_density(const CommandContext& ctx);
int cmd_soft_modes(const CommandContext& ctx);
int cmd_asymptotics_check(const CommandContext& ctx);
int cmd_casimir(const CommandContext& ctx);
int cmd_plate(const CommandContext& ctx);
int cmd_scattering_check(const CommandContext& ctx);
int cmd_verify(const CommandContext& ctx);
int cmd_lattice(const CommandContext& ctx);

}  // namespace dispent::cli
