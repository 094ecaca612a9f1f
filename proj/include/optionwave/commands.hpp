#pragma once

#include "optionwave/run_config.hpp"

#include <filesystem>
#include <string>

namespace optionwave::cli {

/// Shared command-line options; every command writes its files under
/// out_dir together with a manifest carrying the config fingerprint.
struct CommandOptions {
  std::filesystem::path out_dir = "out";
  std::string format = "csv";  // csv | json
  std::uint64_t seed = 0;
};

void cmd_bs_curve(const RunConfig& config, const CommandOptions& options);
void cmd_nls_eval(const RunConfig& config, const CommandOptions& options);
void cmd_packet_eval(const RunConfig& config, const CommandOptions& options);
void cmd_greeks(const RunConfig& config, const CommandOptions& options);
void cmd_fit(const RunConfig& config, const CommandOptions& options);
void cmd_evolve(const RunConfig& config, const CommandOptions& options);
void cmd_reproduce(const RunConfig& config, const CommandOptions& options);

/// Errors map onto the CLI exit contract:
/// 0 success, 2 config error, 3 numerical failure, 4 i/o failure.
int run_command(const std::string& name, const RunConfig& config,
                const CommandOptions& options);

}  // namespace optionwave::cli
