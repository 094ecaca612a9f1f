#include "optionwave/commands.hpp"
#include "optionwave/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-wave option pricing toolkit"};
  app.require_subcommand(1);

  struct SubcommandState {
    std::optional<std::string> config_path;
    optionwave::cli::CommandOptions options;
  };

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"bs-curve", "Reference call/put curves and sensitivity tables"},
      {"nls-eval", "Sample a closed-form nonlinear wave or its spatial PDF"},
      {"packet-eval", "Sample a plane-wave packet or Gaussian packet"},
      {"greeks", "Sensitivity tables (closed-form or packet PDF)"},
      {"fit", "Least-squares fit of a wave PDF to a reference curve"},
      {"evolve", "Split-step evolution runs with conserved-quantity manifest"},
      {"reproduce", "Re-run a bundled reference fit case"},
  };

  std::map<std::string, SubcommandState> state;
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    auto& s = state[name];
    sub->add_option("--config", s.config_path, "JSON run configuration");
    sub->add_option("--out", s.options.out_dir, "Output directory");
    sub->add_option("--seed", s.options.seed, "Seed recorded in the manifest");
    sub->add_option("--format", s.options.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems follow the config-error code
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const auto& s = state.at(name);
  try {
    const auto config = optionwave::cli::load_run_config(
        s.config_path ? std::optional<std::filesystem::path>(*s.config_path)
                      : std::nullopt);
    return optionwave::cli::run_command(name, config, s.options);
  } catch (const optionwave::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
