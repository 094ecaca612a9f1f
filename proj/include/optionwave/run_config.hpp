#pragma once

#include "optionwave/fitting.hpp"
#include "optionwave/nls_waves.hpp"
#include "optionwave/propagator.hpp"
#include "optionwave/quantum_packet.hpp"
#include "optionwave/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace optionwave::cli {

using nlohmann::json;

/// Loaded run configuration: raw document plus its canonical serialization
/// and fingerprint. Validation is strict: unknown keys are rejected at every
/// level (the shipped schema/runconfig.schema.json documents the layout).
struct RunConfig {
  json root;
  std::string canonical;
  std::uint64_t hash = 0;
};

/// Reads and validates a config file; an absent path yields the documented
/// defaults (empty object). Throws ConfigError on malformed input.
RunConfig load_run_config(const std::optional<std::filesystem::path>& path);
RunConfig run_config_from_json(json root);

// Block parsers with documented defaults. All throw ConfigError.

SpatialGrid parse_grid(const RunConfig& config);                 // [75,140] x 128
OptionParams parse_option(const RunConfig& config);              // k=100 r=0.05 sigma=0.2 T=1 delta=0

enum class NlsSolution { Sn, Shock, Cn, Soliton, PdfShock, PdfBlend };

struct NlsEvalSpec {
  NlsParams params;
  NlsSolution solution = NlsSolution::Soliton;
  double time = 0.0;
  BlendCoefficients blend;
};
NlsEvalSpec parse_nls(const RunConfig& config);

struct PacketEvalSpec {
  std::optional<PlaneWaveBasis> basis;
  std::optional<GaussianPacketSpec> gaussian;
  double sigma = 0.2;
  double time = 0.0;
};
PacketEvalSpec parse_packet(const RunConfig& config);

struct GreeksSpec {
  std::string kind = "bs";  // "bs" or "quantum"
  double time = 0.0;
};
GreeksSpec parse_greeks(const RunConfig& config);

struct FitCommandSpec {
  std::optional<PaperFitCase> reproduction_case;
  std::string model = "shock";  // shock | blend | packet
  OptionKind target = OptionKind::Put;
  int n_waves = 3;
  int n_weight_rows = 1;
  bool normalize = false;
  std::optional<Eigen::VectorXd> theta0;
  LmOptions opts;
};
FitCommandSpec parse_fit(const RunConfig& config);

struct InitialCondition {
  std::string type = "gaussian";  // gaussian | plane_wave | soliton | manakov
  GaussianPacketSpec gaussian;
  double plane_wave_k = 1.0;
  double plane_wave_amplitude = 1.0;
  NlsParams soliton;
  std::vector<SolitonSpec> manakov_solitons;
  std::vector<double> manakov_offsets;
};

struct EvolveCommandSpec {
  EvolutionSpec evolution;
  InitialCondition initial;
};
EvolveCommandSpec parse_evolve(const RunConfig& config);

}  // namespace optionwave::cli
