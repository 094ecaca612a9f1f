#include "optionwave/run_config.hpp"

#include "optionwave/errors.hpp"
#include "optionwave/io.hpp"

#include <fstream>
#include <set>

namespace optionwave::cli {

namespace {

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!object.is_object())
    throw ConfigError(context + ": expected a JSON object");
  for (const auto& [key, value] : object.items())
    if (!allowed.contains(key))
      throw ConfigError(context + ": unknown key '" + key + "'");
}

double get_number(const json& object, const std::string& key, double fallback,
                  const std::string& context) {
  if (!object.contains(key)) return fallback;
  const auto& value = object.at(key);
  if (!value.is_number())
    throw ConfigError(context + "." + key + ": expected a number");
  return value.get<double>();
}

Index get_index(const json& object, const std::string& key, Index fallback,
                const std::string& context) {
  if (!object.contains(key)) return fallback;
  const auto& value = object.at(key);
  if (!value.is_number_integer())
    throw ConfigError(context + "." + key + ": expected an integer");
  return value.get<Index>();
}

bool get_bool(const json& object, const std::string& key, bool fallback,
              const std::string& context) {
  if (!object.contains(key)) return fallback;
  const auto& value = object.at(key);
  if (!value.is_boolean())
    throw ConfigError(context + "." + key + ": expected a boolean");
  return value.get<bool>();
}

std::string get_string(const json& object, const std::string& key,
                       const std::string& fallback, const std::string& context) {
  if (!object.contains(key)) return fallback;
  const auto& value = object.at(key);
  if (!value.is_string())
    throw ConfigError(context + "." + key + ": expected a string");
  return value.get<std::string>();
}

const json kEmptyObject = json::object();

const json& get_block(const RunConfig& config, const std::string& name) {
  if (!config.root.contains(name)) return kEmptyObject;
  return config.root.at(name);
}

WeightSet parse_weights(const json& rows, const std::string& context) {
  if (!rows.is_array() || rows.empty())
    throw ConfigError(context + ": expected a nonempty array of [w1, w2, w3] rows");
  WeightSet weights;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 3)
      throw ConfigError(context + ": each row must be [w1, w2, w3]");
    weights.rows.push_back(
        {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
  }
  try {
    weights.validate();
  } catch (const std::exception& e) {
    throw ConfigError(context + ": " + e.what());
  }
  return weights;
}

}  // namespace

RunConfig run_config_from_json(json root) {
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  check_keys(root,
             {"grid", "option", "nls", "packet", "greeks", "fit", "evolve"},
             "config");
  RunConfig config;
  config.root = std::move(root);
  config.canonical = config.root.dump();
  config.hash = io::fnv1a64(config.canonical);
  return config;
}

RunConfig load_run_config(const std::optional<std::filesystem::path>& path) {
  if (!path) return run_config_from_json(json::object());
  std::ifstream in(*path);
  if (!in) throw ConfigError("cannot open config file '" + path->string() + "'");
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in '" + path->string() + "': " + e.what());
  }
  return run_config_from_json(std::move(root));
}

SpatialGrid parse_grid(const RunConfig& config) {
  const json& block = get_block(config, "grid");
  check_keys(block, {"s_min", "s_max", "n"}, "grid");
  const double s_min = get_number(block, "s_min", 75.0, "grid");
  const double s_max = get_number(block, "s_max", 140.0, "grid");
  const Index n = get_index(block, "n", 128, "grid");
  try {
    return make_grid(s_min, s_max, n);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

OptionParams parse_option(const RunConfig& config) {
  const json& block = get_block(config, "option");
  check_keys(block, {"strike", "rate", "volatility", "maturity", "dividend_yield"},
             "option");
  OptionParams params;
  params.strike = get_number(block, "strike", 100.0, "option");
  params.rate = get_number(block, "rate", 0.05, "option");
  params.volatility = get_number(block, "volatility", 0.2, "option");
  params.maturity = get_number(block, "maturity", 1.0, "option");
  params.dividend_yield = get_number(block, "dividend_yield", 0.0, "option");
  try {
    params.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("option: ") + e.what());
  }
  return params;
}

NlsEvalSpec parse_nls(const RunConfig& config) {
  const json& block = get_block(config, "nls");
  check_keys(block,
             {"sigma", "rate", "wave_number", "modulus", "weights", "beta_const",
              "sign", "magnitude_mode", "solution", "time", "blend"},
             "nls");
  NlsEvalSpec spec;
  spec.params.sigma = get_number(block, "sigma", 0.2, "nls");
  spec.params.rate = get_number(block, "rate", 0.05, "nls");
  spec.params.wave_number = get_number(block, "wave_number", 1.0, "nls");
  spec.params.modulus = get_number(block, "modulus", 1.0, "nls");
  if (block.contains("weights"))
    spec.params.weights = parse_weights(block.at("weights"), "nls.weights");
  if (block.contains("beta_const"))
    spec.params.beta_const = get_number(block, "beta_const", 0.0, "nls");
  if (!block.contains("weights") && !block.contains("beta_const"))
    spec.params.beta_const = 0.05;  // default constant coefficient
  spec.params.sign = int(get_index(block, "sign", 1, "nls"));
  spec.params.magnitude_mode = get_bool(block, "magnitude_mode", false, "nls");
  spec.time = get_number(block, "time", 0.0, "nls");

  const std::string solution = get_string(block, "solution", "soliton", "nls");
  if (solution == "sn") spec.solution = NlsSolution::Sn;
  else if (solution == "shock") spec.solution = NlsSolution::Shock;
  else if (solution == "cn") spec.solution = NlsSolution::Cn;
  else if (solution == "soliton") spec.solution = NlsSolution::Soliton;
  else if (solution == "pdf_shock") spec.solution = NlsSolution::PdfShock;
  else if (solution == "pdf_blend") spec.solution = NlsSolution::PdfBlend;
  else
    throw ConfigError("nls.solution: unknown solution '" + solution + "'");

  if (block.contains("blend")) {
    const json& blend = block.at("blend");
    check_keys(blend, {"d1", "d2"}, "nls.blend");
    spec.blend.d1 = get_number(blend, "d1", 1.0, "nls.blend");
    spec.blend.d2 = get_number(blend, "d2", 0.0, "nls.blend");
  }
  try {
    spec.params.validate();
    spec.blend.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("nls: ") + e.what());
  }
  return spec;
}

PacketEvalSpec parse_packet(const RunConfig& config) {
  const json& block = get_block(config, "packet");
  check_keys(block, {"sigma", "waves", "gaussian", "time"}, "packet");
  PacketEvalSpec spec;
  spec.sigma = get_number(block, "sigma", 0.2, "packet");
  spec.time = get_number(block, "time", 0.0, "packet");
  if (block.contains("waves")) {
    const json& waves = block.at("waves");
    if (!waves.is_array() || waves.empty())
      throw ConfigError("packet.waves: expected a nonempty array of [k, c] pairs");
    PlaneWaveBasis basis;
    basis.sigma = spec.sigma;
    for (const auto& wave : waves) {
      if (!wave.is_array() || wave.size() != 2)
        throw ConfigError("packet.waves: each entry must be [k, c]");
      basis.waves.push_back({wave[0].get<double>(), wave[1].get<double>()});
    }
    try {
      basis.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("packet: ") + e.what());
    }
    spec.basis = std::move(basis);
  }
  if (block.contains("gaussian")) {
    const json& gauss = block.at("gaussian");
    check_keys(gauss, {"a", "s0", "p0"}, "packet.gaussian");
    GaussianPacketSpec packet;
    packet.width = get_number(gauss, "a", 1.0, "packet.gaussian");
    packet.s0 = get_number(gauss, "s0", 0.0, "packet.gaussian");
    packet.p0 = get_number(gauss, "p0", 0.0, "packet.gaussian");
    try {
      packet.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("packet.gaussian: ") + e.what());
    }
    spec.gaussian = packet;
  }
  if (spec.basis && spec.gaussian)
    throw ConfigError("packet: give either 'waves' or 'gaussian', not both");
  if (!spec.basis && !spec.gaussian) {
    // default: the bundled 7-wave reference basis with |sigma*|
    const ReferencePacketFit& ref = reference_put_packet_n7();
    PlaneWaveBasis basis;
    basis.sigma = std::abs(ref.sigma_star);
    for (std::size_t i = 0; i < ref.k.size(); ++i)
      basis.waves.push_back({ref.k[i], ref.c[i]});
    spec.basis = std::move(basis);
    spec.sigma = spec.basis->sigma;
  }
  return spec;
}

GreeksSpec parse_greeks(const RunConfig& config) {
  const json& block = get_block(config, "greeks");
  check_keys(block, {"kind", "time"}, "greeks");
  GreeksSpec spec;
  spec.kind = get_string(block, "kind", "bs", "greeks");
  if (spec.kind != "bs" && spec.kind != "quantum")
    throw ConfigError("greeks.kind: expected 'bs' or 'quantum'");
  spec.time = get_number(block, "time", 0.0, "greeks");
  return spec;
}

FitCommandSpec parse_fit(const RunConfig& config) {
  const json& block = get_block(config, "fit");
  check_keys(block,
             {"case", "model", "target", "n_waves", "n_weight_rows", "normalize",
              "theta0", "opts"},
             "fit");
  FitCommandSpec spec;
  if (block.contains("case")) {
    const std::string name = get_string(block, "case", "", "fit");
    if (name == "nls_call") spec.reproduction_case = PaperFitCase::NlsCall;
    else if (name == "nls_put") spec.reproduction_case = PaperFitCase::NlsPut;
    else if (name == "packet_put_n7") spec.reproduction_case = PaperFitCase::PacketPutN7;
    else if (name == "packet_call_n3") spec.reproduction_case = PaperFitCase::PacketCallN3;
    else
      throw ConfigError("fit.case: unknown case '" + name + "'");
  }
  spec.model = get_string(block, "model", "shock", "fit");
  if (spec.model != "shock" && spec.model != "blend" && spec.model != "packet")
    throw ConfigError("fit.model: expected 'shock', 'blend' or 'packet'");
  const std::string target = get_string(block, "target", "put", "fit");
  if (target == "put") spec.target = OptionKind::Put;
  else if (target == "call") spec.target = OptionKind::Call;
  else
    throw ConfigError("fit.target: expected 'call' or 'put'");
  spec.n_waves = int(get_index(block, "n_waves", 3, "fit"));
  spec.n_weight_rows = int(get_index(block, "n_weight_rows", 1, "fit"));
  if (spec.n_waves < 1 || spec.n_weight_rows < 1)
    throw ConfigError("fit: wave and weight-row counts must be positive");
  spec.normalize = get_bool(block, "normalize", false, "fit");
  if (block.contains("theta0")) {
    const json& theta = block.at("theta0");
    if (!theta.is_array() || theta.empty())
      throw ConfigError("fit.theta0: expected a nonempty array of numbers");
    Eigen::VectorXd theta0(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
      theta0[Index(i)] = theta[i].get<double>();
    spec.theta0 = std::move(theta0);
  }
  if (block.contains("opts")) {
    const json& opts = block.at("opts");
    check_keys(opts,
               {"max_iter", "lambda0", "lambda_up", "lambda_down", "gtol", "ftol"},
               "fit.opts");
    spec.opts.max_iter = int(get_index(opts, "max_iter", 100, "fit.opts"));
    spec.opts.lambda0 = get_number(opts, "lambda0", 1e-3, "fit.opts");
    spec.opts.lambda_up = get_number(opts, "lambda_up", 10.0, "fit.opts");
    spec.opts.lambda_down = get_number(opts, "lambda_down", 10.0, "fit.opts");
    spec.opts.gtol = get_number(opts, "gtol", 1e-12, "fit.opts");
    spec.opts.ftol = get_number(opts, "ftol", 1e-14, "fit.opts");
    if (spec.opts.max_iter < 0 || spec.opts.lambda0 <= 0.0 ||
        spec.opts.lambda_up <= 1.0 || spec.opts.lambda_down <= 1.0)
      throw ConfigError("fit.opts: invalid optimizer settings");
  }
  return spec;
}

EvolveCommandSpec parse_evolve(const RunConfig& config) {
  const json& block = get_block(config, "evolve");
  check_keys(block,
             {"equation", "sigma", "beta", "dt", "t_final", "record_every",
              "initial", "preset"},
             "evolve");
  EvolveCommandSpec spec;

  if (get_string(block, "preset", "", "evolve") == "collision") {
    // Counter-propagating orthogonally polarized solitons, separation chosen
    // so the initial envelope overlap is below the 1e-8 threshold.
    spec.evolution.equation = EquationKind::Manakov;
    spec.evolution.sigma = 1.0;
    spec.evolution.beta = BetaSource::constant(1.0);
    spec.evolution.dt = 1.5e-3;
    spec.evolution.t_final = 18.0;
    spec.evolution.record_every = 2000;
    spec.initial.type = "manakov";
    spec.initial.manakov_solitons = {
        SolitonSpec{0.5, 0.5, Complex{1.0, 0.0}, Complex{0.0, 0.0}},
        SolitonSpec{-0.5, 0.5, Complex{0.0, 0.0}, Complex{1.0, 0.0}}};
    spec.initial.manakov_offsets = {12.0, -12.0};
    return spec;
  }

  const std::string equation = get_string(block, "equation", "free", "evolve");
  if (equation == "free") spec.evolution.equation = EquationKind::FreeSchrodinger;
  else if (equation == "nls") spec.evolution.equation = EquationKind::Nls;
  else if (equation == "manakov") spec.evolution.equation = EquationKind::Manakov;
  else
    throw ConfigError("evolve.equation: expected 'free', 'nls' or 'manakov'");

  spec.evolution.sigma = get_number(block, "sigma", 1.0, "evolve");
  spec.evolution.dt = get_number(block, "dt", 1e-3, "evolve");
  spec.evolution.t_final = get_number(block, "t_final", 1.0, "evolve");
  spec.evolution.record_every = get_index(block, "record_every", 0, "evolve");

  if (block.contains("beta")) {
    const json& beta = block.at("beta");
    check_keys(beta, {"constant", "weights", "rate"}, "evolve.beta");
    if (beta.contains("constant") == beta.contains("weights"))
      throw ConfigError("evolve.beta: give exactly one of 'constant' or 'weights'");
    if (beta.contains("constant")) {
      spec.evolution.beta =
          BetaSource::constant(get_number(beta, "constant", 0.0, "evolve.beta"));
    } else {
      const WeightSet weights = parse_weights(beta.at("weights"), "evolve.beta.weights");
      const double rate = get_number(beta, "rate", 0.05, "evolve.beta");
      const SpatialGrid grid = parse_grid(config);
      ArrayXd profile(grid.n_points);
      for (Index i = 0; i < grid.n_points; ++i)
        profile[i] = optionwave::beta(rate, weights, grid.node(i));
      spec.evolution.beta = BetaSource::profile(std::move(profile));
    }
  } else if (spec.evolution.equation == EquationKind::Manakov) {
    spec.evolution.beta = BetaSource::constant(1.0);
  }

  if (block.contains("initial")) {
    const json& initial = block.at("initial");
    check_keys(initial,
               {"type", "a", "s0", "p0", "k", "amplitude", "solitons"},
               "evolve.initial");
    spec.initial.type = get_string(initial, "type", "gaussian", "evolve.initial");
    if (spec.initial.type == "gaussian") {
      spec.initial.gaussian.width = get_number(initial, "a", 1.0, "evolve.initial");
      spec.initial.gaussian.s0 = get_number(initial, "s0", 0.0, "evolve.initial");
      spec.initial.gaussian.p0 = get_number(initial, "p0", 0.0, "evolve.initial");
    } else if (spec.initial.type == "plane_wave") {
      spec.initial.plane_wave_k = get_number(initial, "k", 1.0, "evolve.initial");
      spec.initial.plane_wave_amplitude =
          get_number(initial, "amplitude", 1.0, "evolve.initial");
    } else if (spec.initial.type == "soliton") {
      spec.initial.soliton = parse_nls(config).params;
    } else if (spec.initial.type == "manakov") {
      if (!initial.contains("solitons"))
        throw ConfigError("evolve.initial: manakov start needs 'solitons'");
      for (const auto& soliton : initial.at("solitons")) {
        check_keys(soliton, {"a", "b", "c1", "c2", "offset"}, "evolve.initial.solitons");
        SolitonSpec s;
        s.a = get_number(soliton, "a", 0.0, "soliton");
        s.b = get_number(soliton, "b", 0.5, "soliton");
        auto read_complex = [&](const char* key, Complex fallback) {
          if (!soliton.contains(key)) return fallback;
          const auto& pair = soliton.at(key);
          if (!pair.is_array() || pair.size() != 2)
            throw ConfigError("evolve.initial.solitons: polarizations are [re, im]");
          return Complex{pair[0].get<double>(), pair[1].get<double>()};
        };
        s.c1 = read_complex("c1", Complex{1.0, 0.0});
        s.c2 = read_complex("c2", Complex{0.0, 0.0});
        spec.initial.manakov_solitons.push_back(s);
        spec.initial.manakov_offsets.push_back(
            get_number(soliton, "offset", 0.0, "soliton"));
      }
    } else {
      throw ConfigError("evolve.initial.type: unknown type '" + spec.initial.type + "'");
    }
  }

  if ((spec.evolution.equation == EquationKind::Manakov) !=
      (spec.initial.type == "manakov"))
    throw ConfigError("evolve: the coupled system and a manakov start go together");
  try {
    spec.evolution.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("evolve: ") + e.what());
  }
  return spec;
}

}  // namespace optionwave::cli
