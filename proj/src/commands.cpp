#include "optionwave/commands.hpp"

#include "optionwave/black_scholes.hpp"
#include "optionwave/errors.hpp"
#include "optionwave/io.hpp"
#include "optionwave/manakov.hpp"
#include "optionwave/nls_waves.hpp"
#include "optionwave/propagator.hpp"
#include "optionwave/quantum_packet.hpp"

#include <iostream>
#include <sstream>

namespace optionwave::cli {

namespace {

using io::json;

std::string hash_string(std::uint64_t hash) {
  char buffer[19];
  std::snprintf(buffer, sizeof(buffer), "0x%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

json base_manifest(const std::string& command, const RunConfig& config,
                   const CommandOptions& options) {
  return json{{"command", command},
              {"config_hash", hash_string(config.hash)},
              {"config", config.root},
              {"seed", options.seed},
              {"format", options.format}};
}

void emit(const CommandOptions& options, const std::string& name,
          const std::string& content) {
  io::write_text_file(options.out_dir / name, content);
}

void emit_manifest(const CommandOptions& options, json manifest) {
  io::write_text_file(options.out_dir / "manifest.json", manifest.dump(2) + "\n");
}

void check_format(const CommandOptions& options) {
  if (options.format != "csv" && options.format != "json")
    throw ConfigError("format: expected 'csv' or 'json'");
}

json greeks_table_json(const ArrayXd& s, const OptionParams& params,
                       OptionKind kind) {
  json rows = json::array();
  for (Index i = 0; i < s.size(); ++i) {
    const GreeksReport g = bs_greeks(s[i], params, kind);
    rows.push_back({{"s", s[i]},
                    {"delta", g.delta},
                    {"rho", g.rho},
                    {"vega", g.vega},
                    {"theta", g.theta},
                    {"gamma", g.gamma}});
  }
  return rows;
}

std::string greeks_table_csv(const ArrayXd& s, const OptionParams& params,
                             OptionKind kind) {
  ArrayXd delta(s.size()), rho(s.size()), vega(s.size()), theta(s.size()),
      gamma(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    const GreeksReport g = bs_greeks(s[i], params, kind);
    delta[i] = g.delta;
    rho[i] = g.rho;
    vega[i] = g.vega;
    theta[i] = g.theta;
    gamma[i] = g.gamma;
  }
  return io::curves_to_csv(s, {{"delta", delta},
                               {"rho", rho},
                               {"vega", vega},
                               {"theta", theta},
                               {"gamma", gamma}});
}

// Local maxima above a quarter of the global peak.
int count_peaks(const ArrayXd& power) {
  const double threshold = 0.25 * power.maxCoeff();
  int peaks = 0;
  for (Index i = 1; i + 1 < power.size(); ++i)
    if (power[i] > threshold && power[i] > power[i - 1] && power[i] > power[i + 1])
      ++peaks;
  return peaks;
}

}  // namespace

void cmd_bs_curve(const RunConfig& config, const CommandOptions& options) {
  check_format(options);
  const SpatialGrid grid = parse_grid(config);
  const OptionParams params = parse_option(config);
  const ArrayXd s = grid.nodes();
  const ArrayXd call = bs_curve(grid, params, OptionKind::Call);
  const ArrayXd put = bs_curve(grid, params, OptionKind::Put);

  if (options.format == "csv") {
    emit(options, "call.csv", io::curve_to_csv(s, call, "price"));
    emit(options, "put.csv", io::curve_to_csv(s, put, "price"));
    emit(options, "greeks_call.csv", greeks_table_csv(s, params, OptionKind::Call));
    emit(options, "greeks_put.csv", greeks_table_csv(s, params, OptionKind::Put));
  } else {
    emit(options, "curves.json",
         json{{"call", io::curve_to_json(s, call, "price")},
              {"put", io::curve_to_json(s, put, "price")}}
             .dump(2) +
             "\n");
    emit(options, "greeks.json",
         json{{"call", greeks_table_json(s, params, OptionKind::Call)},
              {"put", greeks_table_json(s, params, OptionKind::Put)}}
             .dump(2) +
             "\n");
  }

  json manifest = base_manifest("bs-curve", config, options);
  manifest["option"] = {{"strike", params.strike},
                        {"rate", params.rate},
                        {"volatility", params.volatility},
                        {"maturity", params.maturity},
                        {"dividend_yield", params.dividend_yield}};
  emit_manifest(options, manifest);
}

void cmd_nls_eval(const RunConfig& config, const CommandOptions& options) {
  check_format(options);
  const SpatialGrid grid = parse_grid(config);
  const NlsEvalSpec spec = parse_nls(config);
  const ArrayXd s = grid.nodes();

  const bool pdf = spec.solution == NlsSolution::PdfShock ||
                   spec.solution == NlsSolution::PdfBlend;
  json manifest = base_manifest("nls-eval", config, options);
  if (pdf) {
    ArrayXd values(grid.n_points);
    for (Index i = 0; i < grid.n_points; ++i)
      values[i] = spec.solution == NlsSolution::PdfShock
                      ? spatial_pdf_shock(s[i], spec.params, spec.time)
                      : spatial_pdf_blend(s[i], spec.params, spec.time, spec.blend);
    if (options.format == "csv")
      emit(options, "pdf.csv", io::curve_to_csv(s, values, "pdf"));
    else
      emit(options, "pdf.json", io::curve_to_json(s, values, "pdf").dump(2) + "\n");
  } else {
    WaveField field{grid, spec.time, ArrayXcd(grid.n_points)};
    for (Index i = 0; i < grid.n_points; ++i) {
      switch (spec.solution) {
        case NlsSolution::Sn: field.values[i] = psi_sn(s[i], spec.time, spec.params); break;
        case NlsSolution::Shock: field.values[i] = psi_shock(s[i], spec.time, spec.params); break;
        case NlsSolution::Cn: field.values[i] = psi_cn(s[i], spec.time, spec.params); break;
        default: field.values[i] = psi_soliton(s[i], spec.time, spec.params); break;
      }
    }
    if (options.format == "csv")
      emit(options, "field.csv", io::field_to_csv(field));
    else
      emit(options, "field.json", io::field_to_json(field).dump(2) + "\n");
  }
  emit_manifest(options, manifest);
}

void cmd_packet_eval(const RunConfig& config, const CommandOptions& options) {
  check_format(options);
  const SpatialGrid grid = parse_grid(config);
  const PacketEvalSpec spec = parse_packet(config);
  const ArrayXd s = grid.nodes();

  WaveField field{grid, spec.time, ArrayXcd(grid.n_points)};
  for (Index i = 0; i < grid.n_points; ++i)
    field.values[i] = spec.basis
                          ? wave_packet(s[i], spec.time, *spec.basis)
                          : gaussian_packet(s[i], spec.time, *spec.gaussian, spec.sigma);
  const ArrayXd pdf = field.values.abs2();

  if (options.format == "csv") {
    emit(options, "field.csv", io::field_to_csv(field));
    emit(options, "pdf.csv", io::curve_to_csv(s, pdf, "pdf"));
  } else {
    emit(options, "field.json", io::field_to_json(field).dump(2) + "\n");
    emit(options, "pdf.json", io::curve_to_json(s, pdf, "pdf").dump(2) + "\n");
  }
  emit_manifest(options, base_manifest("packet-eval", config, options));
}

void cmd_greeks(const RunConfig& config, const CommandOptions& options) {
  check_format(options);
  const SpatialGrid grid = parse_grid(config);
  const GreeksSpec spec = parse_greeks(config);
  const ArrayXd s = grid.nodes();
  json manifest = base_manifest("greeks", config, options);

  if (spec.kind == "bs") {
    const OptionParams params = parse_option(config);
    if (options.format == "csv") {
      emit(options, "greeks_call.csv", greeks_table_csv(s, params, OptionKind::Call));
      emit(options, "greeks_put.csv", greeks_table_csv(s, params, OptionKind::Put));
    } else {
      emit(options, "greeks.json",
           json{{"call", greeks_table_json(s, params, OptionKind::Call)},
                {"put", greeks_table_json(s, params, OptionKind::Put)}}
               .dump(2) +
               "\n");
    }
  } else {
    const PacketEvalSpec packet = parse_packet(config);
    if (!packet.basis)
      throw ConfigError("greeks: quantum sensitivities need a packet.waves basis");
    ArrayXd delta(s.size()), vega(s.size()), theta(s.size()), gamma(s.size());
    for (Index i = 0; i < s.size(); ++i) {
      const QuantumGreeks g = quantum_greeks(*packet.basis, s[i], spec.time);
      delta[i] = g.delta;
      vega[i] = g.vega;
      theta[i] = g.theta;
      gamma[i] = g.gamma;
    }
    if (options.format == "csv") {
      emit(options, "greeks_quantum.csv",
           io::curves_to_csv(s, {{"delta", delta},
                                 {"vega", vega},
                                 {"theta", theta},
                                 {"gamma", gamma}}));
    } else {
      json rows = json::array();
      for (Index i = 0; i < s.size(); ++i)
        rows.push_back({{"s", s[i]},
                        {"delta", delta[i]},
                        {"vega", vega[i]},
                        {"theta", theta[i]},
                        {"gamma", gamma[i]}});
      emit(options, "greeks_quantum.json", rows.dump(2) + "\n");
    }
    manifest["time"] = spec.time;
  }
  emit_manifest(options, manifest);
}

namespace {

const char* case_name(PaperFitCase c) {
  switch (c) {
    case PaperFitCase::NlsCall: return "nls_call";
    case PaperFitCase::NlsPut: return "nls_put";
    case PaperFitCase::PacketPutN7: return "packet_put_n7";
    case PaperFitCase::PacketCallN3: return "packet_call_n3";
  }
  return "unknown";
}

json reference_to_json(const ReferencePacketFit& ref) {
  return json{{"sigma_star", ref.sigma_star},
              {"t_star", ref.t_star},
              {"k", ref.k},
              {"c", ref.c},
              {"sigma_scale", ref.sigma_scale_note},
              {"t_scale", ref.t_scale_note}};
}

void run_reproduction(const RunConfig& config, const CommandOptions& options,
                      const FitCommandSpec& spec) {
  const SpatialGrid grid = parse_grid(config);
  const OptionParams params = parse_option(config);
  const PaperFitReport report =
      reproduce_paper_fit(*spec.reproduction_case, params, grid, spec.opts);

  json doc = base_manifest("reproduce", config, options);
  doc["case"] = case_name(*spec.reproduction_case);
  doc["fit"] = io::fit_to_json(report.fit);
  doc["start_rmse"] = report.start_rmse;
  doc["kink"] = {{"flagged", report.kink_flagged},
                 {"location", report.kink_location}};
  if (*spec.reproduction_case == PaperFitCase::PacketPutN7)
    doc["reference_coefficients"] = reference_to_json(reference_put_packet_n7());
  if (*spec.reproduction_case == PaperFitCase::PacketCallN3)
    doc["reference_coefficients"] = reference_to_json(reference_call_packet_n3());
  emit(options, "report.json", doc.dump(2) + "\n");
  emit(options, "overlay.csv",
       io::curves_to_csv(grid.nodes(), {{"target", report.target},
                                        {"model_start", report.model_at_start},
                                        {"model_fit", report.model_at_fit}}));
  emit_manifest(options, std::move(doc));
}

}  // namespace

void cmd_fit(const RunConfig& config, const CommandOptions& options) {
  check_format(options);
  const FitCommandSpec spec = parse_fit(config);
  if (spec.reproduction_case) {
    run_reproduction(config, options, spec);
    return;
  }

  const SpatialGrid grid = parse_grid(config);
  const OptionParams params = parse_option(config);
  const ArrayXd target = bs_curve(grid, params, spec.target);
  const ArrayXd s = grid.nodes();

  FitResult fit;
  ArrayXd model(grid.n_points);
  if (spec.model == "packet") {
    Eigen::VectorXd theta0;
    if (spec.theta0) {
      theta0 = *spec.theta0;
    } else {
      // heuristic start: waves clustered near a common carrier, equal power
      theta0.resize(2 + 2 * spec.n_waves);
      theta0[0] = -0.003;
      theta0[1] = -0.003;
      for (int j = 0; j < spec.n_waves; ++j) {
        theta0[2 + j] = 2.6 * (1.0 + 0.01 * (j - 0.5 * (spec.n_waves - 1)));
        theta0[2 + spec.n_waves + j] =
            std::sqrt(target.maxCoeff()) / double(spec.n_waves);
      }
    }
    fit = fit_packet_to_bs(target, grid, spec.n_waves, theta0, spec.opts,
                           spec.normalize);
    for (Index i = 0; i < grid.n_points; ++i)
      model[i] = packet_fit_model_value(fit.theta, s[i]);
  } else {
    NlsFitSpec harness;
    harness.model = spec.model == "blend" ? NlsFitModel::Blend : NlsFitModel::Shock;
    harness.rate = params.rate;
    harness.n_weight_rows = spec.n_weight_rows;
    harness.normalize = spec.normalize;
    Eigen::VectorXd theta0;
    if (spec.theta0) {
      theta0 = *spec.theta0;
    } else {
      theta0.resize(3 * spec.n_weight_rows + 3 +
                    (harness.model == NlsFitModel::Blend ? 2 : 0));
      for (int i = 0; i < spec.n_weight_rows; ++i) {
        theta0[3 * i] = 1.0;
        theta0[3 * i + 1] = 0.05;
        theta0[3 * i + 2] = 1.0;
      }
      theta0[3 * spec.n_weight_rows] = 1.0;        // k
      theta0[3 * spec.n_weight_rows + 1] = 100.0;  // t
      theta0[3 * spec.n_weight_rows + 2] = 1.0;    // sigma scale
      if (harness.model == NlsFitModel::Blend) {
        theta0[3 * spec.n_weight_rows + 3] = 1.0;
        theta0[3 * spec.n_weight_rows + 4] = 0.0;
      }
    }
    fit = fit_nls_to_bs(target, grid, harness, theta0, spec.opts);
    for (Index i = 0; i < grid.n_points; ++i)
      model[i] = nls_fit_model_value(harness, fit.theta, s[i]);
  }

  json doc = base_manifest("fit", config, options);
  doc["model"] = spec.model;
  doc["target"] = spec.target == OptionKind::Put ? "put" : "call";
  doc["fit"] = io::fit_to_json(fit);
  emit(options, "report.json", doc.dump(2) + "\n");
  emit(options, "overlay.csv",
       io::curves_to_csv(s, {{"target", target}, {"model", model}}));
  emit_manifest(options, std::move(doc));
}

void cmd_reproduce(const RunConfig& config, const CommandOptions& options) {
  check_format(options);
  FitCommandSpec spec = parse_fit(config);
  if (!spec.reproduction_case)
    throw ConfigError("reproduce: config needs fit.case");
  run_reproduction(config, options, spec);
}

void cmd_evolve(const RunConfig& config, const CommandOptions& options) {
  check_format(options);
  const SpatialGrid grid = parse_grid(config);
  const EvolveCommandSpec spec = parse_evolve(config);
  const ArrayXd s = grid.nodes();
  json manifest = base_manifest("evolve", config, options);

  auto frame_name = [&](std::size_t index, const char* suffix) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "frame_%04zu.%s", index, suffix);
    return std::string(buffer);
  };

  if (spec.evolution.equation == EquationKind::Manakov) {
    ManakovState initial = collision_initial_condition(
        grid, spec.initial.manakov_solitons, spec.initial.manakov_offsets);
    const auto frames = split_step_evolve(initial, spec.evolution);
    const auto conserved = conserved_quantities(frames, spec.evolution);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const ArrayXd vol_power = frames[i].vol.abs2();
      const ArrayXd price_power = frames[i].price.abs2();
      if (options.format == "csv") {
        std::ostringstream out;
        out << "t,s,vol_power,price_power\n";
        for (Index j = 0; j < grid.n_points; ++j)
          out << io::format_double(frames[i].time) << ',' << io::format_double(s[j])
              << ',' << io::format_double(vol_power[j]) << ','
              << io::format_double(price_power[j]) << '\n';
        emit(options, frame_name(i, "csv"), out.str());
      } else {
        emit(options, frame_name(i, "json"),
             json{{"time", frames[i].time},
                  {"vol", io::field_to_json({grid, frames[i].time, frames[i].vol})},
                  {"price",
                   io::field_to_json({grid, frames[i].time, frames[i].price})}}
                 .dump(2) +
                 "\n");
      }
    }
    const ArrayXd final_power =
        frames.back().vol.abs2() + frames.back().price.abs2();
    manifest["flags"] = {{"peak_count", count_peaks(final_power)},
                         {"two_peaks", count_peaks(final_power) == 2}};
    manifest["conserved"] = io::conserved_to_json(conserved);
    manifest["frames"] = frames.size();
  } else {
    WaveField initial{grid, 0.0, ArrayXcd(grid.n_points)};
    if (spec.initial.type == "gaussian") {
      for (Index i = 0; i < grid.n_points; ++i)
        initial.values[i] =
            gaussian_packet(s[i], 0.0, spec.initial.gaussian, spec.evolution.sigma);
    } else if (spec.initial.type == "plane_wave") {
      for (Index i = 0; i < grid.n_points; ++i)
        initial.values[i] = plane_wave(s[i], 0.0, spec.initial.plane_wave_amplitude,
                                       spec.initial.plane_wave_k,
                                       spec.evolution.sigma);
    } else {  // soliton
      for (Index i = 0; i < grid.n_points; ++i)
        initial.values[i] = psi_soliton(s[i], 0.0, spec.initial.soliton);
    }
    const auto frames = split_step_evolve(initial, spec.evolution);
    const auto conserved = conserved_quantities(frames, spec.evolution);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (options.format == "csv")
        emit(options, frame_name(i, "csv"), io::field_to_csv(frames[i]));
      else
        emit(options, frame_name(i, "json"),
             io::field_to_json(frames[i]).dump(2) + "\n");
    }
    manifest["conserved"] = io::conserved_to_json(conserved);
    manifest["frames"] = frames.size();
  }
  emit_manifest(options, std::move(manifest));
}

int run_command(const std::string& name, const RunConfig& config,
                const CommandOptions& options) {
  try {
    if (name == "bs-curve") cmd_bs_curve(config, options);
    else if (name == "nls-eval") cmd_nls_eval(config, options);
    else if (name == "packet-eval") cmd_packet_eval(config, options);
    else if (name == "greeks") cmd_greeks(config, options);
    else if (name == "fit") cmd_fit(config, options);
    else if (name == "evolve") cmd_evolve(config, options);
    else if (name == "reproduce") cmd_reproduce(config, options);
    else {
      std::cerr << "unknown command: " << name << "\n";
      return 2;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace optionwave::cli
