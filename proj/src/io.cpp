#include "optionwave/io.hpp"

#include "optionwave/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace optionwave::io {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string field_to_csv(const WaveField& field) {
  std::ostringstream out;
  out << "s,re,im\n";
  for (Index i = 0; i < field.grid.n_points; ++i)
    out << format_double(field.grid.node(i)) << ','
        << format_double(field.values[i].real()) << ','
        << format_double(field.values[i].imag()) << '\n';
  return out.str();
}

std::string path_to_csv(const GbmPath& path) {
  std::ostringstream out;
  out << "t,re,im\n";
  for (Index i = 0; i < path.times.size(); ++i)
    out << format_double(path.times[i]) << ',' << format_double(path.prices[i])
        << ",0\n";
  return out.str();
}

json field_to_json(const WaveField& field) {
  json values = json::array();
  for (Index i = 0; i < field.values.size(); ++i)
    values.push_back({field.values[i].real(), field.values[i].imag()});
  return json{{"grid",
               {{"s_min", field.grid.s_min},
                {"s_max", field.grid.s_max},
                {"n", field.grid.n_points}}},
              {"time", field.time},
              {"values", std::move(values)}};
}

WaveField field_from_json(const json& j) {
  WaveField field;
  field.grid = make_grid(j.at("grid").at("s_min").get<double>(),
                         j.at("grid").at("s_max").get<double>(),
                         j.at("grid").at("n").get<Index>());
  field.time = j.at("time").get<double>();
  const auto& values = j.at("values");
  if (Index(values.size()) != field.grid.n_points)
    throw ConfigError("wave field: value count does not match grid");
  field.values.resize(field.grid.n_points);
  for (Index i = 0; i < field.grid.n_points; ++i)
    field.values[i] = Complex{values[i][0].get<double>(), values[i][1].get<double>()};
  return field;
}

json path_to_json(const GbmPath& path) {
  json values = json::array();
  for (Index i = 0; i < path.prices.size(); ++i)
    values.push_back({path.prices[i], 0.0});
  return json{{"times", std::vector<double>(path.times.begin(), path.times.end())},
              {"values", std::move(values)},
              {"drift", path.drift},
              {"volatility", path.volatility},
              {"seed", path.seed}};
}

std::string curve_to_csv(const ArrayXd& s, const ArrayXd& value,
                         const std::string& value_name) {
  return curves_to_csv(s, {{value_name, value}});
}

std::string curves_to_csv(const ArrayXd& s,
                          const std::vector<std::pair<std::string, ArrayXd>>& columns) {
  std::ostringstream out;
  out << "s";
  for (const auto& [name, column] : columns) {
    if (column.size() != s.size())
      throw std::invalid_argument("curves_to_csv: column '" + name + "' size mismatch");
    out << ',' << name;
  }
  out << '\n';
  for (Index i = 0; i < s.size(); ++i) {
    out << format_double(s[i]);
    for (const auto& [name, column] : columns) out << ',' << format_double(column[i]);
    out << '\n';
  }
  return out.str();
}

json curve_to_json(const ArrayXd& s, const ArrayXd& value,
                   const std::string& value_name) {
  return json{{"s", std::vector<double>(s.begin(), s.end())},
              {value_name, std::vector<double>(value.begin(), value.end())}};
}

json fit_to_json(const FitResult& fit) {
  return json{{"theta", std::vector<double>(fit.theta.begin(), fit.theta.end())},
              {"rmse", fit.rmse},
              {"iterations", fit.iterations},
              {"converged", fit.converged},
              {"residual_history", fit.residual_history},
              {"lambda_history", fit.lambda_history}};
}

json conserved_to_json(const std::vector<ConservedQuantities>& table) {
  json rows = json::array();
  for (const auto& row : table)
    rows.push_back({{"time", row.time},
                    {"norm", row.norm},
                    {"momentum", row.momentum},
                    {"energy", row.energy},
                    {"norm_drift", row.norm_drift},
                    {"momentum_drift", row.momentum_drift},
                    {"energy_drift", row.energy_drift}});
  return rows;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= std::uint64_t(static_cast<unsigned char>(c));
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace optionwave::io
