#pragma once

#include "optionwave/fitting.hpp"
#include "optionwave/propagator.hpp"
#include "optionwave/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace optionwave::io {

using nlohmann::json;

// Numbers are printed with %.17g so re-runs are byte-identical and lossless.
std::string format_double(double value);

/// WaveField rows "s,re,im"; GbmPath rows "t,re,im" with im = 0.
std::string field_to_csv(const WaveField& field);
std::string path_to_csv(const GbmPath& path);

/// {"grid":{"s_min","s_max","n"},"time","values":[[re,im],...]}.
json field_to_json(const WaveField& field);
WaveField field_from_json(const json& j);

json path_to_json(const GbmPath& path);

std::string curve_to_csv(const ArrayXd& s, const ArrayXd& value,
                         const std::string& value_name);
std::string curves_to_csv(const ArrayXd& s,
                          const std::vector<std::pair<std::string, ArrayXd>>& columns);
json curve_to_json(const ArrayXd& s, const ArrayXd& value,
                   const std::string& value_name);

json fit_to_json(const FitResult& fit);
json conserved_to_json(const std::vector<ConservedQuantities>& table);

/// FNV-1a 64-bit; used to stamp manifests with a config fingerprint.
std::uint64_t fnv1a64(std::string_view bytes);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace optionwave::io
