#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmaxent/maxent.hpp"
#include "cmaxent/moments.hpp"

namespace cmaxent::io {

using nlohmann::json;

/// {"K": K, "values": [[re, im], ...]}
json moments_to_json(const TrigMomentSequence& seq);
TrigMomentSequence moments_from_json(const json& j);

/// {"K": K, "alphas": [[re, im], ...]}
json model_to_json(const MaxEntModel& model);
MaxEntModel model_from_json(const json& j);

/// Flat record: status, iterations, final_objective, gradient_norm.
json diagnostics_to_json(const SolveDiagnostics& d);
json solve_options_to_json(const SolveOptions& o);

/// {"atoms": [[a, w], ...], "density_samples": [...], "normalize": bool}; every key optional.
MeasureSpec measure_spec_from_json(const json& j);

json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

/// Shortest text that reads back to the same double; empty for NaN.
std::string format_number(double v);

/// Minimal CSV writer: header line then rows of preformatted cells.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace cmaxent::io
