#include "cmaxent/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cmaxent/errors.hpp"

namespace cmaxent::io {

namespace {

json complex_list(std::span<const cplx> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back({v.real(), v.imag()});
  return arr;
}

std::vector<cplx> parse_complex_list(const json& arr, const char* what) {
  if (!arr.is_array()) throw InputShapeError(std::string(what) + " must be an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw InputShapeError(std::string(what) + " entries must be [re, im] pairs");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

void check_declared_count(const json& j, std::size_t actual) {
  if (j.contains("K") && j.at("K").get<std::size_t>() != actual)
    throw InputShapeError("declared K does not match the number of entries");
}

}  // namespace

json moments_to_json(const TrigMomentSequence& seq) {
  return {{"K", seq.size()}, {"values", complex_list(seq.values())}};
}

TrigMomentSequence moments_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values")) throw InputShapeError("moment file needs a \"values\" array");
  auto values = parse_complex_list(j.at("values"), "values");
  check_declared_count(j, values.size());
  return TrigMomentSequence(std::move(values));
}

json model_to_json(const MaxEntModel& model) {
  return {{"K", model.order()}, {"alphas", complex_list(model.alphas())}};
}

MaxEntModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("alphas")) throw InputShapeError("model file needs an \"alphas\" array");
  auto alphas = parse_complex_list(j.at("alphas"), "alphas");
  check_declared_count(j, alphas.size());
  return MaxEntModel(std::move(alphas));
}

json diagnostics_to_json(const SolveDiagnostics& d) {
  return {{"status", std::string(to_string(d.status))},
          {"iterations", d.iterations},
          {"final_objective", d.final_objective},
          {"gradient_norm", d.gradient_norm}};
}

json solve_options_to_json(const SolveOptions& o) {
  return {{"max_iterations", o.max_iterations},
          {"gradient_tol", o.gradient_tol},
          {"objective_tol", o.objective_tol},
          {"step_tol", o.step_tol},
          {"quadrature_size", o.quadrature_size},
          {"gradient_mode", o.gradient_mode == GradientMode::Analytic ? "analytic" : "finite_difference"}};
}

MeasureSpec measure_spec_from_json(const json& j) {
  if (!j.is_object()) throw InputShapeError("measure spec must be a JSON object");
  MeasureSpec spec;
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2) throw InputShapeError("atoms must be [location, weight] pairs");
      spec.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
  }
  if (j.contains("density_samples")) {
    spec.density_samples = j.at("density_samples").get<std::vector<double>>();
    if (spec.density_samples.size() % 2 != 0)
      throw InputShapeError("density_samples must have an even length");
    for (double v : spec.density_samples)
      if (!(v >= 0.0)) throw DomainError("density samples must be nonnegative");
  }
  spec.normalize = j.value("normalize", false);
  if (spec.atoms.empty() && spec.density_samples.empty())
    throw EmptyMeasureError("measure spec has neither atoms nor density samples");
  return spec;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputShapeError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

}  // namespace cmaxent::io
