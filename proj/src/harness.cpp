#include "cmaxent/harness.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include "cmaxent/errors.hpp"
#include "cmaxent/io.hpp"
#include "cmaxent/svg.hpp"

namespace cmaxent {

namespace {

using io::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Atoms are infinite at their location; the nearest comparison node is blanked.
std::vector<std::size_t> atom_nodes(const std::vector<Atom>& atoms, const PeriodicGrid& grid) {
  std::vector<std::size_t> nodes;
  for (const auto& atom : atoms) {
    const double wrapped = atom.location - kTwoPi * std::floor((atom.location + kPi) / kTwoPi);
    const auto j = static_cast<std::size_t>(std::llround((wrapped + kPi) / grid.spacing())) % grid.size();
    nodes.push_back(j);
  }
  return nodes;
}

void fill_method(MethodReport& out, const PipelineResult& result, const GroundTruth& truth,
                 std::size_t K, const PeriodicGrid& grid) {
  const auto& density = result.density;
  const std::size_t total = truth.moments.size();
  out.diagnostics = result.diagnostics;
  const auto alphas = result.model.alphas();
  out.alphas.assign(alphas.begin(), alphas.end());

  // Moments beyond the series bandwidth are zero by construction.
  std::vector<cplx> recon(total);
  for (std::size_t k = 0; k < total; ++k) recon[k] = density.series.coefficient(static_cast<int>(k));
  out.moments = recon;
  const auto err = moment_error(TrigMomentSequence(recon), truth.moments);
  out.moment_errors = err.differences;
  out.first_k_error = 0.0;
  for (std::size_t k = 0; k < K && k < total; ++k) out.first_k_error += std::norm(err.differences[k]);

  out.pointwise = synthesize(density.series, grid);
  out.coefficient_count = density.coefficient_count;
  out.resolved = density.resolved;
  out.min_value = density.min_value;

  if (result.phase_moments) {
    const auto v = result.phase_moments->values();
    out.phase_moments.assign(v.begin(), v.end());
  }
  if (density.phase_series) out.phase_pointwise = synthesize(*density.phase_series, grid);
  if (density.phase_coefficient_count) out.phase_coefficient_count = *density.phase_coefficient_count;
}

template <class Pipeline>
void run_method(MethodReport& out, Pipeline&& pipeline, const GroundTruth& truth, std::size_t K,
                const PeriodicGrid& grid) {
  out.ran = true;
  try {
    fill_method(out, pipeline(), truth, K, grid);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
}

std::string variant_name(ConditioningVariant v) {
  return v == ConditioningVariant::MercatorM1 ? "mercator" : "shifted_log";
}

json method_json(const MethodReport& m) {
  json j = {{"ran", m.ran}};
  if (!m.ran) return j;
  if (!m.error.empty()) {
    j["error"] = m.error;
    return j;
  }
  j["diagnostics"] = io::diagnostics_to_json(m.diagnostics);
  j["first_k_squared_error"] = m.first_k_error;
  j["coefficient_count"] = m.coefficient_count;
  j["resolved"] = m.resolved;
  j["min_value"] = m.min_value;
  j["has_negative_values"] = m.min_value < 0.0;
  if (!m.phase_pointwise.empty()) j["phase_coefficient_count"] = m.phase_coefficient_count;
  return j;
}

std::string cell(const MethodReport& m, const std::vector<double>& v, std::size_t i) {
  return m.ok() && i < v.size() ? io::format_number(v[i]) : std::string{};
}

// Holds <dir>/.lock for the lifetime of the object.
class DirectoryLock {
 public:
  explicit DirectoryLock(std::filesystem::path path) : path_(std::move(path)) {
    file_ = std::fopen(path_.c_str(), "wx");
    if (!file_) throw Error("report directory is locked by another run: " + path_.string());
  }
  ~DirectoryLock() {
    std::fclose(file_);
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
};

}  // namespace

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "conditioned") return Mode::Conditioned;
  if (text == "unconditioned") return Mode::Unconditioned;
  if (text == "both") return Mode::Both;
  return std::nullopt;
}

GroundTruth load_ground_truth(const ExperimentConfig& config) {
  const std::size_t total = config.K + config.extended_orders;
  if (config.measure) {
    auto ref = density_and_moments(*config.measure, total);
    return {config.measure->name(), ref.spec.atoms, ref.density, ref.moments};
  }
  if (config.spec_path.empty()) throw Error("experiment needs a measure or a spec file");

  const auto spec = io::measure_spec_from_json(io::read_json(config.spec_path));
  MeasureSpec raw = spec;
  raw.normalize = false;
  const auto raw_moments = moments_of_measure(raw, total);
  const double mass = kTwoPi * raw_moments[0].real();
  if (!(mass > 0.0)) throw EmptyMeasureError("measure spec has zero total mass");
  const double scale = spec.normalize ? 1.0 / mass : 1.0;

  GroundTruth truth{config.spec_path.stem().string(), spec.atoms, {},
                    moments_of_measure(spec, total)};
  for (auto& atom : truth.atoms) atom.weight *= scale;
  if (!spec.density_samples.empty()) {
    const PeriodicGrid grid(spec.density_samples.size());
    const auto series = scale * analyze(grid, spec.density_samples);
    truth.density = [series](double theta) { return evaluate(series, theta); };
  }
  return truth;
}

ReconstructionReport run_experiment(const ExperimentConfig& config) {
  if (config.K < 1) throw DomainError("K must be at least 1");
  const auto truth = load_ground_truth(config);
  const auto targets = truth.moments.head(config.K);
  const PeriodicGrid grid(config.pointwise_grid);

  ReconstructionReport report;
  report.measure = truth.label;
  report.K = config.K;
  report.extended_orders = config.extended_orders;
  report.conditioning = config.conditioning;
  report.solve = config.solve;
  report.true_moments.assign(truth.moments.values().begin(), truth.moments.values().end());
  report.theta = grid.nodes();
  report.mu_true.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    report.mu_true[j] = truth.density ? truth.density(report.theta[j]) : 0.0;
  for (std::size_t j : atom_nodes(truth.atoms, grid)) report.mu_true[j] = kNaN;

  // Both methods read the one SolveOptions stored in the report.
  const SolveOptions& shared = report.solve;
  if (config.mode != Mode::Conditioned)
    run_method(report.unconditioned,
               [&] { return pipeline_unconditioned(targets, shared, config.inversion); }, truth,
               config.K, grid);
  if (config.mode != Mode::Unconditioned)
    run_method(report.conditioned,
               [&] {
                 return pipeline_conditioned(targets, config.conditioning, shared, config.inversion);
               },
               truth, config.K, grid);
  return report;
}

void write_report(const ReconstructionReport& report, const std::filesystem::path& dir,
                  bool emit_plots) {
  std::filesystem::create_directories(dir);
  DirectoryLock lock(dir / ".lock");
  const auto& U = report.unconditioned;
  const auto& C = report.conditioned;

  json summary = {
      {"measure", report.measure},
      {"K", report.K},
      {"extended_orders", report.extended_orders},
      {"conditioning",
       {{"M", report.conditioning.effective_shift()}, {"variant", variant_name(report.conditioning.variant)}}},
      {"solve_options", io::solve_options_to_json(report.solve)},
      {"shared_solve_options", true},
      {"unconditioned", method_json(U)},
      {"conditioned", method_json(C)}};
  io::write_json(dir / "report.json", summary);

  io::write_json(dir / "moments_true.json", io::moments_to_json(TrigMomentSequence(report.true_moments)));
  if (U.ok()) {
    io::write_json(dir / "moments_U.json", io::moments_to_json(TrigMomentSequence(U.moments)));
    io::write_json(dir / "model_U.json", io::model_to_json(MaxEntModel(U.alphas)));
  }
  if (C.ok()) {
    io::write_json(dir / "moments_C.json", io::moments_to_json(TrigMomentSequence(C.moments)));
    io::write_json(dir / "model_C.json", io::model_to_json(MaxEntModel(C.alphas)));
    if (!C.phase_moments.empty())
      io::write_json(dir / "phase_moments.json", io::moments_to_json(TrigMomentSequence(C.phase_moments)));
  }

  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < report.true_moments.size(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (const auto* m : {&U, &C}) {
      if (m->ok()) {
        row.push_back(io::format_number(m->moment_errors[k].real()));
        row.push_back(io::format_number(m->moment_errors[k].imag()));
      } else {
        row.insert(row.end(), 2, std::string{});
      }
    }
    rows.push_back(std::move(row));
  }
  io::write_csv(dir / "moment_errors.csv", {"k", "dre_U", "dim_U", "dre_C", "dim_C"}, rows);

  const std::size_t n = report.theta.size();
  std::vector<double> err_U(n, kNaN), err_C(n, kNaN);
  for (std::size_t j = 0; j < n; ++j) {
    if (U.ok()) err_U[j] = U.pointwise[j] - report.mu_true[j];
    if (C.ok()) err_C[j] = C.pointwise[j] - report.mu_true[j];
  }
  rows.clear();
  for (std::size_t j = 0; j < n; ++j)
    rows.push_back({io::format_number(report.theta[j]), io::format_number(report.mu_true[j]),
                    cell(U, U.pointwise, j), cell(C, C.pointwise, j), cell(U, err_U, j),
                    cell(C, err_C, j)});
  io::write_csv(dir / "pointwise.csv", {"theta", "mu_true", "mu_U", "mu_C", "err_U", "err_C"}, rows);

  rows.clear();
  for (std::size_t j = 0; j < n; ++j)
    rows.push_back({io::format_number(report.theta[j]), cell(C, C.phase_pointwise, j)});
  io::write_csv(dir / "phase.csv", {"theta", "phi_C"}, rows);

  if (!emit_plots) return;
  const auto plots = dir / "plots";
  std::filesystem::create_directories(plots);
  const std::vector<double> blank(n, kNaN);
  const auto or_blank = [&](const MethodReport& m, const std::vector<double>& v) {
    return m.ok() && v.size() == n ? v : blank;
  };
  svg::write_line_chart(plots / "density.svg", report.measure + ": reconstructed density", report.theta,
                        {{"truth", report.mu_true},
                         {"unconditioned", or_blank(U, U.pointwise)},
                         {"conditioned", or_blank(C, C.pointwise)}});
  svg::write_line_chart(plots / "pointwise_error.svg", report.measure + ": pointwise error", report.theta,
                        {{"unconditioned", or_blank(U, err_U)}, {"conditioned", or_blank(C, err_C)}});
  svg::write_line_chart(plots / "phase.svg", report.measure + ": phase density", report.theta,
                        {{"conditioned", or_blank(C, C.phase_pointwise)}});

  const std::size_t total = report.true_moments.size();
  std::vector<double> ks(total);
  for (std::size_t k = 0; k < total; ++k) ks[k] = static_cast<double>(k);
  const auto log_abs = [&](const MethodReport& m) {
    std::vector<double> v(total, kNaN);
    if (!m.ok()) return v;
    for (std::size_t k = 0; k < total; ++k) {
      const double a = std::abs(m.moment_errors[k]);
      if (a > 0.0) v[k] = std::log10(a);
    }
    return v;
  };
  svg::write_line_chart(plots / "moment_errors.svg", report.measure + ": log10 |moment error|", ks,
                        {{"unconditioned", log_abs(U)}, {"conditioned", log_abs(C)}});
}

std::vector<ReconstructionReport> run_benchmark(const ExperimentConfig& base) {
  std::vector<std::future<ReconstructionReport>> jobs;
  for (auto id : {MeasureId::PointMass, MeasureId::Gaussians, MeasureId::Rectangular}) {
    ExperimentConfig config = base;
    config.spec_path.clear();
    config.measure = NamedMeasure{id, 1.0};
    jobs.push_back(std::async(std::launch::async, [config] { return run_experiment(config); }));
  }
  std::vector<ReconstructionReport> reports;
  for (auto& job : jobs) reports.push_back(job.get());
  return reports;
}

void write_summary(const std::vector<ReconstructionReport>& reports, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto status = [](const MethodReport& m) -> std::string {
    if (!m.ran) return "skipped";
    if (!m.error.empty()) return "failed";
    return std::string(to_string(m.diagnostics.status));
  };
  const auto num = [](const MethodReport& m, double v) { return m.ok() ? io::format_number(v) : std::string{}; };
  const auto count = [](const MethodReport& m, std::size_t v) { return m.ok() ? std::to_string(v) : std::string{}; };

  std::vector<std::vector<std::string>> rows;
  json entries = json::array();
  for (const auto& r : reports) {
    const auto& U = r.unconditioned;
    const auto& C = r.conditioned;
    rows.push_back({r.measure, std::to_string(r.K), status(U), count(U, U.diagnostics.iterations),
                    num(U, U.first_k_error), count(U, U.coefficient_count), status(C),
                    count(C, C.diagnostics.iterations), num(C, C.first_k_error),
                    count(C, C.coefficient_count), count(C, C.phase_coefficient_count),
                    num(C, C.min_value)});
    entries.push_back({{"measure", r.measure},
                       {"K", r.K},
                       {"unconditioned", method_json(U)},
                       {"conditioned", method_json(C)}});
  }
  io::write_csv(dir / "summary.csv",
                {"measure", "K", "status_U", "iterations_U", "error_U", "count_U", "status_C",
                 "iterations_C", "error_C", "count_C", "count_phi_C", "min_C"},
                rows);
  io::write_json(dir / "summary.json", entries);
}

}  // namespace cmaxent
