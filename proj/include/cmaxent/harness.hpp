#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmaxent/conditioning.hpp"
#include "cmaxent/inversion.hpp"
#include "cmaxent/maxent.hpp"
#include "cmaxent/moments.hpp"
#include "cmaxent/reference.hpp"

namespace cmaxent {

enum class Mode { Conditioned, Unconditioned, Both };

std::optional<Mode> parse_mode(std::string_view text);

struct ExperimentConfig {
  /// Either a named benchmark measure or a MeasureSpec JSON file.
  std::optional<NamedMeasure> measure;
  std::filesystem::path spec_path;

  std::size_t K = 20;
  ConditioningOptions conditioning;
  SolveOptions solve;
  InversionOptions inversion;
  Mode mode = Mode::Both;
  std::size_t extended_orders = 20;
  std::size_t pointwise_grid = 2048;
  std::filesystem::path output_dir;
  bool emit_plots = false;
};

/// Normalized ground truth used for comparison.
struct GroundTruth {
  std::string label;
  std::vector<Atom> atoms;     ///< weights already normalized
  PointwiseFunction density;   ///< normalized; may be empty
  TrigMomentSequence moments;  ///< K + extended_orders entries
};

GroundTruth load_ground_truth(const ExperimentConfig& config);

struct MethodReport {
  bool ran = false;
  std::string error;  ///< non-empty when a stage failed
  SolveDiagnostics diagnostics;
  std::vector<cplx> alphas;
  std::vector<cplx> moments;           ///< reconstructed, K + extended entries
  std::vector<cplx> moment_errors;     ///< reconstructed - true
  double first_k_error = 0.0;          ///< sum_{k<K} |error|^2
  std::vector<double> pointwise;       ///< mu' on the comparison grid
  std::size_t coefficient_count = 0;
  bool resolved = false;
  double min_value = 0.0;
  // Conditioned only.
  std::vector<cplx> phase_moments;
  std::vector<double> phase_pointwise;
  std::size_t phase_coefficient_count = 0;

  bool ok() const noexcept { return ran && error.empty(); }
};

struct ReconstructionReport {
  std::string measure;
  std::size_t K = 0;
  std::size_t extended_orders = 0;
  ConditioningOptions conditioning;
  /// The single option set shared by both methods.
  SolveOptions solve;
  std::vector<cplx> true_moments;
  std::vector<double> theta;
  /// Truth on the comparison grid; NaN where undefined (atom nodes).
  std::vector<double> mu_true;
  MethodReport unconditioned;
  MethodReport conditioned;
};

/// Runs the requested pipelines on one measure with one shared SolveOptions.
/// A failing method is recorded in its MethodReport; the other still runs.
ReconstructionReport run_experiment(const ExperimentConfig& config);

/// Writes report.json, moments/model JSON, moment_errors.csv, pointwise.csv,
/// phase.csv and, if requested, SVG plots into `dir`. A lock file guards the
/// directory for the duration of the write.
void write_report(const ReconstructionReport& report, const std::filesystem::path& dir,
                  bool emit_plots);

/// Runs the three benchmark measures concurrently with `base` settings
/// (base.measure and base.spec_path are ignored), in the order point mass,
/// Gaussians, rectangle.
std::vector<ReconstructionReport> run_benchmark(const ExperimentConfig& base);

/// summary.csv and summary.json over several experiments.
void write_summary(const std::vector<ReconstructionReport>& reports, const std::filesystem::path& dir);

/// Entry point of the command-line tool; returns the process exit code
/// (0 success, 1 domain error, 2 usage error).
int run_cli(int argc, const char* const* argv);

}  // namespace cmaxent
