#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cmaxent/conditioning.hpp"
#include "cmaxent/maxent.hpp"
#include "cmaxent/moments.hpp"
#include "cmaxent/spectral.hpp"

namespace cmaxent {

enum class Provenance { Conditioned, Unconditioned };

std::string_view to_string(Provenance p);

struct InversionOptions {
  /// Grid on which densities are evaluated before re-analysis; raised to
  /// 4x the input bandwidth when that is larger.
  std::size_t evaluation_grid = 4096;
  double tail_tol = 1e-13;
};

/// A reconstructed density mu' with its intermediate artifacts.
///
/// `series` is the full re-analysis on the evaluation grid; `coefficient_count`
/// is the count chosen by the tail rule (tail_truncate) on that series, with
/// `resolved` false when no truncation met the rule.
struct ReconstructedDensity {
  FourierSeries series;
  std::optional<FourierSeries> phase_series;
  std::optional<FourierSeries> hilbert_phase;
  std::size_t coefficient_count = 0;
  bool resolved = false;
  std::optional<std::size_t> phase_coefficient_count;
  Provenance provenance = Provenance::Unconditioned;
  double min_value = 0.0;  ///< smallest value on the evaluation grid
  bool has_negative_values() const noexcept { return min_value < 0.0; }
};

/// -2M - tau0 + 2 (tau0 + M) e^{-H} sin(phi), pointwise.
double inversion_formula(double phase, double hilbert_phase, double mu_mass0, double shift);

/// Applies inversion_formula elementwise. Throws InputShapeError on length mismatch.
std::vector<double> invert_phase_samples(std::span<const double> phase,
                                         std::span<const double> hilbert_phase, double mu_mass0,
                                         double shift);

/// Reconstructs mu' from a phase density: H(phi') by the spectral multiplier,
/// the inversion formula on the evaluation grid, then re-analysis. Negative
/// values are kept. Throws DomainError unless mu_mass0 > 0 and shift >= 0.
ReconstructedDensity invert_phase(const FourierSeries& phase, double mu_mass0, double shift,
                                  const InversionOptions& opts = {});

struct PipelineResult {
  ReconstructedDensity density;
  SolveDiagnostics diagnostics;
  MaxEntModel model;  ///< phase model (conditioned) or density model (unconditioned)
  std::optional<TrigMomentSequence> phase_moments;
};

/// condition_moments -> solve -> invert_phase. Stage failures are rethrown as
/// PipelineError tagged "condition", "maxent" or "invert".
PipelineResult pipeline_conditioned(const TrigMomentSequence& mu_moments,
                                    const ConditioningOptions& cond = {},
                                    const SolveOptions& solve_opts = {},
                                    const InversionOptions& inv = {});

/// solve directly on the moments; mu' is the model density.
PipelineResult pipeline_unconditioned(const TrigMomentSequence& mu_moments,
                                      const SolveOptions& solve_opts = {},
                                      const InversionOptions& inv = {});

/// Samples a maximum-entropy model on the evaluation grid and re-analyzes it.
FourierSeries model_series(const MaxEntModel& model, const InversionOptions& inv = {});

}  // namespace cmaxent
