#include "cmaxent/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmaxent/errors.hpp"

namespace cmaxent {

namespace {

std::size_t evaluation_size(const InversionOptions& inv, int bandwidth) {
  std::size_t n = std::max<std::size_t>(inv.evaluation_grid, 4 * static_cast<std::size_t>(bandwidth));
  return n + (n % 2);
}

template <typename F>
auto run_stage(const char* stage, F&& f) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError(stage, e.what());
  }
}

ReconstructedDensity density_from_samples(const PeriodicGrid& grid, std::span<const double> samples,
                                          const InversionOptions& inv, Provenance provenance) {
  ReconstructedDensity out;
  out.provenance = provenance;
  out.series = analyze(grid, samples);
  const auto fit = tail_truncate(out.series, inv.tail_tol);
  out.coefficient_count = fit.coefficient_count();
  out.resolved = fit.resolved;
  out.min_value = *std::min_element(samples.begin(), samples.end());
  return out;
}

}  // namespace

std::string_view to_string(Provenance p) {
  return p == Provenance::Conditioned ? "Conditioned" : "Unconditioned";
}

double inversion_formula(double phase, double hilbert_phase, double mu_mass0, double shift) {
  return -2.0 * shift - mu_mass0 + 2.0 * (mu_mass0 + shift) * std::exp(-hilbert_phase) * std::sin(phase);
}

std::vector<double> invert_phase_samples(std::span<const double> phase,
                                         std::span<const double> hilbert_phase, double mu_mass0,
                                         double shift) {
  if (phase.size() != hilbert_phase.size())
    throw InputShapeError("phase and conjugate phase sample counts differ");
  std::vector<double> out(phase.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = inversion_formula(phase[j], hilbert_phase[j], mu_mass0, shift);
  return out;
}

ReconstructedDensity invert_phase(const FourierSeries& phase, double mu_mass0, double shift,
                                  const InversionOptions& opts) {
  if (!(mu_mass0 > 0.0)) throw DomainError("tau(0) must be positive");
  if (!(shift >= 0.0)) throw DomainError("shift M must be nonnegative");
  const PeriodicGrid grid(evaluation_size(opts, phase.bandwidth()));
  const FourierSeries conj_phase = hilbert(phase);
  const auto phi = synthesize(phase, grid);
  const auto hphi = synthesize(conj_phase, grid);
  const auto mu = invert_phase_samples(phi, hphi, mu_mass0, shift);

  ReconstructedDensity out = density_from_samples(grid, mu, opts, Provenance::Conditioned);
  out.phase_series = phase;
  out.hilbert_phase = conj_phase;
  out.phase_coefficient_count = tail_truncate(phase, opts.tail_tol).coefficient_count();
  return out;
}

FourierSeries model_series(const MaxEntModel& model, const InversionOptions& inv) {
  const PeriodicGrid grid(evaluation_size(inv, static_cast<int>(model.order()) - 1));
  return analyze(grid, model.density_samples(grid));
}

PipelineResult pipeline_conditioned(const TrigMomentSequence& mu_moments,
                                    const ConditioningOptions& cond, const SolveOptions& solve_opts,
                                    const InversionOptions& inv) {
  const auto phase_moments = run_stage("condition", [&] { return condition_moments(mu_moments, cond); });
  auto solved = run_stage("maxent", [&] { return solve(phase_moments, solve_opts); });
  auto density = run_stage("invert", [&] {
    const auto fit = tail_truncate(model_series(solved.model, inv), inv.tail_tol);
    return invert_phase(fit.series, mu_moments[0].real(), cond.effective_shift(), inv);
  });
  return {std::move(density), std::move(solved.diagnostics), std::move(solved.model), phase_moments};
}

PipelineResult pipeline_unconditioned(const TrigMomentSequence& mu_moments,
                                      const SolveOptions& solve_opts, const InversionOptions& inv) {
  auto solved = run_stage("maxent", [&] { return solve(mu_moments, solve_opts); });
  auto density = run_stage("invert", [&] {
    const PeriodicGrid grid(evaluation_size(inv, static_cast<int>(solved.model.order()) - 1));
    const auto rho = solved.model.density_samples(grid);
    return density_from_samples(grid, rho, inv, Provenance::Unconditioned);
  });
  return {std::move(density), std::move(solved.diagnostics), std::move(solved.model), std::nullopt};
}

}  // namespace cmaxent
