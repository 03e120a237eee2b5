#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cmaxent/moments.hpp"
#include "cmaxent/spectral.hpp"

namespace cmaxent {

/// Exponential trigonometric polynomial rho(theta) = exp(sum_{|k|<K} alpha_k e^{ik theta}),
/// alpha_{-k} = conj(alpha_k), alpha_0 real.
class MaxEntModel {
 public:
  /// alphas[0] must be real (|Im| <= 1e-12); it is stored exactly real.
  explicit MaxEntModel(std::vector<cplx> alphas);
  /// Uniform density with the mass of `mass0`: alpha_0 = log(mass0), all others zero.
  static MaxEntModel uniform(std::size_t order, double mass0);
  /// Inverse of parameters(): (alpha_0, Re alpha_1, Im alpha_1, ...).
  static MaxEntModel from_parameters(std::span<const double> params);

  std::size_t order() const noexcept { return alphas_.size(); }
  std::span<const cplx> alphas() const noexcept { return alphas_; }
  std::vector<double> parameters() const;

  /// The exponent as a Fourier series of bandwidth K - 1.
  FourierSeries exponent() const;
  /// Density at the grid nodes. Throws DivergenceError if the exponent exceeds 700.
  std::vector<double> density_samples(const PeriodicGrid& grid) const;
  double density(double theta) const;

 private:
  std::vector<cplx> alphas_;
};

enum class GradientMode { Analytic, FiniteDifference };

struct SolveOptions {
  std::size_t max_iterations = 5000;
  double gradient_tol = 1e-10;
  double objective_tol = 1e-12;
  double step_tol = 1e-14;
  /// 0 selects max(1024, 16K).
  std::size_t quadrature_size = 0;
  GradientMode gradient_mode = GradientMode::Analytic;

  std::size_t quadrature_for(std::size_t order) const;
  friend bool operator==(const SolveOptions&, const SolveOptions&) = default;
};

enum class SolveStatus { Converged, StalledNoDecrease, MaxIterations };

std::string_view to_string(SolveStatus status);

struct SolveDiagnostics {
  SolveStatus status = SolveStatus::MaxIterations;
  std::size_t iterations = 0;
  double final_objective = 0.0;
  double gradient_norm = 0.0;
  /// Objective after initialization and after every accepted step.
  std::vector<double> objective_history;
};

struct SolveResult {
  MaxEntModel model;
  SolveDiagnostics diagnostics;
};

/// First `count` moments of the model density by FFT quadrature on `grid_size`
/// nodes (0 picks max(1024, 4(K + count)) rounded up to even). Throws
/// ResolutionError when grid_size < 4(K + count).
TrigMomentSequence model_moments(const MaxEntModel& model, std::size_t count,
                                 std::size_t grid_size = 0);

/// sum_{k<K} |targets(k) - tau_rho(k)|^2.
double objective(const MaxEntModel& model, const TrigMomentSequence& targets,
                 std::size_t grid_size = 0);

/// Gradient of `objective` with respect to parameters(), length 2K - 1.
std::vector<double> gradient(const MaxEntModel& model, const TrigMomentSequence& targets,
                             std::size_t grid_size = 0);

/// Central-difference gradient of `objective`, used by GradientMode::FiniteDifference.
std::vector<double> finite_difference_gradient(const MaxEntModel& model,
                                               const TrigMomentSequence& targets,
                                               std::size_t grid_size = 0, double step = 1e-6);

/// Fits the ansatz to `targets` by BFGS with backtracking (Armijo) line search,
/// starting from the uniform density with mass tau(0).
///
/// Throws DomainError for inadmissible targets (tau(0) <= 0 or |tau(k)| > tau(0)),
/// and DivergenceError if every trial point of a line search overflows.
SolveResult solve(const TrigMomentSequence& targets, const SolveOptions& opts = {});

}  // namespace cmaxent
