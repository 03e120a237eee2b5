#include "cmaxent/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cmaxent/errors.hpp"

namespace cmaxent {

namespace {

constexpr double kMaxExponent = 700.0;
constexpr double kArmijo = 1e-4;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::size_t round_up_even(std::size_t n) { return n + (n % 2); }

struct Evaluation {
  double objective = 0.0;
  double max_residual = 0.0;
  std::vector<double> gradient;
};

// Relative spectral tail of the density on the quadrature grid above which the
// quadrature no longer resolves the ansatz and its moments are aliased.
constexpr double kQuadratureTailTol = 1e-10;

class UnresolvedQuadrature : public Error {
 public:
  using Error::Error;
};

// Model moments tau_rho(0..count-1) on a fixed grid, without the resolution check.
std::vector<cplx> raw_moments(const MaxEntModel& model, std::size_t count, std::size_t n,
                              bool require_resolved = false) {
  const PeriodicGrid grid(n);
  const auto rho = model.density_samples(grid);
  const auto series = analyze(grid, rho);
  if (require_resolved && tail_ratio(series.nonnegative()) > kQuadratureTailTol)
    throw UnresolvedQuadrature("ansatz density is not resolved by the quadrature grid");
  std::vector<cplx> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = series.coefficient(static_cast<int>(k));
  return out;
}

Evaluation evaluate_fit(const MaxEntModel& model, const TrigMomentSequence& targets,
                        std::size_t n, bool with_gradient, bool require_resolved = false) {
  const std::size_t order = model.order();
  if (targets.size() != order)
    throw InputShapeError("target count " + std::to_string(targets.size()) +
                          " does not match model order " + std::to_string(order));
  const std::size_t needed = with_gradient ? 2 * order - 1 : order;
  const auto tau = raw_moments(model, needed, n, require_resolved);

  Evaluation ev;
  std::vector<cplx> residual(order);
  for (std::size_t k = 0; k < order; ++k) {
    residual[k] = tau[k] - targets[k];
    ev.objective += std::norm(residual[k]);
    ev.max_residual = std::max(ev.max_residual, std::abs(residual[k]));
  }
  if (!with_gradient) return ev;

  const auto tau_at = [&](long m) { return m >= 0 ? tau[static_cast<std::size_t>(m)] : std::conj(tau[static_cast<std::size_t>(-m)]); };
  const cplx i{0.0, 1.0};
  ev.gradient.assign(2 * order - 1, 0.0);
  for (std::size_t k = 0; k < order; ++k) {
    const cplx rc = std::conj(residual[k]);
    ev.gradient[0] += 2.0 * (rc * tau[k]).real();
    for (std::size_t j = 1; j < order; ++j) {
      const long kk = static_cast<long>(k), jj = static_cast<long>(j);
      const cplx lo = tau_at(kk - jj), hi = tau_at(kk + jj);
      ev.gradient[2 * j - 1] += 2.0 * (rc * (lo + hi)).real();
      ev.gradient[2 * j] += 2.0 * (rc * i * (lo - hi)).real();
    }
  }
  return ev;
}

void check_admissible(const TrigMomentSequence& targets) {
  const cplx t0 = targets[0];
  if (!(t0.real() > 0.0) || std::abs(t0.imag()) > 1e-12 * t0.real())
    throw DomainError("targets need a real, positive tau(0)");
  for (std::size_t k = 1; k < targets.size(); ++k) {
    if (!(std::abs(targets[k]) <= t0.real() * (1.0 + 1e-12)))
      throw DomainError("|tau(" + std::to_string(k) + ")| exceeds tau(0)");
  }
}

}  // namespace

MaxEntModel::MaxEntModel(std::vector<cplx> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw InputShapeError("model needs at least one coefficient");
  if (std::abs(alphas_[0].imag()) > 1e-12) throw InvalidSeriesError("alpha_0 must be real");
  alphas_[0] = {alphas_[0].real(), 0.0};
}

MaxEntModel MaxEntModel::uniform(std::size_t order, double mass0) {
  if (order == 0) throw InputShapeError("model order must be positive");
  if (!(mass0 > 0.0)) throw DomainError("uniform model needs positive mass");
  std::vector<cplx> a(order);
  a[0] = std::log(mass0);
  return MaxEntModel(std::move(a));
}

MaxEntModel MaxEntModel::from_parameters(std::span<const double> params) {
  if (params.empty() || params.size() % 2 == 0)
    throw InputShapeError("parameter vector must have odd length 2K - 1");
  const std::size_t order = (params.size() + 1) / 2;
  std::vector<cplx> a(order);
  a[0] = params[0];
  for (std::size_t j = 1; j < order; ++j) a[j] = {params[2 * j - 1], params[2 * j]};
  return MaxEntModel(std::move(a));
}

std::vector<double> MaxEntModel::parameters() const {
  std::vector<double> p(2 * alphas_.size() - 1);
  p[0] = alphas_[0].real();
  for (std::size_t j = 1; j < alphas_.size(); ++j) {
    p[2 * j - 1] = alphas_[j].real();
    p[2 * j] = alphas_[j].imag();
  }
  return p;
}

FourierSeries MaxEntModel::exponent() const { return FourierSeries::from_nonnegative(alphas_); }

std::vector<double> MaxEntModel::density_samples(const PeriodicGrid& grid) const {
  auto values = synthesize(exponent(), grid);
  for (double& v : values) {
    if (!(v <= kMaxExponent)) throw DivergenceError("ansatz exponent exceeds 700");
    v = std::exp(v);
  }
  return values;
}

double MaxEntModel::density(double theta) const {
  const double p = evaluate(exponent(), theta);
  if (!(p <= kMaxExponent)) throw DivergenceError("ansatz exponent exceeds 700");
  return std::exp(p);
}

std::size_t SolveOptions::quadrature_for(std::size_t order) const {
  return round_up_even(quadrature_size != 0 ? quadrature_size : std::max<std::size_t>(1024, 16 * order));
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::StalledNoDecrease: return "StalledNoDecrease";
    case SolveStatus::MaxIterations: return "MaxIterations";
  }
  return "unknown";
}

TrigMomentSequence model_moments(const MaxEntModel& model, std::size_t count, std::size_t grid_size) {
  if (count == 0) throw InputShapeError("moment count must be positive");
  const std::size_t minimum = 4 * (model.order() + count);
  const std::size_t n = grid_size == 0 ? round_up_even(std::max<std::size_t>(1024, minimum)) : grid_size;
  if (n < minimum)
    throw ResolutionError("quadrature of " + std::to_string(n) + " nodes is below 4(K + L) = " +
                          std::to_string(minimum));
  return TrigMomentSequence(raw_moments(model, count, n));
}

double objective(const MaxEntModel& model, const TrigMomentSequence& targets, std::size_t grid_size) {
  const std::size_t n = grid_size == 0 ? SolveOptions{}.quadrature_for(model.order()) : grid_size;
  return evaluate_fit(model, targets, n, false).objective;
}

std::vector<double> gradient(const MaxEntModel& model, const TrigMomentSequence& targets,
                             std::size_t grid_size) {
  const std::size_t n = grid_size == 0 ? SolveOptions{}.quadrature_for(model.order()) : grid_size;
  if (n < 4 * 3 * model.order())
    throw ResolutionError("gradient quadrature needs at least 12K nodes");
  return evaluate_fit(model, targets, n, true).gradient;
}

std::vector<double> finite_difference_gradient(const MaxEntModel& model,
                                               const TrigMomentSequence& targets,
                                               std::size_t grid_size, double step) {
  const std::size_t n = grid_size == 0 ? SolveOptions{}.quadrature_for(model.order()) : grid_size;
  auto p = model.parameters();
  std::vector<double> g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + step;
    const double up = evaluate_fit(MaxEntModel::from_parameters(p), targets, n, false).objective;
    p[i] = saved - step;
    const double down = evaluate_fit(MaxEntModel::from_parameters(p), targets, n, false).objective;
    p[i] = saved;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

SolveResult solve(const TrigMomentSequence& targets, const SolveOptions& opts) {
  if (!(opts.gradient_tol > 0.0 && opts.objective_tol > 0.0 && opts.step_tol > 0.0))
    throw DomainError("solver tolerances must be positive");
  check_admissible(targets);

  const std::size_t order = targets.size();
  const std::size_t n = opts.quadrature_for(order);
  const std::size_t dim = 2 * order - 1;

  const auto eval = [&](std::span<const double> params) {
    const auto model = MaxEntModel::from_parameters(params);
    Evaluation ev =
        evaluate_fit(model, targets, n, opts.gradient_mode == GradientMode::Analytic, true);
    if (opts.gradient_mode == GradientMode::FiniteDifference)
      ev.gradient = finite_difference_gradient(model, targets, n);
    return ev;
  };

  std::vector<double> x = MaxEntModel::uniform(order, targets[0].real()).parameters();
  Evaluation cur = eval(x);
  SolveDiagnostics diag;
  diag.objective_history.push_back(cur.objective);

  // A small gradient alone is not convergence: the moments must also match to
  // sqrt(objective_tol) each, otherwise iteration continues.
  const double moment_tol = std::sqrt(opts.objective_tol);
  const auto converged = [&](const Evaluation& ev) {
    return ev.objective <= opts.objective_tol ||
           (norm2(ev.gradient) <= opts.gradient_tol && ev.max_residual < moment_tol);
  };

  // Inverse Hessian approximation, row-major.
  std::vector<double> h(dim * dim, 0.0);
  const auto reset_identity = [&] {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) h[i * dim + i] = 1.0;
  };
  reset_identity();
  bool h_is_identity = true;
  bool first_update = true;

  diag.status = SolveStatus::MaxIterations;
  if (converged(cur)) {
    diag.status = SolveStatus::Converged;
  } else {
    std::vector<double> dir(dim), trial(dim);
    while (diag.iterations < opts.max_iterations) {
      bool accepted = false;
      Evaluation next;
      for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
        for (std::size_t i = 0; i < dim; ++i) {
          double acc = 0.0;
          for (std::size_t j = 0; j < dim; ++j) acc -= h[i * dim + j] * cur.gradient[j];
          dir[i] = acc;
        }
        double slope = dot(cur.gradient, dir);
        if (!(slope < 0.0)) {
          reset_identity();
          h_is_identity = true;
          for (std::size_t i = 0; i < dim; ++i) dir[i] = -cur.gradient[i];
          slope = dot(cur.gradient, dir);
        }
        bool any_finite = false;
        for (double t = 1.0; t >= opts.step_tol; t *= 0.5) {
          for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] + t * dir[i];
          try {
            next = eval(trial);
          } catch (const DivergenceError&) {
            continue;
          } catch (const UnresolvedQuadrature&) {
            any_finite = true;
            continue;
          }
          if (!std::isfinite(next.objective)) continue;
          any_finite = true;
          if (next.objective <= cur.objective + kArmijo * t * slope) {
            accepted = true;
            break;
          }
        }
        if (!accepted && !any_finite)
          throw SolverDivergenceError("every line-search trial overflowed the ansatz exponent", x);
        if (!accepted && !h_is_identity) {
          reset_identity();
          h_is_identity = true;
        } else if (!accepted) {
          break;
        }
      }
      if (!accepted) {
        diag.status = SolveStatus::StalledNoDecrease;
        break;
      }

      std::vector<double> s(dim), y(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        s[i] = trial[i] - x[i];
        y[i] = next.gradient[i] - cur.gradient[i];
      }
      const double sy = dot(s, y);
      const double yy = dot(y, y);
      if (sy > 1e-12 * std::sqrt(dot(s, s) * yy)) {
        if (first_update) {
          for (std::size_t i = 0; i < dim; ++i) h[i * dim + i] = sy / yy;
          first_update = false;
        }
        const double rho = 1.0 / sy;
        std::vector<double> hy(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j) hy[i] += h[i * dim + j] * y[j];
        const double yhy = dot(y, hy);
        const double coef = rho * rho * yhy + rho;
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j)
            h[i * dim + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + coef * s[i] * s[j];
        h_is_identity = false;
      }

      x = trial;
      cur = std::move(next);
      ++diag.iterations;
      diag.objective_history.push_back(cur.objective);
      if (converged(cur)) {
        diag.status = SolveStatus::Converged;
        break;
      }
    }
  }

  diag.final_objective = cur.objective;
  diag.gradient_norm = norm2(cur.gradient);
  return {MaxEntModel::from_parameters(x), std::move(diag)};
}

}  // namespace cmaxent
