// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cmaxent/conditioning.hpp"
#include "cmaxent/harness.hpp"
#include "cmaxent/inversion.hpp"
#include "cmaxent/maxent.hpp"
#include "cmaxent/reference.hpp"
#include "oracles.hpp"

using namespace cmaxent;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %2d  %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), secs, limit_seconds, in_time ? "" : ", too slow");
  std::fflush(stdout);
}

std::vector<cplx> random_atoms_moments(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> loc(-kPi, kPi), w(0.1, 1.0);
  std::vector<Atom> atoms(1 + rng() % 4);
  for (auto& a : atoms) a = {loc(rng), w(rng)};
  MeasureSpec spec;
  spec.atoms = atoms;
  spec.normalize = true;
  const auto m = moments_of_measure(spec, count);
  return {m.values().begin(), m.values().end()};
}

MaxEntModel random_model(std::mt19937_64& rng, std::size_t K, double scale) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> alphas(K);
  alphas[0] = -1.5 + 0.2 * u(rng);
  for (std::size_t k = 1; k < K; ++k) alphas[k] = cplx(u(rng), u(rng)) * (scale / double(k));
  return MaxEntModel(alphas);
}

Outcome phase_pin() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto tau = trial % 2 ? oracle::random_admissible(rng, 20) : random_atoms_moments(rng, 20);
    worst = std::max(worst, std::abs(condition_moments(TrigMomentSequence(tau))[0] - cplx(kPi / 2, 0)));
  }
  return {worst <= 1e-12, "max |tau_phi(0) - pi/2| = " + fmt("%.2e", worst) + " over 100 sequences"};
}

Outcome point_mass_conditioning() {
  double closed = 0.0, sampled = 0.0;
  for (double a : {0.0, 1.0, -2.5}) {
    std::vector<cplx> tau(20);
    for (int k = 0; k < 20; ++k) tau[k] = std::polar(1.0, -k * a) / kTwoPi;
    const auto phase = condition_moments(TrigMomentSequence(tau));
    for (int k = 1; k < 20; ++k) {
      const cplx expected = cplx(0, -1) * std::polar(1.0, -k * a) / (2.0 * k);
      closed = std::max(closed, std::abs(phase[k] - expected));
      sampled = std::max(sampled, std::abs(phase[k] - oracle::sawtooth_coefficient(a, k, 8192)));
    }
  }
  return {closed <= 1e-12 && sampled <= 1e-6,
          "closed form " + fmt("%.2e", closed) + " (tol 1e-12), sawtooth N=8192 " + fmt("%.2e", sampled) + " (tol 1e-6)"};
}

Outcome triangularity() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(-1e-2, 1e-2);
  int broken = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto tau = oracle::random_admissible(rng, 20);
    const int n = static_cast<int>(rng() % 19);
    const int m = n + 1 + static_cast<int>(rng() % (19 - n));
    auto perturbed = tau;
    perturbed[m] += cplx(u(rng), u(rng));
    const auto base = condition_moments(TrigMomentSequence(tau));
    const auto moved = condition_moments(TrigMomentSequence(perturbed));
    for (int k = 0; k <= n; ++k)
      if (base[k] != moved[k]) ++broken;
  }
  return {broken == 0, std::to_string(broken) + " low-order phase moments changed over 100 perturbations"};
}

Outcome roundtrips() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-1, 1);
  double series = 0.0, moments = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> a(20);
    a[0] = 1.0;
    for (int n = 1; n < 20; ++n) a[n] = cplx(u(rng), u(rng)) / double(n);
    const auto back = series_exp(series_log(FormalSeries{a}));
    for (int n = 0; n < 20; ++n) series = std::max(series, std::abs(back.coeffs[n] - a[n]));

    const auto tau = trial % 2 ? oracle::random_admissible(rng, 20) : random_atoms_moments(rng, 20);
    const auto again = uncondition_moments(condition_moments(TrigMomentSequence(tau)), tau[0].real());
    for (int k = 0; k < 20; ++k) moments = std::max(moments, std::abs(again[k] - tau[k]));
  }
  return {series <= 1e-12 && moments <= 1e-12,
          "exp(log a) " + fmt("%.2e", series) + ", uncondition(condition) " + fmt("%.2e", moments)};
}

Outcome hilbert_multiplier() {
  int mismatches = 0;
  for (int n = 1; n <= 50; ++n) {
    std::vector<cplx> c(n + 1), s(n + 1);
    c[n] = 0.5;
    s[n] = cplx(0, -0.5);
    const auto cos_n = FourierSeries::from_nonnegative(c), sin_n = FourierSeries::from_nonnegative(s);
    const auto hc = hilbert(cos_n), hs = hilbert(sin_n);
    for (int k = -n; k <= n; ++k) {
      if (hc.coefficient(k) != sin_n.coefficient(k)) ++mismatches;
      if (hs.coefficient(k) != -cos_n.coefficient(k)) ++mismatches;
    }
  }
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> r(33);
  r[0] = u(rng);
  for (std::size_t k = 1; k < r.size(); ++k) r[k] = cplx(u(rng), u(rng));
  const auto series = FourierSeries::from_nonnegative(r);
  const auto twice = hilbert(hilbert(series));
  if (twice.coefficient(0) != cplx(0, 0)) ++mismatches;
  for (int k = 1; k <= 32; ++k)
    if (twice.coefficient(k) != -series.coefficient(k)) ++mismatches;
  return {mismatches == 0, std::to_string(mismatches) + " inexact coefficients (cos/sin n = 1..50, H^2 = -I off k = 0)"};
}

Outcome gradient_check() {
  std::mt19937_64 rng(606);
  double worst = 0.0;
  const std::size_t orders[] = {2, 5, 10};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t K = orders[trial % 3];
    const auto model = random_model(rng, K, 0.5);
    const TrigMomentSequence targets(oracle::random_admissible(rng, static_cast<int>(K)));
    const auto g = gradient(model, targets);
    const auto p = model.parameters();
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double h = 1e-6;
      auto plus = p, minus = p;
      plus[i] += h;
      minus[i] -= h;
      const double fd = (objective(MaxEntModel::from_parameters(plus), targets) -
                         objective(MaxEntModel::from_parameters(minus), targets)) / (2 * h);
      diff = std::max(diff, std::abs(g[i] - fd));
      scale = std::max(scale, std::abs(fd));
    }
    worst = std::max(worst, diff / scale);
  }
  return {worst < 1e-6, "max relative error " + fmt("%.2e", worst) + " over 50 cases, K in {2, 5, 10}"};
}

Outcome solver_recovery() {
  std::mt19937_64 rng(707);
  double alpha = 0.0, obj = 0.0;
  bool converged = true;
  for (int trial = 0; trial < 5; ++trial) {
    const auto truth = random_model(rng, 4, 0.6);
    SolveOptions opts;
    opts.objective_tol = 1e-20;
    const auto r = solve(model_moments(truth, 4), opts);
    converged = converged && r.diagnostics.status == SolveStatus::Converged;
    obj = std::max(obj, r.diagnostics.final_objective);
    for (std::size_t k = 0; k < 4; ++k) alpha = std::max(alpha, std::abs(r.model.alphas()[k] - truth.alphas()[k]));
  }
  return {converged && alpha < 1e-6 && obj < 1e-12,
          "max alpha error " + fmt("%.2e", alpha) + ", max objective " + fmt("%.2e", obj) + " over 5 models"};
}

Outcome inversion_collapse() {
  double worst = 0.0;
  for (double a : {1.0, -2.0}) {
    const PeriodicGrid grid(4096);
    std::vector<double> phase, conj;
    for (double t : grid.nodes()) {
      if (std::abs(std::remainder(t - a, kTwoPi)) <= 0.05) continue;
      phase.push_back(phase_density_point_mass(t, a));
      conj.push_back(hilbert_phase_point_mass(t, a));
    }
    for (double v : invert_phase_samples(phase, conj, 1.0 / kTwoPi, 0.0)) worst = std::max(worst, std::abs(v));
  }
  return {worst < 1e-8, "max |mu'| off the atom " + fmt("%.2e", worst)};
}

Outcome reproduction() {
  ExperimentConfig base;
  base.K = 20;
  const auto reports = run_benchmark(base);
  bool a = true, b = true, c = true, d = true;
  std::string lines;
  for (const auto& r : reports) {
    const auto& U = r.unconditioned;
    const auto& C = r.conditioned;
    if (!U.ok() || !C.ok()) {
      a = b = c = d = false;
      lines += "\n      " + r.measure + ": failed (" + U.error + C.error + ")";
      continue;
    }
    const bool smooth = r.measure != "point_mass";
    const bool better = C.first_k_error < U.first_k_error;
    const bool decade = !smooth || C.first_k_error <= U.first_k_error / 10;
    const bool counts = C.phase_coefficient_count < C.coefficient_count && C.coefficient_count <= U.coefficient_count;
    a = a && better && decade;
    d = d && counts;
    char buf[400];
    std::snprintf(buf, sizeof buf,
                  "\n      %-11s E_U=%.3e (%s) E_C=%.3e ratio=%.1f%s | counts phi_C=%zu mu_C=%zu mu_U=%zu%s",
                  r.measure.c_str(), U.first_k_error, std::string(to_string(U.diagnostics.status)).c_str(),
                  C.first_k_error, U.first_k_error / C.first_k_error,
                  better && decade ? "" : (better ? " [ratio below 10]" : " [E_C >= E_U]"), C.phase_coefficient_count,
                  C.coefficient_count, U.coefficient_count, counts ? "" : " [ordering violated]");
    lines += buf;
    if (r.measure == "point_mass") {
      b = U.diagnostics.status != SolveStatus::Converged;
      // Negative values within 0.5 rad of the atom at 1.
      double near_min = INFINITY;
      for (std::size_t j = 0; j < r.theta.size(); ++j)
        if (std::abs(r.theta[j] - 1.0) < 0.5) near_min = std::min(near_min, C.pointwise[j]);
      c = near_min < 0.0;
      lines += "\n      point_mass C min near atom " + fmt("%.3e", near_min);
    }
  }
  const std::string summary = std::string("(a) ") + (a ? "ok" : "FAIL") + " (b) " + (b ? "ok" : "FAIL") + " (c) " +
                              (c ? "ok" : "FAIL") + " (d) " + (d ? "ok" : "FAIL");
  return {a && b && c && d, summary + lines};
}

Outcome uniform_end_to_end() {
  std::vector<cplx> tau(20);
  tau[0] = 1.0 / kTwoPi;
  double worst = 0.0;
  const PeriodicGrid grid(2048);
  for (const auto& r : {pipeline_conditioned(TrigMomentSequence(tau)), pipeline_unconditioned(TrigMomentSequence(tau))})
    for (double v : synthesize(r.density.series, grid)) worst = std::max(worst, std::abs(v - 1.0 / kTwoPi));
  return {worst < 1e-8, "max |mu' - 1/(2 pi)| " + fmt("%.2e", worst) + " for both methods"};
}

}  // namespace

int main() {
  criterion(1, "phase-moment pin", 1, phase_pin);
  criterion(2, "point-mass conditioning oracle", 1, point_mass_conditioning);
  criterion(3, "triangularity", 1, triangularity);
  criterion(4, "roundtrips", 1, roundtrips);
  criterion(5, "conjugate multiplier", 1, hilbert_multiplier);
  criterion(6, "gradient check", 10, gradient_check);
  criterion(7, "solver self-consistency", 5, solver_recovery);
  criterion(8, "inversion collapse", 1, inversion_collapse);
  criterion(9, "benchmark reproduction", 300, reproduction);
  criterion(10, "uniform end-to-end", 5, uniform_end_to_end);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
