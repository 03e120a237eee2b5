#include "cmaxent/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmaxent/errors.hpp"

namespace cmaxent {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_unit_constant(const FormalSeries& a) {
  if (a.coeffs.empty()) throw InputShapeError("formal series must have at least one coefficient");
  if (std::abs(a.coeffs[0] - 1.0) > 1e-12)
    throw NormalizationError("formal log needs constant term 1");
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

double real_mass(const TrigMomentSequence& seq) {
  const cplx t0 = seq[0];
  if (std::abs(t0.imag()) > 1e-12 * std::max(1.0, std::abs(t0.real())))
    throw InvalidSequenceError("tau(0) must be real");
  return t0.real();
}

// log(1 + S) for S = sum_{n>=0} s_n z^n with |s_0| < 1, summed as the Mercator
// series in powers of the whole S, constant term included.
std::vector<cplx> mercator_log_one_plus(const std::vector<cplx>& s) {
  const std::size_t order = s.size();
  std::vector<cplx> acc(order), power{s};
  constexpr int kMaxTerms = 200000;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    const double term = max_abs(power) / m;
    for (std::size_t n = 0; n < order; ++n) acc[n] += sign * power[n] / static_cast<double>(m);
    if (static_cast<std::size_t>(m) > order && term < 1e-18 * std::max(1.0, max_abs(acc)))
      return acc;
    power = multiply(FormalSeries{power}, FormalSeries{s}).coeffs;
  }
  throw DomainError("Mercator series did not converge");
}

}  // namespace

FormalSeries multiply(const FormalSeries& a, const FormalSeries& b) {
  const std::size_t order = a.order();
  FormalSeries out{std::vector<cplx>(order)};
  for (std::size_t i = 0; i < order; ++i) {
    if (a.coeffs[i] == cplx{}) continue;
    for (std::size_t j = 0; i + j < order && j < b.order(); ++j)
      out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

FormalSeries series_log(const FormalSeries& a) {
  require_unit_constant(a);
  const std::size_t order = a.order();
  FormalSeries b{std::vector<cplx>(order)};
  for (std::size_t n = 1; n < order; ++n) {
    cplx acc = static_cast<double>(n) * a.coeffs[n];
    for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * b.coeffs[k] * a.coeffs[n - k];
    b.coeffs[n] = acc / static_cast<double>(n);
  }
  return b;
}

FormalSeries series_exp(const FormalSeries& b) {
  if (b.coeffs.empty()) throw InputShapeError("formal series must have at least one coefficient");
  const std::size_t order = b.order();
  FormalSeries a{std::vector<cplx>(order)};
  a.coeffs[0] = std::exp(b.coeffs[0]);
  for (std::size_t n = 1; n < order; ++n) {
    cplx acc{};
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * b.coeffs[k] * a.coeffs[n - k];
    a.coeffs[n] = acc / static_cast<double>(n);
  }
  return a;
}

FormalSeries series_log_direct(const FormalSeries& a) {
  require_unit_constant(a);
  const std::size_t order = a.order();
  FormalSeries x = a;
  x.coeffs[0] = 0.0;
  FormalSeries out{std::vector<cplx>(order)};
  FormalSeries power = x;
  // x has no constant term, so x^m vanishes below z^m and the sum is finite.
  for (std::size_t m = 1; m < order; ++m) {
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    for (std::size_t n = 0; n < order; ++n) out.coeffs[n] += sign * power.coeffs[n] / static_cast<double>(m);
    power = multiply(power, x);
  }
  return out;
}

FormalSeries series_exp_direct(const FormalSeries& b) {
  if (b.coeffs.empty()) throw InputShapeError("formal series must have at least one coefficient");
  const std::size_t order = b.order();
  FormalSeries x = b;
  x.coeffs[0] = 0.0;
  FormalSeries out{std::vector<cplx>(order)};
  out.coeffs[0] = 1.0;
  FormalSeries power = x;
  double factorial = 1.0;
  for (std::size_t m = 1; m < order; ++m) {
    factorial *= static_cast<double>(m);
    for (std::size_t n = 0; n < order; ++n) out.coeffs[n] += power.coeffs[n] / factorial;
    power = multiply(power, x);
  }
  const cplx scale = std::exp(b.coeffs[0]);
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

TrigMomentSequence condition_moments(const TrigMomentSequence& mu_moments,
                                     const ConditioningOptions& opts) {
  const double mass0 = real_mass(mu_moments);
  const double shift = opts.effective_shift();
  if (!(shift >= 0.0)) throw DomainError("shift M must be nonnegative");
  const double denom = shift + mass0;
  if (!(denom > 0.0)) throw DomainError("M + tau(0) must be positive");

  const std::size_t order = mu_moments.size();
  std::vector<cplx> log_coeffs;
  if (opts.variant == ConditioningVariant::MercatorM1) {
    if (!(std::abs(mass0) < 1.0))
      throw DomainError("Mercator expansion needs |tau(0)| < 1");
    std::vector<cplx> s(mu_moments.values().begin(), mu_moments.values().end());
    s[0] = mass0;
    log_coeffs = mercator_log_one_plus(s);
  } else {
    FormalSeries a{std::vector<cplx>(order)};
    a.coeffs[0] = 1.0;
    for (std::size_t n = 1; n < order; ++n) a.coeffs[n] = mu_moments[n] / denom;
    log_coeffs = series_log(a).coeffs;
  }

  std::vector<cplx> phase(order);
  phase[0] = kPi / 2.0;
  for (std::size_t k = 1; k < order; ++k) phase[k] = -0.5 * kI * log_coeffs[k];
  return TrigMomentSequence(std::move(phase));
}

TrigMomentSequence uncondition_moments(const TrigMomentSequence& phase_moments, double mu_mass0,
                                       const ConditioningOptions& opts) {
  if (std::abs(phase_moments[0] - cplx(kPi / 2.0)) > 1e-10)
    throw InvalidPhaseError("zeroth phase moment must equal pi/2");
  const double shift = opts.effective_shift();
  if (!(shift >= 0.0)) throw DomainError("shift M must be nonnegative");
  const double denom = shift + mu_mass0;
  if (!(denom > 0.0)) throw DomainError("M + tau(0) must be positive");

  const std::size_t order = phase_moments.size();
  FormalSeries b{std::vector<cplx>(order)};
  for (std::size_t k = 1; k < order; ++k) b.coeffs[k] = 2.0 * kI * phase_moments[k];
  const FormalSeries a = series_exp(b);

  std::vector<cplx> mu(order);
  mu[0] = mu_mass0;
  for (std::size_t n = 1; n < order; ++n) mu[n] = denom * a.coeffs[n];
  return TrigMomentSequence(std::move(mu));
}

}  // namespace cmaxent
