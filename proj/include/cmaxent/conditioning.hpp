#pragma once

#include <cstddef>
#include <vector>

#include "cmaxent/moments.hpp"

namespace cmaxent {

/// Truncated formal power series sum_{n<K} c_n z^n.
struct FormalSeries {
  std::vector<cplx> coeffs;

  std::size_t order() const noexcept { return coeffs.size(); }
};

/// Truncated product, keeping the order of `a`.
FormalSeries multiply(const FormalSeries& a, const FormalSeries& b);

/// log(a) for a_0 = 1 via n b_n = n a_n - sum_{k=1}^{n-1} k b_k a_{n-k}.
/// Throws NormalizationError when |a_0 - 1| > 1e-12.
FormalSeries series_log(const FormalSeries& a);
/// exp(b) via n a_n = sum_{k=1}^{n} k b_k a_{n-k}, a_0 = e^{b_0}.
FormalSeries series_exp(const FormalSeries& b);

/// Reference implementations through convolution powers: the Mercator sum
/// sum_m (-1)^{m+1} (a-1)^m / m and the Taylor sum e^{b_0} sum_m (b-b_0)^m / m!.
FormalSeries series_log_direct(const FormalSeries& a);
FormalSeries series_exp_direct(const FormalSeries& b);

enum class ConditioningVariant {
  ShiftedLog,  ///< normalize by M + tau(0), then take the formal log (any M >= 0)
  MercatorM1,  ///< M = 1, Mercator expansion of log(1 + sum_{n>=0} tau(n) z^n)
};

struct ConditioningOptions {
  double shift = 0.0;  ///< M
  ConditioningVariant variant = ConditioningVariant::ShiftedLog;

  /// M actually used: 1 for MercatorM1, `shift` otherwise.
  double effective_shift() const noexcept {
    return variant == ConditioningVariant::MercatorM1 ? 1.0 : shift;
  }
};

/// Phase moments tau_phi of tau_mu:
///   sum_k tau_phi(k) z^k = pi/2 - (i/2) log(1 + sum_{n>=1} tau_mu(n)/(M + tau_mu(0)) z^n).
/// tau_phi(0) is exactly pi/2. Throws DomainError when M + tau_mu(0) <= 0.
TrigMomentSequence condition_moments(const TrigMomentSequence& mu_moments,
                                     const ConditioningOptions& opts = {});

/// Inverse of condition_moments given tau_mu(0). Throws InvalidPhaseError when
/// |tau_phi(0) - pi/2| > 1e-10.
TrigMomentSequence uncondition_moments(const TrigMomentSequence& phase_moments, double mu_mass0,
                                       const ConditioningOptions& opts = {});

}  // namespace cmaxent
