#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "cmaxent/moments.hpp"

namespace cmaxent {

enum class MeasureId { PointMass, Gaussians, Rectangular };

/// One of the three benchmark measures; all are normalized to unit mass.
struct NamedMeasure {
  MeasureId id = MeasureId::PointMass;
  double location = 1.0;  ///< atom location a, PointMass only

  std::string name() const;
};

/// Parses "point_mass", "gaussians" or "rectangular".
std::optional<MeasureId> parse_measure_id(std::string_view text);

/// Unnormalized 5 e^{-(5t-10)^2} + e^{-(5t+7.5)^2}.
double gaussians_raw_density(double theta);
/// Indicator of the open interval (-(pi+1)/2, (pi+1)/2).
double rectangular_raw_density(double theta);

/// Sawtooth phase density of a unit point mass at a: pi - mod((theta-a)/2, pi), in [0, pi].
double phase_density_point_mass(double theta, double a);
/// Its conjugate function log(2 |sin((theta-a)/2)|). Throws SingularityError at theta = a.
double hilbert_phase_point_mass(double theta, double a);

/// tau(k) = sin(k(pi+1)/2) / (pi k (pi+1)) for k >= 1, 1/(2pi) for k = 0.
cplx rectangular_moment(std::size_t k);

struct ReferenceData {
  MeasureSpec spec;            ///< normalized measure
  PointwiseFunction density;   ///< normalized density; empty for the point mass
  TrigMomentSequence moments;  ///< first K moments
};

/// Unit-mass measure and its first `count` moments: closed forms for the point
/// mass and the rectangle, spectral quadrature on `grid_size` nodes (0 picks
/// max(1024, 8K)) for the Gaussians.
ReferenceData density_and_moments(const NamedMeasure& measure, std::size_t count,
                                  std::size_t grid_size = 0);

}  // namespace cmaxent
