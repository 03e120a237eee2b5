#include "cmaxent/reference.hpp"

#include <cmath>
#include <memory>

#include "cmaxent/errors.hpp"

namespace cmaxent {

namespace {

constexpr double kHalfWidth = (kPi + 1.0) / 2.0;

// Quadrature size used once to fix the Gaussian normalization constant.
constexpr std::size_t kGaussianMassGrid = 8192;

double gaussians_mass() {
  static const double mass = [] {
    const PeriodicGrid grid(kGaussianMassGrid);
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) acc += gaussians_raw_density(grid.node(j));
    return acc * grid.spacing();
  }();
  return mass;
}

}  // namespace

std::string NamedMeasure::name() const {
  switch (id) {
    case MeasureId::PointMass: return "point_mass";
    case MeasureId::Gaussians: return "gaussians";
    case MeasureId::Rectangular: return "rectangular";
  }
  return "unknown";
}

std::optional<MeasureId> parse_measure_id(std::string_view text) {
  if (text == "point_mass") return MeasureId::PointMass;
  if (text == "gaussians") return MeasureId::Gaussians;
  if (text == "rectangular") return MeasureId::Rectangular;
  return std::nullopt;
}

double gaussians_raw_density(double theta) {
  const double a = 5.0 * theta - 10.0;
  const double b = 5.0 * theta + 7.5;
  return 5.0 * std::exp(-a * a) + std::exp(-b * b);
}

double rectangular_raw_density(double theta) {
  const double t = std::remainder(theta, kTwoPi);
  return (t > -kHalfWidth && t < kHalfWidth) ? 1.0 : 0.0;
}

double phase_density_point_mass(double theta, double a) {
  double r = std::fmod((theta - a) / 2.0, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return kPi - r;
}

double hilbert_phase_point_mass(double theta, double a) {
  const double d = std::remainder(theta - a, kTwoPi);
  if (d == 0.0) throw SingularityError("conjugate phase is singular at the atom");
  return std::log(2.0 * std::abs(std::sin(d / 2.0)));
}

cplx rectangular_moment(std::size_t k) {
  if (k == 0) return {1.0 / kTwoPi, 0.0};
  const double kk = static_cast<double>(k);
  return {std::sin(kk * kHalfWidth) / (kPi * kk * (kPi + 1.0)), 0.0};
}

ReferenceData density_and_moments(const NamedMeasure& measure, std::size_t count,
                                  std::size_t grid_size) {
  if (count == 0) throw InputShapeError("moment count must be positive");
  switch (measure.id) {
    case MeasureId::PointMass: {
      MeasureSpec spec;
      spec.atoms = {Atom{measure.location, 1.0}};
      spec.normalize = true;
      auto moments = moments_of_atoms(spec.atoms, count);
      return {std::move(spec), PointwiseFunction{}, std::move(moments)};
    }
    case MeasureId::Gaussians: {
      const double scale = 1.0 / gaussians_mass();
      PointwiseFunction density = [scale](double t) { return scale * gaussians_raw_density(t); };
      MeasureSpec spec;
      spec.density = density;
      spec.normalize = true;
      auto moments = moments_of_measure(spec, count, grid_size);
      return {std::move(spec), std::move(density), std::move(moments)};
    }
    case MeasureId::Rectangular: {
      PointwiseFunction density = [](double t) { return rectangular_raw_density(t) / (kPi + 1.0); };
      MeasureSpec spec;
      spec.density = density;
      spec.normalize = true;
      std::vector<cplx> tau(count);
      for (std::size_t k = 0; k < count; ++k) tau[k] = rectangular_moment(k);
      return {std::move(spec), std::move(density), TrigMomentSequence(std::move(tau))};
    }
  }
  throw DomainError("unknown measure");
}

}  // namespace cmaxent
