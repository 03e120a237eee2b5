#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cmaxent/spectral.hpp"

namespace cmaxent {

/// tau(0..K-1) with tau(k) = (1/2pi) * integral of e^{-ik theta} dmu(theta).
class TrigMomentSequence {
 public:
  /// Throws InputShapeError for an empty sequence.
  explicit TrigMomentSequence(std::vector<cplx> values);

  std::size_t size() const noexcept { return values_.size(); }
  const cplx& operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const cplx> values() const noexcept { return values_; }

  /// First `count` entries (count >= 1, count <= size()).
  TrigMomentSequence head(std::size_t count) const;

  friend bool operator==(const TrigMomentSequence&, const TrigMomentSequence&) = default;

 private:
  std::vector<cplx> values_;
};

/// Conjugate-extended sequence tau(-(K-1))..tau(K-1).
struct TwoSidedSequence {
  int max_order = 0;
  std::vector<cplx> values;
  cplx at(int k) const { return values[static_cast<std::size_t>(k + max_order)]; }
};

struct Atom {
  double location = 0.0;  ///< radians
  double weight = 0.0;
};

/// Ground-truth measure: point masses plus an optional density.
///
/// A density may be given pointwise (`density`) or as samples on the canonical
/// grid (`density_samples`, N even); at most one of the two is used, samples
/// taking precedence. With `normalize` set, moments are rescaled so that
/// tau(0) = 1/(2pi), i.e. unit total mass.
struct MeasureSpec {
  std::vector<Atom> atoms;
  PointwiseFunction density;
  std::vector<double> density_samples;
  bool normalize = false;

  bool has_density() const noexcept { return !density_samples.empty() || bool(density); }
};

/// Default quadrature size for pointwise densities: max(1024, 8K).
std::size_t default_moment_quadrature(std::size_t count);

/// tau(k) = c_k for k < count. Throws ResolutionError if count - 1 exceeds the bandwidth.
TrigMomentSequence moments_of_density(const FourierSeries& density, std::size_t count);

/// Spectral quadrature of a pointwise density on a grid of `grid_size` nodes
/// (0 picks the default). Throws ResolutionError when grid_size < 4 * count.
TrigMomentSequence moments_of_density(const PointwiseFunction& density, std::size_t count,
                                      std::size_t grid_size = 0);

/// Moments of density samples on the canonical grid of size samples.size().
TrigMomentSequence moments_of_samples(std::span<const double> samples, std::size_t count);

/// tau(k) = sum_j w_j e^{-ik a_j} / (2pi).
TrigMomentSequence moments_of_atoms(std::span<const Atom> atoms, std::size_t count);

/// Moments of a full MeasureSpec, honoring `normalize`.
TrigMomentSequence moments_of_measure(const MeasureSpec& spec, std::size_t count,
                                      std::size_t grid_size = 0);

/// Throws InvalidSequenceError when tau(0) has a non-negligible imaginary part.
TwoSidedSequence extend_conjugate(const TrigMomentSequence& seq);

struct MomentError {
  std::vector<cplx> differences;  ///< a(k) - b(k)
  double squared_l2 = 0.0;        ///< sum_k |a(k) - b(k)|^2
};

MomentError moment_error(const TrigMomentSequence& a, const TrigMomentSequence& b);

}  // namespace cmaxent
