#include "cmaxent/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmaxent/errors.hpp"

namespace cmaxent {

TrigMomentSequence::TrigMomentSequence(std::vector<cplx> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputShapeError("moment sequence must have at least one entry");
}

TrigMomentSequence TrigMomentSequence::head(std::size_t count) const {
  if (count == 0 || count > values_.size())
    throw InputShapeError("cannot take " + std::to_string(count) + " of " +
                          std::to_string(values_.size()) + " moments");
  return TrigMomentSequence(std::vector<cplx>(values_.begin(), values_.begin() + count));
}

std::size_t default_moment_quadrature(std::size_t count) {
  return std::max<std::size_t>(1024, 8 * count);
}

TrigMomentSequence moments_of_density(const FourierSeries& density, std::size_t count) {
  if (count == 0) throw InputShapeError("moment count must be positive");
  if (static_cast<long>(count) - 1 > density.bandwidth())
    throw ResolutionError("requested " + std::to_string(count) + " moments from a series of bandwidth " +
                          std::to_string(density.bandwidth()));
  std::vector<cplx> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = density.coefficient(static_cast<int>(k));
  return TrigMomentSequence(std::move(out));
}

TrigMomentSequence moments_of_samples(std::span<const double> samples, std::size_t count) {
  if (count == 0) throw InputShapeError("moment count must be positive");
  if (samples.size() < 4 * count)
    throw ResolutionError("grid of " + std::to_string(samples.size()) + " samples cannot resolve " +
                          std::to_string(count) + " moments (need at least 4K)");
  const PeriodicGrid grid(samples.size());
  return moments_of_density(analyze(grid, samples), count);
}

TrigMomentSequence moments_of_density(const PointwiseFunction& density, std::size_t count,
                                      std::size_t grid_size) {
  if (count == 0) throw InputShapeError("moment count must be positive");
  const std::size_t n = grid_size == 0 ? default_moment_quadrature(count) : grid_size;
  const PeriodicGrid grid(n);
  std::vector<double> samples(n);
  for (std::size_t j = 0; j < n; ++j) samples[j] = density(grid.node(j));
  return moments_of_samples(samples, count);
}

TrigMomentSequence moments_of_atoms(std::span<const Atom> atoms, std::size_t count) {
  if (atoms.empty()) throw EmptyMeasureError("atom list is empty");
  if (count == 0) throw InputShapeError("moment count must be positive");
  std::vector<cplx> out(count);
  for (const auto& atom : atoms) {
    if (!(atom.weight >= 0.0)) throw DomainError("atom weights must be nonnegative");
    for (std::size_t k = 0; k < count; ++k)
      out[k] += atom.weight * std::polar(1.0, -static_cast<double>(k) * atom.location) / kTwoPi;
  }
  out[0] = {out[0].real(), 0.0};
  return TrigMomentSequence(std::move(out));
}

TrigMomentSequence moments_of_measure(const MeasureSpec& spec, std::size_t count,
                                      std::size_t grid_size) {
  if (count == 0) throw InputShapeError("moment count must be positive");
  if (spec.atoms.empty() && !spec.has_density()) throw EmptyMeasureError("measure has no atoms and no density");
  std::vector<cplx> total(count);
  if (!spec.atoms.empty()) {
    const auto m = moments_of_atoms(spec.atoms, count);
    for (std::size_t k = 0; k < count; ++k) total[k] += m[k];
  }
  if (!spec.density_samples.empty()) {
    const auto m = moments_of_samples(spec.density_samples, count);
    for (std::size_t k = 0; k < count; ++k) total[k] += m[k];
  } else if (spec.density) {
    const auto m = moments_of_density(spec.density, count, grid_size);
    for (std::size_t k = 0; k < count; ++k) total[k] += m[k];
  }
  const double mass0 = total[0].real();
  if (!(mass0 > 0.0)) throw EmptyMeasureError("measure has no positive mass");
  if (spec.normalize) {
    const double scale = 1.0 / (kTwoPi * mass0);
    for (auto& t : total) t *= scale;
    total[0] = {1.0 / kTwoPi, 0.0};
  }
  total[0] = {total[0].real(), 0.0};
  return TrigMomentSequence(std::move(total));
}

TwoSidedSequence extend_conjugate(const TrigMomentSequence& seq) {
  const cplx t0 = seq[0];
  if (std::abs(t0.imag()) > 1e-12 * std::max(1.0, std::abs(t0.real())))
    throw InvalidSequenceError("tau(0) must be real");
  const int kmax = static_cast<int>(seq.size()) - 1;
  TwoSidedSequence out{kmax, std::vector<cplx>(2 * seq.size() - 1)};
  out.values[static_cast<std::size_t>(kmax)] = {t0.real(), 0.0};
  for (int k = 1; k <= kmax; ++k) {
    out.values[static_cast<std::size_t>(kmax + k)] = seq[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(kmax - k)] = std::conj(seq[static_cast<std::size_t>(k)]);
  }
  return out;
}

MomentError moment_error(const TrigMomentSequence& a, const TrigMomentSequence& b) {
  if (a.size() != b.size())
    throw InputShapeError("moment sequences differ in length (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  MomentError out;
  out.differences.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    out.differences[k] = a[k] - b[k];
    out.squared_l2 += std::norm(out.differences[k]);
  }
  return out;
}

}  // namespace cmaxent
