#include "cmaxent/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmaxent/errors.hpp"
#include "fft.hpp"

namespace cmaxent {

namespace {

constexpr double kSymmetryTol = 1e-10;

double sign_alternation(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t size) : size_(size) {
  if (size == 0 || size % 2 != 0)
    throw InputShapeError("grid size must be positive and even, got " + std::to_string(size));
}

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> out(size_);
  for (std::size_t j = 0; j < size_; ++j) out[j] = node(j);
  return out;
}

FourierSeries FourierSeries::from_two_sided(std::span<const cplx> coeffs) {
  if (coeffs.size() % 2 == 0)
    throw InputShapeError("two-sided coefficient list must have odd length");
  const std::size_t b = coeffs.size() / 2;
  std::vector<cplx> half(b + 1);
  for (std::size_t k = 0; k <= b; ++k) {
    const cplx pos = coeffs[b + k];
    const cplx neg = coeffs[b - k];
    const double scale = std::max(1.0, std::abs(pos));
    if (std::abs(pos - std::conj(neg)) > kSymmetryTol * scale)
      throw InvalidSeriesError("coefficients at k = +-" + std::to_string(k) +
                               " are not conjugate");
    half[k] = 0.5 * (pos + std::conj(neg));
  }
  half[0] = {half[0].real(), 0.0};
  return FourierSeries(std::move(half));
}

FourierSeries FourierSeries::from_nonnegative(std::span<const cplx> coeffs) {
  if (coeffs.empty()) return FourierSeries();
  if (std::abs(coeffs[0].imag()) > kSymmetryTol * std::max(1.0, std::abs(coeffs[0].real())))
    throw InvalidSeriesError("c_0 must be real");
  std::vector<cplx> half(coeffs.begin(), coeffs.end());
  half[0] = {half[0].real(), 0.0};
  return FourierSeries(std::move(half));
}

FourierSeries FourierSeries::constant(double value) {
  return FourierSeries(std::vector<cplx>{cplx(value, 0.0)});
}

cplx FourierSeries::coefficient(int k) const noexcept {
  const auto idx = static_cast<std::size_t>(std::abs(k));
  if (idx >= half_.size()) return {};
  return k >= 0 ? half_[idx] : std::conj(half_[idx]);
}

std::vector<cplx> FourierSeries::two_sided() const {
  const int b = bandwidth();
  std::vector<cplx> out(coefficient_count());
  for (int k = -b; k <= b; ++k) out[static_cast<std::size_t>(k + b)] = coefficient(k);
  return out;
}

FourierSeries FourierSeries::truncated(int bandwidth) const {
  const auto keep = static_cast<std::size_t>(std::max(0, bandwidth)) + 1;
  if (keep >= half_.size()) return *this;
  return FourierSeries(std::vector<cplx>(half_.begin(), half_.begin() + keep));
}

FourierSeries operator+(const FourierSeries& a, const FourierSeries& b) {
  std::vector<cplx> out(std::max(a.half_.size(), b.half_.size()));
  for (std::size_t k = 0; k < a.half_.size(); ++k) out[k] += a.half_[k];
  for (std::size_t k = 0; k < b.half_.size(); ++k) out[k] += b.half_[k];
  return FourierSeries(std::move(out));
}

FourierSeries operator*(double s, const FourierSeries& a) {
  std::vector<cplx> out(a.half_);
  for (auto& c : out) c *= s;
  return FourierSeries(std::move(out));
}

FourierSeries analyze(const PeriodicGrid& grid, std::span<const double> samples) {
  const std::size_t n = grid.size();
  if (samples.size() != n)
    throw InputShapeError("expected " + std::to_string(n) + " samples, got " +
                          std::to_string(samples.size()));
  auto bins = detail::forward_real(samples);
  // Nodes start at -pi, so e^{-ik theta_j} = (-1)^k e^{-2 pi i jk/N}.
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k] *= sign_alternation(k) * inv_n;
  bins.back() *= 0.5;
  return FourierSeries::from_nonnegative(bins);
}

std::vector<double> synthesize(const FourierSeries& series, const PeriodicGrid& grid) {
  const std::size_t n = grid.size();
  const auto half_n = static_cast<long>(n / 2);
  const auto ln = static_cast<long>(n);
  std::vector<cplx> bins(n / 2 + 1);
  const int b = series.bandwidth();
  for (long k = -b; k <= b; ++k) {
    const long m = ((k % ln) + ln) % ln;
    if (m <= half_n) bins[static_cast<std::size_t>(m)] += series.coefficient(static_cast<int>(k));
  }
  for (std::size_t m = 0; m < bins.size(); ++m) bins[m] *= sign_alternation(m);
  return detail::inverse_real(bins, n);
}

double evaluate(const FourierSeries& series, double theta) {
  const double t = std::remainder(theta, kTwoPi);
  const auto c = series.nonnegative();
  double acc = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    const cplx e = std::polar(1.0, static_cast<double>(k) * t);
    acc += (c[k] * e).real();
  }
  return c[0].real() + 2.0 * acc;
}

FourierSeries hilbert(const FourierSeries& series) {
  const auto c = series.nonnegative();
  std::vector<cplx> out(c.size());
  // -i * (x + iy) = y - ix, written out so the multiplier is exact.
  for (std::size_t k = 1; k < c.size(); ++k) out[k] = {c[k].imag(), -c[k].real()};
  return FourierSeries::from_nonnegative(out);
}

double quadrature_mean(const FourierSeries& series) { return series.coefficient(0).real(); }

double quadrature_mean(std::span<const double> samples) {
  if (samples.empty()) throw InputShapeError("no samples");
  double acc = 0.0;
  for (double v : samples) acc += v;
  return acc / static_cast<double>(samples.size());
}

double tail_ratio(std::span<const cplx> nonnegative) {
  const std::size_t m = nonnegative.size();
  if (m == 0) return 0.0;
  const auto top = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(m))));
  double overall = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = std::abs(nonnegative[k]);
    overall = std::max(overall, a);
    if (k >= m - top) tail = std::max(tail, a);
  }
  return overall > 0.0 ? tail / overall : 0.0;
}

AdaptiveFit adaptive_fit(const GridSampler& sampler, const AdaptiveFitOptions& opts) {
  if (!(opts.tail_tol > 0.0)) throw DomainError("tail_tol must be positive");
  double ratio = 1.0;
  for (std::size_t n = opts.initial_size; n <= opts.max_size; n *= 2) {
    const PeriodicGrid grid(n);
    const auto samples = sampler(grid);
    auto series = analyze(grid, samples);
    ratio = tail_ratio(series.nonnegative());
    if (ratio < opts.tail_tol) return {std::move(series), n, ratio};
  }
  throw NonResolvableError("tail ratio " + std::to_string(ratio) + " above tolerance at N = " +
                               std::to_string(opts.max_size),
                           ratio);
}

AdaptiveFit adaptive_fit(const PointwiseFunction& f, const AdaptiveFitOptions& opts) {
  return adaptive_fit(
      GridSampler([&f](const PeriodicGrid& grid) {
        std::vector<double> s(grid.size());
        for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(grid.node(j));
        return s;
      }),
      opts);
}

TailFit tail_truncate(const FourierSeries& dense, double tail_tol, std::size_t initial_size) {
  const auto c = dense.nonnegative();
  double ratio = tail_ratio(c);
  for (std::size_t n = initial_size; n / 2 + 1 <= c.size(); n *= 2) {
    const double r = tail_ratio(c.first(n / 2 + 1));
    if (r < tail_tol) return {dense.truncated(static_cast<int>(n / 2)), n, r, true};
    ratio = r;
  }
  return {dense, 2 * c.size() - 2, ratio, false};
}

}  // namespace cmaxent
