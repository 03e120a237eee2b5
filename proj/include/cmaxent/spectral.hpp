#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cmaxent {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Equispaced nodes theta_j = -pi + 2*pi*j/N on [-pi, pi), N even.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(size_); }
  double node(std::size_t j) const noexcept {
    return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(size_);
  }
  std::vector<double> nodes() const;

 private:
  std::size_t size_;
};

/// Real periodic function f(theta) = sum_k c_k e^{ik theta} with c_{-k} = conj(c_k).
///
/// Only c_0..c_B are stored; negative indices are implied by conjugation, so
/// every constructed value is exactly real-valued. c_0 is stored with zero
/// imaginary part.
class FourierSeries {
 public:
  FourierSeries() : half_(1, cplx{}) {}

  /// Two-sided coefficients c_{-B}..c_B (odd length). Throws InvalidSeriesError if
  /// the input departs from conjugate symmetry by more than 1e-10.
  static FourierSeries from_two_sided(std::span<const cplx> coeffs);
  /// Coefficients c_0..c_B. Throws InvalidSeriesError if Im c_0 exceeds 1e-10.
  static FourierSeries from_nonnegative(std::span<const cplx> coeffs);
  static FourierSeries constant(double value);

  int bandwidth() const noexcept { return static_cast<int>(half_.size()) - 1; }
  /// Number of stored two-sided coefficients, 2B + 1.
  std::size_t coefficient_count() const noexcept { return 2 * half_.size() - 1; }
  /// c_k for any integer k; zero outside the bandwidth.
  cplx coefficient(int k) const noexcept;
  std::span<const cplx> nonnegative() const noexcept { return half_; }
  std::vector<cplx> two_sided() const;

  /// Copy keeping only |k| <= bandwidth.
  FourierSeries truncated(int bandwidth) const;

  friend FourierSeries operator+(const FourierSeries& a, const FourierSeries& b);
  friend FourierSeries operator*(double s, const FourierSeries& a);

 private:
  explicit FourierSeries(std::vector<cplx> half) : half_(std::move(half)) {}
  std::vector<cplx> half_;
};

/// Coefficients of the trigonometric interpolant of samples on `grid`.
/// Bandwidth is N/2; the Nyquist term is split evenly between k = +-N/2.
FourierSeries analyze(const PeriodicGrid& grid, std::span<const double> samples);

/// Values of `series` at the grid nodes. Coefficients beyond N/2 alias exactly
/// onto the grid.
std::vector<double> synthesize(const FourierSeries& series, const PeriodicGrid& grid);

/// Pointwise value; theta is reduced modulo 2*pi.
double evaluate(const FourierSeries& series, double theta);

/// Conjugate-function multiplier c_k -> -i sgn(k) c_k.
FourierSeries hilbert(const FourierSeries& series);

/// (1/2pi) * integral of f over one period.
double quadrature_mean(const FourierSeries& series);
double quadrature_mean(std::span<const double> samples);

/// Tail ratio: max |c_k| over the top 5% highest non-negative frequencies
/// divided by max |c_k| over all of them (0 for the zero series).
double tail_ratio(std::span<const cplx> nonnegative);

struct AdaptiveFitOptions {
  double tail_tol = 1e-13;
  std::size_t initial_size = 32;
  std::size_t max_size = 65536;
};

struct AdaptiveFit {
  FourierSeries series;
  std::size_t grid_size = 0;
  double tail_ratio = 0.0;
  std::size_t coefficient_count() const noexcept { return series.coefficient_count(); }
};

using PointwiseFunction = std::function<double(double)>;
/// Produces samples of a function on a given grid.
using GridSampler = std::function<std::vector<double>(const PeriodicGrid&)>;

/// Doubles the grid from `initial_size` until the tail ratio of the fitted
/// coefficients drops below tail_tol. Throws NonResolvableError past max_size.
AdaptiveFit adaptive_fit(const PointwiseFunction& f, const AdaptiveFitOptions& opts = {});
AdaptiveFit adaptive_fit(const GridSampler& sampler, const AdaptiveFitOptions& opts = {});

struct TailFit {
  FourierSeries series;
  std::size_t grid_size = 0;
  double tail_ratio = 0.0;
  bool resolved = false;
  std::size_t coefficient_count() const noexcept { return series.coefficient_count(); }
};

/// Applies the adaptive_fit stopping rule to the leading coefficients of an
/// already-computed dense series: the first N in initial_size, 2*initial_size, ...
/// whose leading N/2 + 1 coefficients pass the rule. When none passes the full
/// series is returned with resolved = false.
TailFit tail_truncate(const FourierSeries& dense, double tail_tol = 1e-13,
                      std::size_t initial_size = 32);

}  // namespace cmaxent
