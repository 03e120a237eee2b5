#include <doctest.h>

#include <cmath>
#include <random>

#include "cmaxent/errors.hpp"
#include "cmaxent/spectral.hpp"
#include "oracles.hpp"

using namespace cmaxent;

namespace {

FourierSeries cos_mode(int n) {
  std::vector<cplx> c(n + 1);
  c[n] = 0.5;
  return FourierSeries::from_nonnegative(c);
}

FourierSeries sin_mode(int n) {
  std::vector<cplx> c(n + 1);
  c[n] = cplx(0.0, -0.5);
  return FourierSeries::from_nonnegative(c);
}

}  // namespace

TEST_CASE("grid rejects empty and odd sizes") {
  CHECK_THROWS_AS(PeriodicGrid(0), InputShapeError);
  CHECK_THROWS_AS(PeriodicGrid(7), InputShapeError);
  const PeriodicGrid g(8);
  CHECK(g.node(0) == doctest::Approx(-kPi));
  CHECK(g.node(4) == doctest::Approx(0.0));
  CHECK(g.spacing() == doctest::Approx(kPi / 4));
}

TEST_CASE("two-sided construction enforces conjugate symmetry") {
  const std::vector<cplx> ok{cplx(1, 2), 3.0, cplx(1, -2)};
  const auto s = FourierSeries::from_two_sided(ok);
  CHECK(s.bandwidth() == 1);
  CHECK(s.coefficient(-1) == cplx(1, 2));
  CHECK(s.coefficient(5) == cplx(0, 0));
  const std::vector<cplx> bad{cplx(1, 2), 3.0, cplx(1, 2)};
  CHECK_THROWS_AS(FourierSeries::from_two_sided(bad), InvalidSeriesError);
  const std::vector<cplx> even{1.0, 2.0};
  CHECK_THROWS_AS(FourierSeries::from_two_sided(even), InputShapeError);
}

TEST_CASE("analyze recovers trigonometric polynomials exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const int B = 12;
  std::vector<cplx> c(B + 1);
  c[0] = u(rng);
  for (int k = 1; k <= B; ++k) c[k] = cplx(u(rng), u(rng));
  const auto series = FourierSeries::from_nonnegative(c);
  const PeriodicGrid grid(64);
  std::vector<double> samples;
  for (double t : grid.nodes()) {
    double v = c[0].real();
    for (int k = 1; k <= B; ++k) v += 2.0 * (c[k] * std::polar(1.0, k * t)).real();
    samples.push_back(v);
  }
  const auto fit = analyze(grid, samples);
  for (int k = 0; k <= B; ++k) CHECK(std::abs(fit.coefficient(k) - c[k]) < 1e-14);
  for (int k = B + 1; k <= 32; ++k) CHECK(std::abs(fit.coefficient(k)) < 1e-14);

  const auto back = synthesize(series, grid);
  for (std::size_t j = 0; j < samples.size(); ++j) CHECK(back[j] == doctest::Approx(samples[j]).epsilon(1e-13));
  CHECK(evaluate(series, 0.3) == doctest::Approx(evaluate(fit, 0.3 + 2 * kPi)).epsilon(1e-12));
}

TEST_CASE("Nyquist mode is split between +-N/2") {
  const PeriodicGrid grid(8);
  std::vector<double> samples;
  for (double t : grid.nodes()) samples.push_back(std::cos(4 * t));
  const auto fit = analyze(grid, samples);
  CHECK(fit.bandwidth() == 4);
  CHECK(fit.coefficient(4).real() == doctest::Approx(0.5));
  CHECK(fit.coefficient(-4).real() == doctest::Approx(0.5));
  const auto back = synthesize(fit, grid);
  for (std::size_t j = 0; j < 8; ++j) CHECK(back[j] == doctest::Approx(samples[j]));
}

TEST_CASE("synthesize aliases high modes onto the grid") {
  const PeriodicGrid grid(16);
  const auto values = synthesize(cos_mode(19), grid);
  for (std::size_t j = 0; j < grid.size(); ++j)
    CHECK(values[j] == doctest::Approx(std::cos(19 * grid.node(j))).epsilon(1e-12));
}

TEST_CASE("analyze checks sample count") {
  const PeriodicGrid grid(8);
  const std::vector<double> samples(6, 1.0);
  CHECK_THROWS_AS(analyze(grid, samples), InputShapeError);
}

TEST_CASE("hilbert multiplier on pure modes") {
  for (int n : {1, 7, 50}) {
    const auto hc = hilbert(cos_mode(n));
    const auto hs = hilbert(sin_mode(n));
    CHECK(hc.coefficient(n) == sin_mode(n).coefficient(n));
    CHECK(hs.coefficient(n) == -cos_mode(n).coefficient(n));
  }
  CHECK(hilbert(FourierSeries::constant(3.0)).coefficient(0) == cplx(0, 0));
}

TEST_CASE("hilbert of the Poisson kernel is its conjugate kernel") {
  // (1 - r^2)/(1 - 2r cos t + r^2) has c_k = r^|k|; its conjugate is
  // 2r sin t / (1 - 2r cos t + r^2).
  const double r = 0.6;
  std::vector<cplx> c(120);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::pow(r, static_cast<double>(k));
  const auto h = hilbert(FourierSeries::from_nonnegative(c));
  for (double t : {-2.0, -0.5, 0.1, 1.3, 3.0})
    CHECK(evaluate(h, t) == doctest::Approx(2 * r * std::sin(t) / (1 - 2 * r * std::cos(t) + r * r)).epsilon(1e-12));
}

TEST_CASE("quadrature mean") {
  CHECK(quadrature_mean(FourierSeries::constant(2.5)) == 2.5);
  const PeriodicGrid grid(32);
  std::vector<double> samples;
  for (double t : grid.nodes()) samples.push_back(1.0 + std::cos(3 * t));
  CHECK(quadrature_mean(samples) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("adaptive fit of exp(cos) matches Bessel coefficients") {
  const auto fit = adaptive_fit([](double t) { return std::exp(std::cos(t)); });
  CHECK(fit.tail_ratio <= 1e-13);
  CHECK(fit.grid_size <= 64);
  for (int k = 0; k <= 15; ++k)
    CHECK(std::abs(fit.series.coefficient(k) - oracle::bessel_i(k, 1.0)) < 1e-15);
}

TEST_CASE("adaptive fit gives up on a discontinuity") {
  AdaptiveFitOptions opts;
  opts.max_size = 1024;
  const auto step = [](double t) { return t < 0.5 ? 1.0 : 0.0; };
  try {
    adaptive_fit(step, opts);
    FAIL("expected NonResolvableError");
  } catch (const NonResolvableError& e) {
    CHECK(e.tail_ratio() > 1e-13);
  }
}

TEST_CASE("tail ratio and truncation") {
  std::vector<cplx> c(101);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::pow(0.5, static_cast<double>(k));
  CHECK(tail_ratio(c) == doctest::Approx(std::pow(0.5, 96)));
  const std::vector<cplx> zero(5);
  CHECK(tail_ratio(zero) == 0.0);

  const auto dense = FourierSeries::from_nonnegative(c);
  const auto t = tail_truncate(dense);
  CHECK(t.resolved);
  // N = 64 keeps k <= 32, whose tail 0.5^31 is too large; N = 128 passes.
  CHECK(t.grid_size == 128);
  CHECK(t.series.bandwidth() == 64);
  CHECK(t.coefficient_count() == 129);

  const auto strict = tail_truncate(dense, 1e-40);
  CHECK_FALSE(strict.resolved);
  CHECK(strict.series.bandwidth() == dense.bandwidth());
}

TEST_CASE("arithmetic and truncation") {
  const auto a = cos_mode(2), b = FourierSeries::constant(1.0);
  const auto s = a + 2.0 * b;
  CHECK(s.coefficient(0) == cplx(2, 0));
  CHECK(s.coefficient(2) == cplx(0.5, 0));
  CHECK(s.truncated(1).bandwidth() == 1);
  CHECK(s.coefficient_count() == 5);
}
