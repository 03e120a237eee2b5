#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cmaxent::detail {

/// F_k = sum_j x_j e^{-2 pi i jk/N}, k = 0..N/2.
std::vector<std::complex<double>> forward_real(std::span<const double> samples);

/// x_j = sum_{k=0}^{N-1} G_k e^{2 pi i jk/N} for Hermitian G given by its first N/2+1 bins.
std::vector<double> inverse_real(std::span<const std::complex<double>> bins, std::size_t n);

}  // namespace cmaxent::detail
