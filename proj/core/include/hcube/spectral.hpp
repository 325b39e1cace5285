#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hcube/types.hpp"

namespace hcube {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// DFT convention used throughout:
//   forward  F_{jk} = exp(-2 pi i jk / n)   (unnormalized)
//   W = O = F / sqrt(n),  U = F^* / sqrt(n) = W^*
// so that circ_convolve(x, g) = sqrt(n) U diag(W x) O g.
//
// Precomputed radix-2 transform for one power-of-two length. Immutable after
// construction; forward/inverse may be called concurrently.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  // In place, unnormalized.
  void forward(std::span<Complex> data) const;
  // In place, scaled by 1/n so that inverse(forward(x)) == x.
  void inverse(std::span<Complex> data) const;

  // Number of doubles held by the plan (tables only).
  std::size_t footprint() const;

 private:
  template <bool Inverse>
  void transform(std::span<Complex> data) const;

  std::size_t n_;
  std::vector<std::uint32_t> bit_reverse_;
  // Stage with half-width h stores exp(-2 pi i j / 2h), j < h, at offset h - 1.
  std::vector<Complex> twiddles_;
};

// Forward DFT. Power-of-two lengths use the radix-2 path, anything else the
// O(n^2) definition. Throws InvalidInput on empty input.
ComplexVector fft(std::span<const Complex> x);
ComplexVector inverse_fft(std::span<const Complex> x);

// Direct evaluation of the DFT sum, any n >= 1.
ComplexVector naive_dft(std::span<const Complex> x, bool inverse = false);

// z_j = sum_k x_k y_{(j-k) mod n}, computed through the DFT.
RealVector circ_convolve(std::span<const double> x, std::span<const double> y);

// O(n^2) double loop for the same sum; test oracle and small-n fallback.
RealVector circ_convolve_direct(std::span<const double> x, std::span<const double> y);

// Dense normalized DFT matrix W (== O). U is W.adjoint().
Eigen::MatrixXcd normalized_dft_matrix(std::size_t n);

struct DiagonalizationResidual {
  double value = 0.0;
  // Set when ||x (*) g|| == 0 and `value` is the absolute residual.
  bool absolute = false;
};

// || x (*) g - sqrt(n) U D_{Wx} O g ||_2 / || x (*) g ||_2, with the left side
// from the direct circular sum and the right side from explicit O(n^2)
// applications of the normalized DFT matrices. Requires power-of-two n.
DiagonalizationResidual diagonalization_residual(std::span<const double> x,
                                                 std::span<const double> g);

}  // namespace hcube
