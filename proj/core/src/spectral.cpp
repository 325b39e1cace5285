#include "hcube/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hcube/error.hpp"

namespace hcube {
namespace {

void require_nonempty(std::size_t n) {
  if (n == 0) throw InvalidInput("transform length must be at least 1");
}

// exp(-2 pi i t / n) for t in [0, n).
std::vector<Complex> roots_of_unity(std::size_t n) {
  std::vector<Complex> roots(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
    roots[t] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) {
    throw InvalidInput("FftPlan requires a power-of-two length, got " + std::to_string(n));
  }
  bit_reverse_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bit_reverse_[i] = static_cast<std::uint32_t>(r);
  }
  twiddles_.resize(n > 1 ? n - 1 : 0);
  for (std::size_t half = 1; half < n; half *= 2) {
    for (std::size_t j = 0; j < half; ++j) {
      const double angle = -std::numbers::pi * static_cast<double>(j) / static_cast<double>(half);
      twiddles_[half - 1 + j] = {std::cos(angle), std::sin(angle)};
    }
  }
}

std::size_t FftPlan::footprint() const {
  return 2 * twiddles_.size() + bit_reverse_.size() / 2;
}

template <bool Inverse>
void FftPlan::transform(std::span<Complex> data) const {
  if (data.size() != n_) {
    throw InvalidInput("FftPlan of length " + std::to_string(n_) + " applied to length " +
                       std::to_string(data.size()));
  }
  Complex* a = data.data();
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t r = bit_reverse_[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::size_t half = 1; half < n_; half *= 2) {
    const Complex* w = twiddles_.data() + (half - 1);
    for (std::size_t start = 0; start < n_; start += 2 * half) {
      Complex* lo = a + start;
      Complex* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const double wr = w[j].real();
        const double wi = Inverse ? -w[j].imag() : w[j].imag();
        const double br = hi[j].real();
        const double bi = hi[j].imag();
        const double vr = br * wr - bi * wi;
        const double vi = br * wi + bi * wr;
        const double ur = lo[j].real();
        const double ui = lo[j].imag();
        lo[j] = {ur + vr, ui + vi};
        hi[j] = {ur - vr, ui - vi};
      }
    }
  }
  if constexpr (Inverse) {
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) a[i] *= scale;
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform<false>(data); }
void FftPlan::inverse(std::span<Complex> data) const { transform<true>(data); }

ComplexVector naive_dft(std::span<const Complex> x, bool inverse) {
  const std::size_t n = x.size();
  require_nonempty(n);
  const auto roots = roots_of_unity(n);
  ComplexVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const Complex w = roots[(j * k) % n];
      acc += x[k] * (inverse ? std::conj(w) : w);
    }
    out[j] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

ComplexVector fft(std::span<const Complex> x) {
  require_nonempty(x.size());
  if (!is_power_of_two(x.size())) return naive_dft(x, false);
  ComplexVector out(x.begin(), x.end());
  FftPlan(x.size()).forward(out);
  return out;
}

ComplexVector inverse_fft(std::span<const Complex> x) {
  require_nonempty(x.size());
  if (!is_power_of_two(x.size())) return naive_dft(x, true);
  ComplexVector out(x.begin(), x.end());
  FftPlan(x.size()).inverse(out);
  return out;
}

RealVector circ_convolve(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvalidInput("circ_convolve length mismatch: " + std::to_string(x.size()) + " vs " +
                       std::to_string(y.size()));
  }
  require_nonempty(x.size());
  const ComplexVector xc(x.begin(), x.end());
  const ComplexVector yc(y.begin(), y.end());
  ComplexVector fx = fft(xc);
  const ComplexVector fy = fft(yc);
  for (std::size_t i = 0; i < fx.size(); ++i) fx[i] *= fy[i];
  const ComplexVector z = inverse_fft(fx);
  RealVector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

RealVector circ_convolve_direct(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("circ_convolve_direct length mismatch");
  const std::size_t n = x.size();
  require_nonempty(n);
  RealVector z(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    // k <= j reads y[j - k]; k > j wraps to y[n + j - k].
    double acc = 0.0;
    for (std::size_t k = 0; k <= j; ++k) acc += x[k] * y[j - k];
    for (std::size_t k = j + 1; k < n; ++k) acc += x[k] * y[n + j - k];
    z[j] = acc;
  }
  return z;
}

Eigen::MatrixXcd normalized_dft_matrix(std::size_t n) {
  require_nonempty(n);
  const auto roots = roots_of_unity(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd w(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = roots[(j * k) % n] * scale;
    }
  }
  return w;
}

DiagonalizationResidual diagonalization_residual(std::span<const double> x,
                                                 std::span<const double> g) {
  if (x.size() != g.size()) throw InvalidInput("diagonalization_residual length mismatch");
  const std::size_t n = x.size();
  if (!is_power_of_two(n)) {
    throw InvalidInput("diagonalization_residual requires power-of-two n, got " + std::to_string(n));
  }
  const RealVector lhs = circ_convolve_direct(x, g);

  // Explicit matrix-vector products with W, O and U = W^*; entries are
  // read from a root table, never through the FFT.
  const auto roots = roots_of_unity(n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  auto apply_w = [&](std::span<const Complex> v, bool adjoint) {
    ComplexVector out(n);
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) {
        const Complex w = roots[(j * k) % n];
        acc += (adjoint ? std::conj(w) : w) * v[k];
      }
      out[j] = acc * inv_sqrt_n;
    }
    return out;
  };
  const ComplexVector xc(x.begin(), x.end());
  const ComplexVector gc(g.begin(), g.end());
  const ComplexVector wx = apply_w(xc, false);
  ComplexVector og = apply_w(gc, false);
  for (std::size_t i = 0; i < n; ++i) og[i] *= wx[i];
  ComplexVector rhs = apply_w(og, true);
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  ComplexVector diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = Complex(lhs[i], 0.0) - sqrt_n * rhs[i];
  const ComplexVector lhs_c(lhs.begin(), lhs.end());
  const double denom = norm2(lhs_c);
  const double num = norm2(diff);
  if (denom == 0.0) return {num, true};
  return {num / denom, false};
}

}  // namespace hcube
