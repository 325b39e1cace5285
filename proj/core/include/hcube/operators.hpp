#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hcube/rng.hpp"
#include "hcube/spectral.hpp"
#include "hcube/types.hpp"

namespace hcube {

enum class IndexMode : std::uint8_t { kFixed = 0, kSelectors = 1 };

// Rademacher vector: every entry exactly +1 or -1.
class SignVector {
 public:
  explicit SignVector(std::vector<double> entries);
  static SignVector random(std::size_t n, Rng& rng);

  std::size_t size() const { return entries_.size(); }
  std::span<const double> entries() const { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<double> entries_;
};

// Vector of i.i.d. standard normals (finite entries).
class GaussianVector {
 public:
  explicit GaussianVector(std::vector<double> entries);
  static GaussianVector random(std::size_t n, Rng& rng);

  std::size_t size() const { return entries_.size(); }
  std::span<const double> entries() const { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<double> entries_;
};

// The retained output coordinates I, either a fixed list of m distinct
// indices or the realization of n independent Bernoulli(m/n) selectors.
class IndexSet {
 public:
  // {0, ..., m-1}.
  static IndexSet fixed(std::size_t n, std::size_t m);
  // Arbitrary distinct indices in [0, n); stored sorted.
  static IndexSet fixed(std::size_t n, std::vector<std::size_t> indices);
  static IndexSet selectors(std::size_t n, std::size_t m, Rng& rng);

  IndexMode mode() const { return mode_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t nominal_size() const { return nominal_; }
  double rate() const { return static_cast<double>(nominal_) / static_cast<double>(n_); }
  std::size_t size() const { return indices_.size(); }
  std::span<const std::size_t> indices() const { return indices_; }
  // True for the fixed set {0, ..., m-1}.
  bool is_default_fixed() const;

  bool operator==(const IndexSet&) const = default;

 private:
  IndexSet(IndexMode mode, std::size_t n, std::size_t nominal, std::vector<std::size_t> indices)
      : mode_(mode), n_(n), nominal_(nominal), indices_(std::move(indices)) {}

  IndexMode mode_;
  std::size_t n_;
  std::size_t nominal_;
  std::vector<std::size_t> indices_;
};

// A = (1/sqrt(n)) R_I Gamma_G D_{eps''} Gamma_{eps'} D_eps, applied in
// O(n log n) through cached spectra of G and eps'. Immutable once built;
// all apply functions are const and reentrant.
class DoubleCirculantOperator {
 public:
  // All randomness is derived from `seed` through independent substreams
  // for G, eps, eps', eps'' and the selectors. Fixed mode keeps {0..m-1}.
  static DoubleCirculantOperator build(std::size_t n, std::size_t m, IndexMode mode,
                                       std::uint64_t seed);
  // Fixed mode with a caller-chosen index list.
  static DoubleCirculantOperator build(std::size_t n, std::vector<std::size_t> fixed_indices,
                                       std::uint64_t seed);

  std::size_t input_dim() const { return n_; }
  // |I|: the realized number of rows.
  std::size_t output_dim() const { return index_set_.size(); }
  std::size_t nominal_rows() const { return m_; }
  // Row count used by the B and C normalizations: nominal m in fixed
  // mode, realized |I| with selectors.
  std::size_t scaling_rows() const;
  IndexMode mode() const { return index_set_.mode(); }
  std::uint64_t seed() const { return seed_; }

  const IndexSet& index_set() const { return index_set_; }
  const GaussianVector& g() const { return g_; }
  const SignVector& eps() const { return eps_; }
  const SignVector& eps_prime() const { return eps_p_; }
  const SignVector& eps_double_prime() const { return eps_pp_; }
  std::span<const Complex> spectrum_g() const { return spec_g_; }
  std::span<const Complex> spectrum_eps_prime() const { return spec_eps_p_; }

  // A x.
  RealVector apply(std::span<const double> x) const;
  void apply(std::span<const double> x, std::span<double> out) const;

  // B y = (1/sqrt(m n)) R_I (G (*) (eps'' o (eps' (*) y))). B omits D_eps:
  // A x == sqrt(m) B (eps o x).
  RealVector apply_B(std::span<const double> y) const;
  void apply_B(std::span<const double> y, std::span<double> out) const;

  // C x = (1/m) sqrt(pi/2) A x.
  RealVector apply_C(std::span<const double> x) const;
  void apply_C(std::span<const double> x, std::span<double> out) const;

  // Dense |I| x n matrix of A computed directly from g and the sign vectors
  // in O(|I| n^2), independent of the FFT path. Refused for
  // n > kMaterializeLimit unless allow_large is set.
  static constexpr std::size_t kMaterializeLimit = 4096;
  Eigen::MatrixXd materialize(bool allow_large = false) const;

  // Number of scalars held by the operator, including caches.
  std::size_t state_size() const;

  // Same construction inputs imply identical random components.
  bool operator==(const DoubleCirculantOperator& other) const;

 private:
  DoubleCirculantOperator(std::size_t n, std::size_t m, IndexSet index_set, std::uint64_t seed);

  // Writes R_I (G (*) (eps'' o (eps' (*) v))) scaled by `scale`.
  void pipeline(std::span<const double> v, bool flip_eps, double scale,
                std::span<double> out) const;

  std::size_t n_;
  std::size_t m_;
  std::uint64_t seed_;
  IndexSet index_set_;
  GaussianVector g_;
  SignVector eps_;
  SignVector eps_p_;
  SignVector eps_pp_;
  FftPlan plan_;
  ComplexVector spec_g_;
  ComplexVector spec_eps_p_;
};

// Dense m x n matrix with i.i.d. standard normal entries, drawn row by row.
class GaussianDenseOperator {
 public:
  static GaussianDenseOperator build(std::size_t m, std::size_t n, std::uint64_t seed);

  std::size_t rows() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix_.cols()); }
  std::uint64_t seed() const { return seed_; }
  const RowMatrix& matrix() const { return matrix_; }

  RealVector apply(std::span<const double> x) const;
  void apply(std::span<const double> x, std::span<double> out) const;

 private:
  GaussianDenseOperator(RowMatrix matrix, std::uint64_t seed)
      : matrix_(std::move(matrix)), seed_(seed) {}

  RowMatrix matrix_;
  std::uint64_t seed_;
};

// Type-erased linear map R^in -> R^out used by the embedding and
// verification code. Maps built from an operator reference it; the operator
// must outlive the map.
class LinearMap {
 public:
  using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;
  // Maps every row of the input to the corresponding row of the result.
  using BatchFn = std::function<RowMatrix(const RowMatrix&)>;

  LinearMap(std::size_t input_dim, std::size_t output_dim, ApplyFn apply, BatchFn batch = {});

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }

  void apply(std::span<const double> x, std::span<double> out) const;
  RealVector operator()(std::span<const double> x) const;
  RowMatrix apply_rows(const RowMatrix& rows) const;

  LinearMap scaled(double factor) const;

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  ApplyFn apply_;
  BatchFn batch_;
};

LinearMap map_A(const DoubleCirculantOperator& op);
LinearMap map_B(const DoubleCirculantOperator& op);
LinearMap map_C(const DoubleCirculantOperator& op);
LinearMap map_of(const GaussianDenseOperator& op);
// Owns a copy of the matrix.
LinearMap dense_map(Eigen::MatrixXd matrix);
LinearMap identity_map(std::size_t n);

}  // namespace hcube
