#include "hcube/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "hcube/error.hpp"

namespace hcube {
namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InvalidInput(std::string(what) + ": expected length " + std::to_string(want) +
                       ", got " + std::to_string(got));
  }
}

}  // namespace

SignVector::SignVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double v : entries_) {
    if (v != 1.0 && v != -1.0) throw InvalidInput("sign vector entries must be +1 or -1");
  }
}

SignVector SignVector::random(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& e : v) e = rng.sign();
  return SignVector(std::move(v));
}

GaussianVector::GaussianVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double v : entries_) {
    if (!std::isfinite(v)) throw InvalidInput("gaussian vector entries must be finite");
  }
}

GaussianVector GaussianVector::random(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& e : v) e = rng.normal();
  return GaussianVector(std::move(v));
}

IndexSet IndexSet::fixed(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) {
    throw InvalidInput("index set needs 1 <= m <= n, got m=" + std::to_string(m) +
                       " n=" + std::to_string(n));
  }
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  return IndexSet(IndexMode::kFixed, n, m, std::move(idx));
}

IndexSet IndexSet::fixed(std::size_t n, std::vector<std::size_t> indices) {
  if (indices.empty() || indices.size() > n) {
    throw InvalidInput("fixed index list must hold between 1 and n indices");
  }
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw InvalidInput("fixed index list contains duplicates");
  }
  if (indices.back() >= n) {
    throw InvalidInput("fixed index " + std::to_string(indices.back()) + " out of range [0," +
                       std::to_string(n) + ")");
  }
  const std::size_t m = indices.size();
  return IndexSet(IndexMode::kFixed, n, m, std::move(indices));
}

IndexSet IndexSet::selectors(std::size_t n, std::size_t m, Rng& rng) {
  if (m == 0 || m > n) {
    throw InvalidInput("selector rate needs 1 <= m <= n, got m=" + std::to_string(m) +
                       " n=" + std::to_string(n));
  }
  const double rate = static_cast<double>(m) / static_cast<double>(n);
  std::vector<std::size_t> idx;
  idx.reserve(m + m / 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(rate)) idx.push_back(i);
  }
  return IndexSet(IndexMode::kSelectors, n, m, std::move(idx));
}

bool IndexSet::is_default_fixed() const {
  if (mode_ != IndexMode::kFixed || indices_.size() != nominal_) return false;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] != i) return false;
  }
  return true;
}

DoubleCirculantOperator::DoubleCirculantOperator(std::size_t n, std::size_t m,
                                                 IndexSet index_set, std::uint64_t seed)
    : n_(n),
      m_(m),
      seed_(seed),
      index_set_(std::move(index_set)),
      g_([&] {
        Rng rng(derive_seed(seed, stream::kGaussian));
        return GaussianVector::random(n, rng);
      }()),
      eps_([&] {
        Rng rng(derive_seed(seed, stream::kEps));
        return SignVector::random(n, rng);
      }()),
      eps_p_([&] {
        Rng rng(derive_seed(seed, stream::kEpsPrime));
        return SignVector::random(n, rng);
      }()),
      eps_pp_([&] {
        Rng rng(derive_seed(seed, stream::kEpsDoublePrime));
        return SignVector::random(n, rng);
      }()),
      plan_(n) {
  spec_g_.assign(g_.entries().begin(), g_.entries().end());
  plan_.forward(spec_g_);
  spec_eps_p_.assign(eps_p_.entries().begin(), eps_p_.entries().end());
  plan_.forward(spec_eps_p_);
}

DoubleCirculantOperator DoubleCirculantOperator::build(std::size_t n, std::size_t m,
                                                       IndexMode mode, std::uint64_t seed) {
  if (!is_power_of_two(n)) {
    throw InvalidInput("double circulant operator needs power-of-two n, got " + std::to_string(n));
  }
  if (m == 0 || m > n) {
    throw InvalidInput("double circulant operator needs 1 <= m <= n, got m=" + std::to_string(m) +
                       " n=" + std::to_string(n));
  }
  if (mode == IndexMode::kFixed) {
    return DoubleCirculantOperator(n, m, IndexSet::fixed(n, m), seed);
  }
  Rng rng(derive_seed(seed, stream::kIndexSet));
  return DoubleCirculantOperator(n, m, IndexSet::selectors(n, m, rng), seed);
}

DoubleCirculantOperator DoubleCirculantOperator::build(std::size_t n,
                                                       std::vector<std::size_t> fixed_indices,
                                                       std::uint64_t seed) {
  if (!is_power_of_two(n)) {
    throw InvalidInput("double circulant operator needs power-of-two n, got " + std::to_string(n));
  }
  auto index_set = IndexSet::fixed(n, std::move(fixed_indices));
  const std::size_t m = index_set.size();
  return DoubleCirculantOperator(n, m, std::move(index_set), seed);
}

std::size_t DoubleCirculantOperator::scaling_rows() const {
  return mode() == IndexMode::kSelectors ? output_dim() : m_;
}

void DoubleCirculantOperator::pipeline(std::span<const double> v, bool flip_eps, double scale,
                                       std::span<double> out) const {
  ComplexVector buf(n_);
  const auto eps = eps_.entries();
  for (std::size_t i = 0; i < n_; ++i) buf[i] = {flip_eps ? eps[i] * v[i] : v[i], 0.0};

  plan_.forward(buf);
  for (std::size_t i = 0; i < n_; ++i) buf[i] *= spec_eps_p_[i];
  plan_.inverse(buf);

  // The convolution of real vectors is real; drop the roundoff imaginary part.
  const auto epp = eps_pp_.entries();
  for (std::size_t i = 0; i < n_; ++i) buf[i] = {epp[i] * buf[i].real(), 0.0};

  plan_.forward(buf);
  for (std::size_t i = 0; i < n_; ++i) buf[i] *= spec_g_[i];
  plan_.inverse(buf);

  const auto idx = index_set_.indices();
  for (std::size_t r = 0; r < idx.size(); ++r) out[r] = scale * buf[idx[r]].real();
}

void DoubleCirculantOperator::apply(std::span<const double> x, std::span<double> out) const {
  require_length(x.size(), n_, "apply input");
  require_length(out.size(), output_dim(), "apply output");
  pipeline(x, true, 1.0 / std::sqrt(static_cast<double>(n_)), out);
}

RealVector DoubleCirculantOperator::apply(std::span<const double> x) const {
  RealVector out(output_dim());
  apply(x, out);
  return out;
}

void DoubleCirculantOperator::apply_B(std::span<const double> y, std::span<double> out) const {
  require_length(y.size(), n_, "apply_B input");
  require_length(out.size(), output_dim(), "apply_B output");
  const double rows = static_cast<double>(scaling_rows());
  if (rows == 0.0) throw InvalidInput("apply_B on an operator with no retained rows");
  pipeline(y, false, 1.0 / std::sqrt(rows * static_cast<double>(n_)), out);
}

RealVector DoubleCirculantOperator::apply_B(std::span<const double> y) const {
  RealVector out(output_dim());
  apply_B(y, out);
  return out;
}

void DoubleCirculantOperator::apply_C(std::span<const double> x, std::span<double> out) const {
  require_length(x.size(), n_, "apply_C input");
  require_length(out.size(), output_dim(), "apply_C output");
  const double rows = static_cast<double>(scaling_rows());
  if (rows == 0.0) throw InvalidInput("apply_C on an operator with no retained rows");
  const double scale =
      std::sqrt(std::numbers::pi / 2.0) / rows / std::sqrt(static_cast<double>(n_));
  pipeline(x, true, scale, out);
}

RealVector DoubleCirculantOperator::apply_C(std::span<const double> x) const {
  RealVector out(output_dim());
  apply_C(x, out);
  return out;
}

Eigen::MatrixXd DoubleCirculantOperator::materialize(bool allow_large) const {
  if (n_ > kMaterializeLimit && !allow_large) {
    throw InvalidInput("refusing to materialize n=" + std::to_string(n_) + " > " +
                       std::to_string(kMaterializeLimit) + " without allow_large");
  }
  // Entry by entry from the factors, without the FFT path:
  // M[r][k] = n^{-1/2} eps_k sum_j g[(i - j) mod n] eps''_j eps'[(j - k) mod n], i = I[r].
  const auto g = g_.entries();
  const auto eps = eps_.entries();
  const auto ep = eps_p_.entries();
  const auto epp = eps_pp_.entries();
  const auto idx = index_set_.indices();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  Eigen::MatrixXd dense(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(n_));
  RealVector h(n_);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const std::size_t i = idx[r];
    for (std::size_t j = 0; j < n_; ++j) h[j] = g[(i + n_ - j) % n_] * epp[j];
    for (std::size_t k = 0; k < n_; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += h[j] * ep[(j + n_ - k) % n_];
      dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = scale * eps[k] * acc;
    }
  }
  return dense;
}

std::size_t DoubleCirculantOperator::state_size() const {
  return g_.size() + eps_.size() + eps_p_.size() + eps_pp_.size() + 2 * spec_g_.size() +
         2 * spec_eps_p_.size() + index_set_.size() + plan_.footprint();
}

bool DoubleCirculantOperator::operator==(const DoubleCirculantOperator& other) const {
  auto same = [](auto a, auto b) { return std::equal(a.begin(), a.end(), b.begin(), b.end()); };
  return n_ == other.n_ && m_ == other.m_ && seed_ == other.seed_ &&
         index_set_ == other.index_set_ && same(g_.entries(), other.g_.entries()) &&
         same(eps_.entries(), other.eps_.entries()) &&
         same(eps_p_.entries(), other.eps_p_.entries()) &&
         same(eps_pp_.entries(), other.eps_pp_.entries()) &&
         same(std::span<const Complex>(spec_g_), std::span<const Complex>(other.spec_g_)) &&
         same(std::span<const Complex>(spec_eps_p_), std::span<const Complex>(other.spec_eps_p_));
}

GaussianDenseOperator GaussianDenseOperator::build(std::size_t m, std::size_t n,
                                                   std::uint64_t seed) {
  if (m == 0 || n == 0) throw InvalidInput("gaussian operator needs m, n >= 1");
  RowMatrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  Rng rng(derive_seed(seed, stream::kDense));
  double* data = a.data();
  for (std::size_t i = 0; i < m * n; ++i) data[i] = rng.normal();
  return GaussianDenseOperator(std::move(a), seed);
}

void GaussianDenseOperator::apply(std::span<const double> x, std::span<double> out) const {
  require_length(x.size(), cols(), "gaussian apply input");
  require_length(out.size(), rows(), "gaussian apply output");
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::Map<Eigen::VectorXd> ov(out.data(), static_cast<Eigen::Index>(out.size()));
  ov.noalias() = matrix_ * xv;
}

RealVector GaussianDenseOperator::apply(std::span<const double> x) const {
  RealVector out(rows());
  apply(x, out);
  return out;
}

LinearMap::LinearMap(std::size_t input_dim, std::size_t output_dim, ApplyFn apply, BatchFn batch)
    : input_dim_(input_dim),
      output_dim_(output_dim),
      apply_(std::move(apply)),
      batch_(std::move(batch)) {}

void LinearMap::apply(std::span<const double> x, std::span<double> out) const {
  require_length(x.size(), input_dim_, "linear map input");
  require_length(out.size(), output_dim_, "linear map output");
  apply_(x, out);
}

RealVector LinearMap::operator()(std::span<const double> x) const {
  RealVector out(output_dim_);
  apply(x, out);
  return out;
}

RowMatrix LinearMap::apply_rows(const RowMatrix& rows) const {
  if (static_cast<std::size_t>(rows.cols()) != input_dim_) {
    throw InvalidInput("apply_rows: point dimension " + std::to_string(rows.cols()) +
                       " does not match map input " + std::to_string(input_dim_));
  }
  if (batch_) return batch_(rows);
  RowMatrix out(rows.rows(), static_cast<Eigen::Index>(output_dim_));
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    apply_(std::span<const double>(rows.row(r).data(), input_dim_),
           std::span<double>(out.row(r).data(), output_dim_));
  }
  return out;
}

LinearMap LinearMap::scaled(double factor) const {
  auto inner = apply_;
  BatchFn batch;
  if (batch_) {
    batch = [b = batch_, factor](const RowMatrix& rows) -> RowMatrix { return factor * b(rows); };
  }
  return LinearMap(
      input_dim_, output_dim_,
      [inner, factor](std::span<const double> x, std::span<double> out) {
        inner(x, out);
        for (auto& v : out) v *= factor;
      },
      std::move(batch));
}

LinearMap map_A(const DoubleCirculantOperator& op) {
  return LinearMap(op.input_dim(), op.output_dim(),
                   [&op](std::span<const double> x, std::span<double> out) { op.apply(x, out); });
}

LinearMap map_B(const DoubleCirculantOperator& op) {
  return LinearMap(op.input_dim(), op.output_dim(),
                   [&op](std::span<const double> y, std::span<double> out) { op.apply_B(y, out); });
}

LinearMap map_C(const DoubleCirculantOperator& op) {
  return LinearMap(op.input_dim(), op.output_dim(),
                   [&op](std::span<const double> x, std::span<double> out) { op.apply_C(x, out); });
}

LinearMap map_of(const GaussianDenseOperator& op) {
  return LinearMap(
      op.cols(), op.rows(),
      [&op](std::span<const double> x, std::span<double> out) { op.apply(x, out); },
      [&op](const RowMatrix& rows) -> RowMatrix { return rows * op.matrix().transpose(); });
}

LinearMap dense_map(Eigen::MatrixXd matrix) {
  auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
  const auto rows = static_cast<std::size_t>(shared->rows());
  const auto cols = static_cast<std::size_t>(shared->cols());
  return LinearMap(
      cols, rows,
      [shared](std::span<const double> x, std::span<double> out) {
        Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
        Eigen::Map<Eigen::VectorXd> ov(out.data(), static_cast<Eigen::Index>(out.size()));
        ov.noalias() = (*shared) * xv;
      },
      [shared](const RowMatrix& pts) -> RowMatrix { return pts * shared->transpose(); });
}

LinearMap identity_map(std::size_t n) {
  return LinearMap(n, n, [](std::span<const double> x, std::span<double> out) {
    std::copy(x.begin(), x.end(), out.begin());
  });
}

}  // namespace hcube
