#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hcube/operators.hpp"
#include "hcube/point_set.hpp"
#include "hcube/quantize.hpp"
#include "hcube/verify.hpp"

namespace hcube {

enum class GeneratorKind { kSphere, kSparse, kSubspace, kClusters, kGrid };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kSphere;
  std::size_t count = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t sparsity = 0;      // sparse: nonzeros per point
  std::size_t subspace_dim = 0;  // subspace: dimension d
  std::size_t clusters = 0;      // clusters: number of centers
  double spread = 0.1;           // clusters: per-point noise scale
};

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

// Deterministic in (spec, seed).
//   sphere:   unit vectors, uniform on S^{n-1}
//   sparse:   unit vectors with exactly `sparsity` nonzeros
//   subspace: unit vectors of a random d-dimensional subspace
//   clusters: unit-norm centers plus N(0, spread^2/n) noise, round-robin
//   grid:     regular grid in [0,1]^2 on the first two coordinates
PointSet generate(const GeneratorSpec& spec);

// "HCPS" u32 version, u32 n, u32 count, then count*n little-endian
// IEEE-754 doubles, row-major. A ".csv" extension selects CSV instead
// (header x0,...,x{n-1}).
inline constexpr std::uint32_t kPointsVersion = 1;
void write_points(const std::filesystem::path& path, const PointSet& points);
PointSet read_points(const std::filesystem::path& path);

// "HCBC" u32 version, u32 m, u32 count, then each code as ceil(m/8)
// bytes, bits LSB-first.
inline constexpr std::uint32_t kCodesVersion = 1;
void write_codes(const std::filesystem::path& path, const std::vector<BinaryCode>& codes,
                 std::size_t m);
std::vector<BinaryCode> read_codes(const std::filesystem::path& path);

// "HCOP" u32 version, u32 n, u32 m, u8 mode, u64 seed. The operator is
// re-derived from the seed on load, so only operators with the default
// index set (fixed {0..m-1} or selectors) can be written.
inline constexpr std::uint32_t kOperatorVersion = 1;
void write_operator(const std::filesystem::path& path, const DoubleCirculantOperator& op);
DoubleCirculantOperator read_operator(const std::filesystem::path& path);

std::string plan_to_json(const EmbeddingPlan& plan, int indent = 2);
EmbeddingPlan plan_from_json(const std::string& text);
void write_plan(const std::filesystem::path& path, const EmbeddingPlan& plan);
EmbeddingPlan read_plan(const std::filesystem::path& path);

void write_report(const std::filesystem::path& path, const VerificationReport& report);
VerificationReport read_report(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace hcube
