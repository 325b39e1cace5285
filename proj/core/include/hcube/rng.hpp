#pragma once

#include <cstdint>
#include <random>

namespace hcube {

// Tags XORed into a user seed to obtain independent substreams for each
// random component of an operator or experiment.
namespace stream {
inline constexpr std::uint64_t kGaussian = 0x47617573736e0001ULL;
inline constexpr std::uint64_t kEps = 0x4570734570730002ULL;
inline constexpr std::uint64_t kEpsPrime = 0x4570735072690003ULL;
inline constexpr std::uint64_t kEpsDoublePrime = 0x4570734470720004ULL;
inline constexpr std::uint64_t kIndexSet = 0x496e646578530005ULL;
inline constexpr std::uint64_t kDither = 0x4469746865720006ULL;
inline constexpr std::uint64_t kDense = 0x44656e7365470007ULL;
inline constexpr std::uint64_t kPoints = 0x506f696e74730008ULL;
inline constexpr std::uint64_t kWidth = 0x5769647468470009ULL;
inline constexpr std::uint64_t kSampler = 0x53616d706c65000aULL;
inline constexpr std::uint64_t kTrial = 0x547269616c53000bULL;
}  // namespace stream

std::uint64_t splitmix64(std::uint64_t x);

// Seed of the substream `tag` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

// Seed of the `index`-th trial of an experiment seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

// Deterministic generator whose output depends only on the seed.
//
// The standard <random> distributions are implementation-defined, so the
// uniform/normal transforms are done here on top of mt19937_64 (whose
// output sequence is fully specified) to keep draws identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Uniform in [lo, hi].
  double uniform(double lo, double hi);

  // Standard normal (Box-Muller, pairs cached).
  double normal();

  // +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hcube
