#pragma once

// Deterministic random streams. Every stochastic operation in the library
// takes an explicit RandomStream; nothing reads global state. The generator
// is std::mt19937_64 and doubles are built from the top 53 bits of each
// output word, so a stream produces the same draw sequence on every
// platform for a given seed.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace lipbo {

/// SplitMix64 finalizer. Used both for seed mixing and stream splitting.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// FNV-1a over the bytes of a string.
inline std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Per-run seed: mix64(mix64(mix64(root ^ H(benchmark)) ^ H(policy)) ^ run).
/// Passing an empty policy string gives policy-independent seeds, which is
/// what the common-random-numbers comparison mode uses.
inline std::uint64_t derive_seed(std::uint64_t root_seed,
                                 std::string_view benchmark,
                                 std::string_view policy_id,
                                 std::uint64_t run_index) {
  std::uint64_t h = mix64(root_seed ^ hash_string(benchmark));
  h = mix64(h ^ hash_string(policy_id));
  return mix64(h ^ run_index);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Standard normal via Box-Muller. Consumes exactly two uniforms.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    // log1p(-u1) keeps the argument in (0, 1] so the log is finite.
    return std::sqrt(-2.0 * std::log1p(-u1)) *
           std::cos(6.283185307179586476925287 * u2);
  }

  /// Deterministically derive an independent child stream.
  RandomStream split() { return RandomStream(mix64(gen_())); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lipbo
