#pragma once

#include <cstdint>

namespace decolab {

/// Counter-based deterministic random numbers.
///
/// Draw i of the stream for a given seed is splitmix64 applied twice to a
/// seed/counter combination. Every operation is integer arithmetic defined by
/// the C++ standard, so streams are reproducible across platforms, and draws
/// depend only on (seed, i), never on iteration order.

// SplitMix64 finalizer (Steele, Lea, Flood; public domain reference constants).
inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t mix_counter(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x6a09e667f3bcc909ULL));
}

// Uniform double in [0, 1) from the top 53 bits.
inline constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Stateless per-counter access; safe to call from any thread for any counter.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t bits(std::uint64_t counter) const { return mix_counter(seed, counter); }
  double uniform(std::uint64_t counter) const { return to_unit_interval(bits(counter)); }
};

/// Small sequential convenience wrapper around CounterRng.
class SequenceRng {
 public:
  explicit SequenceRng(std::uint64_t seed) : rng_{seed} {}

  double uniform() { return rng_.uniform(next_++); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return rng_.bits(next_++); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace decolab
