#pragma once

// Seeded randomness shared by generators, samplers and the harness.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not (their algorithms are
// implementation-defined), so every draw goes through the helpers below.
// Reproducing a run in another language needs only MT19937-64 plus these
// three mappings:
//
//   uniform_index(n)  rejection sampling: draw x until x >= (2^64 - n) mod n,
//                     return x mod n
//   uniform_real()    (x >> 11) * 2^-53, in [0, 1)
//   uniform_int(a,b)  a + uniform_index(b - a + 1)

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace pathbench {

using Rng = std::mt19937_64;

inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_real(rng);
}

// Inclusive on both ends.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<std::int64_t>(
                  uniform_index(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

inline bool bernoulli(Rng& rng, double p) { return uniform_real(rng) < p; }

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a, used to fold names into seeds.
constexpr std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Order-sensitive combination of a master seed with job coordinates.
// Depends only on the values, never on scheduling.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(master);
  for (const std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

}  // namespace pathbench
