#ifndef EGOSKILL_RNG_HPP
#define EGOSKILL_RNG_HPP

#include <cstdint>
#include <random>

namespace egoskill {

/// splitmix64 finalizer. Bijective on 64-bit words, so distinct inputs can
/// never collide.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a stream index.
///
/// Used wherever work is fanned out (per trial, per clip, per scene) so that
/// results do not depend on execution order or thread count.
inline std::uint64_t mixSeed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(~stream));
}

/// Engine used project-wide. Always construct from mixSeed output rather
/// than sharing one engine across units of work.
using Rng = std::mt19937_64;

inline Rng makeRng(std::uint64_t base, std::uint64_t stream) {
  return Rng(mixSeed(base, stream));
}

}  // namespace egoskill

#endif  // EGOSKILL_RNG_HPP
