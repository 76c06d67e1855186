#ifndef BOED_UTIL_RNG_HPP
#define BOED_UTIL_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace boed::util {

/// Derives an independent 64-bit seed from a master seed and a path of
/// stream identifiers (replicate, iteration, purpose tag, ...). Distinct
/// paths give unrelated seeds; the mapping is a pure function.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (path.size() + 1));
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master);
  for (auto p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace boed::util

#endif  // BOED_UTIL_RNG_HPP
