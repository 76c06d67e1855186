#ifndef BOED_OPTIM_SEED_TAGS_HPP
#define BOED_OPTIM_SEED_TAGS_HPP

#include <cstdint>

namespace boed::optim::tags {

// Stream identifiers fed to util::derive_seed; distinct values keep the
// randomness of different purposes disjoint.
inline constexpr std::uint64_t kSaa = 0x5341;
inline constexpr std::uint64_t kRm = 0x524d;
inline constexpr std::uint64_t kStart = 1;
inline constexpr std::uint64_t kFrozen = 2;
inline constexpr std::uint64_t kLower = 3;
inline constexpr std::uint64_t kIteration = 4;
inline constexpr std::uint64_t kFinalValue = 5;

}  // namespace boed::optim::tags

#endif  // BOED_OPTIM_SEED_TAGS_HPP
