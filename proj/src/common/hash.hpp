#pragma once

#include <cstdint>
#include <string_view>

namespace testrec {

// 64-bit FNV-1a. Stable across platforms; used for path identities,
// content hashes of artifacts and seeding per-unit samplers.
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t state = kFnvOffset) noexcept {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

}  // namespace testrec
