#pragma once

#include <array>
#include <cstdint>

namespace indep {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

/// 64 uniform bits for (seed, coordinate, replication). Every triple owns its
/// own counter, so draws do not depend on evaluation order or thread count.
constexpr std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t coordinate, std::uint64_t replication) noexcept {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(coordinate), static_cast<std::uint32_t>(coordinate >> 32),
                                static_cast<std::uint32_t>(replication),
                                static_cast<std::uint32_t>(replication >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::block(ctr, key);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

}  // namespace indep
