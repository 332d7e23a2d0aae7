#pragma once

#include <bit>
#include <cstdint>

namespace posmon {

/// Subset of at most 64 indexed elements.
using Mask = std::uint64_t;

constexpr Mask bit(int i) noexcept { return Mask{1} << i; }

constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

constexpr int lowest(Mask m) noexcept { return std::countr_zero(m); }

constexpr Mask low_mask(int n) noexcept { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

constexpr bool contains(Mask outer, Mask inner) noexcept { return (outer & inner) == inner; }

/// Calls fn(i) for every set bit i, lowest first.
template <typename Fn>
constexpr void for_each_bit(Mask m, Fn&& fn) {
  while (m) {
    fn(lowest(m));
    m &= m - 1;
  }
}

}  // namespace posmon
