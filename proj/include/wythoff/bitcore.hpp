#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace wythoff {

/// Token count of one heap. Heaps are bounded by the machine word; every
/// binary digit at or above the word width is zero.
using Natural = std::uint64_t;

/// Position in a binary expansion, 0 = least significant.
using BitIndex = unsigned;

inline constexpr BitIndex kWordBits = 64;

/// The k-th binary digit of t. Digits at k >= 64 are 0.
constexpr unsigned bit(Natural t, BitIndex k) noexcept {
  return k < kWordBits ? static_cast<unsigned>((t >> k) & 1u) : 0u;
}

/// x1 ^ x2 ^ ... ^ xl. Throws InvalidArgument on an empty list.
Natural nim_sum(std::span<const Natural> xs);

/// XOR of the k-th digits of every element.
unsigned digit_parity(std::span<const Natural> xs, BitIndex k);

/// Largest k whose digit-wise XOR is 1, or nullopt when the nim-sum is 0.
/// Throws InvalidArgument on an empty list.
std::optional<BitIndex> highest_discrepancy_bit(std::span<const Natural> xs);

}  // namespace wythoff
