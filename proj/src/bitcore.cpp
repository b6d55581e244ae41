#include "wythoff/bitcore.hpp"

#include <bit>

#include "wythoff/errors.hpp"

namespace wythoff {

namespace {

void require_nonempty(std::span<const Natural> xs) {
  if (xs.empty()) throw InvalidArgument("nim-sum of an empty list is undefined");
}

}  // namespace

Natural nim_sum(std::span<const Natural> xs) {
  require_nonempty(xs);
  Natural s = 0;
  for (Natural x : xs) s ^= x;
  return s;
}

unsigned digit_parity(std::span<const Natural> xs, BitIndex k) {
  unsigned p = 0;
  for (Natural x : xs) p ^= bit(x, k);
  return p;
}

std::optional<BitIndex> highest_discrepancy_bit(std::span<const Natural> xs) {
  const Natural s = nim_sum(xs);
  if (s == 0) return std::nullopt;
  return static_cast<BitIndex>(std::bit_width(s) - 1);
}

}  // namespace wythoff
