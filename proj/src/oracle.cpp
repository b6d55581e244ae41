#include "wythoff/oracle.hpp"

#include <algorithm>

#include "wythoff/errors.hpp"

namespace wythoff {

namespace {

// The unique t (mod 2^64) with XOR_i (x_i - t) = 0. For odd n, digit j of the
// XOR is X_j ^ t_j ^ B_j where B_j is the parity of the borrows into digit j,
// so each digit of t is forced.
Natural forced_diagonal_step(std::span<const Natural> xs) {
  std::vector<unsigned> borrow(xs.size(), 0);
  Natural t = 0;
  for (BitIndex j = 0; j < kWordBits; ++j) {
    unsigned parity = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) parity ^= bit(xs[i], j) ^ borrow[i];
    const unsigned tj = parity;  // n odd: t_j appears an odd number of times
    t |= Natural{tj} << j;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const int d = static_cast<int>(bit(xs[i], j)) - static_cast<int>(tj) - static_cast<int>(borrow[i]);
      borrow[i] = d < 0 ? 1u : 0u;
    }
  }
  return t;
}

}  // namespace

void require_oracle_dimension(std::size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw DimensionError("oracle undefined for this dimension: n = " + std::to_string(n) +
                         " (requires odd n >= 3)");
  }
}

bool is_p_position(const Position& pos) {
  require_oracle_dimension(pos.size());
  return nim_sum(pos.coords()) == 0;
}

Move winning_move(const Position& pos) {
  require_oracle_dimension(pos.size());
  const auto xs = pos.coords();
  const auto top = highest_discrepancy_bit(xs);
  if (!top) throw InvalidArgument(to_string(pos) + " is a P-position; no winning move exists");

  const std::size_t n = xs.size();
  std::size_t i = 0;
  while (bit(xs[i], *top) == 0) ++i;

  Natural reduced = 0;
  for (BitIndex k = 0; k < kWordBits; ++k) {
    unsigned b = 0;
    if (k > *top) {
      b = bit(xs[i], k);
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) b ^= bit(xs[j], k);
      }
    }
    reduced |= Natural{b} << k;
  }
  return Move{MoveVector::unit(n, i), xs[i] - reduced};
}

std::vector<Move> all_winning_moves(const GameSpec& spec, const Position& pos) {
  require_oracle_dimension(pos.size());
  if (spec.n() != pos.size() || !spec.is_canonical()) {
    throw InvalidArgument("all_winning_moves needs the canonical game of dimension " +
                          std::to_string(pos.size()));
  }
  const auto xs = pos.coords();
  const Natural s = nim_sum(xs);
  std::vector<Move> out;
  if (s == 0) return out;

  for (const auto& v : spec.vectors()) {
    const auto ones = std::count(v.coords().begin(), v.coords().end(), Natural{1});
    if (ones == 1) {
      const auto i = static_cast<std::size_t>(
          std::find(v.coords().begin(), v.coords().end(), Natural{1}) - v.coords().begin());
      const Natural target = xs[i] ^ s;
      if (target < xs[i]) out.push_back(Move{v, xs[i] - target});
    } else {
      const Natural t = forced_diagonal_step(xs);
      const Natural low = *std::min_element(xs.begin(), xs.end());
      if (t >= 1 && t <= low) out.push_back(Move{v, t});
    }
  }
  return out;
}

std::optional<Move> engine_move(const Position& pos) {
  require_oracle_dimension(pos.size());
  if (nim_sum(pos.coords()) != 0) return winning_move(pos);
  const auto spec = GameSpec::wythoff(pos.size());
  for (const auto& v : spec.vectors()) {
    if (max_multiplier(pos, v) >= 1) return Move{v, 1};
  }
  return std::nullopt;
}

}  // namespace wythoff
