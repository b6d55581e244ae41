#pragma once

#include <optional>
#include <vector>

#include "wythoff/game.hpp"

namespace wythoff {

// Closed-form play for n-heap Wythoff's game with odd n >= 3 and the
// canonical move vectors: P-positions are exactly the nim-sum-zero tuples.

/// Throws DimensionError unless n is odd and at least 3.
void require_oracle_dimension(std::size_t n);

bool is_p_position(const Position& pos);

/// Single-heap move to a nim-sum-zero position. Uses the highest bit k' of the
/// nim-sum and the lowest-index heap i with bit k' set; the new heap keeps the
/// digits of x_i above k' and takes the XOR of the other heaps' digits at and
/// below k'. Throws InvalidArgument at a P-position.
Move winning_move(const Position& pos);

/// Every legal move into a nim-sum-zero position, in legal_moves order. For
/// odd n there is at most one winning diagonal move, found digit by digit.
/// Throws InvalidArgument unless spec is the canonical game for pos.
std::vector<Move> all_winning_moves(const GameSpec& spec, const Position& pos);

/// The engine's choice: winning_move when one exists, otherwise the first
/// legal move in spec order. nullopt at a terminal position.
std::optional<Move> engine_move(const Position& pos);

}  // namespace wythoff
