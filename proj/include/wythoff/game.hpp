#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wythoff/bitcore.hpp"

namespace wythoff {

/// Heap sizes of an n-heap game, n >= 1.
class Position {
 public:
  explicit Position(std::vector<Natural> coords);
  Position(std::initializer_list<Natural> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  Natural operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Natural> coords() const noexcept { return coords_; }

  friend auto operator<=>(const Position&, const Position&) = default;
  friend bool operator==(const Position&, const Position&) = default;

 private:
  std::vector<Natural> coords_;
};

/// A nonzero direction v; legal moves subtract k*v for some k >= 1.
class MoveVector {
 public:
  explicit MoveVector(std::vector<Natural> coords);
  MoveVector(std::initializer_list<Natural> coords);

  static MoveVector unit(std::size_t n, std::size_t i);
  static MoveVector diagonal(std::size_t n);

  std::size_t size() const noexcept { return coords_.size(); }
  Natural operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Natural> coords() const noexcept { return coords_; }

  friend auto operator<=>(const MoveVector&, const MoveVector&) = default;
  friend bool operator==(const MoveVector&, const MoveVector&) = default;

 private:
  std::vector<Natural> coords_;
};

struct Move {
  MoveVector vector;
  Natural k = 1;

  friend bool operator==(const Move&, const Move&) = default;
};

/// Dimension plus an ordered, duplicate-free, nonempty set of move vectors.
class GameSpec {
 public:
  GameSpec(std::size_t n, std::vector<MoveVector> vectors);

  /// n unit vectors followed by the all-ones diagonal. n = 2 is the
  /// classic two-heap game.
  static GameSpec wythoff(std::size_t n);

  static GameSpec from_json(std::string_view text);
  std::string to_json() const;

  std::size_t n() const noexcept { return n_; }
  const std::vector<MoveVector>& vectors() const noexcept { return vectors_; }

  /// True when the vector set equals that of wythoff(n), in any order.
  bool is_canonical() const;

  friend bool operator==(const GameSpec&, const GameSpec&) = default;

 private:
  std::size_t n_;
  std::vector<MoveVector> vectors_;
};

enum class Verdict : std::uint8_t { P, N };

/// Largest multiplier k with pos - k*v >= 0 componentwise.
Natural max_multiplier(const Position& pos, const MoveVector& v);

/// Every legal move from pos: vectors in spec order, k ascending.
std::vector<Move> legal_moves(const GameSpec& spec, const Position& pos);

bool is_terminal(const GameSpec& spec, const Position& pos);

/// pos - k*v. Throws IllegalMove if any heap would go negative.
Position apply_move(const Position& pos, const Move& move);

/// Default cell budget for box solving and sponge generation: the
/// WYTHOFF_MAX_CELLS environment variable, or 2^24 when unset.
std::size_t default_max_cells();

/// Number of positions in [0, bound)^n, or nullopt on overflow.
std::optional<std::size_t> box_cells(std::size_t n, Natural bound);

/// P/N classification of every position in [0, bound)^n, one bit per cell,
/// indexed in mixed radix with x1 most significant (so index order is
/// lexicographic order).
class VerdictTable {
 public:
  VerdictTable(GameSpec spec, Natural bound);

  const GameSpec& spec() const noexcept { return spec_; }
  Natural bound() const noexcept { return bound_; }
  std::size_t cells() const noexcept { return cells_; }

  bool contains(const Position& pos) const;
  std::size_t index_of(const Position& pos) const;
  Position position_at(std::size_t index) const;

  Verdict verdict(const Position& pos) const;
  Verdict verdict_at(std::size_t index) const;
  void set_p(std::size_t index);

  std::size_t p_count() const;
  /// P-positions in lexicographic order.
  std::vector<Position> p_positions() const;

  /// Header `x1,...,xn,verdict`, one row per cell in lexicographic order.
  std::string to_csv() const;

 private:
  GameSpec spec_;
  Natural bound_;
  std::size_t cells_;
  std::vector<std::uint64_t> p_bits_;
};

/// Retrograde analysis over the box [0, bound)^n. Every successor of a cell
/// has a strictly smaller index, so a single forward sweep classifies the
/// box. Throws BudgetExceeded when bound^n exceeds max_cells.
VerdictTable solve_box(const GameSpec& spec, Natural bound,
                       std::size_t max_cells = default_max_cells());

enum class PSetCondition : std::uint8_t {
  // A candidate has a move into the candidate set.
  kMoveWithinCandidate,
  // A non-candidate has no move into the candidate set.
  kNoMoveIntoCandidate,
};

struct PSetViolation {
  PSetCondition condition;
  Position at;
  std::optional<Move> move;  // offending move for kMoveWithinCandidate
};

struct PSetReport {
  std::optional<PSetViolation> violation;
  std::size_t checked = 0;

  bool valid() const noexcept { return !violation.has_value(); }
};

/// Checks, over [0, bound)^n in lexicographic order, that no candidate can
/// move into the candidate set and every non-candidate can. Moves only
/// decrease heaps, so the box is closed under moves and both conditions are
/// decided entirely inside it. Returns the first violation found.
PSetReport verify_p_set(const GameSpec& spec, std::span<const Position> candidate,
                        Natural bound, std::size_t max_cells = default_max_cells());

/// Every position of [0, bound)^n whose nim-sum is 0, lexicographic.
std::vector<Position> nim_zero_positions(std::size_t n, Natural bound,
                                         std::size_t max_cells = default_max_cells());

/// floor(k*phi), computed exactly with an integer square root.
Natural lower_wythoff(Natural k);
/// floor(k*phi^2) = floor(k*phi) + k.
Natural upper_wythoff(Natural k);

/// Classic-game P-positions (floor(k phi), floor(k phi^2)) and their swaps,
/// both coordinates below limit, in lexicographic order.
std::vector<Position> beatty_p_positions(Natural limit);

/// "1,2,3" -> Position. Throws InvalidArgument on malformed text.
Position parse_position(std::string_view text);

std::string to_string(const Position& pos);
std::string to_string(const MoveVector& v);
std::string to_string(const Move& m);
std::string to_string(Verdict v);

}  // namespace wythoff
