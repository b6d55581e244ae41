#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wythoff/bitcore.hpp"
#include "wythoff/game.hpp"

namespace wythoff {

/// 0-1 vectors of length n with even weight, lexicographic. These are the
/// translation directions of the self-similar decomposition.
class TSet {
 public:
  std::size_t n() const noexcept { return n_; }
  const std::vector<Position>& vectors() const noexcept { return vectors_; }
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  friend TSet t_set(std::size_t n);
  TSet(std::size_t n, std::vector<Position> vectors) : n_(n), vectors_(std::move(vectors)) {}

  std::size_t n_;
  std::vector<Position> vectors_;
};

/// Throws DimensionError unless n is odd and >= 3; n is capped at 31.
TSet t_set(std::size_t n);

/// The discrete sponge at level m: every point of [0, 2^m)^n with nim-sum 0.
/// Points are stored flat and kept in lexicographic order, so two levels are
/// equal exactly when their coordinate arrays are.
class SpongeLevel {
 public:
  /// Validates dimension, coordinate range and nim-sum of every point, then
  /// sorts. Cardinality is not checked here.
  static SpongeLevel from_points(std::size_t n, unsigned m, std::span<const Position> points);

  std::size_t n() const noexcept { return n_; }
  unsigned m() const noexcept { return m_; }
  std::size_t size() const noexcept { return coords_.size() / n_; }
  std::span<const Natural> point(std::size_t i) const { return {coords_.data() + i * n_, n_}; }
  std::vector<Position> points() const;
  bool contains(std::span<const Natural> p) const;

  friend bool operator==(const SpongeLevel&, const SpongeLevel&) = default;

 private:
  SpongeLevel(std::size_t n, unsigned m, std::vector<Natural> flat);
  void sort_points();

  friend SpongeLevel lift(const SpongeLevel& level, std::size_t max_cells);
  friend std::map<Position, SpongeLevel> decompose(const SpongeLevel& level);

  std::size_t n_;
  unsigned m_;
  std::vector<Natural> coords_;
};

/// Level m+1 as the union of 2^m v + level, v in T.
SpongeLevel lift(const SpongeLevel& level, std::size_t max_cells = default_max_cells());

/// Builds level m by repeated lifting from {0}. Throws BudgetExceeded when
/// the stored coordinates (2^{m(n-1)} * n) would exceed max_cells.
SpongeLevel generate_level(std::size_t n, unsigned m, std::size_t max_cells = default_max_cells());

/// Splits level m >= 1 by the digit-(m-1) pattern of each point. Each key is
/// a T-vector v and its value the part translated back by -2^{m-1} v, a
/// level-(m-1) point set. Throws InvalidArgument when m = 0.
std::map<Position, SpongeLevel> decompose(const SpongeLevel& level);

/// numerator / 2^level, always stored reduced (odd numerator, or 0/2^0).
class Dyadic {
 public:
  /// Requires level <= 63 and numerator <= 2^level.
  Dyadic(Natural numerator, unsigned level);

  Natural numerator() const noexcept { return numerator_; }
  unsigned level() const noexcept { return level_; }

  friend auto operator<=>(const Dyadic&, const Dyadic&) = default;
  friend bool operator==(const Dyadic&, const Dyadic&) = default;

 private:
  Natural numerator_;
  unsigned level_;
};

using DyadicPoint = std::vector<Dyadic>;

/// Maps each point x of the level to x / 2^m.
std::set<DyadicPoint> scale(const SpongeLevel& level);

/// Membership of a dyadic point of [0,1]^n in the closure of the scaled
/// sponge: do binary expansions exist whose digit-wise XOR vanishes at every
/// position? Dyadic values in (0,1) have a terminating expansion and one
/// ending in all ones; 0 and 1 have only the all-zero and all-one ones.
/// Throws DimensionError for even n or n < 3, InvalidArgument for a
/// coordinate above 1.
bool q_membership(const DyadicPoint& p);

/// scale(level) == union over v in T of (v + scale(level m-1)) / 2, compared
/// as exact dyadic sets. Requires m >= 1.
bool ifs_check(const SpongeLevel& level);

struct Fraction {
  Natural numerator;
  Natural denominator;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct BoxCount {
  unsigned m;
  std::size_t count;
  /// log2(count) / m in lowest terms; absent for m = 0 or a count that is
  /// not a power of two.
  std::optional<Fraction> slope;
};

/// (m, |P_m|, slope) per level. Throws InvalidArgument if the levels do not
/// share one dimension.
std::vector<BoxCount> box_count(std::span<const SpongeLevel> levels);

enum class ExportFormat { kCsv, kPly, kJson };

ExportFormat parse_export_format(std::string_view name);

/// CSV: header `x1,...,xn` and lexicographic rows. PLY: ASCII point cloud,
/// n = 3 only. JSON: {"n":..,"m":..,"points":[[..],..]}.
std::string export_points(const SpongeLevel& level, ExportFormat format);

std::string to_string(const Dyadic& d);
std::string to_string(const DyadicPoint& p);

}  // namespace wythoff
