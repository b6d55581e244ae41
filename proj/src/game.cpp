#include "wythoff/game.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wythoff/errors.hpp"

namespace wythoff {

namespace {

constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 24;

// k <= 2^62 keeps 5k^2 inside 128 bits and floor(k phi^2) inside 64.
constexpr Natural kMaxBeattyIndex = Natural{1} << 62;

void require_dimension(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                         ", got " + std::to_string(got));
  }
}

template <typename Coords>
std::string join_coords(const Coords& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  out += ')';
  return out;
}

__extension__ using Wide = unsigned __int128;

Natural isqrt(Wide v) {
  auto r = static_cast<Wide>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return static_cast<Natural>(r);
}

}  // namespace

// ---------------------------------------------------------------------------
// Position / MoveVector / GameSpec

Position::Position(std::vector<Natural> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("a position needs at least one heap");
}

Position::Position(std::initializer_list<Natural> coords)
    : Position(std::vector<Natural>(coords)) {}

MoveVector::MoveVector(std::vector<Natural> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("a move vector needs at least one coordinate");
  if (std::all_of(coords_.begin(), coords_.end(), [](Natural c) { return c == 0; })) {
    throw InvalidArgument("the zero vector is not a move vector");
  }
}

MoveVector::MoveVector(std::initializer_list<Natural> coords)
    : MoveVector(std::vector<Natural>(coords)) {}

MoveVector MoveVector::unit(std::size_t n, std::size_t i) {
  if (i >= n) throw InvalidArgument("unit vector index out of range");
  std::vector<Natural> c(n, 0);
  c[i] = 1;
  return MoveVector(std::move(c));
}

MoveVector MoveVector::diagonal(std::size_t n) {
  return MoveVector(std::vector<Natural>(n, 1));
}

GameSpec::GameSpec(std::size_t n, std::vector<MoveVector> vectors)
    : n_(n), vectors_(std::move(vectors)) {
  if (n_ == 0) throw InvalidArgument("game dimension must be at least 1");
  if (vectors_.empty()) throw InvalidArgument("a game needs at least one move vector");
  std::set<MoveVector> seen;
  for (const auto& v : vectors_) {
    require_dimension(n_, v.size(), "move vector");
    if (!seen.insert(v).second) throw InvalidArgument("duplicate move vector " + to_string(v));
  }
}

GameSpec GameSpec::wythoff(std::size_t n) {
  if (n == 0) throw InvalidArgument("game dimension must be at least 1");
  std::vector<MoveVector> vs;
  vs.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) vs.push_back(MoveVector::unit(n, i));
  // For n = 1 the diagonal coincides with the unit vector.
  if (n > 1) vs.push_back(MoveVector::diagonal(n));
  return GameSpec(n, std::move(vs));
}

bool GameSpec::is_canonical() const {
  const GameSpec c = wythoff(n_);
  std::set<MoveVector> a(vectors_.begin(), vectors_.end());
  std::set<MoveVector> b(c.vectors_.begin(), c.vectors_.end());
  return a == b;
}

GameSpec GameSpec::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("game spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("vectors")) {
    throw InvalidArgument(R"(game spec must be {"n": int, "vectors": [[int,...],...]})");
  }
  const auto& jn = j.at("n");
  if (!jn.is_number_unsigned()) throw InvalidArgument("game spec field n must be a positive integer");
  const auto n = jn.get<std::size_t>();
  const auto& jv = j.at("vectors");
  if (!jv.is_array()) throw InvalidArgument("game spec field vectors must be an array");
  std::vector<MoveVector> vectors;
  for (const auto& row : jv) {
    if (!row.is_array()) throw InvalidArgument("each move vector must be an array");
    std::vector<Natural> c;
    for (const auto& x : row) {
      if (!x.is_number_unsigned()) {
        throw InvalidArgument("move vector entries must be non-negative integers");
      }
      c.push_back(x.get<Natural>());
    }
    vectors.emplace_back(std::move(c));
  }
  return GameSpec(n, std::move(vectors));
}

std::string GameSpec::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["vectors"] = nlohmann::json::array();
  for (const auto& v : vectors_) {
    j["vectors"].push_back(std::vector<Natural>(v.coords().begin(), v.coords().end()));
  }
  return j.dump();
}

// ---------------------------------------------------------------------------
// Moves

Natural max_multiplier(const Position& pos, const MoveVector& v) {
  require_dimension(v.size(), pos.size(), "position");
  Natural k = std::numeric_limits<Natural>::max();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (v[i] != 0) k = std::min(k, pos[i] / v[i]);
  }
  return k;
}

std::vector<Move> legal_moves(const GameSpec& spec, const Position& pos) {
  require_dimension(spec.n(), pos.size(), "position");
  std::vector<Move> moves;
  for (const auto& v : spec.vectors()) {
    const Natural kmax = max_multiplier(pos, v);
    for (Natural k = 1; k <= kmax; ++k) moves.push_back(Move{v, k});
  }
  return moves;
}

bool is_terminal(const GameSpec& spec, const Position& pos) {
  require_dimension(spec.n(), pos.size(), "position");
  return std::all_of(spec.vectors().begin(), spec.vectors().end(),
                     [&](const MoveVector& v) { return max_multiplier(pos, v) == 0; });
}

Position apply_move(const Position& pos, const Move& move) {
  require_dimension(pos.size(), move.vector.size(), "move");
  if (move.k == 0) throw IllegalMove("move multiplier must be at least 1");
  if (max_multiplier(pos, move.vector) < move.k) {
    throw IllegalMove("move " + to_string(move) + " is illegal at " + to_string(pos));
  }
  std::vector<Natural> out(pos.coords().begin(), pos.coords().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= move.k * move.vector[i];
  return Position(std::move(out));
}

// ---------------------------------------------------------------------------
// Verdict tables

std::size_t default_max_cells() {
  const char* env = std::getenv("WYTHOFF_MAX_CELLS");
  if (env == nullptr || *env == '\0') return kDefaultMaxCells;
  std::size_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument("WYTHOFF_MAX_CELLS must be a non-negative integer, got '" +
                          std::string(s) + "'");
  }
  return v;
}

std::optional<std::size_t> box_cells(std::size_t n, Natural bound) {
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (bound != 0 && cells > std::numeric_limits<std::size_t>::max() / bound) return std::nullopt;
    cells *= bound;
  }
  return cells;
}

VerdictTable::VerdictTable(GameSpec spec, Natural bound)
    : spec_(std::move(spec)), bound_(bound), cells_(0) {
  if (bound_ == 0) throw InvalidArgument("box bound must be at least 1");
  const auto cells = box_cells(spec_.n(), bound_);
  if (!cells) throw BudgetExceeded("box size overflows the address space");
  cells_ = *cells;
  p_bits_.assign((cells_ + 63) / 64, 0);
}

bool VerdictTable::contains(const Position& pos) const {
  if (pos.size() != spec_.n()) return false;
  return std::all_of(pos.coords().begin(), pos.coords().end(),
                     [&](Natural x) { return x < bound_; });
}

std::size_t VerdictTable::index_of(const Position& pos) const {
  require_dimension(spec_.n(), pos.size(), "position");
  if (!contains(pos)) throw InvalidArgument(to_string(pos) + " lies outside the box");
  std::size_t idx = 0;
  for (Natural x : pos.coords()) idx = idx * bound_ + x;
  return idx;
}

Position VerdictTable::position_at(std::size_t index) const {
  if (index >= cells_) throw InvalidArgument("cell index out of range");
  std::vector<Natural> c(spec_.n());
  for (std::size_t i = c.size(); i-- > 0;) {
    c[i] = index % bound_;
    index /= bound_;
  }
  return Position(std::move(c));
}

Verdict VerdictTable::verdict_at(std::size_t index) const {
  return (p_bits_[index / 64] >> (index % 64)) & 1u ? Verdict::P : Verdict::N;
}

Verdict VerdictTable::verdict(const Position& pos) const { return verdict_at(index_of(pos)); }

void VerdictTable::set_p(std::size_t index) { p_bits_[index / 64] |= std::uint64_t{1} << (index % 64); }

std::size_t VerdictTable::p_count() const {
  std::size_t c = 0;
  for (auto w : p_bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Position> VerdictTable::p_positions() const {
  std::vector<Position> out;
  for (std::size_t i = 0; i < cells_; ++i) {
    if (verdict_at(i) == Verdict::P) out.push_back(position_at(i));
  }
  return out;
}

std::string VerdictTable::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < spec_.n(); ++i) os << 'x' << (i + 1) << ',';
  os << "verdict\n";
  std::vector<Natural> c(spec_.n(), 0);
  for (std::size_t idx = 0; idx < cells_; ++idx) {
    for (Natural x : c) os << x << ',';
    os << to_string(verdict_at(idx)) << '\n';
    for (std::size_t i = c.size(); i-- > 0;) {
      if (++c[i] < bound_) break;
      c[i] = 0;
    }
  }
  return os.str();
}

namespace {

struct Stride {
  std::vector<std::size_t> support;  // coordinates with v_i > 0
  std::size_t offset;                // index distance of one step along v
};

std::vector<Stride> strides_for(const GameSpec& spec, Natural bound) {
  std::vector<Stride> out;
  for (const auto& v : spec.vectors()) {
    Stride s{{}, 0};
    std::size_t place = 1;
    for (std::size_t i = spec.n(); i-- > 0;) {
      if (v[i] != 0) s.support.push_back(i);
      s.offset += static_cast<std::size_t>(v[i]) * place;
      place *= bound;
    }
    out.push_back(std::move(s));
  }
  return out;
}

void check_budget(std::size_t n, Natural bound, std::size_t max_cells) {
  const auto cells = box_cells(n, bound);
  if (!cells || *cells > max_cells) {
    throw BudgetExceeded("box [0," + std::to_string(bound) + ")^" + std::to_string(n) +
                         " exceeds the budget of " + std::to_string(max_cells) + " cells");
  }
}

}  // namespace

VerdictTable solve_box(const GameSpec& spec, Natural bound, std::size_t max_cells) {
  if (bound == 0) throw InvalidArgument("box bound must be at least 1");
  check_budget(spec.n(), bound, max_cells);

  VerdictTable table(spec, bound);
  const auto strides = strides_for(spec, bound);
  const auto& vectors = spec.vectors();
  std::vector<Natural> c(spec.n(), 0);

  for (std::size_t idx = 0; idx < table.cells(); ++idx) {
    bool reaches_p = false;
    for (std::size_t j = 0; j < vectors.size() && !reaches_p; ++j) {
      Natural kmax = std::numeric_limits<Natural>::max();
      for (std::size_t i : strides[j].support) kmax = std::min(kmax, c[i] / vectors[j][i]);
      for (Natural k = 1; k <= kmax; ++k) {
        if (table.verdict_at(idx - k * strides[j].offset) == Verdict::P) {
          reaches_p = true;
          break;
        }
      }
    }
    if (!reaches_p) table.set_p(idx);

    for (std::size_t i = c.size(); i-- > 0;) {
      if (++c[i] < bound) break;
      c[i] = 0;
    }
  }
  return table;
}

PSetReport verify_p_set(const GameSpec& spec, std::span<const Position> candidate, Natural bound,
                        std::size_t max_cells) {
  if (bound == 0) throw InvalidArgument("box bound must be at least 1");
  check_budget(spec.n(), bound, max_cells);

  // Reuse the table's bit storage as a membership set: P bit = candidate.
  VerdictTable member(spec, bound);
  for (const auto& x : candidate) {
    require_dimension(spec.n(), x.size(), "candidate");
    if (!member.contains(x)) throw InvalidArgument("candidate " + to_string(x) + " lies outside the box");
    member.set_p(member.index_of(x));
  }

  const auto strides = strides_for(spec, bound);
  const auto& vectors = spec.vectors();
  std::vector<Natural> c(spec.n(), 0);
  PSetReport report;

  for (std::size_t idx = 0; idx < member.cells(); ++idx) {
    const bool in_candidate = member.verdict_at(idx) == Verdict::P;
    std::optional<Move> into_candidate;
    for (std::size_t j = 0; j < vectors.size() && !into_candidate; ++j) {
      Natural kmax = std::numeric_limits<Natural>::max();
      for (std::size_t i : strides[j].support) kmax = std::min(kmax, c[i] / vectors[j][i]);
      for (Natural k = 1; k <= kmax; ++k) {
        if (member.verdict_at(idx - k * strides[j].offset) == Verdict::P) {
          into_candidate = Move{vectors[j], k};
          break;
        }
      }
    }
    ++report.checked;
    if (in_candidate && into_candidate) {
      report.violation = PSetViolation{PSetCondition::kMoveWithinCandidate, Position(c), into_candidate};
      return report;
    }
    if (!in_candidate && !into_candidate) {
      report.violation = PSetViolation{PSetCondition::kNoMoveIntoCandidate, Position(c), std::nullopt};
      return report;
    }
    for (std::size_t i = c.size(); i-- > 0;) {
      if (++c[i] < bound) break;
      c[i] = 0;
    }
  }
  return report;
}

std::vector<Position> nim_zero_positions(std::size_t n, Natural bound, std::size_t max_cells) {
  if (n == 0) throw InvalidArgument("dimension must be at least 1");
  if (bound == 0) return {};
  check_budget(n, bound, max_cells);
  std::vector<Position> out;
  std::vector<Natural> c(n, 0);
  const std::size_t cells = *box_cells(n, bound);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (nim_sum(c) == 0) out.emplace_back(c);
    for (std::size_t i = c.size(); i-- > 0;) {
      if (++c[i] < bound) break;
      c[i] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Beatty sequences

Natural lower_wythoff(Natural k) {
  if (k > kMaxBeattyIndex) throw InvalidArgument("Beatty index too large for a 64-bit word");
  // floor(k phi) = floor((k + k sqrt5) / 2) = floor((k + floor(k sqrt5)) / 2)
  // because k sqrt5 is irrational for k >= 1.
  const auto wide = static_cast<Wide>(k);
  const Natural root = isqrt(5 * wide * wide);
  return (k + root) / 2;
}

Natural upper_wythoff(Natural k) { return lower_wythoff(k) + k; }

std::vector<Position> beatty_p_positions(Natural limit) {
  std::vector<Position> out;
  for (Natural k = 0; k <= kMaxBeattyIndex; ++k) {
    const Natural a = lower_wythoff(k);
    if (a >= limit) break;
    const Natural b = a + k;
    if (b >= limit) continue;
    out.push_back(Position{a, b});
    if (a != b) out.push_back(Position{b, a});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text

Position parse_position(std::string_view text) {
  std::vector<Natural> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw InvalidArgument("malformed position '" + std::string(text) + "'");
    Natural v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw InvalidArgument("malformed heap size '" + std::string(item) + "' in position '" +
                            std::string(text) + "'");
    }
    coords.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Position(std::move(coords));
}

std::string to_string(const Position& pos) { return join_coords(pos); }
std::string to_string(const MoveVector& v) { return join_coords(v); }

std::string to_string(const Move& m) {
  return std::to_string(m.k) + "*" + to_string(m.vector);
}

std::string to_string(Verdict v) { return v == Verdict::P ? "P" : "N"; }

}  // namespace wythoff
