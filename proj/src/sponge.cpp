#include "wythoff/sponge.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "wythoff/errors.hpp"

namespace wythoff {

namespace {

constexpr std::size_t kMaxTDimension = 31;
constexpr unsigned kMaxLevel = 63;

void require_sponge_dimension(std::size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw DimensionError("sponge undefined for this dimension: n = " + std::to_string(n) +
                         " (requires odd n >= 3)");
  }
}

}  // namespace

TSet t_set(std::size_t n) {
  require_sponge_dimension(n);
  if (n > kMaxTDimension) throw BudgetExceeded("T-set dimension too large: " + std::to_string(n));
  std::vector<Position> vs;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    std::vector<Natural> c(n);
    // Coordinate 0 is the most significant bit so mask order is lexicographic.
    for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> (n - 1 - i)) & 1u;
    vs.emplace_back(std::move(c));
  }
  return TSet(n, std::move(vs));
}

// ---------------------------------------------------------------------------
// SpongeLevel

SpongeLevel::SpongeLevel(std::size_t n, unsigned m, std::vector<Natural> flat)
    : n_(n), m_(m), coords_(std::move(flat)) {}

void SpongeLevel::sort_points() {
  const std::size_t count = size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = point(a);
    const auto pb = point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  std::vector<Natural> sorted;
  sorted.reserve(coords_.size());
  for (std::size_t i : order) {
    const auto p = point(i);
    sorted.insert(sorted.end(), p.begin(), p.end());
  }
  coords_ = std::move(sorted);
}

SpongeLevel SpongeLevel::from_points(std::size_t n, unsigned m, std::span<const Position> points) {
  require_sponge_dimension(n);
  if (m > kMaxLevel) throw InvalidArgument("sponge level must be at most 63");
  const Natural limit = Natural{1} << m;
  std::vector<Natural> flat;
  flat.reserve(points.size() * n);
  for (const auto& p : points) {
    if (p.size() != n) throw DimensionError("sponge point " + to_string(p) + " has the wrong dimension");
    for (Natural x : p.coords()) {
      if (x >= limit) throw InvalidArgument("sponge point " + to_string(p) + " lies outside [0,2^m)^n");
    }
    if (nim_sum(p.coords()) != 0) throw InvalidArgument("sponge point " + to_string(p) + " has nonzero nim-sum");
    flat.insert(flat.end(), p.coords().begin(), p.coords().end());
  }
  SpongeLevel level(n, m, std::move(flat));
  level.sort_points();
  for (std::size_t i = 1; i < level.size(); ++i) {
    if (std::ranges::equal(level.point(i - 1), level.point(i))) {
      throw InvalidArgument("duplicate sponge point");
    }
  }
  return level;
}

std::vector<Position> SpongeLevel::points() const {
  std::vector<Position> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const auto p = point(i);
    out.emplace_back(std::vector<Natural>(p.begin(), p.end()));
  }
  return out;
}

bool SpongeLevel::contains(std::span<const Natural> p) const {
  if (p.size() != n_) return false;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto q = point(mid);
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::ranges::equal(point(lo), p);
}

SpongeLevel lift(const SpongeLevel& level, std::size_t max_cells) {
  if (level.m() >= kMaxLevel) throw InvalidArgument("sponge level must be at most 63");
  const TSet t = t_set(level.n());
  const std::size_t cells = level.coords_.size() * t.size();
  if (level.coords_.size() != 0 && cells / t.size() != level.coords_.size()) {
    throw BudgetExceeded("sponge size overflows");
  }
  if (cells > max_cells) {
    throw BudgetExceeded("sponge level " + std::to_string(level.m() + 1) + " needs " +
                         std::to_string(cells) + " cells, budget is " + std::to_string(max_cells));
  }
  const Natural step = Natural{1} << level.m();
  std::vector<Natural> flat;
  flat.reserve(cells);
  for (const auto& v : t.vectors()) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto p = level.point(i);
      for (std::size_t j = 0; j < level.n(); ++j) flat.push_back(p[j] + step * v[j]);
    }
  }
  SpongeLevel next(level.n(), level.m() + 1, std::move(flat));
  next.sort_points();
  return next;
}

SpongeLevel generate_level(std::size_t n, unsigned m, std::size_t max_cells) {
  require_sponge_dimension(n);
  if (m > kMaxLevel) throw InvalidArgument("sponge level must be at most 63");
  // |P_m| * n = 2^{m(n-1)} * n stored coordinates.
  const std::size_t exponent = static_cast<std::size_t>(m) * (n - 1);
  if (exponent >= 63 || (std::size_t{1} << exponent) > max_cells / n) {
    throw BudgetExceeded("sponge level " + std::to_string(m) + " in dimension " + std::to_string(n) +
                         " exceeds the budget of " + std::to_string(max_cells) + " cells");
  }
  const Position origin(std::vector<Natural>(n, 0));
  SpongeLevel level = SpongeLevel::from_points(n, 0, std::span(&origin, 1));
  while (level.m() < m) level = lift(level, max_cells);
  return level;
}

std::map<Position, SpongeLevel> decompose(const SpongeLevel& level) {
  if (level.m() == 0) throw InvalidArgument("cannot decompose the level-0 sponge");
  const unsigned digit = level.m() - 1;
  const Natural step = Natural{1} << digit;
  std::map<Position, std::vector<Natural>> parts;
  for (std::size_t i = 0; i < level.size(); ++i) {
    const auto p = level.point(i);
    std::vector<Natural> pattern(level.n());
    for (std::size_t j = 0; j < level.n(); ++j) pattern[j] = bit(p[j], digit);
    auto& flat = parts[Position(pattern)];
    for (std::size_t j = 0; j < level.n(); ++j) flat.push_back(p[j] - step * pattern[j]);
  }
  // Points sharing a top-digit pattern keep their relative lexicographic order
  // after the common translation, so each part is already sorted.
  std::map<Position, SpongeLevel> out;
  for (auto& [v, flat] : parts) {
    out.emplace(v, SpongeLevel(level.n(), digit, std::move(flat)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dyadic points

Dyadic::Dyadic(Natural numerator, unsigned level) : numerator_(numerator), level_(level) {
  if (level_ > kMaxLevel) throw InvalidArgument("dyadic level must be at most 63");
  if (numerator_ > (Natural{1} << level_)) {
    throw InvalidArgument("dyadic coordinate " + std::to_string(numerator_) + "/2^" +
                          std::to_string(level_) + " lies outside [0,1]");
  }
  if (numerator_ == 0) {
    level_ = 0;
    return;
  }
  const unsigned twos = static_cast<unsigned>(std::countr_zero(numerator_));
  const unsigned drop = std::min(twos, level_);
  numerator_ >>= drop;
  level_ -= drop;
}

std::set<DyadicPoint> scale(const SpongeLevel& level) {
  std::set<DyadicPoint> out;
  for (std::size_t i = 0; i < level.size(); ++i) {
    DyadicPoint p;
    p.reserve(level.n());
    for (Natural x : level.point(i)) p.emplace_back(x, level.m());
    out.insert(std::move(p));
  }
  return out;
}

bool q_membership(const DyadicPoint& p) {
  require_sponge_dimension(p.size());
  unsigned prefix = 0;
  for (const auto& c : p) prefix = std::max(prefix, c.level());

  // Each expansion choice is encoded as its first `prefix` digits (digit k at
  // bit prefix-k) plus bit 63 for an all-ones tail. The point is a member
  // when some choice per coordinate XORs to zero, a GF(2) linear system.
  constexpr Natural kTail = Natural{1} << 63;
  Natural target = 0;
  std::vector<Natural> basis;
  for (const auto& c : p) {
    const unsigned shift = prefix - c.level();
    if (c.numerator() == 0) continue;
    if (c.level() == 0) {  // the value 1 = 0.111...
      target ^= ((Natural{1} << prefix) - 1) | kTail;
      continue;
    }
    const Natural terminating = c.numerator() << shift;
    const Natural ones_tail = ((c.numerator() - 1) << shift) | ((Natural{1} << shift) - 1) | kTail;
    target ^= terminating;
    Natural d = terminating ^ ones_tail;
    for (Natural b : basis) d = std::min(d, d ^ b);
    if (d != 0) {
      basis.push_back(d);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }
  for (Natural b : basis) target = std::min(target, target ^ b);
  return target == 0;
}

bool ifs_check(const SpongeLevel& level) {
  if (level.m() == 0) throw InvalidArgument("ifs_check needs level m >= 1");
  const auto lhs = scale(level);
  const auto previous = scale(generate_level(level.n(), level.m() - 1));
  const TSet t = t_set(level.n());
  std::set<DyadicPoint> rhs;
  for (const auto& v : t.vectors()) {
    for (const auto& y : previous) {
      DyadicPoint image;
      image.reserve(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        // (v_i + a/2^L) / 2 = (v_i 2^L + a) / 2^{L+1}
        const unsigned l = y[i].level();
        image.emplace_back((v[i] << l) + y[i].numerator(), l + 1);
      }
      rhs.insert(std::move(image));
    }
  }
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Counting and export

std::vector<BoxCount> box_count(std::span<const SpongeLevel> levels) {
  std::vector<BoxCount> out;
  for (const auto& level : levels) {
    if (level.n() != levels.front().n()) throw InvalidArgument("box_count levels must share a dimension");
    BoxCount row{level.m(), level.size(), std::nullopt};
    if (level.m() > 0 && std::has_single_bit(level.size())) {
      const Natural log2 = static_cast<Natural>(std::countr_zero(level.size()));
      const Natural g = std::gcd(log2, Natural{level.m()});
      row.slope = Fraction{log2 / g, level.m() / g};
    }
    out.push_back(row);
  }
  return out;
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "csv") return ExportFormat::kCsv;
  if (name == "ply") return ExportFormat::kPly;
  if (name == "json") return ExportFormat::kJson;
  throw InvalidArgument("unknown export format '" + std::string(name) + "' (csv, ply, json)");
}

std::string export_points(const SpongeLevel& level, ExportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ExportFormat::kCsv:
      for (std::size_t i = 0; i < level.n(); ++i) os << (i ? "," : "") << 'x' << (i + 1);
      os << '\n';
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto p = level.point(i);
        for (std::size_t j = 0; j < p.size(); ++j) os << (j ? "," : "") << p[j];
        os << '\n';
      }
      break;
    case ExportFormat::kPly:
      if (level.n() != 3) throw DimensionError("PLY export needs n = 3, got " + std::to_string(level.n()));
      os << "ply\n"
         << "format ascii 1.0\n"
         << "element vertex " << level.size() << '\n'
         << "property float x\n"
         << "property float y\n"
         << "property float z\n"
         << "end_header\n";
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto p = level.point(i);
        os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
      }
      break;
    case ExportFormat::kJson: {
      nlohmann::json j;
      j["n"] = level.n();
      j["m"] = level.m();
      auto points = nlohmann::json::array();
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto p = level.point(i);
        points.push_back(std::vector<Natural>(p.begin(), p.end()));
      }
      j["points"] = std::move(points);
      os << j.dump();
      break;
    }
  }
  return os.str();
}

std::string to_string(const Dyadic& d) {
  if (d.level() == 0) return std::to_string(d.numerator());
  return std::to_string(d.numerator()) + "/" + std::to_string(Natural{1} << d.level());
}

std::string to_string(const DyadicPoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += to_string(p[i]);
  }
  return out + ")";
}

}  // namespace wythoff
