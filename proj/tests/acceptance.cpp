// Acceptance suite: one line per exit criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wythoff/game.hpp"
#include "wythoff/oracle.hpp"
#include "wythoff/sponge.hpp"

using namespace wythoff;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

std::set<Position> as_set(const std::vector<Position>& v) { return {v.begin(), v.end()}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome nim_sum_equivalence(std::size_t n, Natural bound, double time_limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = solve_box(GameSpec::wythoff(n), bound);
  const auto solved = as_set(table.p_positions());
  const auto expected = oracles::filter_nim_zero(n, bound);
  const double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << table.cells() << " positions, " << solved.size() << " P (expected " << expected.size() << "), "
     << elapsed << " s (limit " << time_limit << " s)";
  return {solved == expected && elapsed < time_limit, os.str()};
}

Outcome classic_beatty() {
  const auto table = solve_box(GameSpec::wythoff(2), 64);
  const auto solved = as_set(table.p_positions());
  const auto beatty = as_set(beatty_p_positions(64));
  const bool witness_n = table.verdict(Position{1, 1}) == Verdict::N;
  const bool differs = solved != oracles::filter_nim_zero(2, 64);
  std::ostringstream os;
  os << solved.size() << " P-positions, Beatty " << beatty.size() << ", (1,1) is "
     << to_string(table.verdict(Position{1, 1}));
  return {solved == beatty && witness_n && differs, os.str()};
}

Outcome p_set_harness() {
  const auto spec = GameSpec::wythoff(3);
  const auto zero = nim_zero_positions(3, 16);
  const auto base = verify_p_set(spec, zero, 16);

  std::vector<Position> removed;
  for (const auto& p : zero) {
    if (p != Position{1, 2, 3}) removed.push_back(p);
  }
  const auto r1 = verify_p_set(spec, removed, 16);

  auto added = zero;
  added.push_back(Position{1, 1, 1});
  const auto r2 = verify_p_set(spec, added, 16);

  const bool ok = base.valid() && !r1.valid() && r1.violation->at == Position{1, 2, 3} &&
                  r1.violation->condition == PSetCondition::kNoMoveIntoCandidate && !r2.valid() &&
                  r2.violation->at == Position{1, 1, 1} &&
                  r2.violation->condition == PSetCondition::kMoveWithinCandidate;
  std::ostringstream os;
  os << "valid=" << base.valid() << " over " << base.checked << " cells";
  if (r1.violation) os << "; without (1,2,3): violation at " << to_string(r1.violation->at);
  if (r2.violation) os << "; with (1,1,1): violation at " << to_string(r2.violation->at);
  return {ok, os.str()};
}

Outcome winning_move_soundness() {
  const auto spec = GameSpec::wythoff(3);
  std::size_t n_positions = 0;
  std::size_t p_moves = 0;
  std::size_t failures = 0;
  oracles::for_each_in_box(3, 16, [&](const std::vector<Natural>& c) {
    const Position x(c);
    if (nim_sum(x.coords()) != 0) {
      ++n_positions;
      const Move m = winning_move(x);
      const auto legal = legal_moves(spec, x);
      const bool is_legal = std::find(legal.begin(), legal.end(), m) != legal.end();
      if (!is_legal || nim_sum(apply_move(x, m).coords()) != 0) ++failures;
    } else {
      for (const auto& m : legal_moves(spec, x)) {
        ++p_moves;
        if (nim_sum(apply_move(x, m).coords()) == 0) ++failures;
      }
    }
  });
  std::ostringstream os;
  os << n_positions << " N-positions, " << p_moves << " moves from P-positions, " << failures << " failures";
  return {failures == 0, os.str()};
}

Outcome decomposition() {
  bool ok = true;
  std::ostringstream os;
  for (unsigned m = 1; m <= 6; ++m) {
    const auto level = generate_level(3, m);
    const auto previous = generate_level(3, m - 1);
    const auto parts = decompose(level);
    std::size_t total = 0;
    bool equal = parts.size() == 4;
    for (const auto& [v, part] : parts) {
      equal = equal && part == previous;
      total += part.size();
    }
    const std::size_t expected = std::size_t{1} << (2 * m);
    ok = ok && equal && total == level.size() && level.size() == expected;
    os << (m > 1 ? " " : "") << "m=" << m << ":" << level.size() << "=" << parts.size() << "x" << previous.size();
  }
  return {ok, os.str()};
}

Outcome ifs_shadow() {
  bool ok = true;
  std::ostringstream os;
  for (unsigned m = 1; m <= 6; ++m) {
    const bool r = ifs_check(generate_level(3, m));
    ok = ok && r;
    if (!r) os << "n=3 m=" << m << " failed; ";
  }
  for (unsigned m = 1; m <= 3; ++m) {
    const bool r = ifs_check(generate_level(5, m));
    ok = ok && r;
    if (!r) os << "n=5 m=" << m << " failed; ";
  }
  if (ok) os << "n=3 m=1..6 and n=5 m=1..3 exact";
  return {ok, os.str()};
}

Outcome dimension_slope() {
  std::vector<SpongeLevel> levels;
  for (unsigned m = 1; m <= 6; ++m) levels.push_back(generate_level(3, m));
  bool ok = true;
  std::ostringstream os;
  for (const auto& row : box_count(levels)) {
    ok = ok && row.slope && *row.slope == Fraction{2, 1} && row.count == (std::size_t{1} << (2 * row.m));
    os << (row.m > 1 ? " " : "") << row.m << ":" << row.count;
  }
  os << (ok ? ", slope 2 at every level" : ", slope mismatch");
  return {ok, os.str()};
}

Outcome closure_membership() {
  std::size_t checked = 0;
  std::size_t rejected = 0;
  for (unsigned m = 0; m <= 6; ++m) {
    for (const auto& p : scale(generate_level(3, m))) {
      ++checked;
      if (!q_membership(p)) ++rejected;
    }
  }
  const bool e1 = q_membership({Dyadic(0, 0), Dyadic(0, 0), Dyadic(0, 0)});
  const bool e2 = q_membership({Dyadic(1, 1), Dyadic(1, 2), Dyadic(3, 2)});
  const bool e3 = q_membership({Dyadic(1, 1), Dyadic(0, 0), Dyadic(0, 0)});
  std::ostringstream os;
  os << checked << " scaled points, " << rejected << " rejected; examples " << e1 << e2 << e3
     << " (expected 110)";
  return {rejected == 0 && e1 && e2 && !e3, os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"Nim-sum equivalence n=3, bound 16", [] { return nim_sum_equivalence(3, 16, 10.0); }},
      {"Nim-sum equivalence n=5, bound 8", [] { return nim_sum_equivalence(5, 8, 60.0); }},
      {"Classic game equals Beatty pairs, bound 64", classic_beatty},
      {"P-set criterion harness", p_set_harness},
      {"Winning-move soundness on [0,16)^3", winning_move_soundness},
      {"Sponge decomposition n=3, m=1..6", decomposition},
      {"IFS fixed-point shadow", ifs_shadow},
      {"Box-count slope n=3, m=1..6", dimension_slope},
      {"Closure membership of scaled points", closure_membership},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << o.detail << '\n';
    failed += o.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
