#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "wythoff/errors.hpp"
#include "wythoff/oracle.hpp"

using namespace wythoff;

namespace {

// Enumerates every legal move and keeps those reaching nim-sum 0.
std::vector<Move> brute_winning_moves(const GameSpec& spec, const Position& x) {
  std::vector<Move> out;
  for (const auto& m : legal_moves(spec, x)) {
    if (nim_sum(apply_move(x, m).coords()) == 0) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("is_p_position") {
  CHECK(is_p_position(Position{0, 0, 0}));
  CHECK(is_p_position(Position{1, 2, 3}));
  CHECK_FALSE(is_p_position(Position{1, 1, 1}));
  CHECK(is_p_position(Position{0, 0, 0, 5, 5}));
  CHECK_THROWS_AS(is_p_position(Position{1, 2}), DimensionError);
  CHECK_THROWS_AS(is_p_position(Position{1, 2, 3, 0}), DimensionError);
  CHECK_THROWS_AS(is_p_position(Position{1}), DimensionError);
}

TEST_CASE("winning_move examples") {
  const Move a = winning_move(Position{1, 1, 1});
  CHECK(a == Move{MoveVector{1, 0, 0}, 1});
  CHECK(apply_move(Position{1, 1, 1}, a) == Position{0, 1, 1});
  CHECK(oracles::TreeSolver(GameSpec::wythoff(3)).is_p({0, 1, 1}));

  const Move b = winning_move(Position{7, 5, 6});
  CHECK(b == Move{MoveVector{1, 0, 0}, 4});
  CHECK(apply_move(Position{7, 5, 6}, b) == Position{3, 5, 6});

  const Move c = winning_move(Position{0, 0, 0, 0, 1});
  CHECK(c == Move{MoveVector{0, 0, 0, 0, 1}, 1});
  CHECK(apply_move(Position{0, 0, 0, 0, 1}, c) == Position{0, 0, 0, 0, 0});

  // Lowest-index heap with the top discrepancy bit: heap 2 here.
  CHECK(winning_move(Position{1, 4, 0}) == Move{MoveVector{0, 1, 0}, 3});

  CHECK_THROWS_AS(winning_move(Position{1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(winning_move(Position{1, 2}), DimensionError);
}

TEST_CASE("winning_move on huge heaps") {
  const Natural big = ~Natural{0};
  const Position x{big, big - 1, 12345};
  const Move m = winning_move(x);
  const Position y = apply_move(x, m);
  CHECK(nim_sum(y.coords()) == 0);
  CHECK(m.k >= 1);
}

TEST_CASE("all_winning_moves examples") {
  const auto spec = GameSpec::wythoff(3);
  const std::vector<Move> ones{{MoveVector{1, 0, 0}, 1},
                               {MoveVector{0, 1, 0}, 1},
                               {MoveVector{0, 0, 1}, 1},
                               {MoveVector{1, 1, 1}, 1}};
  CHECK(all_winning_moves(spec, Position{1, 1, 1}) == ones);
  CHECK(all_winning_moves(spec, Position{1, 2, 3}).empty());
  CHECK(all_winning_moves(spec, Position{2, 0, 0}) == std::vector<Move>{{MoveVector{1, 0, 0}, 2}});
  CHECK_THROWS_AS(all_winning_moves(GameSpec::wythoff(5), Position{1, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(all_winning_moves(GameSpec(3, {MoveVector{1, 1, 1}}), Position{1, 1, 1}), InvalidArgument);
}

TEST_CASE("all_winning_moves matches brute-force enumeration") {
  for (std::size_t n : {3u, 5u}) {
    const auto spec = GameSpec::wythoff(n);
    const Natural bound = n == 3 ? 16 : 6;
    oracles::for_each_in_box(n, bound, [&](const std::vector<Natural>& c) {
      const Position x(c);
      const auto fast = all_winning_moves(spec, x);
      CHECK(fast == brute_winning_moves(spec, x));
      if (!is_p_position(x)) {
        CHECK(std::find(fast.begin(), fast.end(), winning_move(x)) != fast.end());
      }
    });
  }
}

TEST_CASE("diagonal winning moves on large random heaps") {
  std::mt19937_64 rng(99);
  const auto spec = GameSpec::wythoff(3);
  int diagonal_found = 0;
  for (int t = 0; t < 3000; ++t) {
    const Natural base = rng() >> 20;
    const Position x{base + rng() % 64, base + rng() % 64, base + rng() % 64};
    for (const auto& m : all_winning_moves(spec, x)) {
      CHECK(nim_sum(apply_move(x, m).coords()) == 0);
      diagonal_found += m.vector == MoveVector{1, 1, 1} ? 1 : 0;
    }
    // Cross-check the diagonal against a scan of small steps.
    const Natural low = std::min({x[0], x[1], x[2]});
    for (Natural k = 1; k <= std::min<Natural>(low, 256); ++k) {
      if (((x[0] - k) ^ (x[1] - k) ^ (x[2] - k)) == 0) {
        const auto moves = all_winning_moves(spec, x);
        CHECK(std::find(moves.begin(), moves.end(), Move{MoveVector{1, 1, 1}, k}) != moves.end());
      }
    }
  }
  CHECK(diagonal_found > 0);
}

TEST_CASE("oracle soundness, exhaustive on boxes") {
  struct Box {
    std::size_t n;
    Natural bound;
  };
  for (const Box box : {Box{3, 16}, Box{5, 8}}) {
    const auto spec = GameSpec::wythoff(box.n);
    const auto table = solve_box(spec, box.bound);
    oracles::for_each_in_box(box.n, box.bound, [&](const std::vector<Natural>& c) {
      const Position x(c);
      const bool p = is_p_position(x);
      CHECK(p == (table.verdict(x) == Verdict::P));
      if (p) {
        for (const auto& m : legal_moves(spec, x)) CHECK(nim_sum(apply_move(x, m).coords()) != 0);
      } else {
        const Move m = winning_move(x);
        CHECK(m.k >= 1);
        CHECK(nim_sum(apply_move(x, m).coords()) == 0);
      }
    });
  }
}

TEST_CASE("oracle is permutation invariant") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    std::vector<Natural> c(5);
    for (auto& v : c) v = rng() % 1000;
    if (t % 3 == 0) c[4] = c[0] ^ c[1] ^ c[2] ^ c[3];
    const bool p = is_p_position(Position(c));
    std::shuffle(c.begin(), c.end(), rng);
    CHECK(is_p_position(Position(c)) == p);
  }
}

TEST_CASE("engine_move") {
  CHECK_FALSE(engine_move(Position{0, 0, 0}).has_value());
  CHECK(engine_move(Position{7, 5, 6}) == Move{MoveVector{1, 0, 0}, 4});
  // Losing side: first legal move in spec order.
  CHECK(engine_move(Position{1, 2, 3}) == Move{MoveVector{1, 0, 0}, 1});
  CHECK(engine_move(Position{0, 3, 3}) == Move{MoveVector{0, 1, 0}, 1});
}

TEST_CASE("a diagonal move is never the only winning move") {
  const auto spec = GameSpec::wythoff(3);
  const MoveVector diag = MoveVector::diagonal(3);
  int with_diagonal = 0;
  oracles::for_each_in_box(3, 32, [&](const std::vector<Natural>& c) {
    const Position x(c);
    if (nim_sum(x.coords()) == 0) return;
    const auto moves = all_winning_moves(spec, x);
    const bool has_diag = std::any_of(moves.begin(), moves.end(), [&](const Move& m) { return m.vector == diag; });
    with_diagonal += has_diag ? 1 : 0;
    CHECK(moves.size() > (has_diag ? 1u : 0u));
  });
  CHECK(with_diagonal > 0);
}
