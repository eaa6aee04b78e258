#include "doctest.h"

#include <random>

#include "csfa/error.hpp"
#include "csfa/lab.hpp"
#include "csfa/sync.hpp"
#include "oracles.hpp"

using namespace csfa;

namespace {

// a cyclic, b sends q0 to q1 and fixes everything else
Automaton cerny(std::size_t n) {
  std::vector<State> a(n), b(n);
  for (State i = 0; i < n; ++i) a[i] = (i + 1) % n, b[i] = i;
  b[0] = 1;
  return oracle::two_letter(a, b);
}

}  // namespace

TEST_CASE("three-state example") {
  const auto e2 = paper_examples().e2;
  CHECK(is_synchronizing_pairs(e2));
  auto w = shortest_sync_word(e2);
  REQUIRE(w);
  CHECK(render_word(e2, *w) == "bab");
  CHECK(check_cerny_bound(e2, *w));

  auto c = thm4_construction(e2);
  CHECK(render_word(e2, c.word) == "bbbaaaabbb");
  CHECK(c.m == 1);
  CHECK(c.level == 1);
  CHECK(c.k == 2);
  CHECK(c.order == 3);
  CHECK(oracle::collapses(e2, c.word));

  auto r = make_sync_result(e2, SyncMethod::thm4_construction, c.word);
  CHECK(r.synchronizing);
  CHECK(r.cerny_bound == 4);
  CHECK(r.within_bound == false);
}

TEST_CASE("non-synchronizing examples") {
  const auto fx = paper_examples();
  for (const auto* a : {&fx.a1, &fx.a2}) {
    CHECK_FALSE(is_synchronizing_pairs(*a));
    CHECK_FALSE(shortest_sync_word(*a).has_value());
    CHECK_FALSE(greedy_sync_word(*a).has_value());
  }
  try {
    thm4_construction(fx.a1);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("even state count") != std::string::npos);
  }
  CHECK_THROWS_AS(thm2_word(fx.a1), PreconditionError);
}

TEST_CASE("thm4 precondition order") {
  auto message = [](const Automaton& a) -> std::string {
    try {
      thm4_construction(a);
    } catch (const PreconditionError& e) {
      return e.what();
    }
    return {};
  };
  CHECK(message(cerny(5)).find("not semi-flower") != std::string::npos);
  auto fixed = make_canonical(std::vector<State>{0, 0, 0, 0, 0});
  CHECK(message(fixed).find("no letter has a cycle of length 2") != std::string::npos);
  // two petals q0 <-> q1 and q0 <-> q2, no 3-cycle letter
  auto non_circular = oracle::two_letter({1, 0, 0}, {2, 0, 0});
  REQUIRE(is_semi_flower(non_circular).holds);
  CHECK(message(non_circular).find("not circular") != std::string::npos);
}

TEST_CASE("fixed-point construction") {
  auto a = make_canonical(std::vector<State>{0, 0, 0, 0, 0});
  CHECK(thm2_word(a) == Word{1});
  auto deep = make_canonical(std::vector<State>{0, 0, 0, 4, 0});  // q3 -> q4 -> q0
  CHECK(thm2_word(deep) == power(1, 2));
  CHECK(oracle::collapses(deep, thm2_word(deep)));
  CHECK_THROWS_AS(thm2_word(paper_examples().e2), PreconditionError);
}

TEST_CASE("five-state odd 2-cycle construction") {
  auto a = make_canonical(std::vector<State>{1, 0, 0, 0, 0});
  auto c = thm4_construction(a);
  CHECK(oracle::collapses(a, c.word));
  CHECK(c.k >= 1);
  CHECK(c.k <= c.order);
  // b^(1+2l) a^(k(n-m)) b^(1+2l)
  Word expected = power(1, 1 + 2 * c.level);
  auto mid = power(0, c.k * (5 - c.m));
  expected.insert(expected.end(), mid.begin(), mid.end());
  auto tail = power(1, 1 + 2 * c.level);
  expected.insert(expected.end(), tail.begin(), tail.end());
  CHECK(c.word == expected);
}

TEST_CASE("odd 2-cycle construction synchronizes every candidate for n = 3, 5") {
  for (std::size_t n : {3, 5}) {
    std::size_t count = 0;
    enumerate({.n = n, .filter = {.csfa = true, .cycle_length = 2}},
              [&](const Automaton& a, auto, auto) {
                auto c = thm4_construction(a);
                REQUIRE(oracle::collapses(a, c.word));
                REQUIRE(c.k <= c.order);
                ++count;
              });
    CHECK(count > 0);
  }
}

TEST_CASE("Cerny automata reach the bound") {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto a = cerny(n);
    auto w = shortest_sync_word(a);
    REQUIRE(w);
    CHECK(w->size() == (n - 1) * (n - 1));
    CHECK(check_cerny_bound(a, *w));
    auto g = greedy_sync_word(a);
    REQUIRE(g);
    CHECK(oracle::collapses(a, *g));
    CHECK(g->size() >= w->size());
  }
}

TEST_CASE("subset search matches word enumeration") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 400; ++it) {
    const std::size_t n = 2 + rng() % 3;
    auto a = oracle::two_letter(oracle::random_row(rng, n), oracle::random_row(rng, n));
    auto w = shortest_sync_word(a);
    // words of length up to (n-1)^2 suffice when one exists
    auto brute = oracle::shortest_by_enumeration(a, (n - 1) * (n - 1));
    REQUIRE(w.has_value() == brute.has_value());
    if (w) CHECK(*w == *brute);
    CHECK(is_synchronizing_pairs(a) == w.has_value());
    auto g = greedy_sync_word(a);
    CHECK(g.has_value() == w.has_value());
    if (g) CHECK(oracle::collapses(a, *g));
  }
}

TEST_CASE("limits and bad words") {
  std::vector<State> id(21);
  for (State i = 0; i < 21; ++i) id[i] = i;
  auto big = oracle::two_letter(id, id);
  CHECK_THROWS_AS(shortest_sync_word(big), LimitError);
  CHECK_THROWS_AS(shortest_sync_word(big, 40), LimitError);  // above the ceiling
  CHECK_FALSE(shortest_sync_word(big, 21).has_value());
  CHECK_THROWS_AS(make_sync_result(paper_examples().e2, SyncMethod::subset_bfs, Word{1}),
                  PreconditionError);
  CHECK_THROWS_AS(check_cerny_bound(paper_examples().e2, Word{}), PreconditionError);
  CHECK(cerny_bound(7) == 36);
}

TEST_CASE("method names") {
  CHECK(to_string(SyncMethod::subset_bfs) == "subset-bfs");
  CHECK(to_string(SyncMethod::pair_greedy) == "pair-greedy");
  CHECK(to_string(SyncMethod::thm2_construction) == "thm2-construction");
  CHECK(to_string(SyncMethod::thm4_construction) == "thm4-construction");
  CHECK(to_string(SyncMethod::pair_criterion) == "pair-criterion");
}
