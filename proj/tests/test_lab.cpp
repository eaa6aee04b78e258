#include "doctest.h"

#include <random>

#include "csfa/error.hpp"
#include "csfa/lab.hpp"
#include "oracles.hpp"

using namespace csfa;

namespace {

std::vector<State> rotation(std::size_t n) {
  std::vector<State> a(n);
  for (State i = 0; i < n; ++i) a[i] = (i + 1) % n;
  return a;
}

std::vector<std::vector<State>> rows_of(const EnumerationSpec& spec) {
  std::vector<std::vector<State>> out;
  enumerate(spec, [&](const Automaton&, std::span<const State> row, std::uint64_t) {
    out.emplace_back(row.begin(), row.end());
  });
  return out;
}

std::uint64_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("canonical automata") {
  std::vector<State> b{1, 0, 0};
  auto a = make_canonical(b);
  CHECK(a == paper_examples().e2);
  CHECK(a.row(0)[2] == 0);
  CHECK(b_row_at(3, 0) == std::vector<State>{0, 0, 0});
  CHECK(b_row_at(3, 9) == std::vector<State>{1, 0, 0});
  CHECK(b_row_at(3, 26) == std::vector<State>{2, 2, 2});
  CHECK(ipow(7, 7) == 823543);
}

TEST_CASE("n = 3 enumeration equals the brute-force filter") {
  EnumerationSpec spec{.n = 3, .filter = {.csfa = true}};
  std::vector<std::vector<State>> expected;
  for (std::uint64_t i = 0; i < 27; ++i) {
    auto row = oracle::row_from_index(3, i);
    if (oracle::is_sfa_by_definition(oracle::two_letter(rotation(3), row))) expected.push_back(row);
  }
  CHECK(rows_of(spec) == expected);
  CHECK(expected.size() == 6);
  CHECK(candidate_count(spec) == 27);
}

TEST_CASE("canonical CSFA count is n!") {
  for (std::size_t n = 2; n <= 6; ++n) {
    std::uint64_t count = 0;
    enumerate({.n = n, .filter = {.csfa = true}},
              [&](const Automaton&, auto, auto) { ++count; });
    CHECK(count == factorial(n));
  }
}

TEST_CASE("fixtures are enumerated") {
  auto contains = [](std::size_t n, const std::vector<State>& row) {
    auto rows = rows_of({.n = n, .filter = {.csfa = true}});
    return std::find(rows.begin(), rows.end(), row) != rows.end();
  };
  CHECK(contains(2, {0, 0}));
  CHECK(contains(3, {1, 0, 0}));
  CHECK(contains(6, {3, 3, 3, 0, 0, 0}));
}

TEST_CASE("filters") {
  auto f = parse_filter("csfa,cycle2");
  CHECK(f.csfa);
  CHECK(f.cycle_length == 2u);
  CHECK(to_string(f) == "csfa,cycle2");
  CHECK(parse_filter("").passes(paper_examples().a1));
  CHECK_THROWS(parse_filter("bogus"));
  CHECK(f.passes(paper_examples().a1));
  CHECK_FALSE(parse_filter("cycle3").passes(paper_examples().a1));
  // cycle filter agrees with a direct count of b-cycles through q0
  for (const auto& row : rows_of({.n = 4, .filter = parse_filter("csfa,cycle2")})) {
    CHECK(row[0] != 0);
    CHECK(row[row[0]] == 0);
  }
}

TEST_CASE("exhaustive limit") {
  CHECK_THROWS_AS(enumerate({.n = max_exhaustive_n + 1}, [](auto&&...) {}), LimitError);
}

TEST_CASE("partitions cover the range in order") {
  for (std::uint64_t total : {0ull, 1ull, 7ull, 100ull}) {
    for (std::size_t parts : {1u, 3u, 8u}) {
      auto ranges = partition_range(total, parts);
      std::uint64_t at = 0;
      for (auto [b, e] : ranges) {
        CHECK(b == at);
        CHECK(e >= b);
        at = e;
      }
      CHECK(at == total);
    }
  }
}

TEST_CASE("random enumeration and sampling are deterministic") {
  EnumerationSpec spec{.n = 6, .filter = {.csfa = true}, .mode = EnumerationMode::random,
                       .count = 5000, .seed = 99};
  auto first = rows_of(spec);
  CHECK(first == rows_of(spec));
  spec.seed = 100;
  CHECK(first != rows_of(spec));

  CsfaSampler s1(7, 3), s2(7, 3);
  for (int i = 0; i < 1000; ++i) {
    auto a = s1.next();
    CHECK(a == s2.next());
    REQUIRE(oracle::is_sfa_by_definition(a));
    CHECK(a.row(0)[6] == 0);
  }
  CHECK(s1.accepted() == 1000);
  CHECK(s1.attempts() >= 1000);
  CHECK(random_csfa(5, 8) == random_csfa(5, 8));
}

TEST_CASE("uniform_below stays in range") {
  std::mt19937_64 rng(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) ++hist[uniform_below(rng, 7)];
  for (int h : hist) CHECK(h > 800);
}

TEST_CASE("sampler gives up after max attempts") {
  // the CSFA fraction at n = 8 is 8!/8^8 ~ 0.0024
  CsfaSampler s(8, 1, 5);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 1000; ++i) s.next();
      }(),
      LimitError);
}

TEST_CASE("fixture self-checks all confirm") {
  auto checks = check_fixtures();
  CHECK(checks.size() == 17);
  for (const auto& c : checks) {
    INFO(c.fixture << " " << c.property);
    CHECK(c.confirmed);
  }
}

TEST_CASE("sweeps: parallel equals serial, counts match n!") {
  SweepOptions serial;
  SweepOptions parallel;
  parallel.threads = 4;
  for (std::size_t n = 2; n <= 6; ++n) {
    auto s = sweep_exhaustive(n, serial);
    auto p = sweep_exhaustive(n, parallel);
    CHECK(s.csfa == factorial(n));
    CHECK(s.generated == ipow(n, n));
    CHECK(s.csfa == s.synchronizing + s.non_synchronizing);
    CHECK(p.csfa == s.csfa);
    CHECK(p.synchronizing == s.synchronizing);
    CHECK(p.by_cycle_length.size() == s.by_cycle_length.size());
    CHECK(p.first_even_two_cycle_non_sync == s.first_even_two_cycle_non_sync);
    CHECK(p.max_shortest_word == s.max_shortest_word);
    CHECK(p.fixtures_enumerated == s.fixtures_enumerated);
    CHECK(s.one_cluster.checked == s.csfa);
    CHECK(s.decider_agreement.checked == s.csfa);
  }
}

TEST_CASE("counter-evidence at n = 6") {
  auto s = sweep_exhaustive(6, {});
  CHECK(s.even_two_cycle_non_sync > 0);
  REQUIRE(s.first_even_two_cycle_non_sync);
  auto a = make_canonical(*s.first_even_two_cycle_non_sync);
  CHECK_FALSE(oracle::monoid_has_constant(a));
  CHECK(std::find(s.fixtures_enumerated.begin(), s.fixtures_enumerated.end(), "A1") !=
        s.fixtures_enumerated.end());
}
