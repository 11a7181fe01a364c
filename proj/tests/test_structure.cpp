#include <random>

#include <nlohmann/json.hpp>

#include "betauto/error.hpp"
#include "betauto/reducer.hpp"
#include "betauto/structure.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace betauto;

namespace {

BetaContext context_of(oracle::Setting const& s) {
  std::vector<IntPoly> digits;
  for (auto const& d : s.digits) digits.push_back(make_int_poly(d));
  std::optional<IntPoly> minpoly;
  if (s.minpoly) minpoly = make_int_poly(*s.minpoly);
  return make_context(minpoly, digits);
}

oracle::Setting const intro{std::vector<long long>{-3, 1}, {{0}, {1}, {3}}};

bool contains_factor(Word const& w, Word const& f) {
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

std::vector<oracle::Setting> settings() {
  return {
      intro,
      {std::vector<long long>{-3, 1}, {{0}, {1}, {5}}},
      {std::vector<long long>{-3, 1}, {{0}, {3}, {7}}},
      {std::vector<long long>{-1, -1, 1}, {{0}, {1}}},
      {std::vector<long long>{-1, -1, -1, 1}, {{0}, {1}}},
      {std::vector<long long>{-1, 3}, {{0}, {1}, {3}}},
      {std::nullopt, {{0}, {1}, {0, 1}}},
      {std::nullopt, {{0}, {1}, {1, -1, 1}}},
  };
}

}  // namespace

TEST_CASE("intro reduced words avoid 10, or 03 in reverse order") {
  auto rel = build_relation_automaton(context_of(intro));
  auto red = build_reduced_automaton(rel, Order::lex);
  CHECK(red.num_states() == 2);
  auto rev = build_reduced_automaton(rel, Order::revlex);
  for (std::size_t n = 0; n <= 6; ++n) {
    for (auto const& w : oracle::words(3, n)) {
      CHECK(accepts(red, w) == !contains_factor(w, {1, 0}));
      CHECK(accepts(rev, w) == !contains_factor(w, {0, 2}));
    }
  }
  auto g = growth(red, 10, make_int_poly({1, -3, 1}));
  std::vector<BigInt> const fib_even{1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765, 17711};
  CHECK(g.counts == fib_even);
  CHECK(g.char_poly == make_int_poly({1, -3, 1}));
  CHECK(g.lambda.contains((3 + std::sqrt(5.0)) / 2));
  REQUIRE(g.pi_check);
  CHECK(g.pi_check->certified());
  auto j = g.to_json();
  CHECK(j["counts"][3] == "21");
  CHECK(j["pi_check"]["certified"] == true);
}

TEST_CASE("free semigroups reduce nothing") {
  auto rel = build_relation_automaton(context_of({std::vector<long long>{-3, 1}, {{0}, {1}, {5}}}));
  auto red = build_reduced_automaton(rel);
  CHECK(red.num_states() == 1);
  auto s = build_structure(rel);
  for (Letter g = 0; g < 3; ++g) {
    for (auto const& u : oracle::words(3, 3)) {
      Word ug = u;
      ug.push_back(g);
      Word v = ug;
      auto const& pairs = s.multipliers[g].alphabet();
      CHECK(accepts(s.multipliers[g], zip_words(pairs, ug, v)));
    }
  }
}

TEST_CASE("intro multipliers") {
  auto rel = build_relation_automaton(context_of(intro));
  auto s = build_structure(rel);
  auto const& pairs = s.multipliers[0].alphabet();
  // (u 1^n 0, u 0 3^n)
  CHECK(accepts(s.multipliers[0], zip_words(pairs, {2, 1, 1, 0}, {2, 0, 2, 2})));
  CHECK(accepts(s.multipliers[0], zip_words(pairs, {0}, {0})));
  // (u 1, u 1)
  CHECK(accepts(s.multipliers[1], zip_words(pairs, {0, 1}, {0, 1})));
  CHECK_FALSE(accepts(s.multipliers[1], zip_words(pairs, {1, 0, 1}, {1, 0, 1})));
}

TEST_CASE("structure agrees with brute force on every fixture") {
  for (auto const& setting : settings()) {
    auto ctx = context_of(setting);
    auto rel = build_relation_automaton(ctx);
    std::size_t const k = setting.digits.size();
    std::size_t const max_len = k == 2 ? 6 : 5;
    for (Order order : {Order::lex, Order::revlex}) {
      auto const s = build_structure(rel, order);
      auto const rank = order_rank(k, order);
      ReducerTable table(rel, s.reduced);
      auto const counts = count_series(s.reduced, max_len);
      for (std::size_t n = 0; n <= max_len; ++n) {
        CHECK(counts[n] == oracle::distinct_elements(setting, n));
        CHECK(count_elements_bruteforce(ctx, n) == counts[n]);
        for (auto const& u : oracle::words(k, n)) {
          Word const least = oracle::least_equivalent(setting, u, rank);
          CHECK(accepts(s.reduced, u) == (least == u));
          Word const v = table.reduce(u);
          CHECK(v == least);
          CHECK(table.reduce(v) == v);
          CHECK(words_equivalent(rel, u, v));
        }
      }
      // Multiplier soundness and completeness at small lengths.
      for (Letter g = 0; g < k; ++g) {
        auto const& m = s.multipliers[g];
        for (std::size_t n = 0; n + 1 <= std::min<std::size_t>(max_len, 4); ++n) {
          for (auto const& u : oracle::words(k, n)) {
            Word ug = u;
            ug.push_back(g);
            for (auto const& v : oracle::words(k, n + 1)) {
              bool const expected =
                  accepts(s.reduced, u) && accepts(s.reduced, v) && oracle::related(setting, ug, v);
              CHECK(accepts(m, zip_words(m.alphabet(), ug, v)) == expected);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("reduction examples") {
  auto rel = build_relation_automaton(context_of(intro));
  auto red = build_reduced_automaton(rel);
  ReducerTable table(rel, red);
  auto const sigma = digit_alphabet(rel.context);
  auto reduce = [&](std::string const& w) {
    return format_word(sigma, table.reduce(parse_word(sigma, w)));
  };
  CHECK(reduce("10") == "03");
  CHECK(reduce("03") == "03");
  CHECK(reduce("110") == "033");
  CHECK(reduce("") == "");
  CHECK(words_equivalent(rel, parse_word(sigma, "110"), parse_word(sigma, "033")));
  CHECK_FALSE(words_equivalent(rel, parse_word(sigma, "0"), parse_word(sigma, "1")));
  CHECK_FALSE(words_equivalent(rel, parse_word(sigma, "0"), parse_word(sigma, "00")));
  CHECK_THROWS_AS((void)parse_word(sigma, "12"), Error);

  std::mt19937 rng(5);
  std::uniform_int_distribution<Letter> letter(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    Word u(8 + trial % 40);
    for (auto& a : u) a = letter(rng);
    Word const v = table.reduce(u);
    CHECK(accepts(red, v));
    CHECK(table.reduce(v) == v);
    CHECK(words_equivalent(rel, u, v));
  }
}

TEST_CASE("word formatting") {
  auto wide = Alphabet::plain({"0", "β", "β+1"});
  CHECK(format_word(wide, {0, 2, 1}) == "0,β+1,β");
  CHECK(parse_word(wide, "0,β+1,β") == Word{0, 2, 1});
  CHECK(parse_word(wide, "0β+1β") == Word{0, 2, 1});
  auto narrow = Alphabet::plain({"0", "1", "β"});
  CHECK(format_word(narrow, {2, 0}) == "β0");
}

TEST_CASE("growth ordering between a base and its formal counterpart") {
  // P = X, Q = X^2 - X + 1 against the same digits evaluated at 3.
  auto formal = build_relation_automaton(context_of({std::nullopt, {{0}, {0, 1}, {1, -1, 1}}}));
  auto three = build_relation_automaton(context_of({std::vector<long long>{-3, 1}, {{0}, {3}, {7}}}));
  auto lf = growth(build_reduced_automaton(formal), 5).lambda;
  auto l3 = growth(build_reduced_automaton(three), 5).lambda;
  CHECK(l3.lower() <= lf.upper());
}

TEST_CASE("brute-force cap") {
  CHECK_THROWS_AS((void)count_elements_bruteforce(context_of(intro), 8), Error);
  CHECK(count_elements_bruteforce(context_of(intro), 0) == 1);
  CHECK(count_elements_bruteforce(context_of(intro), 2) == 8);
}
