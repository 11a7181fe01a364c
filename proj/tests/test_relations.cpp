#include <random>

#include "betauto/error.hpp"
#include "betauto/relations.hpp"
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

/// Exhaustive agreement with the oracle for |u| = |v| <= n.
void check_against_oracle(oracle::Setting const& s, std::size_t n) {
  auto ctx = context_of(s);
  auto rel = build_relation_automaton(ctx);
  auto const& pairs = rel.automaton.alphabet();
  for (std::size_t len = 0; len <= n; ++len) {
    auto const ws = oracle::words(s.digits.size(), len);
    for (auto const& u : ws) {
      for (auto const& v : ws) {
        bool const expected = oracle::related(s, u, v);
        CHECK(accepts(rel.automaton, zip_words(pairs, u, v)) == expected);
        CHECK(verify_relation(ctx, u, v) == expected);
      }
    }
  }
}

oracle::Setting const intro{std::vector<long long>{-3, 1}, {{0}, {1}, {3}}};

}  // namespace

TEST_CASE("intro relation automaton") {
  auto ctx = context_of(intro);
  auto rel = build_relation_automaton(ctx);
  auto const& a = rel.automaton;
  CHECK(a.num_states() == 3);
  std::vector<std::string> labels;
  for (State s = 0; s < a.num_states(); ++s) labels.push_back(a.label(s));
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::string>{"-1", "0", "1"});
  CHECK(accepts(a, zip_words(a.alphabet(), {1, 1, 0}, {0, 2, 2})));
  CHECK(accepts(a, zip_words(a.alphabet(), {1, 1, 1, 0}, {0, 2, 2, 2})));
  CHECK(accepts(a, zip_words(a.alphabet(), {0, 2, 2}, {1, 1, 0})));
  CHECK_FALSE(accepts(a, zip_words(a.alphabet(), {1, 0}, {0, 1})));
  CHECK_FALSE(is_free(rel));
  CHECK(a.is_deterministic());
  CHECK(is_codeterministic(a));
  CHECK(isomorphic(minimize(a), a));
  CHECK(verify_relation(ctx, {1, 1, 0}, {0, 2, 2}));
  CHECK(verify_relation(ctx, {0}, {0}));
  CHECK_THROWS_AS((void)verify_relation(ctx, {5}, {0}), Error);
}

TEST_CASE("relation language agrees with exact arithmetic") {
  check_against_oracle(intro, 4);
  check_against_oracle({std::vector<long long>{-3, 1}, {{0}, {1}, {5}}}, 4);
  check_against_oracle({std::vector<long long>{-3, 1}, {{0}, {2}, {7}}}, 3);
  check_against_oracle({std::vector<long long>{-1, -1, 1}, {{0}, {1}}}, 6);
  check_against_oracle({std::vector<long long>{-1, -1, -1, 1}, {{0}, {1}}}, 6);
  check_against_oracle({std::vector<long long>{-1, -1, 0, 1}, {{0}, {1}}}, 6);
  // β = 1/3, built on u = 3 and transposed.
  check_against_oracle({std::vector<long long>{-1, 3}, {{0}, {1}, {3}}}, 4);
  // digits that are polynomials in β
  check_against_oracle({std::vector<long long>{-1, -1, 1}, {{0}, {1}, {0, 1}}}, 4);
  // transcendental bases
  check_against_oracle({std::nullopt, {{0}, {1}, {0, 1}}}, 4);
  check_against_oracle({std::nullopt, {{0}, {1}, {1, -1, 1}}}, 4);
  check_against_oracle({std::nullopt, {{0}, {1}, {0, 0, 1}}}, 4);
}

TEST_CASE("inverted context reads words backwards") {
  auto ctx = context_of({std::vector<long long>{-1, 3}, {{0}, {1}, {3}}});
  CHECK(ctx.inverted());
  auto rel = build_relation_automaton(ctx);
  auto const& a = rel.automaton;
  // Relations for 1/3 are the mirror images of those for 3.
  CHECK(accepts(a, zip_words(a.alphabet(), {0, 1, 1}, {2, 2, 0})));
  CHECK_FALSE(accepts(a, zip_words(a.alphabet(), {1, 1, 0}, {0, 2, 2})));
  CHECK(a.is_deterministic());
  CHECK(is_codeterministic(a));
}

TEST_CASE("freeness") {
  auto free_ctx = context_of({std::vector<long long>{-3, 1}, {{0}, {1}, {5}}});
  CHECK(is_free(build_relation_automaton(free_ctx)));
  CHECK(is_free(build_relation_automaton(context_of({std::vector<long long>{-3, 1}, {{0}}}))));
  CHECK(kenyon_criterion(1, 5) == Verdict::free);
  CHECK(kenyon_criterion(1, 3) == Verdict::non_free);
  CHECK(kenyon_criterion(2, 7) == Verdict::free);
  CHECK_THROWS_AS((void)kenyon_criterion(2, 4), Error);
  for (long long q = 2; q <= 11; ++q) {
    for (long long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      auto ctx = context_of({std::vector<long long>{-3, 1}, {{0}, {p}, {q}}});
      bool const free = is_free(build_relation_automaton(ctx));
      CHECK(free == (kenyon_criterion(p, q) == Verdict::free));
    }
  }
}

TEST_CASE("sufficient conditions") {
  auto golden = context_of({std::vector<long long>{-1, -1, 1}, {{0}, {1}}});
  CHECK(quick_free_sufficient(golden) == Verdict::unknown);
  CHECK(mahler_nonfree_check(golden) == Verdict::non_free);
  auto three = context_of({std::vector<long long>{-3, 1}, {{0}, {1}}});
  CHECK(quick_free_sufficient(three) == Verdict::free);
  CHECK(mahler_nonfree_check(three) == Verdict::unknown);
  auto big = context_of({std::vector<long long>{1, -3, -3, -3, 1}, {{0}, {1}}});
  CHECK(big.blocked());
  CHECK(quick_free_sufficient(big) == Verdict::free);
  auto salem = context_of({std::vector<long long>{1, -2, 1, -2, 1}, {{0}, {1}}});
  CHECK(mahler_nonfree_check(salem) == Verdict::non_free);
  CHECK(mahler_measure(salem).mid() == doctest::Approx(1.8832035059).epsilon(1e-10));
}

TEST_CASE("blocked contexts and caps") {
  auto salem = context_of({std::vector<long long>{1, -2, 1, -2, 1}, {{0}, {1}}});
  try {
    (void)build_relation_automaton(salem);
    FAIL("expected blocked");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::blocked);
  }
  Caps caps;
  caps.force = true;
  caps.max_states = 2000;
  try {
    (void)build_relation_automaton(salem, caps);
    FAIL("expected cap_exceeded");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::cap_exceeded);
  }
}

TEST_CASE("states satisfy the pruning bounds") {
  auto ctx = context_of({std::vector<long long>{-1, -1, -1, 1}, {{0}, {1}}});
  auto rel = build_relation_automaton(ctx);
  for (auto const& x : rel.values) {
    for (std::size_t i = 0; i < ctx.embeddings().size(); ++i) {
      if (ctx.embeddings()[i].cls != EmbeddingClass::expanding) continue;
      CHECK(fe_abs_at(ctx, x, i).certainly_less(ctx.prune_bounds()[i]));
    }
  }
}

TEST_CASE("power identities") {
  auto golden = context_of({std::vector<long long>{-1, -1, 1}, {{0}, {1}}});
  // β^2 = β + 1 and β^{-1} = β - 1
  CHECK(verify_power_identity(golden, {{BigInt(1), 2}}, {{BigInt(1), 1}, {BigInt(1), 0}}));
  CHECK(verify_power_identity(golden, {{BigInt(1), -1}}, {{BigInt(1), 1}, {BigInt(-1), 0}}));
  CHECK_FALSE(verify_power_identity(golden, {{BigInt(1), -1}}, {{BigInt(1), 1}}));
  auto x = context_of({std::nullopt, {{0}, {1}}});
  CHECK(verify_power_identity(x, {{BigInt(2), -3}}, {{BigInt(1), -3}, {BigInt(1), -3}}));
}
