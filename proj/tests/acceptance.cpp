// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "betauto/error.hpp"
#include "betauto/reducer.hpp"
#include "betauto/relations.hpp"
#include "betauto/structure.hpp"
#include "oracles.hpp"

#ifndef BETAUTO_FIXTURES
#define BETAUTO_FIXTURES "fixtures"
#endif

using namespace betauto;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Tolerances and time limits.
constexpr double kLambdaIntro = 1e-6;
constexpr double kLambdaTable = 1e-3;
constexpr double kSeconds1 = 1.0;
constexpr double kSeconds2 = 30.0;
constexpr double kSeconds3 = 60.0;
constexpr double kSeconds4 = 60.0;
constexpr double kSeconds5 = 30.0;
constexpr double kSeconds7 = 120.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Collects failures for one criterion.
struct Report {
  std::vector<std::string> problems;
  std::vector<std::string> notes;
  void check(bool ok, std::string const& what) {
    if (!ok) problems.push_back(what);
  }
};

struct Fixture {
  std::string name;
  json doc;
  oracle::Setting setting;
};

oracle::Setting setting_of(json const& doc) {
  oracle::Setting s;
  if (doc["beta"].is_object()) s.minpoly = doc["beta"]["minpoly"].get<std::vector<long long>>();
  for (auto const& d : doc["digits"]) {
    s.digits.push_back(d.is_array() ? d.get<std::vector<long long>>()
                                    : std::vector<long long>{d.get<long long>()});
  }
  return s;
}

std::vector<Fixture> load_fixtures() {
  std::vector<Fixture> out;
  for (auto const& entry : fs::directory_iterator(BETAUTO_FIXTURES)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    json doc = json::parse(in);
    out.push_back({entry.path().stem().string(), doc, setting_of(doc)});
  }
  std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.name < b.name; });
  return out;
}

BetaContext context_of(oracle::Setting const& s) {
  std::vector<IntPoly> digits;
  for (auto const& d : s.digits) digits.push_back(make_int_poly(d));
  std::optional<IntPoly> minpoly;
  if (s.minpoly) minpoly = make_int_poly(*s.minpoly);
  return make_context(minpoly, digits);
}

bool contains_factor(Word const& w, Word const& f) {
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

/// A row of a growth table: digits, printed λ and printed π_λ.
struct TableRow {
  std::string label;
  oracle::Setting setting;
  double lambda;
  std::vector<long long> pi;  // constant term first
};

void check_row(Report& r, TableRow const& row) {
  auto const rel = build_relation_automaton(context_of(row.setting));
  auto const red = build_reduced_automaton(rel);
  auto const g = growth(red, 10, make_int_poly(row.pi));
  double const dist = std::abs(g.lambda.mid() - row.lambda);
  r.check(dist <= kLambdaTable, row.label + ": λ=" + fmt(g.lambda.mid()) + " printed " + fmt(row.lambda, 4));
  r.check(g.pi_check && g.pi_check->sign_change,
          row.label + ": π has no certified root in the λ enclosure");
  r.check(g.pi_check && g.pi_check->divides_char_poly,
          row.label + ": π does not divide " + to_string(g.char_poly));
}

// ------------------------------------------------------------- criterion 1

Report criterion1() {
  Report r;
  auto const t0 = Clock::now();
  oracle::Setting const intro{std::vector<long long>{-3, 1}, {{0}, {1}, {3}}};
  auto const rel = build_relation_automaton(context_of(intro));
  r.check(!is_free(rel), "relation automaton is trivial");
  auto const& pairs = rel.automaton.alphabet();
  r.check(accepts(rel.automaton, zip_words(pairs, {1, 1, 0}, {0, 2, 2})),
          "(1,0)(1,3)(0,3) rejected");
  auto const red = build_reduced_automaton(rel, Order::lex);
  auto const rev = build_reduced_automaton(rel, Order::revlex);
  auto const g = growth(red, 6);
  // f_{2n+2} from the Fibonacci recurrence.
  std::vector<BigInt> fib{0, 1};
  while (fib.size() < 16) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  for (std::size_t n = 0; n <= 6; ++n) {
    r.check(g.counts[n] == fib[2 * n + 2], "c_" + std::to_string(n) + " = " + g.counts[n].str());
  }
  double const golden2 = (3 + std::sqrt(5.0)) / 2;
  r.check(g.lambda.upper() - g.lambda.lower() <= kLambdaIntro &&
              std::abs(g.lambda.mid() - golden2) <= kLambdaIntro,
          "λ enclosure [" + fmt(g.lambda.lower(), 9) + ", " + fmt(g.lambda.upper(), 9) + "]");
  for (std::size_t n = 0; n <= 8; ++n) {
    for (auto const& w : oracle::words(3, n)) {
      if (accepts(red, w) && contains_factor(w, {1, 0})) r.check(false, "lex reduced word contains 10");
      if (accepts(rev, w) && contains_factor(w, {0, 2})) r.check(false, "revlex reduced word contains 03");
    }
  }
  double const s = seconds_since(t0);
  r.check(s < kSeconds1, "runtime " + fmt(s, 2) + " s");
  r.notes.push_back("counts 1,3,8,21,55,144,377; λ≈" + fmt(g.lambda.mid(), 8) + "; " + fmt(s, 2) + " s");
  return r;
}

// ------------------------------------------------------------- criterion 2

std::vector<TableRow> kenyon_table() {
  auto row = [](long long p, long long q, double l, std::vector<long long> pi) {
    return TableRow{std::to_string(p) + "/" + std::to_string(q),
                    {std::vector<long long>{-3, 1}, {{0}, {p}, {q}}}, l, std::move(pi)};
  };
  return {
      row(1, 3, 2.6180, {1, -3, 1}),
      row(1, 4, 2.6180, {1, -3, 1}),
      row(2, 5, 2.8019, {1, 3, -4, 1}),
      row(1, 6, 2.7321, {-2, -2, 1}),
      row(1, 7, 2.7383, {-1, 3, 1, 0, -3, 1}),
      row(3, 7, 2.8794, {1, 0, -3, 1}),
      row(3, 8, 2.8136, {2, -3, -2, 1}),
      row(1, 9, 2.6180, {1, -3, 1}),
      row(2, 9, 2.7233, {-1, 0, 3, 1, 0, -3, 1}),
      row(4, 9, 2.8794, {1, 0, -3, 1}),
      row(1, 10, 2.6180, {1, -3, 1}),
      row(3, 10, 2.7699, {3, 6, 9, 1, -4, -2, 1}),
      row(2, 11, 2.7421, {-1, 1, 1, 3, -4, 1}),
      row(3, 11, 2.8073, {-1, 3, -1, -9, 0, 0, 7, 1, -4, 1}),
      row(5, 11, 2.9242, {-1, 3, -13, 20, -49, 15, -32, 32, -7, 6, -5, 1}),
  };
}

Report criterion2() {
  Report r;
  auto const t0 = Clock::now();
  int cases = 0;
  for (long long q = 2; q <= 11; ++q) {
    for (long long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++cases;
      oracle::Setting const s{std::vector<long long>{-3, 1}, {{0}, {p}, {q}}};
      bool const free = is_free(build_relation_automaton(context_of(s)));
      bool const expected = kenyon_criterion(p, q) == Verdict::free;
      r.check(free == expected, std::to_string(p) + "/" + std::to_string(q) + " freeness");
      r.check(expected == ((p + q) % 3 == 0), "kenyon_criterion " + std::to_string(p) + "/" +
                                                  std::to_string(q));
    }
  }
  auto const table = kenyon_table();
  for (auto const& row : table) check_row(r, row);
  double const s = seconds_since(t0);
  r.check(s < kSeconds2, "runtime " + fmt(s, 2) + " s");
  r.notes.push_back(std::to_string(cases) + " pairs, " + std::to_string(table.size()) + " table rows; " +
                    fmt(s, 2) + " s");
  return r;
}

// ------------------------------------------------------------- criterion 3

Report criterion3() {
  Report r;
  auto const t0 = Clock::now();
  std::vector<std::pair<std::string, std::vector<long long>>> const bases{
      {"x²−x−1", {-1, -1, 1}},
      {"x³−x²−x−1", {-1, -1, -1, 1}},
      {"x³−x−1", {-1, -1, 0, 1}},
      {"x⁴−x³−x²−x−1", {-1, -1, -1, -1, 1}},
      {"x⁴−x³−x²+x−1", {-1, 1, -1, -1, 1}},
  };
  std::mt19937 rng(31337);
  std::size_t pairs_checked = 0;
  for (auto const& [label, m] : bases) {
    oracle::Setting const s{m, {{0}, {1}}};
    BetaContext const ctx = context_of(s);
    RelAutomaton rel;
    try {
      rel = build_relation_automaton(ctx);
    } catch (Error const& e) {
      r.check(false, label + ": " + e.what());
      continue;
    }
    r.check(mahler_measure(ctx).certainly_less(Interval(2.0, 128)), label + ": Mahler measure not below 2");
    r.check(mahler_nonfree_check(ctx) == Verdict::non_free, label + ": Mahler test not decisive");
    r.check(!is_free(rel), label + ": automaton claims free");
    auto const& pairs = rel.automaton.alphabet();
    std::size_t mismatches = 0;
    auto test = [&](Word const& u, Word const& v) {
      ++pairs_checked;
      if (accepts(rel.automaton, zip_words(pairs, u, v)) != oracle::related(s, u, v)) ++mismatches;
    };
    for (std::size_t n = 0; n <= 4; ++n) {
      auto const ws = oracle::words(2, n);
      for (auto const& u : ws) {
        for (auto const& v : ws) test(u, v);
      }
    }
    // Half of the random pairs are drawn from a common class so that both
    // answers are exercised.
    for (std::size_t n = 5; n <= 6; ++n) {
      auto const ws = oracle::words(2, n);
      std::map<oracle::Poly, std::vector<Word>> classes;
      for (auto const& w : ws) classes[oracle::element_key(s, w)].push_back(w);
      std::vector<std::vector<Word> const*> shared;
      for (auto const& [key, members] : classes) {
        if (members.size() > 1) shared.push_back(&members);
      }
      std::uniform_int_distribution<std::size_t> any(0, ws.size() - 1);
      for (int i = 0; i < 500; ++i) {
        if (i % 2 == 0 && !shared.empty()) {
          auto const& c = *shared[std::uniform_int_distribution<std::size_t>(0, shared.size() - 1)(rng)];
          std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
          test(c[pick(rng)], c[pick(rng)]);
        } else {
          test(ws[any(rng)], ws[any(rng)]);
        }
      }
    }
    r.check(mismatches == 0, label + ": " + std::to_string(mismatches) + " mismatches");
  }
  double const s = seconds_since(t0);
  r.check(s < kSeconds3, "runtime " + fmt(s, 2) + " s");
  r.notes.push_back(std::to_string(pairs_checked) + " pairs against exact arithmetic; " + fmt(s, 2) + " s");
  return r;
}

// ------------------------------------------------------------- criterion 4

std::vector<TableRow> formal_table() {
  auto row = [](std::string label, std::vector<long long> p, std::vector<long long> q, double l,
                std::vector<long long> pi) {
    return TableRow{std::move(label), {std::nullopt, {{0}, std::move(p), std::move(q)}}, l, std::move(pi)};
  };
  return {
      row("1/X", {1}, {0, 1}, 2.6180, {1, -3, 1}),
      row("1/(X+1)", {1}, {1, 1}, 2.6180, {1, -3, 1}),
      row("1/(X²−X)", {1}, {0, -1, 1}, 2.8794, {1, 0, -3, 1}),
      row("1/(X²−X+1)", {1}, {1, -1, 1}, 2.7971, {1, -1, -2, -2, 1}),
      row("1/X²", {1}, {0, 0, 1}, 2.6180, {1, -3, 1}),
      row("1/(X²+1)", {1}, {1, 0, 1}, 2.6180, {1, -3, 1}),
      row("1/(X²+X)", {1}, {0, 1, 1}, 2.8794, {1, 0, -3, 1}),
      row("1/(X²+X+1)", {1}, {1, 1, 1}, 2.7693, {-1, 1, -3, 1}),
      row("(X−1)/X²", {-1, 1}, {0, 0, 1}, 2.7971, {1, -1, -2, -2, 1}),
      row("(X−1)/(X²+X−1)", {-1, 1}, {-1, 1, 1}, 2.8794, {1, 0, -3, 1}),
      row("1/(X³−X²−X)", {1}, {0, -1, -1, 1}, 2.9615, {1, 0, 0, -3, 1}),
      row("1/(X³−X²)", {1}, {0, 0, -1, 1}, 2.8584, {-1, 0, 1, 3, 0, 0, -3, 1}),
      row("1/(X³−X²+1)", {1}, {1, 0, -1, 1}, 2.8396, {1, 0, -3, -3, 4, 1, 3, 0, 0, -3, 1}),
      row("1/(X³−X²+X)", {1}, {0, 1, -1, 1}, 2.8444,
          {-2, 1, 8, -6, 0, 6, -16, 0, 7, -2, 7, -2, -3, 1}),
  };
}

Report criterion4() {
  Report r;
  auto const t0 = Clock::now();
  auto const table = formal_table();
  for (auto const& row : table) check_row(r, row);
  auto const formal = build_relation_automaton(context_of({std::nullopt, {{0}, {1}, {0, 1}}}));
  auto const intro = build_relation_automaton(context_of({std::vector<long long>{-3, 1}, {{0}, {1}, {3}}}));
  r.check(isomorphic(formal.automaton, intro.automaton), "P=1, Q=X differs from the base-3 automaton");
  double const s = seconds_since(t0);
  r.check(s < kSeconds4, "runtime " + fmt(s, 2) + " s");
  r.notes.push_back(std::to_string(table.size()) + " rows; " + fmt(s, 2) + " s");
  return r;
}

// ------------------------------------------------------------- criterion 5

Report criterion5() {
  Report r;
  auto const t0 = Clock::now();
  oracle::Setting const salem{std::vector<long long>{1, -2, 1, -2, 1}, {{0}, {1}}};
  BetaContext const ctx = context_of(salem);
  int on_circle = 0;
  for (auto const& e : ctx.embeddings()) on_circle += e.cls == EmbeddingClass::unit;
  r.check(ctx.blocked() && on_circle == 2, "unit-circle pair not detected");

  bool blocked = false;
  try {
    (void)build_relation_automaton(ctx);
  } catch (Error const& e) {
    blocked = e.code() == Errc::blocked;
  }
  r.check(blocked, "unforced construction was not refused");

  Caps caps;
  caps.force = true;
  caps.max_states = 100'000;
  std::string capped;
  try {
    (void)build_relation_automaton(ctx, caps);
  } catch (Error const& e) {
    if (e.code() == Errc::cap_exceeded) capped = e.what();
  }
  r.check(!capped.empty() && capped.find("inconclusive") != std::string::npos,
          "forced construction did not end in an explicit inconclusive cap");

  // β^{-k} terms, and the target 2β³ − 5β² + β + 2.
  std::vector<long> const plus{2, 3, 5, 6, 8, 12, 13, 14, 15, 19, 20, 23, 25, 26, 27};
  std::vector<long> const minus{7, 16, 17, 18, 21, 28};
  PowerSum lhs;
  for (long k : plus) lhs.emplace_back(BigInt(1), -k);
  for (long k : minus) lhs.emplace_back(BigInt(-1), -k);
  PowerSum const rhs{{BigInt(2), 3}, {BigInt(-5), 2}, {BigInt(1), 1}, {BigInt(2), 0}};
  PowerSum negated_rhs;
  for (auto const& [c, e] : rhs) negated_rhs.emplace_back(-c, e);
  bool const printed = verify_power_identity(ctx, lhs, rhs);
  bool const negated = verify_power_identity(ctx, lhs, negated_rhs);

  // The labelled path x ↦ βx + t from 2β³ − 5β² + β + 2 down to 0.
  std::vector<int> const path{0, 1, 1, 0, 1, 1, -1, 1, 0, 0, 0, 1, 1, 1, 1,
                              -1, -1, -1, 1, 1, -1, 0, 1, 0, 1, 1, 1, -1};
  FieldElem x = ctx.reduce(RatPoly{Rational(2), Rational(1), Rational(-5), Rational(2)});
  for (int t : path) x = fe_add(fe_mul_base(ctx, x), ctx.reduce(RatPoly{Rational(t)}));
  bool const path_ok = x.is_zero();

  r.check(printed, "printed 28-term identity does not hold exactly");
  r.notes.push_back(std::string("path of 28 steps reaches 0: ") + (path_ok ? "yes" : "no") +
                    "; identity with the right side negated holds: " + (negated ? "yes" : "no"));
  if (!capped.empty()) r.notes.push_back(capped);
  double const s = seconds_since(t0);
  r.check(s < kSeconds5, "runtime " + fmt(s, 2) + " s");
  r.notes.push_back(fmt(s, 2) + " s");
  return r;
}

// ------------------------------------------------------------- criterion 6

Report criterion6() {
  Report r;
  BetaContext const ctx = context_of({std::vector<long long>{1, -3, -3, -3, 1}, {{0}, {1}}});
  r.check(quick_free_sufficient(ctx) == Verdict::free, "sufficient test not decisive");
  r.notes.push_back(std::string("context blocked: ") + (ctx.blocked() ? "yes" : "no") +
                    "; no automaton built");
  return r;
}

// ------------------------------------------------------------- criterion 7

void random_automata(Report& r) {
  std::mt19937 rng(2024);
  std::size_t bad = 0;
  for (int i = 0; i < 200; ++i) {
    auto const a = oracle::random_automaton(rng, 5, 2, 0.3);
    auto const b = oracle::random_automaton(rng, 4, 2, 0.35);
    auto const d = determinize(a);
    auto const m = minimize(a);
    auto const t = trim(a);
    auto const c = complement(a);
    auto const tr = transpose(a);
    auto const in = intersect(a, b);
    auto const un = union_of(a, b);
    bool ok = d.is_deterministic() && isomorphic(minimize(m), m) &&
              isomorphic(m, minimize(transpose(tr)));
    for (std::size_t n = 0; n <= 5 && ok; ++n) {
      for (auto const& w : oracle::words(2, n)) {
        bool const x = oracle::path_accepts(a, w);
        bool const y = oracle::path_accepts(b, w);
        Word rw(w.rbegin(), w.rend());
        ok = ok && oracle::path_accepts(d, w) == x && oracle::path_accepts(m, w) == x &&
             oracle::path_accepts(t, w) == x && oracle::path_accepts(c, w) == !x &&
             oracle::path_accepts(tr, rw) == x && oracle::path_accepts(in, w) == (x && y) &&
             oracle::path_accepts(un, w) == (x || y);
      }
      ok = ok && count_words(a, n) == BigInt(oracle::brute_count(a, n)) &&
           count_words(m, n) == BigInt(oracle::brute_count(a, n));
    }
    if (!ok) ++bad;
  }
  r.check(bad == 0, std::to_string(bad) + " of 200 random automata broke an invariant");
}

Report criterion7(std::vector<Fixture> const& fixtures) {
  Report r;
  auto const t0 = Clock::now();
  random_automata(r);
  std::size_t built = 0;
  std::size_t words_checked = 0;
  for (auto const& f : fixtures) {
    if (f.doc.value("blocked", false) || f.doc.contains("identity")) continue;
    BetaContext const ctx = context_from_json(f.doc);
    RelAutomaton const rel = build_relation_automaton(ctx);
    ++built;
    auto const& a = rel.automaton;
    if (a.is_deterministic() && is_codeterministic(a)) {
      r.check(isomorphic(minimize(a), a), f.name + ": minimize changed the relation automaton");
    } else {
      r.check(false, f.name + ": relation automaton is not deterministic and codeterministic");
    }
    std::size_t const k = ctx.alphabet_size();
    AutomaticStructure const s = build_structure(rel, Order::lex);
    ReducerTable table(rel, s.reduced);
    std::size_t failures = 0;
    for (std::size_t n = 0; n <= 5; ++n) {
      // Least word of each class, by exact evaluation.
      std::map<oracle::Poly, Word> least;
      auto const ws = oracle::words(k, n);
      for (auto const& w : ws) least.try_emplace(oracle::element_key(f.setting, w), w);
      std::set<Word> reps;
      for (auto const& [key, w] : least) reps.insert(w);
      for (auto const& u : ws) {
        ++words_checked;
        bool const is_rep = reps.count(u) > 0;
        if (accepts(s.reduced, u) != is_rep) ++failures;
        Word const v = table.reduce(u);
        if (v != least.at(oracle::element_key(f.setting, u))) ++failures;
        if (table.reduce(v) != v) ++failures;
      }
    }
    r.check(failures == 0, f.name + ": " + std::to_string(failures) + " reduced-word failures");
  }
  double const s = seconds_since(t0);
  r.check(s < kSeconds7, "runtime " + fmt(s, 2) + " s");
  r.notes.push_back("200 random automata; " + std::to_string(built) + " fixtures, " +
                    std::to_string(words_checked) + " words; " + fmt(s, 2) + " s");
  return r;
}

}  // namespace

int main() {
  auto const fixtures = load_fixtures();
  std::vector<std::pair<std::string, std::function<Report()>>> const criteria{
      {"1 intro example", criterion1},
      {"2 Kenyon sweep and table", criterion2},
      {"3 {0,1} Pisot bases", criterion3},
      {"4 transcendental table", criterion4},
      {"5 Salem guard and identity", criterion5},
      {"6 sufficient freeness test", criterion6},
      {"7 property suites", [&] { return criterion7(fixtures); }},
  };
  int failed = 0;
  for (auto const& [name, run] : criteria) {
    Report r;
    try {
      r = run();
    } catch (std::exception const& e) {
      r.problems.push_back(std::string("exception: ") + e.what());
    }
    bool const ok = r.problems.empty();
    failed += !ok;
    std::printf("%s criterion %s\n", ok ? "PASS" : "FAIL", name.c_str());
    for (auto const& p : r.problems) std::printf("    problem: %s\n", p.c_str());
    for (auto const& n : r.notes) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
