#include "betauto/relations.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "betauto/error.hpp"

namespace betauto {

char const* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::free: return "free";
    case Verdict::non_free: return "non-free";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

Alphabet digit_alphabet(BetaContext const& ctx) { return Alphabet::plain(ctx.names()); }

namespace {

enum class Fate { keep, prune, straddle };

/// Pruning tests for candidate states, with lazily refined enclosures.
class Judge {
 public:
  Judge(BetaContext const& ctx, int max_refinements)
      : ctx_(ctx), max_refinements_(max_refinements) {}

  Fate operator()(FieldElem const& y) {
    if (ctx_.mode() == Mode::transcendental) return polynomial_fate(y);
    for (int level = 0; level <= max_refinements_; ++level) {
      BetaContext const& c = at(level);
      bool undecided = false;
      for (std::size_t i = 0; i < c.embeddings().size(); ++i) {
        if (c.embeddings()[i].cls != EmbeddingClass::expanding) continue;
        Interval const a = fe_abs_at(c, y, i);
        Interval const& bound = c.prune_bounds()[i];
        if (a.certainly_geq(bound)) return Fate::prune;
        if (!a.certainly_less(bound)) undecided = true;
      }
      if (!undecided) return Fate::keep;
    }
    return Fate::straddle;
  }

 private:
  Fate polynomial_fate(FieldElem const& y) const {
    auto const& pb = ctx_.poly_bounds();
    if (y.degree() >= pb.max_degree && !y.is_zero()) return Fate::prune;
    auto const& c = y.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (abs(numerator(c[i])) > pb.coeff_bound[i]) return Fate::prune;
    }
    return Fate::keep;
  }

  BetaContext const& at(int level) {
    if (level == 0) return ctx_;
    while (static_cast<int>(refined_.size()) < level) {
      int const digits = ctx_.precision() << (refined_.size() + 1);
      refined_.push_back(ctx_.refined(digits));
    }
    return refined_[level - 1];
  }

  BetaContext const& ctx_;
  int max_refinements_;
  std::deque<BetaContext> refined_;
};

}  // namespace

RelAutomaton build_relation_automaton(BetaContext const& ctx, Caps const& caps) {
  if (ctx.blocked() && !caps.force) {
    throw Error(Errc::blocked,
                "β has a conjugate on the unit circle; the construction cannot terminate "
                "(use force to attempt it under caps)");
  }
  std::size_t const k = ctx.alphabet_size();
  Alphabet const sigma = digit_alphabet(ctx);
  Alphabet const pairs = Alphabet::pairs(sigma, sigma);

  std::vector<std::vector<FieldElem>> diff(k, std::vector<FieldElem>(k));
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t h = 0; h < k; ++h) diff[g][h] = fe_sub(ctx.digits()[g], ctx.digits()[h]);
  }

  RelAutomaton rel{ctx, Automaton(pairs), {}, {}};
  auto& stats = rel.stats;
  std::vector<FieldElem> values{ctx.zero()};
  std::vector<std::size_t> depth{0};
  std::vector<std::vector<Edge>> edges(1);
  std::unordered_map<FieldElem, State, FieldElemHash> index{{ctx.zero(), 0}};
  std::unordered_set<FieldElem, FieldElemHash> rejected;
  Judge judge(ctx, caps.max_refinements);

  for (std::size_t i = 0; i < values.size(); ++i) {
    FieldElem const bx = fe_mul_base(ctx, values[i]);
    for (std::size_t g = 0; g < k; ++g) {
      for (std::size_t h = 0; h < k; ++h) {
        FieldElem y = fe_add(bx, diff[g][h]);
        Letter const letter = pairs.pair_letter(static_cast<int>(g), static_cast<int>(h));
        if (auto it = index.find(y); it != index.end()) {
          edges[i].push_back({letter, it->second});
          continue;
        }
        if (rejected.contains(y)) continue;
        Fate const fate = judge(y);
        if (fate == Fate::prune) {
          rejected.insert(std::move(y));
          ++stats.pruned;
          continue;
        }
        if (fate == Fate::straddle) ++stats.straddled;
        if (values.size() >= caps.max_states || depth[i] + 1 > caps.max_depth) {
          stats.explored = values.size();
          throw Error(Errc::cap_exceeded,
                      "construction inconclusive: " +
                          std::string(values.size() >= caps.max_states ? "state" : "depth") +
                          " cap reached after " + std::to_string(values.size()) +
                          " states at depth " + std::to_string(depth[i] + 1));
        }
        State const s = static_cast<State>(values.size());
        index.emplace(y, s);
        values.push_back(std::move(y));
        depth.push_back(depth[i] + 1);
        stats.depth = std::max(stats.depth, depth[i] + 1);
        edges.emplace_back();
        edges[i].push_back({letter, s});
      }
    }
  }
  stats.explored = values.size();

  // Backward reachability to 0 on the reversed edge set.
  std::vector<std::vector<State>> back(values.size());
  for (State s = 0; s < values.size(); ++s) {
    for (auto const& e : edges[s]) back[e.to].push_back(s);
  }
  std::vector<bool> live(values.size(), false);
  std::vector<State> stack{0};
  live[0] = true;
  while (!stack.empty()) {
    State const s = stack.back();
    stack.pop_back();
    for (State t : back[s]) {
      if (!live[t]) {
        live[t] = true;
        stack.push_back(t);
      }
    }
  }

  std::vector<State> renumber(values.size(), 0);
  auto& a = rel.automaton;
  std::string const var = ctx.variable();
  for (State s = 0; s < values.size(); ++s) {
    if (!live[s]) continue;
    renumber[s] = a.add_state(values[s].to_string(var));
    rel.values.push_back(values[s]);
  }
  for (State s = 0; s < values.size(); ++s) {
    if (!live[s]) continue;
    for (auto const& e : edges[s]) {
      if (live[e.to]) a.add_transition(renumber[s], e.letter, renumber[e.to]);
    }
  }
  a.set_initial(0);
  a.set_final(0);
  a.normalize();
  if (ctx.inverted()) a = transpose(a);
  stats.trimmed = a.num_states();
  return rel;
}

bool is_free(RelAutomaton const& rel) { return rel.automaton.num_states() == 1; }

Verdict quick_free_sufficient(BetaContext const& ctx) {
  if (ctx.mode() != Mode::algebraic) {
    throw Error(Errc::mode_mismatch, "quick freeness test needs an algebraic base");
  }
  auto const& diffs = ctx.digit_differences();
  if (diffs.empty()) return Verdict::free;
  for (std::size_t i = 0; i < ctx.embeddings().size(); ++i) {
    auto const& e = ctx.embeddings()[i];
    if (e.cls != EmbeddingClass::expanding) continue;
    auto const prec = e.modulus.precision();
    Interval smallest = fe_abs_at(ctx, diffs.front(), i);
    Interval largest = smallest;
    for (auto const& d : diffs) {
      Interval const a = fe_abs_at(ctx, d, i);
      largest = max(largest, a);
      if (mpfr_less_p(a.lo().get(), smallest.lo().get())) smallest = a;
    }
    Interval const rhs = largest / (e.modulus - Interval(1.0, prec));
    if (rhs.certainly_less(smallest)) return Verdict::free;
  }
  return Verdict::unknown;
}

Verdict mahler_nonfree_check(BetaContext const& ctx) {
  if (ctx.mode() != Mode::algebraic) {
    throw Error(Errc::mode_mismatch, "Mahler measure needs an algebraic base");
  }
  if (ctx.alphabet_size() != 2) return Verdict::unknown;
  Interval const m = mahler_measure(ctx);
  if (m.certainly_less(Interval(2.0, m.precision()))) return Verdict::non_free;
  return Verdict::unknown;
}

Verdict kenyon_criterion(long long p, long long q) {
  if (p <= 0 || q <= p || std::gcd(p, q) != 1) {
    throw Error(Errc::invalid_argument, "need coprime 0 < p < q");
  }
  return (p + q) % 3 == 0 ? Verdict::free : Verdict::non_free;
}

bool verify_relation(BetaContext const& ctx, Word const& u, Word const& v) {
  if (u.size() != v.size()) return false;
  std::size_t const k = ctx.alphabet_size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] >= k || v[i] >= k) throw Error(Errc::invalid_argument, "letter out of range");
  }
  // Inverted contexts read words backwards in u = 1/β.
  FieldElem x = ctx.zero();
  std::size_t const n = u.size();
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t const i = ctx.inverted() ? n - 1 - j : j;
    x = fe_add(fe_mul_base(ctx, x), fe_sub(ctx.digits()[u[i]], ctx.digits()[v[i]]));
  }
  return x.is_zero();
}

bool verify_power_identity(BetaContext const& ctx, PowerSum const& lhs, PowerSum const& rhs) {
  long low = 0;
  for (auto const* side : {&lhs, &rhs}) {
    for (auto const& [c, e] : *side) low = std::min(low, e);
  }
  RatPoly p;
  auto add = [&](PowerSum const& terms, int sign) {
    for (auto const& [c, e] : terms) {
      auto const idx = static_cast<std::size_t>(e - low);
      if (p.size() <= idx) p.resize(idx + 1, Rational(0));
      p[idx] += sign * Rational(c);
    }
  };
  add(lhs, 1);
  add(rhs, -1);
  trim(p);
  if (ctx.mode() == Mode::transcendental) return p.empty();
  return divide(p, to_rational(ctx.user_minpoly()->coeffs())).remainder.empty();
}

}  // namespace betauto
