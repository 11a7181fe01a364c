#include "betauto/structure.hpp"

#include <limits>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "betauto/error.hpp"

namespace betauto {

std::vector<int> order_rank(std::size_t letters, Order order) {
  std::vector<int> rank(letters);
  for (std::size_t i = 0; i < letters; ++i) {
    rank[i] = static_cast<int>(order == Order::lex ? i : letters - 1 - i);
  }
  return rank;
}

Order parse_order(std::string const& text) {
  if (text == "lex") return Order::lex;
  if (text == "revlex") return Order::revlex;
  throw Error(Errc::invalid_argument, "order must be lex or revlex, got " + text);
}

Automaton build_reduced_automaton(RelAutomaton const& rel, Order order) {
  Alphabet const sigma = digit_alphabet(rel.context);
  Automaton const lex = lex_pair_automaton(sigma, order_rank(sigma.size(), order));
  // Words with a strictly smaller equivalent are not reduced.
  Automaton const nonreduced = project(intersect(lex, rel.automaton), 2);
  return minimize(complement(determinize(nonreduced)));
}

Automaton build_multiplier(RelAutomaton const& rel, Automaton const& reduced, Letter g) {
  if (g >= reduced.alphabet().size()) throw Error(Errc::invalid_argument, "letter out of range");
  return minimize(intersect(product(append_letter(reduced, g), reduced), rel.automaton));
}

AutomaticStructure build_structure(RelAutomaton const& rel, Order order) {
  AutomaticStructure s;
  s.order = order;
  s.reduced = build_reduced_automaton(rel, order);
  for (Letter g = 0; g < rel.context.alphabet_size(); ++g) {
    s.multipliers.push_back(build_multiplier(rel, s.reduced, g));
  }
  return s;
}

PiCheck check_candidate(IntPoly const& candidate, IntPoly const& char_poly,
                        Interval const& lambda) {
  PiCheck check;
  check.candidate = candidate;
  auto const prec = std::max<mpfr_prec_t>(lambda.precision(), 256);
  Interval const lo = evaluate(candidate, Interval::from_point(lambda.lo()));
  Interval const hi = evaluate(candidate, Interval::from_point(lambda.hi()));
  check.sign_change = (lo.certainly_negative() && hi.certainly_positive()) ||
                      (lo.certainly_positive() && hi.certainly_negative());
  Float a(prec);
  Float b(prec);
  mpfr_set(a.get(), lambda.lo().get(), MPFR_RNDD);
  mpfr_set(b.get(), lambda.hi().get(), MPFR_RNDU);
  check.residual = evaluate(candidate, Interval(a, b)).abs().upper();
  check.divides_char_poly = !candidate.empty() && divides(candidate, char_poly);
  return check;
}

GrowthReport growth(Automaton const& reduced, std::size_t n,
                    std::optional<IntPoly> const& candidate, double tolerance) {
  GrowthReport r;
  r.counts = count_series(reduced, n);
  Automaton const t = trim(reduced);
  r.char_poly = char_poly(t);
  r.lambda = dominant_eigenvalue(t, tolerance);
  if (candidate) r.pi_check = check_candidate(*candidate, r.char_poly, r.lambda);
  return r;
}

namespace {

nlohmann::json integer(BigInt const& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return v.convert_to<long long>();
  }
  return v.str();
}

}  // namespace

nlohmann::json GrowthReport::to_json() const {
  nlohmann::json j;
  nlohmann::json counts_json = nlohmann::json::array();
  for (auto const& c : counts) counts_json.push_back(c.str());
  j["counts"] = counts_json;
  nlohmann::json poly = nlohmann::json::array();
  for (auto const& c : char_poly) poly.push_back(integer(c));
  j["char_poly"] = poly;
  j["char_poly_text"] = to_string(char_poly);
  j["lambda"] = {{"lo", lambda.lower()}, {"hi", lambda.upper()}};
  if (pi_check) {
    nlohmann::json pc;
    nlohmann::json coeffs = nlohmann::json::array();
    for (auto const& c : pi_check->candidate) coeffs.push_back(integer(c));
    pc["candidate"] = coeffs;
    pc["candidate_text"] = to_string(pi_check->candidate);
    pc["residual"] = pi_check->residual;
    pc["sign_change"] = pi_check->sign_change;
    pc["divides_char_poly"] = pi_check->divides_char_poly;
    pc["certified"] = pi_check->certified();
    j["pi_check"] = pc;
  }
  return j;
}

BigInt count_elements_bruteforce(BetaContext const& ctx, std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(Errc::cap_exceeded, "brute-force length " + std::to_string(n) +
                                        " exceeds the cap of " + std::to_string(cap));
  }
  // Words and their mirrors range over the same set, so inverted contexts
  // can be counted with the same recurrence x ↦ βx + t.
  std::unordered_set<FieldElem, FieldElemHash> level{ctx.zero()};
  for (std::size_t i = 0; i < n; ++i) {
    std::unordered_set<FieldElem, FieldElemHash> next;
    for (auto const& x : level) {
      FieldElem const bx = fe_mul_base(ctx, x);
      for (auto const& t : ctx.digits()) next.insert(fe_add(bx, t));
    }
    level = std::move(next);
  }
  return BigInt(level.size());
}

}  // namespace betauto
