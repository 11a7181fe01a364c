#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "betauto/automaton.hpp"
#include "betauto/relations.hpp"

namespace betauto {

/// Order on Σ used to pick representatives: digit-list order or its reverse.
enum class Order { lex, revlex };

[[nodiscard]] std::vector<int> order_rank(std::size_t letters, Order order);
[[nodiscard]] Order parse_order(std::string const& text);

/// Minimal DFA of the least word (for `order`) in each equal-length class.
[[nodiscard]] Automaton build_reduced_automaton(RelAutomaton const& rel, Order order = Order::lex);

/// Minimal DFA over Σ×Σ of {(u·g, v) : u, v reduced, u·g = v}.
[[nodiscard]] Automaton build_multiplier(RelAutomaton const& rel, Automaton const& reduced,
                                         Letter g);

struct AutomaticStructure {
  Automaton reduced;
  std::vector<Automaton> multipliers;  ///< indexed by generator
  Order order = Order::lex;
};

[[nodiscard]] AutomaticStructure build_structure(RelAutomaton const& rel,
                                                 Order order = Order::lex);

struct PiCheck {
  IntPoly candidate;
  /// Upper bound of |candidate| over the λ enclosure.
  double residual = 0;
  /// Candidate changes sign across the enclosure, so it has a root there.
  bool sign_change = false;
  bool divides_char_poly = false;
  [[nodiscard]] bool certified() const { return sign_change && divides_char_poly; }
};

struct GrowthReport {
  std::vector<BigInt> counts;
  IntPoly char_poly;
  Interval lambda;
  std::optional<PiCheck> pi_check;

  [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] PiCheck check_candidate(IntPoly const& candidate, IntPoly const& char_poly,
                                      Interval const& lambda);

/// Counts c_0..c_N, characteristic polynomial and Perron root of `reduced`.
[[nodiscard]] GrowthReport growth(Automaton const& reduced, std::size_t n = 20,
                                  std::optional<IntPoly> const& candidate = std::nullopt,
                                  double tolerance = 1e-10);

/// Number of distinct elements Σ t_{w_i} β^{n−i} over words of length n.
[[nodiscard]] BigInt count_elements_bruteforce(BetaContext const& ctx, std::size_t n,
                                               std::size_t cap = 7);

}  // namespace betauto
