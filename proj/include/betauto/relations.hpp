#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "betauto/automaton.hpp"
#include "betauto/numfield.hpp"

namespace betauto {

struct Caps {
  std::size_t max_states = 1'000'000;
  std::size_t max_depth = 10'000;
  /// Attempt the construction even when the context is blocked.
  bool force = false;
  /// Precision doublings tried when an enclosure straddles a bound.
  int max_refinements = 3;
};

struct BuildStats {
  std::size_t explored = 0;   ///< states created by the forward search
  std::size_t pruned = 0;     ///< distinct candidates rejected by a bound
  std::size_t straddled = 0;  ///< candidates kept because no bound decided
  std::size_t depth = 0;      ///< largest BFS depth reached
  std::size_t trimmed = 0;    ///< states surviving the backward pass
};

/// Trimmed relation automaton over Σ×Σ. State 0 is the zero element and
/// the only initial and final state.
struct RelAutomaton {
  BetaContext context;
  Automaton automaton;
  /// Working-base element of each state.
  std::vector<FieldElem> values;
  BuildStats stats;
};

/// Forward search with pruning, backward trim, then transposition when the
/// context is inverted. Throws Error(blocked) or Error(cap_exceeded).
RelAutomaton build_relation_automaton(BetaContext const& ctx, Caps const& caps = {});

/// The digit alphabet Σ of a context.
Alphabet digit_alphabet(BetaContext const& ctx);

[[nodiscard]] bool is_free(RelAutomaton const& rel);

enum class Verdict { free, non_free, unknown };
char const* to_string(Verdict v) noexcept;

/// Free when some expanding γ has min|σ(c)| > max|σ(c)| / (|γ|−1) over
/// nonzero c ∈ A−A; unknown otherwise.
[[nodiscard]] Verdict quick_free_sufficient(BetaContext const& ctx);
/// Non-free when there are two digits and the Mahler measure is below 2.
[[nodiscard]] Verdict mahler_nonfree_check(BetaContext const& ctx);
/// Digits {0, p, q} in base 3: free iff p + q ≡ 0 mod 3.
[[nodiscard]] Verdict kenyon_criterion(long long p, long long q);

/// Σ (t_{u_i} − t_{v_i}) β^{n−i} == 0 exactly.
[[nodiscard]] bool verify_relation(BetaContext const& ctx, Word const& u, Word const& v);

/// Terms c·β^e in the user's β; exponents may be negative.
using PowerSum = std::vector<std::pair<BigInt, long>>;
/// lhs == rhs exactly in Q(β) (or Z[X, 1/X]).
[[nodiscard]] bool verify_power_identity(BetaContext const& ctx, PowerSum const& lhs,
                                         PowerSum const& rhs);

}  // namespace betauto
