#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "betauto/automaton.hpp"
#include "betauto/relations.hpp"

namespace betauto {

/// Linear-time reduction by a lazily built subset automaton over the DFA of
/// (Σ* × L_red) ∩ L_rel. Not thread safe: the subset cache grows on use.
class ReducerTable {
 public:
  ReducerTable(RelAutomaton const& rel, Automaton const& reduced);

  /// The reduced word equal to `u`. Throws Error(internal) if none exists.
  [[nodiscard]] Word reduce(Word const& u);

  [[nodiscard]] Automaton const& base() const noexcept { return base_; }
  [[nodiscard]] std::size_t cached_subsets() const noexcept { return subsets_.size(); }

 private:
  using SubsetId = std::size_t;
  SubsetId intern(std::vector<State> subset);
  SubsetId step(SubsetId from, Letter a);

  Automaton base_;
  std::size_t letters_ = 0;
  /// Incoming transitions per state as (pair letter, source).
  std::vector<std::vector<Edge>> incoming_;
  std::vector<std::vector<State>> subsets_;
  std::map<std::vector<State>, SubsetId> index_;
  std::vector<std::vector<SubsetId>> next_;  ///< kUnknown until computed
};

[[nodiscard]] Word reduce_word(ReducerTable& table, Word const& u);

/// One pass of zip(u, v) through the relation automaton.
[[nodiscard]] bool words_equivalent(RelAutomaton const& rel, Word const& u, Word const& v);

}  // namespace betauto
