#include "betauto/reducer.hpp"

#include <algorithm>
#include <limits>

#include "betauto/error.hpp"

namespace betauto {

namespace {

constexpr std::size_t kUnknown = std::numeric_limits<std::size_t>::max();

}  // namespace

ReducerTable::ReducerTable(RelAutomaton const& rel, Automaton const& reduced)
    : letters_(reduced.alphabet().size()) {
  Automaton const any = all_words(reduced.alphabet());
  base_ = trim(intersect(product(any, reduced), rel.automaton));
  incoming_.resize(base_.num_states());
  for (State s = 0; s < base_.num_states(); ++s) {
    for (auto const& e : base_.edges(s)) incoming_[e.to].push_back({e.letter, s});
  }
  for (auto& in : incoming_) std::sort(in.begin(), in.end());
}

ReducerTable::SubsetId ReducerTable::intern(std::vector<State> subset) {
  auto [it, inserted] = index_.try_emplace(subset, subsets_.size());
  if (inserted) {
    subsets_.push_back(std::move(subset));
    next_.emplace_back(letters_, kUnknown);
  }
  return it->second;
}

ReducerTable::SubsetId ReducerTable::step(SubsetId from, Letter a) {
  if (next_[from][a] != kUnknown) return next_[from][a];
  auto const& pairs = base_.alphabet();
  std::vector<State> to;
  for (State q : subsets_[from]) {
    for (auto const& e : base_.edges(q)) {
      if (pairs.pair(e.letter).left == static_cast<int>(a)) to.push_back(e.to);
    }
  }
  std::sort(to.begin(), to.end());
  to.erase(std::unique(to.begin(), to.end()), to.end());
  SubsetId const id = intern(std::move(to));
  next_[from][a] = id;
  return id;
}

Word ReducerTable::reduce(Word const& u) {
  for (Letter a : u) {
    if (a >= letters_) throw Error(Errc::invalid_argument, "letter out of range");
  }
  if (base_.num_states() == 0) throw Error(Errc::internal, "reducer automaton is empty");
  std::vector<SubsetId> run{intern(base_.initials())};
  for (Letter a : u) run.push_back(step(run.back(), a));

  std::vector<bool> member(base_.num_states(), false);
  auto const& last = subsets_[run.back()];
  auto fin = std::find_if(last.begin(), last.end(), [&](State s) { return base_.is_final(s); });
  if (fin == last.end()) throw Error(Errc::internal, "no reduced word found for input");

  auto const& pairs = base_.alphabet();
  Word v(u.size());
  State q = *fin;
  for (std::size_t i = u.size(); i-- > 0;) {
    auto const& prev = subsets_[run[i]];
    std::fill(member.begin(), member.end(), false);
    for (State p : prev) member[p] = true;
    bool found = false;
    // Incoming edges are sorted by (letter, source); letters order by right
    // component within a fixed left component.
    for (auto const& e : incoming_[q]) {
      PairLetter const pl = pairs.pair(e.letter);
      if (pl.left != static_cast<int>(u[i]) || !member[e.to]) continue;
      v[i] = static_cast<Letter>(pl.right);
      q = e.to;
      found = true;
      break;
    }
    if (!found) throw Error(Errc::internal, "backtracking lost the run");
  }
  return v;
}

Word reduce_word(ReducerTable& table, Word const& u) { return table.reduce(u); }

bool words_equivalent(RelAutomaton const& rel, Word const& u, Word const& v) {
  if (u.size() != v.size()) return false;
  auto const& a = rel.automaton;
  std::size_t const k = rel.context.alphabet_size();
  std::optional<State> q = a.initials().front();
  for (std::size_t i = 0; i < u.size() && q; ++i) {
    if (u[i] >= k || v[i] >= k) throw Error(Errc::invalid_argument, "letter out of range");
    q = a.step(*q, a.alphabet().pair_letter(static_cast<int>(u[i]), static_cast<int>(v[i])));
  }
  return q && a.is_final(*q);
}

}  // namespace betauto
