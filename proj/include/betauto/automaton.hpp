#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "betauto/bignum.hpp"
#include "betauto/interval.hpp"
#include "betauto/polynomial.hpp"

namespace betauto {

using State = std::uint32_t;
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Component of a pair letter; kPad stands for the padding symbol e.
struct PairLetter {
  static constexpr int kPad = -1;
  int left = kPad;
  int right = kPad;
  friend bool operator==(PairLetter const&, PairLetter const&) = default;
};

/// Finite ordered alphabet. Letters are indices 0..size()-1; names are for
/// display and serialization. A pair alphabet remembers its components.
class Alphabet {
 public:
  Alphabet() = default;
  static Alphabet plain(std::vector<std::string> names);
  /// Σ_l × Σ_r, letter (l, r) at index l·|Σ_r| + r. With padding the
  /// components gain e (index |Σ|) and the letter (e, e) is left out.
  static Alphabet pairs(Alphabet const& left, Alphabet const& right, bool padded = false);

  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] std::vector<std::string> const& names() const noexcept { return names_; }
  [[nodiscard]] std::string const& name(Letter a) const { return names_.at(a); }
  [[nodiscard]] std::optional<Letter> find(std::string const& name) const;

  [[nodiscard]] bool is_pair() const noexcept { return left_ != nullptr; }
  [[nodiscard]] bool padded() const noexcept { return padded_; }
  [[nodiscard]] Alphabet const& left() const;
  [[nodiscard]] Alphabet const& right() const;
  [[nodiscard]] PairLetter pair(Letter a) const;
  [[nodiscard]] Letter pair_letter(int l, int r) const;

  friend bool operator==(Alphabet const& a, Alphabet const& b);

 private:
  std::vector<std::string> names_;
  std::shared_ptr<Alphabet const> left_;
  std::shared_ptr<Alphabet const> right_;
  bool padded_ = false;
};

struct Edge {
  Letter letter;
  State to;
  friend auto operator<=>(Edge const&, Edge const&) = default;
};

/// Nondeterministic finite automaton (Σ, Q, T, I, F). Labels are display
/// metadata only; every algorithm works on indices.
class Automaton {
 public:
  Automaton() = default;
  explicit Automaton(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  State add_state(std::string label = {});
  /// Duplicate transitions are ignored.
  void add_transition(State from, Letter letter, State to);
  void set_initial(State s, bool on = true);
  void set_final(State s, bool on = true);

  [[nodiscard]] Alphabet const& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t num_states() const noexcept { return out_.size(); }
  [[nodiscard]] std::size_t num_transitions() const;
  [[nodiscard]] std::string const& label(State s) const { return labels_.at(s); }
  void set_label(State s, std::string label) { labels_.at(s) = std::move(label); }
  [[nodiscard]] std::vector<Edge> const& edges(State s) const { return out_.at(s); }
  [[nodiscard]] bool is_initial(State s) const { return initial_.at(s); }
  [[nodiscard]] bool is_final(State s) const { return final_.at(s); }
  [[nodiscard]] std::vector<State> initials() const;
  [[nodiscard]] std::vector<State> finals() const;
  /// The target of (s, a) when unique, else nullopt.
  [[nodiscard]] std::optional<State> step(State s, Letter a) const;

  /// One initial state and at most one transition per (state, letter).
  [[nodiscard]] bool is_deterministic() const;

  /// Sort every edge list; used for structural comparison.
  void normalize();

 private:
  Alphabet alphabet_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Edge>> out_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
};

[[nodiscard]] Automaton determinize(Automaton const& a);
[[nodiscard]] Automaton transpose(Automaton const& a);
[[nodiscard]] Automaton trim(Automaton const& a);
/// Minimal trimmed DFA in canonical numbering (breadth first from the
/// initial state, letters in order). The empty language gives 0 states.
[[nodiscard]] Automaton minimize(Automaton const& a);
/// Renumber a DFA breadth first from its initial state, dropping
/// unreachable states.
[[nodiscard]] Automaton canonical(Automaton const& dfa);
/// Structural equality after canonical renumbering (labels ignored).
[[nodiscard]] bool isomorphic(Automaton const& a, Automaton const& b);
[[nodiscard]] bool equivalent(Automaton const& a, Automaton const& b);
[[nodiscard]] bool is_codeterministic(Automaton const& a);

/// Synchronous product over Σ_a × Σ_b.
[[nodiscard]] Automaton product(Automaton const& a, Automaton const& b);
[[nodiscard]] Automaton intersect(Automaton const& a, Automaton const& b);
[[nodiscard]] Automaton union_of(Automaton const& a, Automaton const& b);
[[nodiscard]] Automaton complement(Automaton const& a);
/// L ↦ L·g.
[[nodiscard]] Automaton append_letter(Automaton const& a, Letter g);
/// Component `side` (1 or 2) of a pair-alphabet automaton; padding becomes ε.
[[nodiscard]] Automaton project(Automaton const& a, int side);
/// Pairs (u, v) of equal length with u < v lexicographically, where
/// `rank[x]` is the position of letter x in the order.
[[nodiscard]] Automaton lex_pair_automaton(Alphabet const& sigma, std::vector<int> const& rank);
/// Σ* on the given alphabet (one state, all loops).
[[nodiscard]] Automaton all_words(Alphabet const& sigma);
/// The pair word (u_1, v_1)…(u_n, v_n); lengths must agree.
[[nodiscard]] Word zip_words(Alphabet const& pairs, Word const& u, Word const& v);

/// Parse a word: comma-separated letter names, or a plain concatenation
/// split by longest matching name.
[[nodiscard]] Word parse_word(Alphabet const& sigma, std::string const& text);
/// Concatenate names when each is a single character, else join with ','.
[[nodiscard]] std::string format_word(Alphabet const& sigma, Word const& w);

[[nodiscard]] bool accepts(Automaton const& a, Word const& w);
[[nodiscard]] BigInt count_words(Automaton const& a, std::size_t n);
/// c_0..c_{n_max}.
[[nodiscard]] std::vector<BigInt> count_series(Automaton const& a, std::size_t n_max);

/// Number of letters from i to j.
[[nodiscard]] std::vector<std::vector<long long>> adjacency_matrix(Automaton const& a);
/// det(xI − M) of the adjacency matrix, exact.
[[nodiscard]] IntPoly char_poly(Automaton const& a);
[[nodiscard]] IntPoly char_poly(std::vector<std::vector<long long>> const& m);
/// Certified enclosure of the Perron root of the trimmed adjacency matrix.
[[nodiscard]] Interval dominant_eigenvalue(Automaton const& a, double tolerance = 1e-10);
[[nodiscard]] Interval spectral_radius(std::vector<std::vector<long long>> const& m,
                                       double tolerance = 1e-10);

[[nodiscard]] std::string to_dot(Automaton const& a, std::string const& name = "A");
[[nodiscard]] nlohmann::json to_json(Automaton const& a);
[[nodiscard]] Automaton from_json(nlohmann::json const& doc);

}  // namespace betauto
