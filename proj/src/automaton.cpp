#include "betauto/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "betauto/error.hpp"

namespace betauto {

// --------------------------------------------------------------- Alphabet

Alphabet Alphabet::plain(std::vector<std::string> names) {
  Alphabet a;
  a.names_ = std::move(names);
  return a;
}

Alphabet Alphabet::pairs(Alphabet const& left, Alphabet const& right, bool padded) {
  Alphabet a;
  a.left_ = std::make_shared<Alphabet const>(left);
  a.right_ = std::make_shared<Alphabet const>(right);
  a.padded_ = padded;
  std::size_t const nl = left.size() + (padded ? 1 : 0);
  std::size_t const nr = right.size() + (padded ? 1 : 0);
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t r = 0; r < nr; ++r) {
      bool const le = l == left.size();
      bool const re = r == right.size();
      if (le && re) continue;
      a.names_.push_back("(" + (le ? std::string("e") : left.name(l)) + "," +
                         (re ? std::string("e") : right.name(r)) + ")");
    }
  }
  return a;
}

std::optional<Letter> Alphabet::find(std::string const& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Letter>(it - names_.begin());
}

Alphabet const& Alphabet::left() const {
  if (!left_) throw Error(Errc::alphabet_mismatch, "not a pair alphabet");
  return *left_;
}

Alphabet const& Alphabet::right() const {
  if (!right_) throw Error(Errc::alphabet_mismatch, "not a pair alphabet");
  return *right_;
}

PairLetter Alphabet::pair(Letter a) const {
  if (!is_pair()) throw Error(Errc::alphabet_mismatch, "not a pair alphabet");
  std::size_t const nr = right_->size() + (padded_ ? 1 : 0);
  auto const l = static_cast<int>(a / nr);
  auto const r = static_cast<int>(a % nr);
  PairLetter p;
  p.left = l == static_cast<int>(left_->size()) ? PairLetter::kPad : l;
  p.right = r == static_cast<int>(right_->size()) ? PairLetter::kPad : r;
  return p;
}

Letter Alphabet::pair_letter(int l, int r) const {
  if (!is_pair()) throw Error(Errc::alphabet_mismatch, "not a pair alphabet");
  if ((l == PairLetter::kPad || r == PairLetter::kPad) && !padded_) {
    throw Error(Errc::alphabet_mismatch, "alphabet has no padding symbol");
  }
  std::size_t const nr = right_->size() + (padded_ ? 1 : 0);
  std::size_t const li = l == PairLetter::kPad ? left_->size() : static_cast<std::size_t>(l);
  std::size_t const ri = r == PairLetter::kPad ? right_->size() : static_cast<std::size_t>(r);
  return static_cast<Letter>(li * nr + ri);
}

bool operator==(Alphabet const& a, Alphabet const& b) {
  if (a.names_ != b.names_ || a.is_pair() != b.is_pair()) return false;
  if (!a.is_pair()) return true;
  return a.padded_ == b.padded_ && *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

// -------------------------------------------------------------- Automaton

State Automaton::add_state(std::string label) {
  labels_.push_back(std::move(label));
  out_.emplace_back();
  initial_.push_back(false);
  final_.push_back(false);
  return static_cast<State>(out_.size() - 1);
}

void Automaton::add_transition(State from, Letter letter, State to) {
  if (from >= out_.size() || to >= out_.size()) {
    throw Error(Errc::invalid_argument, "transition endpoint out of range");
  }
  if (letter >= alphabet_.size()) {
    throw Error(Errc::invalid_argument, "letter out of range");
  }
  auto& edges = out_[from];
  Edge const e{letter, to};
  if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
}

void Automaton::set_initial(State s, bool on) { initial_.at(s) = on; }
void Automaton::set_final(State s, bool on) { final_.at(s) = on; }

std::size_t Automaton::num_transitions() const {
  std::size_t n = 0;
  for (auto const& e : out_) n += e.size();
  return n;
}

std::vector<State> Automaton::initials() const {
  std::vector<State> out;
  for (State s = 0; s < initial_.size(); ++s) {
    if (initial_[s]) out.push_back(s);
  }
  return out;
}

std::vector<State> Automaton::finals() const {
  std::vector<State> out;
  for (State s = 0; s < final_.size(); ++s) {
    if (final_[s]) out.push_back(s);
  }
  return out;
}

std::optional<State> Automaton::step(State s, Letter a) const {
  std::optional<State> found;
  for (auto const& e : out_.at(s)) {
    if (e.letter != a) continue;
    if (found) return std::nullopt;
    found = e.to;
  }
  return found;
}

bool Automaton::is_deterministic() const {
  if (initials().size() != 1) return false;
  std::vector<bool> seen(alphabet_.size());
  for (auto const& edges : out_) {
    std::fill(seen.begin(), seen.end(), false);
    for (auto const& e : edges) {
      if (seen[e.letter]) return false;
      seen[e.letter] = true;
    }
  }
  return true;
}

void Automaton::normalize() {
  for (auto& edges : out_) std::sort(edges.begin(), edges.end());
}

// ------------------------------------------------------------- algorithms

namespace {

std::string subset_label(std::vector<State> const& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

void require_same_alphabet(Automaton const& a, Automaton const& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw Error(Errc::alphabet_mismatch, "automata use different alphabets");
  }
}

std::vector<bool> reachable_from(Automaton const& a, std::vector<State> const& start,
                                 bool backwards) {
  std::vector<std::vector<State>> adj(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) {
    for (auto const& e : a.edges(s)) {
      if (backwards) {
        adj[e.to].push_back(s);
      } else {
        adj[s].push_back(e.to);
      }
    }
  }
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State s : start) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    State const s = stack.back();
    stack.pop_back();
    for (State t : adj[s]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

Automaton induced(Automaton const& a, std::vector<bool> const& keep) {
  Automaton out(a.alphabet());
  std::vector<State> index(a.num_states(), 0);
  for (State s = 0; s < a.num_states(); ++s) {
    if (!keep[s]) continue;
    index[s] = out.add_state(a.label(s));
    out.set_initial(index[s], a.is_initial(s));
    out.set_final(index[s], a.is_final(s));
  }
  for (State s = 0; s < a.num_states(); ++s) {
    if (!keep[s]) continue;
    for (auto const& e : a.edges(s)) {
      if (keep[e.to]) out.add_transition(index[s], e.letter, index[e.to]);
    }
  }
  return out;
}

}  // namespace

Automaton determinize(Automaton const& a) {
  Automaton out(a.alphabet());
  auto start = a.initials();
  if (start.empty()) return out;
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State> s) {
    auto [it, inserted] = index.try_emplace(s, 0);
    if (inserted) {
      it->second = out.add_state(subset_label(s));
      bool fin = false;
      for (State q : s) fin = fin || a.is_final(q);
      out.set_final(it->second, fin);
      subsets.push_back(std::move(s));
    }
    return it->second;
  };
  out.set_initial(intern(start));
  std::vector<std::vector<State>> buckets(a.alphabet().size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (auto& b : buckets) b.clear();
    for (State q : subsets[i]) {
      for (auto const& e : a.edges(q)) buckets[e.letter].push_back(e.to);
    }
    for (Letter l = 0; l < buckets.size(); ++l) {
      auto& b = buckets[l];
      if (b.empty()) continue;
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      State const to = intern(b);
      out.add_transition(static_cast<State>(i), l, to);
    }
  }
  return out;
}

Automaton transpose(Automaton const& a) {
  Automaton out(a.alphabet());
  for (State s = 0; s < a.num_states(); ++s) {
    out.add_state(a.label(s));
    out.set_initial(s, a.is_final(s));
    out.set_final(s, a.is_initial(s));
  }
  for (State s = 0; s < a.num_states(); ++s) {
    for (auto const& e : a.edges(s)) out.add_transition(e.to, e.letter, s);
  }
  return out;
}

Automaton trim(Automaton const& a) {
  auto const fwd = reachable_from(a, a.initials(), false);
  auto const bwd = reachable_from(a, a.finals(), true);
  std::vector<bool> keep(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) keep[s] = fwd[s] && bwd[s];
  return induced(a, keep);
}

Automaton canonical(Automaton const& dfa) {
  auto const init = dfa.initials();
  Automaton out(dfa.alphabet());
  if (init.empty()) return out;
  if (init.size() != 1) throw Error(Errc::invalid_argument, "canonical() needs a DFA");
  std::vector<std::optional<State>> index(dfa.num_states());
  std::deque<State> queue{init.front()};
  index[init.front()] = out.add_state(dfa.label(init.front()));
  out.set_initial(0);
  while (!queue.empty()) {
    State const s = queue.front();
    queue.pop_front();
    auto edges = dfa.edges(s);
    std::sort(edges.begin(), edges.end());
    for (auto const& e : edges) {
      if (!index[e.to]) {
        index[e.to] = out.add_state(dfa.label(e.to));
        queue.push_back(e.to);
      }
      out.add_transition(*index[s], e.letter, *index[e.to]);
    }
  }
  for (State s = 0; s < dfa.num_states(); ++s) {
    if (index[s]) out.set_final(*index[s], dfa.is_final(s));
  }
  out.normalize();
  return out;
}

Automaton minimize(Automaton const& a) {
  Automaton const d = trim(determinize(a));
  if (d.num_states() == 0) return Automaton(a.alphabet());
  std::size_t const n = d.num_states();
  std::size_t const k = d.alphabet().size();

  std::vector<std::vector<long>> target(n, std::vector<long>(k, -1));
  for (State s = 0; s < n; ++s) {
    for (auto const& e : d.edges(s)) target[s][e.letter] = e.to;
  }
  std::vector<long> cls(n);
  for (State s = 0; s < n; ++s) cls[s] = d.is_final(s) ? 1 : 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<long>, long> ids;
    std::vector<long> next(n);
    for (State s = 0; s < n; ++s) {
      std::vector<long> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (std::size_t l = 0; l < k; ++l) {
        sig.push_back(target[s][l] < 0 ? -1 : cls[target[s][l]]);
      }
      auto [it, inserted] = ids.try_emplace(std::move(sig), static_cast<long>(ids.size()));
      next[s] = it->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }

  Automaton q(a.alphabet());
  std::vector<State> rep(classes, static_cast<State>(n));
  for (State s = 0; s < n; ++s) {
    if (rep[cls[s]] == n) rep[cls[s]] = s;
  }
  for (std::size_t c = 0; c < classes; ++c) {
    q.add_state(d.label(rep[c]));
    q.set_final(static_cast<State>(c), d.is_final(rep[c]));
  }
  q.set_initial(static_cast<State>(cls[d.initials().front()]));
  for (std::size_t c = 0; c < classes; ++c) {
    for (auto const& e : d.edges(rep[c])) {
      q.add_transition(static_cast<State>(c), e.letter, static_cast<State>(cls[e.to]));
    }
  }
  return canonical(q);
}

bool isomorphic(Automaton const& a, Automaton const& b) {
  if (a.alphabet().size() != b.alphabet().size()) return false;
  if (!a.is_deterministic() || !b.is_deterministic()) {
    if (a.num_states() == 0 && b.num_states() == 0) return true;
    throw Error(Errc::invalid_argument, "isomorphism is only decided for DFAs");
  }
  Automaton const ca = canonical(a);
  Automaton const cb = canonical(b);
  if (ca.num_states() != cb.num_states()) return false;
  for (State s = 0; s < ca.num_states(); ++s) {
    if (ca.is_final(s) != cb.is_final(s) || ca.edges(s) != cb.edges(s)) return false;
  }
  return true;
}

bool equivalent(Automaton const& a, Automaton const& b) {
  if (a.alphabet().size() != b.alphabet().size()) return false;
  Automaton const ma = minimize(a);
  Automaton const mb = minimize(b);
  if (ma.num_states() == 0 || mb.num_states() == 0) {
    return ma.num_states() == mb.num_states();
  }
  return isomorphic(ma, mb);
}

bool is_codeterministic(Automaton const& a) {
  return transpose(a).is_deterministic();
}

namespace {

/// Reachable synchronous product; `letter_of` maps a pair of letters to the
/// product letter or nullopt when they do not combine.
template <typename LetterOf>
Automaton product_impl(Automaton const& a, Automaton const& b, Alphabet alphabet,
                       LetterOf letter_of) {
  Automaton out(std::move(alphabet));
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State x, State y) {
    auto [it, inserted] = index.try_emplace({x, y}, 0);
    if (inserted) {
      it->second = out.add_state("(" + a.label(x) + "," + b.label(y) + ")");
      out.set_final(it->second, a.is_final(x) && b.is_final(y));
      pairs.emplace_back(x, y);
    }
    return it->second;
  };
  for (State x : a.initials()) {
    for (State y : b.initials()) out.set_initial(intern(x, y));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto const [x, y] = pairs[i];
    for (auto const& ea : a.edges(x)) {
      for (auto const& eb : b.edges(y)) {
        if (auto l = letter_of(ea.letter, eb.letter)) {
          State const to = intern(ea.to, eb.to);
          out.add_transition(static_cast<State>(i), *l, to);
        }
      }
    }
  }
  return out;
}

}  // namespace

Automaton product(Automaton const& a, Automaton const& b) {
  Alphabet sigma = Alphabet::pairs(a.alphabet(), b.alphabet());
  Alphabet const& ref = sigma;
  return product_impl(a, b, sigma, [&ref](Letter x, Letter y) -> std::optional<Letter> {
    return ref.pair_letter(static_cast<int>(x), static_cast<int>(y));
  });
}

Automaton intersect(Automaton const& a, Automaton const& b) {
  require_same_alphabet(a, b);
  return product_impl(a, b, a.alphabet(), [](Letter x, Letter y) -> std::optional<Letter> {
    if (x == y) return x;
    return std::nullopt;
  });
}

Automaton union_of(Automaton const& a, Automaton const& b) {
  require_same_alphabet(a, b);
  Automaton out(a.alphabet());
  for (auto const* src : {&a, &b}) {
    State const offset = static_cast<State>(out.num_states());
    for (State s = 0; s < src->num_states(); ++s) {
      State const t = out.add_state(src->label(s));
      out.set_initial(t, src->is_initial(s));
      out.set_final(t, src->is_final(s));
    }
    for (State s = 0; s < src->num_states(); ++s) {
      for (auto const& e : src->edges(s)) out.add_transition(offset + s, e.letter, offset + e.to);
    }
  }
  return out;
}

Automaton complement(Automaton const& a) {
  Automaton d = determinize(a);
  if (d.num_states() == 0) d.set_initial(d.add_state("{}"));
  std::optional<State> sink;
  std::size_t const n = d.num_states();
  for (State s = 0; s < n; ++s) {
    std::vector<bool> has(d.alphabet().size(), false);
    for (auto const& e : d.edges(s)) has[e.letter] = true;
    for (Letter l = 0; l < has.size(); ++l) {
      if (has[l]) continue;
      if (!sink) {
        sink = d.add_state("sink");
        for (Letter m = 0; m < d.alphabet().size(); ++m) d.add_transition(*sink, m, *sink);
      }
      d.add_transition(s, l, *sink);
    }
  }
  for (State s = 0; s < d.num_states(); ++s) d.set_final(s, !d.is_final(s));
  return d;
}

Automaton append_letter(Automaton const& a, Letter g) {
  if (g >= a.alphabet().size()) throw Error(Errc::invalid_argument, "letter out of range");
  Automaton out = a;
  State const f = out.add_state("end");
  for (State s = 0; s < a.num_states(); ++s) {
    if (a.is_final(s)) {
      out.add_transition(s, g, f);
      out.set_final(s, false);
    }
  }
  out.set_final(f);
  return out;
}

Automaton project(Automaton const& a, int side) {
  if (!a.alphabet().is_pair()) {
    throw Error(Errc::alphabet_mismatch, "projection needs a pair alphabet");
  }
  if (side != 1 && side != 2) throw Error(Errc::invalid_argument, "side must be 1 or 2");
  auto const& sigma = a.alphabet();
  Alphabet const& comp = side == 1 ? sigma.left() : sigma.right();
  std::size_t const n = a.num_states();

  auto component = [&](Letter l) {
    PairLetter const p = sigma.pair(l);
    return side == 1 ? p.left : p.right;
  };
  std::vector<std::vector<State>> closure(n);
  for (State s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<State> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      State const q = stack.back();
      stack.pop_back();
      closure[s].push_back(q);
      for (auto const& e : a.edges(q)) {
        if (component(e.letter) == PairLetter::kPad && !seen[e.to]) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
  }

  Automaton out(comp);
  for (State s = 0; s < n; ++s) {
    out.add_state(a.label(s));
    out.set_initial(s, a.is_initial(s));
    bool fin = false;
    for (State q : closure[s]) fin = fin || a.is_final(q);
    out.set_final(s, fin);
  }
  for (State s = 0; s < n; ++s) {
    for (State q : closure[s]) {
      for (auto const& e : a.edges(q)) {
        int const c = component(e.letter);
        if (c != PairLetter::kPad) out.add_transition(s, static_cast<Letter>(c), e.to);
      }
    }
  }
  return out;
}

Automaton lex_pair_automaton(Alphabet const& sigma, std::vector<int> const& rank) {
  if (rank.size() != sigma.size()) {
    throw Error(Errc::invalid_argument, "order must rank every letter");
  }
  Alphabet const pairs = Alphabet::pairs(sigma, sigma);
  Automaton out(pairs);
  State const eq = out.add_state("=");
  State const lt = out.add_state("<");
  State const gt = out.add_state(">");
  out.set_initial(eq);
  out.set_final(lt);
  for (int x = 0; x < static_cast<int>(sigma.size()); ++x) {
    for (int y = 0; y < static_cast<int>(sigma.size()); ++y) {
      Letter const l = pairs.pair_letter(x, y);
      State const next = rank[x] == rank[y] ? eq : (rank[x] < rank[y] ? lt : gt);
      out.add_transition(eq, l, next);
      out.add_transition(lt, l, lt);
      out.add_transition(gt, l, gt);
    }
  }
  return out;
}

Automaton all_words(Alphabet const& sigma) {
  Automaton out(sigma);
  State const s = out.add_state("*");
  out.set_initial(s);
  out.set_final(s);
  for (Letter l = 0; l < sigma.size(); ++l) out.add_transition(s, l, s);
  return out;
}

Word zip_words(Alphabet const& pairs, Word const& u, Word const& v) {
  if (u.size() != v.size()) throw Error(Errc::invalid_argument, "words differ in length");
  Word out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.push_back(pairs.pair_letter(static_cast<int>(u[i]), static_cast<int>(v[i])));
  }
  return out;
}

namespace {

std::size_t code_points(std::string const& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

}  // namespace

Word parse_word(Alphabet const& sigma, std::string const& text) {
  Word w;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto l = sigma.find(item);
      if (!l) throw Error(Errc::invalid_argument, "unknown letter '" + item + "'");
      w.push_back(*l);
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::optional<Letter> best;
    std::size_t best_len = 0;
    for (Letter l = 0; l < sigma.size(); ++l) {
      auto const& name = sigma.name(l);
      if (name.size() > best_len && text.compare(pos, name.size(), name) == 0) {
        best = l;
        best_len = name.size();
      }
    }
    if (!best) {
      throw Error(Errc::invalid_argument, "cannot read a letter at '" + text.substr(pos) + "'");
    }
    w.push_back(*best);
    pos += best_len;
  }
  return w;
}

std::string format_word(Alphabet const& sigma, Word const& w) {
  bool const compact = std::all_of(sigma.names().begin(), sigma.names().end(),
                                   [](std::string const& n) { return code_points(n) == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !compact) out += ',';
    out += sigma.name(w[i]);
  }
  return out;
}

bool accepts(Automaton const& a, Word const& w) {
  std::vector<bool> current(a.num_states(), false);
  for (State s : a.initials()) current[s] = true;
  for (Letter l : w) {
    if (l >= a.alphabet().size()) throw Error(Errc::invalid_argument, "letter out of range");
    std::vector<bool> next(a.num_states(), false);
    bool any = false;
    for (State s = 0; s < a.num_states(); ++s) {
      if (!current[s]) continue;
      for (auto const& e : a.edges(s)) {
        if (e.letter == l) {
          next[e.to] = true;
          any = true;
        }
      }
    }
    if (!any) return false;
    current = std::move(next);
  }
  for (State s = 0; s < a.num_states(); ++s) {
    if (current[s] && a.is_final(s)) return true;
  }
  return false;
}

std::vector<BigInt> count_series(Automaton const& a, std::size_t n_max) {
  Automaton const d = a.is_deterministic() ? a : determinize(a);
  std::vector<BigInt> v(d.num_states(), BigInt(0));
  for (State s : d.initials()) v[s] = 1;
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0;; ++n) {
    BigInt total = 0;
    for (State s = 0; s < d.num_states(); ++s) {
      if (d.is_final(s)) total += v[s];
    }
    out.push_back(total);
    if (n == n_max) break;
    std::vector<BigInt> next(d.num_states(), BigInt(0));
    for (State s = 0; s < d.num_states(); ++s) {
      if (v[s] == 0) continue;
      for (auto const& e : d.edges(s)) next[e.to] += v[s];
    }
    v = std::move(next);
  }
  return out;
}

BigInt count_words(Automaton const& a, std::size_t n) { return count_series(a, n).back(); }

std::vector<std::vector<long long>> adjacency_matrix(Automaton const& a) {
  std::size_t const n = a.num_states();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (State s = 0; s < n; ++s) {
    for (auto const& e : a.edges(s)) ++m[s][e.to];
  }
  return m;
}

// ---------------------------------------------------- characteristic poly

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> const& primes_below_2_62() {
  static std::vector<u64> const primes = [] {
    std::vector<u64> out;
    for (u64 c = (1ULL << 62) - 1; out.size() < 64; c -= 2) {
      if (is_prime(c)) out.push_back(c);
    }
    return out;
  }();
  return primes;
}

/// Characteristic polynomial mod p by reduction to Hessenberg form.
std::vector<u64> char_poly_mod(std::vector<std::vector<long long>> const& m, u64 p) {
  std::size_t const n = m.size();
  std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long long const v = m[i][j] % static_cast<long long>(p);
      h[i][j] = static_cast<u64>(v < 0 ? v + static_cast<long long>(p) : v);
    }
  }
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t piv = c + 1;
    while (piv < n && h[piv][c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != c + 1) {
      std::swap(h[piv], h[c + 1]);
      for (std::size_t i = 0; i < n; ++i) std::swap(h[i][piv], h[i][c + 1]);
    }
    u64 const inv = inv_mod(h[c + 1][c], p);
    for (std::size_t j = c + 2; j < n; ++j) {
      u64 const u = mul_mod(h[j][c], inv, p);
      if (u == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        h[j][k] = (h[j][k] + p - mul_mod(u, h[c + 1][k], p)) % p;
      }
      for (std::size_t k = 0; k < n; ++k) {
        h[k][c + 1] = (h[k][c + 1] + mul_mod(u, h[k][j], p)) % p;
      }
    }
  }
  // p_k(x) = det(xI - H_k) for the leading k×k block.
  std::vector<std::vector<u64>> poly(n + 1);
  poly[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    auto& cur = poly[k];
    cur.assign(k + 1, 0);
    auto const& prev = poly[k - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = (cur[i + 1] + prev[i]) % p;
      cur[i] = (cur[i] + p - mul_mod(h[k - 1][k - 1], prev[i], p)) % p;
    }
    u64 t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = mul_mod(t, h[k - i][k - i - 1], p);
      if (t == 0) break;
      u64 const f = mul_mod(t, h[k - i - 1][k - 1], p);
      auto const& q = poly[k - i - 1];
      for (std::size_t j = 0; j < q.size(); ++j) {
        cur[j] = (cur[j] + p - mul_mod(f, q[j], p)) % p;
      }
    }
  }
  return poly[n];
}

}  // namespace

IntPoly char_poly(std::vector<std::vector<long long>> const& m) {
  std::size_t const n = m.size();
  if (n == 0) return {BigInt(1)};
  // Every coefficient is a sum of principal minors, each bounded by
  // Hadamard, so |c_k| <= Π (1 + ||row_i||).
  double log2_bound = 0;
  for (auto const& row : m) {
    double norm2 = 0;
    for (auto v : row) norm2 += static_cast<double>(v) * static_cast<double>(v);
    log2_bound += std::log2(1 + std::sqrt(norm2));
  }
  std::size_t const needed = static_cast<std::size_t>(std::ceil((log2_bound + 2) / 61.0)) + 1;
  auto const& primes = primes_below_2_62();
  if (needed > primes.size()) throw Error(Errc::internal, "matrix too large for char_poly");

  std::vector<BigInt> acc(n + 1, BigInt(0));
  BigInt modulus = 1;
  for (std::size_t k = 0; k < needed; ++k) {
    u64 const p = primes[k];
    auto const r = char_poly_mod(m, p);
    BigInt const bp = BigInt(p);
    u64 const minv = inv_mod(static_cast<u64>(BigInt(modulus % bp)), p);
    for (std::size_t i = 0; i <= n; ++i) {
      u64 const cur = static_cast<u64>(BigInt(acc[i] % bp));
      u64 const diff = (r[i] + p - cur) % p;
      acc[i] += modulus * BigInt(mul_mod(diff, minv, p));
    }
    modulus *= bp;
  }
  BigInt const half = modulus / 2;
  for (auto& c : acc) {
    if (c > half) c -= modulus;
  }
  trim(acc);
  return acc;
}

IntPoly char_poly(Automaton const& a) { return char_poly(adjacency_matrix(a)); }

// ------------------------------------------------------- Perron eigenvalue

namespace {

/// Strongly connected components, iterative Kosaraju.
std::vector<int> scc_ids(std::vector<std::vector<long long>> const& m, int& count) {
  std::size_t const n = m.size();
  std::vector<int> order;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < n) {
        std::size_t const w = next++;
        if (m[v][w] && !seen[w]) {
          seen[w] = true;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(static_cast<int>(v));
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<int> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      int const v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (m[w][v] && comp[w] < 0) {
          comp[w] = count;
          stack.push_back(static_cast<int>(w));
        }
      }
    }
    ++count;
  }
  return comp;
}

/// Collatz–Wielandt bounds for an irreducible block, computed on B + I so
/// that the iteration is primitive.
Interval irreducible_radius(std::vector<std::vector<long long>> const& b, double tolerance) {
  std::size_t const k = b.size();
  mpfr_prec_t const prec = 128;
  std::vector<std::vector<std::pair<std::size_t, long long>>> rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (b[i][j]) rows[i].emplace_back(j, b[i][j]);
    }
  }
  std::vector<long double> x(k, 1.0L);
  std::vector<long double> y(k);
  auto point = [&](long double v) {
    Float f(prec);
    mpfr_set_ld(f.get(), v, MPFR_RNDN);
    return Interval::from_point(f);
  };
  // min_i ((B+I)x)_i / x_i <= ρ(B+I) <= max_i ((B+I)x)_i / x_i for x > 0.
  auto certify = [&]() {
    Float lo(prec);
    Float hi(prec);
    mpfr_set_inf(lo.get(), 1);
    mpfr_set_inf(hi.get(), -1);
    for (std::size_t i = 0; i < k; ++i) {
      Interval const xi = point(x[i]);
      Interval acc = xi;
      for (auto const& [j, w] : rows[i]) {
        acc = acc + Interval(static_cast<double>(w), prec) * point(x[j]);
      }
      Interval const ratio = acc / xi;
      mpfr_min(lo.get(), lo.get(), ratio.lo().get(), MPFR_RNDD);
      mpfr_max(hi.get(), hi.get(), ratio.hi().get(), MPFR_RNDU);
    }
    return Interval(lo, hi) - Interval(1.0, prec);
  };
  Interval best = certify();
  for (int iter = 1; iter <= 100000; ++iter) {
    long double norm = 0;
    for (std::size_t i = 0; i < k; ++i) {
      long double acc = x[i];
      for (auto const& [j, w] : rows[i]) acc += static_cast<long double>(w) * x[j];
      y[i] = acc;
      norm = std::max(norm, acc);
    }
    for (std::size_t i = 0; i < k; ++i) x[i] = y[i] / norm;
    if (iter % 16 == 0) {
      Interval const c = certify();
      if (c.width() < best.width()) best = c;
      if (best.width() < tolerance) break;
    }
  }
  return best;
}

}  // namespace

Interval spectral_radius(std::vector<std::vector<long long>> const& m, double tolerance) {
  mpfr_prec_t const prec = 128;
  int count = 0;
  auto const comp = scc_ids(m, count);
  Interval result(0.0, prec);
  bool any = false;
  for (int c = 0; c < count; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (comp[i] == c) members.push_back(i);
    }
    std::vector<std::vector<long long>> b(members.size(), std::vector<long long>(members.size()));
    bool has_edge = false;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        b[i][j] = m[members[i]][members[j]];
        has_edge = has_edge || b[i][j] != 0;
      }
    }
    if (!has_edge) continue;
    Interval const r = irreducible_radius(b, tolerance);
    if (!any) {
      result = r;
      any = true;
    } else {
      result = max(result, r);
    }
  }
  return result;
}

Interval dominant_eigenvalue(Automaton const& a, double tolerance) {
  return spectral_radius(adjacency_matrix(trim(a)), tolerance);
}

// ----------------------------------------------------------- serialization

namespace {

std::string escape(std::string const& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::vector<std::string> split_pair(std::string const& name) {
  if (name.size() < 5 || name.front() != '(' || name.back() != ')') return {};
  int depth = 0;
  for (std::size_t i = 1; i + 1 < name.size(); ++i) {
    char const c = name[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      return {name.substr(1, i - 1), name.substr(i + 1, name.size() - i - 2)};
    }
  }
  return {};
}

Alphabet alphabet_from_names(std::vector<std::string> const& names) {
  std::vector<std::string> left;
  std::vector<std::string> right;
  bool padded = false;
  for (auto const& n : names) {
    auto parts = split_pair(n);
    if (parts.size() != 2) return Alphabet::plain(names);
    for (int side = 0; side < 2; ++side) {
      auto& comp = side == 0 ? left : right;
      if (parts[side] == "e") {
        padded = true;
      } else if (std::find(comp.begin(), comp.end(), parts[side]) == comp.end()) {
        comp.push_back(parts[side]);
      }
    }
  }
  Alphabet candidate = Alphabet::pairs(alphabet_from_names(left), alphabet_from_names(right), padded);
  if (candidate.names() == names) return candidate;
  return Alphabet::plain(names);
}

}  // namespace

std::string to_dot(Automaton const& a, std::string const& name) {
  std::ostringstream os;
  os << "digraph \"" << escape(name) << "\" {\n  rankdir=LR;\n";
  for (State s = 0; s < a.num_states(); ++s) {
    std::string const label = a.label(s).empty() ? std::to_string(s) : a.label(s);
    os << "  " << s << " [label=\"" << escape(label) << "\", shape="
       << (a.is_final(s) ? "doublecircle" : "circle");
    if (a.is_initial(s)) os << ", style=bold";
    os << "];\n";
  }
  for (State s = 0; s < a.num_states(); ++s) {
    std::map<State, std::vector<Letter>> grouped;
    for (auto const& e : a.edges(s)) grouped[e.to].push_back(e.letter);
    for (auto& [to, letters] : grouped) {
      std::sort(letters.begin(), letters.end());
      std::string text;
      for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) text += ",";
        text += a.alphabet().name(letters[i]);
      }
      os << "  " << s << " -> " << to << " [label=\"" << escape(text) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(Automaton const& a) {
  nlohmann::json j;
  j["alphabet"] = a.alphabet().names();
  nlohmann::json states = nlohmann::json::array();
  for (State s = 0; s < a.num_states(); ++s) states.push_back({{"label", a.label(s)}});
  j["states"] = states;
  j["initials"] = a.initials();
  j["finals"] = a.finals();
  nlohmann::json tr = nlohmann::json::array();
  for (State s = 0; s < a.num_states(); ++s) {
    auto edges = a.edges(s);
    std::sort(edges.begin(), edges.end());
    for (auto const& e : edges) tr.push_back({s, e.letter, e.to});
  }
  j["transitions"] = tr;
  return j;
}

Automaton from_json(nlohmann::json const& doc) {
  try {
    Automaton a(alphabet_from_names(doc.at("alphabet").get<std::vector<std::string>>()));
    for (auto const& st : doc.at("states")) {
      a.add_state(st.contains("label") ? st.at("label").get<std::string>() : std::string());
    }
    auto check = [&](long long s) {
      if (s < 0 || static_cast<std::size_t>(s) >= a.num_states()) {
        throw Error(Errc::malformed_json, "state index out of range");
      }
      return static_cast<State>(s);
    };
    for (auto const& s : doc.at("initials")) a.set_initial(check(s.get<long long>()));
    for (auto const& s : doc.at("finals")) a.set_final(check(s.get<long long>()));
    for (auto const& t : doc.at("transitions")) {
      if (!t.is_array() || t.size() != 3) throw Error(Errc::malformed_json, "bad transition");
      long long const l = t[1].get<long long>();
      if (l < 0 || static_cast<std::size_t>(l) >= a.alphabet().size()) {
        throw Error(Errc::malformed_json, "letter index out of range");
      }
      a.add_transition(check(t[0].get<long long>()), static_cast<Letter>(l),
                       check(t[2].get<long long>()));
    }
    return a;
  } catch (nlohmann::json::exception const& e) {
    throw Error(Errc::malformed_json, e.what());
  }
}

}  // namespace betauto
