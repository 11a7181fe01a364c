#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "betauto/error.hpp"
#include "betauto/reducer.hpp"
#include "betauto/relations.hpp"
#include "betauto/structure.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace betauto;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::size_t max_states = Caps{}.max_states;
  std::size_t max_depth = Caps{}.max_depth;
  int precision = 0;  // 0 keeps the config value
  std::string order = "lex";
  bool force = false;
  std::size_t n = 20;
  std::size_t oracle_n = 5;
  std::string candidate;
  bool json_out = false;
  std::string word;
  std::string left;
  std::string right;
  bool power_identity = false;
};

json load_config(Options const& o) {
  std::ifstream in(o.config);
  if (!in) throw Error(Errc::invalid_argument, "cannot open config " + o.config);
  json doc;
  try {
    in >> doc;
  } catch (json::exception const& e) {
    throw Error(Errc::malformed_json, e.what());
  }
  if (o.precision > 0) doc["precision"] = o.precision;
  return doc;
}

Caps caps_of(Options const& o) {
  Caps c;
  c.max_states = o.max_states;
  c.max_depth = o.max_depth;
  c.force = o.force;
  return c;
}

void write_file(fs::path const& path, std::string const& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_argument, "cannot write " + path.string());
  f << text;
}

void write_json(fs::path const& path, json const& j) { write_file(path, j.dump(2) + "\n"); }

IntPoly parse_poly(std::string const& text) {
  IntPoly p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      p.emplace_back(item);
    } catch (std::exception const&) {
      throw Error(Errc::invalid_argument, "bad coefficient '" + item + "'");
    }
  }
  trim(p);
  return p;
}

std::optional<IntPoly> candidate_of(Options const& o, json const& doc) {
  if (!o.candidate.empty()) return parse_poly(o.candidate);
  if (doc.contains("reference") && doc["reference"].contains("pi")) {
    IntPoly p;
    for (auto const& c : doc["reference"]["pi"]) p.emplace_back(c.get<long long>());
    return p;
  }
  return std::nullopt;
}

json caps_json(Caps const& c) {
  return {{"max_states", c.max_states}, {"max_depth", c.max_depth}, {"force", c.force}};
}

int cmd_relations(Options const& o) {
  json const doc = load_config(o);
  BetaContext const ctx = context_from_json(doc);
  Caps const caps = caps_of(o);
  fs::create_directories(o.out);
  json summary;
  summary["context"] = ctx.describe();
  summary["caps"] = caps_json(caps);
  try {
    RelAutomaton const rel = build_relation_automaton(ctx, caps);
    write_json(fs::path(o.out) / "relations.json", to_json(rel.automaton));
    write_file(fs::path(o.out) / "relations.dot", to_dot(rel.automaton, "relations"));
    summary["status"] = "ok";
    summary["state_count"] = rel.automaton.num_states();
    summary["transition_count"] = rel.automaton.num_transitions();
    summary["free"] = is_free(rel);
    summary["stats"] = {{"explored", rel.stats.explored},
                        {"pruned", rel.stats.pruned},
                        {"straddled", rel.stats.straddled},
                        {"depth", rel.stats.depth}};
  } catch (Error const& e) {
    if (e.code() != Errc::blocked && e.code() != Errc::cap_exceeded) throw;
    summary["status"] = e.code() == Errc::blocked ? "blocked" : "cap_exceeded";
    summary["message"] = e.what();
    write_json(fs::path(o.out) / "summary.json", summary);
    throw;
  }
  write_json(fs::path(o.out) / "summary.json", summary);
  if (o.json_out) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << "states: " << summary["state_count"] << "\nfree: " << (summary["free"] ? "yes" : "no")
              << "\n";
  }
  return 0;
}

int cmd_structure(Options const& o) {
  json const doc = load_config(o);
  BetaContext const ctx = context_from_json(doc);
  RelAutomaton const rel = build_relation_automaton(ctx, caps_of(o));
  AutomaticStructure const s = build_structure(rel, parse_order(o.order));
  fs::path const dir(o.out);
  fs::create_directories(dir);
  write_json(dir / "reduced.json", to_json(s.reduced));
  write_file(dir / "reduced.dot", to_dot(s.reduced, "reduced"));
  for (std::size_t g = 0; g < s.multipliers.size(); ++g) {
    auto const stem = "mult_" + std::to_string(g);
    write_json(dir / (stem + ".json"), to_json(s.multipliers[g]));
    write_file(dir / (stem + ".dot"), to_dot(s.multipliers[g], stem));
  }
  GrowthReport const g = growth(s.reduced, o.n, candidate_of(o, doc));
  json report = g.to_json();
  report["order"] = o.order;
  report["reduced_states"] = s.reduced.num_states();
  write_json(dir / "growth.json", report);
  if (o.json_out) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "reduced states: " << s.reduced.num_states() << "\nchar poly: " << to_string(g.char_poly)
              << "\nlambda: [" << g.lambda.lower() << ", " << g.lambda.upper() << "]\n";
    if (g.pi_check) {
      std::cout << "candidate " << to_string(g.pi_check->candidate) << ": "
                << (g.pi_check->certified() ? "certified" : "not certified") << "\n";
    }
  }
  return 0;
}

int cmd_reduce(Options const& o) {
  BetaContext const ctx = context_from_json(load_config(o));
  RelAutomaton const rel = build_relation_automaton(ctx, caps_of(o));
  Automaton const reduced = build_reduced_automaton(rel, parse_order(o.order));
  ReducerTable table(rel, reduced);
  Alphabet const sigma = digit_alphabet(ctx);
  std::string const out = format_word(sigma, table.reduce(parse_word(sigma, o.word)));
  if (o.json_out) {
    std::cout << json{{"input", o.word}, {"reduced", out}}.dump() << "\n";
  } else {
    std::cout << out << "\n";
  }
  return 0;
}

int cmd_equiv(Options const& o) {
  BetaContext const ctx = context_from_json(load_config(o));
  RelAutomaton const rel = build_relation_automaton(ctx, caps_of(o));
  Alphabet const sigma = digit_alphabet(ctx);
  bool const eq = words_equivalent(rel, parse_word(sigma, o.left), parse_word(sigma, o.right));
  if (o.json_out) {
    std::cout << json{{"left", o.left}, {"right", o.right}, {"equivalent", eq}}.dump() << "\n";
  } else {
    std::cout << (eq ? "equivalent" : "distinct") << "\n";
  }
  return 0;
}

/// Base 3 with digits {0, p, q}, 0 < p < q, reduced to a coprime pair.
std::optional<std::pair<long long, long long>> kenyon_shape(BetaContext const& ctx) {
  if (ctx.mode() != Mode::algebraic || !ctx.user_minpoly()) return std::nullopt;
  if (ctx.user_minpoly()->coeffs() != IntPoly{BigInt(-3), BigInt(1)}) return std::nullopt;
  auto const& d = ctx.user_digits();
  if (d.size() != 3) return std::nullopt;
  std::vector<long long> v;
  for (auto const& p : d) {
    if (p.size() > 1) return std::nullopt;
    v.push_back(p.empty() ? 0 : p[0].convert_to<long long>());
  }
  if (v[0] != 0 || v[1] <= 0 || v[2] <= v[1]) return std::nullopt;
  // Scaling the digits does not change the relations.
  long long const g = std::gcd(v[1], v[2]);
  return std::pair{v[1] / g, v[2] / g};
}

int cmd_free(Options const& o) {
  BetaContext const ctx = context_from_json(load_config(o));
  json j;
  Verdict verdict = Verdict::unknown;
  std::string reason;
  if (ctx.mode() == Mode::algebraic) {
    Verdict const quick = quick_free_sufficient(ctx);
    Verdict const mahler = mahler_nonfree_check(ctx);
    j["quick_free_sufficient"] = to_string(quick);
    j["mahler_nonfree_check"] = to_string(mahler);
    j["mahler_measure"] = mahler_measure(ctx).mid();
    if (quick == Verdict::free) {
      verdict = Verdict::free;
      reason = "conjugate bound";
    } else if (mahler == Verdict::non_free) {
      verdict = Verdict::non_free;
      reason = "mahler<2";
    }
  }
  if (auto pq = kenyon_shape(ctx)) {
    Verdict const k = kenyon_criterion(pq->first, pq->second);
    j["kenyon_criterion"] = to_string(k);
    if (verdict == Verdict::unknown) {
      verdict = k;
      reason = "kenyon";
    }
  }
  if (!ctx.blocked() || o.force) {
    try {
      RelAutomaton const rel = build_relation_automaton(ctx, caps_of(o));
      bool const f = is_free(rel);
      j["automaton"] = f ? "free" : "non-free";
      Verdict const a = f ? Verdict::free : Verdict::non_free;
      if (verdict != Verdict::unknown && verdict != a) {
        throw Error(Errc::internal, "freeness tests disagree");
      }
      if (verdict == Verdict::unknown) {
        verdict = a;
        reason = "relation automaton";
      }
    } catch (Error const& e) {
      if (e.code() != Errc::cap_exceeded && e.code() != Errc::blocked) throw;
      j["automaton"] = e.what();
    }
  } else {
    j["automaton"] = "blocked";
  }
  j["verdict"] = to_string(verdict);
  j["reason"] = reason;
  if (o.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_string(verdict);
    if (!reason.empty()) std::cout << " (" << reason << ")";
    std::cout << "\n";
  }
  return 0;
}

PowerSum read_power_sum(json const& terms) {
  PowerSum s;
  for (auto const& t : terms) s.emplace_back(BigInt(t.at(0).get<long long>()), t.at(1).get<long>());
  return s;
}

int cmd_verify(Options const& o) {
  json const doc = load_config(o);
  BetaContext const ctx = context_from_json(doc);
  bool holds = false;
  json j;
  if (o.power_identity) {
    if (!doc.contains("identity")) throw Error(Errc::invalid_argument, "config has no identity");
    holds = verify_power_identity(ctx, read_power_sum(doc["identity"].at("lhs")),
                                  read_power_sum(doc["identity"].at("rhs")));
    j["identity"] = doc["identity"];
  } else {
    Alphabet const sigma = digit_alphabet(ctx);
    holds = verify_relation(ctx, parse_word(sigma, o.left), parse_word(sigma, o.right));
    j["left"] = o.left;
    j["right"] = o.right;
  }
  j["holds"] = holds;
  if (o.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (holds ? "true" : "false") << "\n";
  }
  return 0;
}

std::vector<Word> all_words_of(std::size_t k, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (auto const& w : out) {
      for (Letter a = 0; a < k; ++a) {
        next.push_back(w);
        next.back().push_back(a);
      }
    }
    out = std::move(next);
  }
  return out;
}

int cmd_oracle(Options const& o) {
  BetaContext const ctx = context_from_json(load_config(o));
  RelAutomaton const rel = build_relation_automaton(ctx, caps_of(o));
  Order const order = parse_order(o.order);
  AutomaticStructure const s = build_structure(rel, order);
  ReducerTable table(rel, s.reduced);
  std::size_t const k = ctx.alphabet_size();
  std::vector<int> const rank = order_rank(k, order);
  auto less = [&](Word const& a, Word const& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](Letter x, Letter y) { return rank[x] < rank[y]; });
  };
  std::map<std::string, std::size_t> failures;
  std::map<std::string, std::size_t> checked;
  auto record = [&](std::string const& name, bool ok) {
    ++checked[name];
    if (!ok) ++failures[name];
  };

  std::mt19937_64 rng(20240601);
  for (std::size_t n = 0; n <= o.oracle_n; ++n) {
    auto const words = all_words_of(k, n);
    // Relation language against exact evaluation.
    if (n <= 4 && words.size() * words.size() <= 1'000'000) {
      for (auto const& u : words) {
        for (auto const& v : words) {
          record("relation", accepts(rel.automaton, zip_words(rel.automaton.alphabet(), u, v)) ==
                                 verify_relation(ctx, u, v));
        }
      }
    } else {
      std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(k - 1));
      for (int i = 0; i < 1000; ++i) {
        Word u(n), v(n);
        for (auto& a : u) a = letter(rng);
        for (std::size_t j = 0; j < n; ++j) v[j] = (j % 2 == 0) ? u[j] : letter(rng);
        record("relation", accepts(rel.automaton, zip_words(rel.automaton.alphabet(), u, v)) ==
                               verify_relation(ctx, u, v));
      }
    }
    if (n > 7 || words.size() > 5000) continue;
    // Class representatives by exact comparison.
    std::vector<Word> least;
    for (auto const& u : words) {
      auto it = std::find_if(least.begin(), least.end(),
                             [&](Word const& r) { return verify_relation(ctx, r, u); });
      if (it == least.end()) {
        least.push_back(u);
      } else if (less(u, *it)) {
        *it = u;
      }
    }
    record("count", count_series(s.reduced, n)[n] == BigInt(least.size()));
    record("bruteforce_count", count_elements_bruteforce(ctx, n, 7) == BigInt(least.size()));
    for (auto const& u : words) {
      bool const is_least = std::find(least.begin(), least.end(), u) != least.end();
      record("reduced_language", accepts(s.reduced, u) == is_least);
      Word const v = table.reduce(u);
      record("reducer", accepts(s.reduced, v) && verify_relation(ctx, u, v) && table.reduce(v) == v);
    }
  }
  auto const& a = rel.automaton;
  record("minimal", !(a.is_deterministic() && is_codeterministic(a)) || isomorphic(minimize(a), a));

  json j;
  bool ok = true;
  for (auto const& [name, count] : checked) {
    std::size_t const bad = failures.count(name) ? failures[name] : 0;
    j[name] = {{"checked", count}, {"failed", bad}};
    ok = ok && bad == 0;
  }
  j["pass"] = ok;
  if (o.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto const& [name, count] : checked) {
      std::size_t const bad = failures.count(name) ? failures[name] : 0;
      std::cout << (bad == 0 ? "pass " : "FAIL ") << name << " (" << count - bad << "/" << count
                << ")\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relation automata of β-expansion semigroups"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "context config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-states", o.max_states, "state cap of the relation search")
        ->capture_default_str();
    sub->add_option("--max-depth", o.max_depth, "depth cap of the relation search")->capture_default_str();
    sub->add_option("--precision", o.precision, "root enclosure radius, decimal digits");
    sub->add_flag("--force", o.force, "attempt blocked contexts under the caps");
    sub->add_flag("--json", o.json_out, "machine-readable output");
  };
  auto order_opt = [&](CLI::App* sub) {
    sub->add_option("--order", o.order, "letter order for representatives")
        ->check(CLI::IsMember({"lex", "revlex"}))
        ->capture_default_str();
  };

  auto* relations = app.add_subcommand("relations", "build the relation automaton");
  common(relations);
  relations->add_option("--out", o.out, "output directory")->capture_default_str();

  auto* structure = app.add_subcommand("structure", "reduced words, multipliers and growth");
  common(structure);
  order_opt(structure);
  structure->add_option("--out", o.out, "output directory")->capture_default_str();
  structure->add_option("--N", o.n, "largest length counted")->capture_default_str();
  structure->add_option("--candidate-pi", o.candidate,
                        "candidate polynomial for λ, coefficients from the constant term, comma separated");

  auto* reduce = app.add_subcommand("reduce", "reduced form of a word");
  common(reduce);
  order_opt(reduce);
  reduce->add_option("--word", o.word, "word over the digit names")->required();

  auto* equiv = app.add_subcommand("equiv", "decide u = v");
  common(equiv);
  equiv->add_option("--left", o.left)->required();
  equiv->add_option("--right", o.right)->required();

  auto* free = app.add_subcommand("free", "freeness verdict");
  common(free);

  auto* verify = app.add_subcommand("verify", "check a relation by exact arithmetic");
  common(verify);
  verify->add_option("--left", o.left);
  verify->add_option("--right", o.right);
  verify->add_flag("--power-identity", o.power_identity, "check the identity stored in the config");

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  common(oracle);
  order_opt(oracle);
  oracle->add_option("--N", o.oracle_n, "largest word length checked")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    // --help exits 0; every other usage problem is an input error.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (relations->parsed()) return cmd_relations(o);
    if (structure->parsed()) return cmd_structure(o);
    if (reduce->parsed()) return cmd_reduce(o);
    if (equiv->parsed()) return cmd_equiv(o);
    if (free->parsed()) return cmd_free(o);
    if (verify->parsed()) return cmd_verify(o);
    if (oracle->parsed()) return cmd_oracle(o);
  } catch (Error const& e) {
    if (e.code() == Errc::cap_exceeded) {
      std::cerr << "inconclusive: " << e.what()
                << " (the cap was hit; this does not prove that no finite automaton exists)\n";
      return 2;
    }
    if (e.code() == Errc::blocked) {
      std::cerr << "blocked: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
