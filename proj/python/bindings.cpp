#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "betauto/error.hpp"
#include "betauto/reducer.hpp"
#include "betauto/relations.hpp"
#include "betauto/structure.hpp"

namespace py = pybind11;
using namespace betauto;

namespace {

py::object to_python(nlohmann::json const& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::int_ big(BigInt const& v) { return py::int_(py::str(v.str())); }

IntPoly poly_of(std::vector<py::int_> const& coeffs) {
  IntPoly p;
  for (auto const& c : coeffs) p.emplace_back(py::str(c).cast<std::string>());
  trim(p);
  return p;
}

/// Relation automaton plus the lazily built pieces that depend on it.
class Semigroup {
 public:
  Semigroup(std::string const& config, std::size_t max_states, bool force) {
    ctx_ = std::make_shared<BetaContext>(context_from_json(nlohmann::json::parse(config)));
    Caps caps;
    caps.max_states = max_states;
    caps.force = force;
    rel_ = build_relation_automaton(*ctx_, caps);
    sigma_ = digit_alphabet(*ctx_);
  }

  RelAutomaton const& rel() const { return rel_; }
  Alphabet const& sigma() const { return sigma_; }

  AutomaticStructure const& structure(std::string const& order) {
    auto& slot = order == "revlex" ? revlex_ : lex_;
    if (!slot) slot = build_structure(rel_, parse_order(order));
    return *slot;
  }

  std::string reduce(std::string const& word, std::string const& order) {
    auto& table = order == "revlex" ? revlex_table_ : lex_table_;
    if (!table) table = std::make_unique<ReducerTable>(rel_, structure(order).reduced);
    return format_word(sigma_, table->reduce(parse_word(sigma_, word)));
  }

 private:
  std::shared_ptr<BetaContext> ctx_;
  RelAutomaton rel_;
  Alphabet sigma_;
  std::optional<AutomaticStructure> lex_;
  std::optional<AutomaticStructure> revlex_;
  std::unique_ptr<ReducerTable> lex_table_;
  std::unique_ptr<ReducerTable> revlex_table_;
};

BetaContext context_of(std::string const& config) {
  return context_from_json(nlohmann::json::parse(config));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relation automata of β-expansion semigroups";

  static py::exception<Error> base_error(m, "BetautoError");
  static py::exception<Error> cap_error(m, "CapExceeded", base_error.ptr());
  static py::exception<Error> blocked_error(m, "Blocked", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (Error const& e) {
      if (e.code() == Errc::cap_exceeded) {
        py::set_error(cap_error, e.what());
      } else if (e.code() == Errc::blocked) {
        py::set_error(blocked_error, e.what());
      } else {
        py::set_error(base_error, (std::string(errc_name(e.code())) + ": " + e.what()).c_str());
      }
    } catch (nlohmann::json::exception const& e) {
      py::set_error(base_error, e.what());
    }
  });

  py::class_<Automaton>(m, "Automaton")
      .def_property_readonly("num_states", &Automaton::num_states)
      .def_property_readonly("num_transitions", &Automaton::num_transitions)
      .def_property_readonly("alphabet", [](Automaton const& a) { return a.alphabet().names(); })
      .def("is_deterministic", &Automaton::is_deterministic)
      .def("accepts", [](Automaton const& a, Word const& w) { return accepts(a, w); })
      .def("count_series",
           [](Automaton const& a, std::size_t n) {
             py::list out;
             for (auto const& c : count_series(a, n)) out.append(big(c));
             return out;
           })
      .def("to_json", [](Automaton const& a) { return to_python(to_json(a)); })
      .def("to_dot", [](Automaton const& a, std::string const& name) { return to_dot(a, name); },
           py::arg("name") = "A");

  m.def("minimize", &minimize);
  m.def("isomorphic", &isomorphic);
  m.def("automaton_from_json",
        [](py::object const& doc) {
          auto text = py::module_::import("json").attr("dumps")(doc).cast<std::string>();
          return from_json(nlohmann::json::parse(text));
        });

  m.def("describe_context", [](std::string const& config) { return to_python(context_of(config).describe()); },
        py::arg("config"));

  py::class_<Semigroup>(m, "Semigroup")
      .def(py::init<std::string const&, std::size_t, bool>(), py::arg("config"),
           py::arg("max_states") = Caps{}.max_states, py::arg("force") = false)
      .def_property_readonly("relations", [](Semigroup const& s) { return s.rel().automaton; })
      .def_property_readonly("alphabet", [](Semigroup const& s) { return s.sigma().names(); })
      .def_property_readonly("is_free", [](Semigroup const& s) { return is_free(s.rel()); })
      .def_property_readonly("stats",
                             [](Semigroup const& s) {
                               auto const& st = s.rel().stats;
                               py::dict d;
                               d["explored"] = st.explored;
                               d["pruned"] = st.pruned;
                               d["straddled"] = st.straddled;
                               d["depth"] = st.depth;
                               return d;
                             })
      .def("reduced", [](Semigroup& s, std::string const& order) { return s.structure(order).reduced; },
           py::arg("order") = "lex")
      .def("multiplier",
           [](Semigroup& s, Letter g, std::string const& order) {
             auto const& mult = s.structure(order).multipliers;
             if (g >= mult.size()) throw Error(Errc::invalid_argument, "letter out of range");
             return mult[g];
           },
           py::arg("g"), py::arg("order") = "lex")
      .def("growth",
           [](Semigroup& s, std::size_t n, std::optional<std::vector<py::int_>> const& candidate,
              std::string const& order) {
             std::optional<IntPoly> c;
             if (candidate) c = poly_of(*candidate);
             return to_python(growth(s.structure(order).reduced, n, c).to_json());
           },
           py::arg("n") = 20, py::arg("candidate") = py::none(), py::arg("order") = "lex")
      .def("reduce", &Semigroup::reduce, py::arg("word"), py::arg("order") = "lex")
      .def("equivalent",
           [](Semigroup const& s, std::string const& u, std::string const& v) {
             return words_equivalent(s.rel(), parse_word(s.sigma(), u), parse_word(s.sigma(), v));
           })
      .def("verify", [](Semigroup const& s, std::string const& u, std::string const& v) {
        return verify_relation(s.rel().context, parse_word(s.sigma(), u), parse_word(s.sigma(), v));
      });

  m.def("quick_free_sufficient",
        [](std::string const& config) { return to_string(quick_free_sufficient(context_of(config))); });
  m.def("mahler_nonfree_check",
        [](std::string const& config) { return to_string(mahler_nonfree_check(context_of(config))); });
  m.def("kenyon_criterion", [](long long p, long long q) { return to_string(kenyon_criterion(p, q)); });
  m.def("verify_power_identity",
        [](std::string const& config, std::vector<std::pair<long long, long>> const& lhs,
           std::vector<std::pair<long long, long>> const& rhs) {
          auto conv = [](auto const& terms) {
            PowerSum s;
            for (auto const& [c, e] : terms) s.emplace_back(BigInt(c), e);
            return s;
          };
          return verify_power_identity(context_of(config), conv(lhs), conv(rhs));
        });
}
