#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "metalogic/engine.hpp"
#include "metalogic/semantics.hpp"

namespace metalogic {

namespace library {

inline Alphabet kleene_alphabet() {
  return Alphabet::propositional({"P", "Q", "R"}, {Connective::negation, Connective::conjunction,
                                                   Connective::disjunction, Connective::implication});
}

// Church's P1: implication and the constant f, bracket punctuation.
inline Alphabet church_p1_alphabet() {
  Alphabet a = Alphabet::propositional({"p", "q", "r", "s"}, {Connective::implication});
  a.punctuation = Punctuation::brackets;
  a.falsum = "f";
  return a;
}

// Church's P2: implication and negation, bracket punctuation.
inline Alphabet church_p2_alphabet() {
  Alphabet a = Alphabet::propositional({"p", "q", "r", "s"}, {Connective::implication, Connective::negation});
  a.punctuation = Punctuation::brackets;
  return a;
}

inline Alphabet shoenfield_alphabet() {
  Alphabet a;
  a.kind = AlphabetKind::first_order;
  a.connectives = Alphabet::all_connectives();
  a.functions = {{"a", 0}, {"g", 1}};
  a.predicates = {{"P", 1}, {"Q", 0}, {"R", 2}};
  a.quantifiers = {Quantifier::forall, Quantifier::exists};
  a.individual_variables = {"x", "y", "z", "x1", "x2", "y1", "y2"};
  a.equality = true;
  return a;
}

inline Calculus kleene() {
  Calculus c;
  c.name = "kleene";
  c.alphabet = kleene_alphabet();
  const std::vector<std::string> mv{"phi", "chi", "psi"};
  const char* patterns[] = {
      "phi -> (chi -> phi)",
      "(phi -> (chi -> psi)) -> ((phi -> chi) -> (phi -> psi))",
      "phi -> (chi -> (phi & chi))",
      "phi -> phi | chi",
      "chi -> phi | chi",
      "phi & chi -> phi",
      "phi & chi -> chi",
      "(phi -> psi) -> ((chi -> psi) -> (phi | chi -> psi))",
      "(phi -> chi) -> ((phi -> ~chi) -> ~phi)",
      "~~phi -> phi",
  };
  for (std::size_t i = 0; i < std::size(patterns); ++i) {
    Schema s = Schema::parse("K" + std::to_string(i + 1), patterns[i], mv, c.alphabet);
    std::set<std::string> used;
    collect_metavariables(s.pattern, used);
    s.metavariables.assign(used.begin(), used.end());
    c.schemata.push_back(std::move(s));
  }
  c.rules = RuleSystem({rules::modus_ponens()});
  c.schema_mode = SchemaMode::on_demand;
  c.pool_variables = {"P", "Q"};
  c.default_bounds = Bounds{.max_stage = 4, .max_formula_size = 21, .node_budget = 200000, .instantiation_pool_size = 3};
  return c;
}

namespace detail {
inline Calculus church(std::string name, Alphabet alphabet, const char* third) {
  Calculus c;
  c.name = std::move(name);
  c.alphabet = std::move(alphabet);
  const char* patterns[] = {"[p ⊃ [q ⊃ p]]", "[[s ⊃ [p ⊃ q]] ⊃ [[s ⊃ p] ⊃ [s ⊃ q]]]", third};
  for (std::size_t i = 0; i < 3; ++i) {
    Formula object = parse_formula(patterns[i], c.alphabet);
    const auto vars = atoms_of(object);
    ParseOptions opts;
    opts.metavariables = {vars.begin(), vars.end()};
    c.schemata.push_back(Schema{"A" + std::to_string(i + 1), parse_formula(patterns[i], c.alphabet, opts),
                                {vars.begin(), vars.end()}, SchemaKind::pattern});
  }
  c.rules = RuleSystem({rules::modus_ponens(), rules::substitution()});
  c.schema_mode = SchemaMode::substitution_rule;
  c.pool_variables = {"p", "q"};
  c.default_bounds = Bounds{.max_stage = 6, .max_formula_size = 17, .node_budget = 200000, .instantiation_pool_size = 1};
  return c;
}
}  // namespace detail

inline Calculus church_p1() {
  return detail::church("church_p1", church_p1_alphabet(), "[[[p ⊃ f] ⊃ f] ⊃ p]");
}

inline Calculus church_p2() {
  return detail::church("church_p2", church_p2_alphabet(), "[[∼p ⊃ ∼q] ⊃ [q ⊃ p]]");
}

// Propositional axiom, identity axioms, substitution axiom and equality
// axioms, with extension, cancellation, associativity (both directions),
// cut and exists-introduction.
inline Calculus shoenfield_fragment() {
  Calculus c;
  c.name = "shoenfield_fragment";
  c.alphabet = shoenfield_alphabet();
  c.schemata.push_back(Schema::parse("propositional", "phi | ~phi", {"phi"}, c.alphabet));
  c.schemata.push_back(Schema::existential_substitution("substitution"));
  for (const char* v : {"x", "y", "z"}) c.axioms.push_back(parse_formula(std::string(v) + " = " + v, c.alphabet));
  const char* equality[] = {
      "x1 = y1 -> g(x1) = g(y1)",
      "x1 = y1 -> (P(x1) <-> P(y1))",
      "x1 = y1 & x2 = y2 -> (R(x1, x2) <-> R(y1, y2))",
      "x1 = y1 & x2 = y2 -> (x1 = x2 <-> y1 = y2)",
  };
  for (const char* e : equality) c.axioms.push_back(parse_formula(e, c.alphabet));
  c.rules = RuleSystem({rules::extension(), rules::cancellation(), rules::associativity_left(),
                        rules::associativity_right(), rules::cut(), rules::exists_introduction()});
  c.schema_mode = SchemaMode::on_demand;
  c.default_bounds = Bounds{.max_stage = 3, .max_formula_size = 9, .node_budget = 200000, .instantiation_pool_size = 2};
  return c;
}

// LV: the base calculus with every modus ponens gated by a validator.
inline Calculus lv(Calculus base, const Validator& validator) {
  std::vector<InferenceRule> rs;
  for (const auto& r : base.rules.rules())
    rs.push_back(r.id() == "modus_ponens" ? rules::validated_mp(validator) : r);
  base.rules = RuleSystem(std::move(rs), base.rules.closed_under_composition());
  base.name = "lv(" + base.name + ", " + validator.name + ")";
  return base;
}

// Free calculus: A = every wff up to the size cap.
inline Calculus free_calculus(const Alphabet& alphabet, RuleSystem rules, std::size_t size_cap) {
  if (size_cap < 1) throw Error("free calculus: size cap must be at least 1");
  Calculus c;
  c.name = "free";
  c.alphabet = alphabet;
  c.axioms = enumerate_wffs(alphabet, size_cap);
  c.rules = std::move(rules);
  return c;
}

}  // namespace library

// Names: kleene, church_p1, church_p2, shoenfield_fragment,
// lv:<base>:<validator>, free:<base>:<size cap>.
inline Calculus builtin_calculus(std::string_view name) {
  const std::string n(name);
  if (n == "kleene") return library::kleene();
  if (n == "church_p1") return library::church_p1();
  if (n == "church_p2") return library::church_p2();
  if (n == "shoenfield_fragment" || n == "shoenfield") return library::shoenfield_fragment();
  auto parts = [&] {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= n.size(); ++i)
      if (i == n.size() || n[i] == ':') {
        out.push_back(n.substr(start, i - start));
        start = i + 1;
      }
    return out;
  }();
  if (parts[0] == "lv") {
    if (parts.size() != 3) throw Error("builtin lv needs lv:<base>:<validator>");
    return library::lv(builtin_calculus(parts[1]), validator_by_name(parts[2]));
  }
  if (parts[0] == "free") {
    if (parts.size() != 3) throw Error("builtin free needs free:<base>:<size cap>");
    const Calculus base = builtin_calculus(parts[1]);
    std::size_t cap = 0;
    try {
      cap = std::stoul(parts[2]);
    } catch (const std::exception&) {
      throw Error("builtin free: invalid size cap '" + parts[2] + "'");
    }
    Calculus c = library::free_calculus(base.alphabet, RuleSystem({rules::identity()}), cap);
    c.name = n;
    return c;
  }
  throw Error("unknown builtin calculus '" + n + "'");
}

// Computable formula-to-formula map between two languages.
struct TranslationMap {
  std::string id;
  Alphabet source;
  Alphabet target;
  std::function<Formula(const Formula&)> map;
  // Partial inverse on the image, when one is known.
  std::function<std::optional<Formula>(const Formula&)> inverse;
};

namespace library {

// ~phi becomes [phi' ⊃ f].
inline Formula p2_to_p1(const Formula& f) {
  if (f.is(FormulaKind::negation)) return Formula::implication(p2_to_p1(f.child()), Formula::falsum("f"));
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(p2_to_p1(c));
  return with_children(f, std::move(kids));
}

// [phi ⊃ f] becomes ~phi'; a bare f becomes ~[p ⊃ p].
inline Formula p1_to_p2(const Formula& f) {
  if (f.is(FormulaKind::falsum))
    return Formula::negation(Formula::implication(Formula::atom("p"), Formula::atom("p")));
  if (f.is(FormulaKind::implication) && f.rhs().is(FormulaKind::falsum)) return Formula::negation(p1_to_p2(f.lhs()));
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(p1_to_p2(c));
  return with_children(f, std::move(kids));
}

inline TranslationMap p2_to_p1_map() {
  return {"p2_to_p1", church_p2_alphabet(), church_p1_alphabet(), p2_to_p1,
          [](const Formula& f) -> std::optional<Formula> {
            Formula back = p1_to_p2(f);
            if (p2_to_p1(back) == f) return back;
            return std::nullopt;
          }};
}

inline TranslationMap p1_to_p2_map() {
  return {"p1_to_p2", church_p1_alphabet(), church_p2_alphabet(), p1_to_p2,
          [](const Formula& f) -> std::optional<Formula> {
            Formula back = p2_to_p1(f);
            if (p1_to_p2(back) == f) return back;
            return std::nullopt;
          }};
}

inline TranslationMap identity_map(const Alphabet& a) {
  return {"identity", a, a, [](const Formula& f) { return f; },
          [](const Formula& f) -> std::optional<Formula> { return f; }};
}

}  // namespace library

inline TranslationMap translation_by_name(std::string_view name) {
  if (name == "p2_to_p1") return library::p2_to_p1_map();
  if (name == "p1_to_p2") return library::p1_to_p2_map();
  throw Error("unknown translation map '" + std::string(name) + "'");
}

// Applies a translation map; the input must be a wff of the map's source
// language.
inline Formula translate(const Formula& f, const TranslationMap& m) {
  if (auto e = m.source.check(f)) throw Error("translate " + m.id + ": " + *e);
  return m.map(f);
}

}  // namespace metalogic
