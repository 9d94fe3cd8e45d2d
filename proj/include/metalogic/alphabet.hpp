#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "metalogic/formula.hpp"

namespace metalogic {

// Symbol inventory of a logical language: propositional variables,
// connectives, punctuation, and for first-order languages the function,
// predicate, quantifier and individual-variable sets.
struct Alphabet {
  AlphabetKind kind = AlphabetKind::propositional;
  std::vector<std::string> variables;
  std::set<Connective> connectives;
  Punctuation punctuation = Punctuation::parentheses;
  std::optional<std::string> falsum;
  std::map<std::string, std::size_t> functions;   // arity 0 = individual constant
  std::map<std::string, std::size_t> predicates;  // arity 0 = propositional constant symbol
  std::set<Quantifier> quantifiers;
  std::vector<std::string> individual_variables;
  bool equality = false;

  static Alphabet propositional(std::vector<std::string> vars, std::set<Connective> conns) {
    Alphabet a;
    a.variables = std::move(vars);
    a.connectives = std::move(conns);
    return a;
  }

  static std::set<Connective> all_connectives() {
    return {Connective::negation, Connective::conjunction, Connective::disjunction, Connective::implication,
            Connective::biconditional};
  }

  bool has(Connective c) const { return connectives.count(c) > 0; }
  bool has(Quantifier q) const { return quantifiers.count(q) > 0; }

  bool is_variable(const std::string& s) const {
    return std::find(variables.begin(), variables.end(), s) != variables.end();
  }
  bool is_falsum(const std::string& s) const { return falsum && *falsum == s; }
  // Primed variants (x', x'') of declared variables are accepted so that
  // capture-avoiding renaming stays inside the language.
  bool is_individual_variable(std::string s) const {
    while (!s.empty() && s.back() == '\'') s.pop_back();
    return std::find(individual_variables.begin(), individual_variables.end(), s) != individual_variables.end();
  }
  std::optional<std::size_t> function_arity(const std::string& s) const {
    auto it = functions.find(s);
    if (it == functions.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> predicate_arity(const std::string& s) const {
    auto it = predicates.find(s);
    if (it == predicates.end()) return std::nullopt;
    return it->second;
  }

  // Throws Error when the symbol categories overlap or a first-order-only
  // component appears in a propositional alphabet.
  void validate() const {
    std::map<std::string, std::string> owner;
    auto claim = [&](const std::string& name, const std::string& category) {
      if (name.empty()) throw Error("alphabet: empty symbol name in " + category);
      auto [it, fresh] = owner.emplace(name, category);
      if (!fresh)
        throw Error("alphabet: symbol '" + name + "' declared as both " + it->second + " and " + category);
    };
    for (const auto& v : variables) claim(v, "propositional variable");
    if (falsum) claim(*falsum, "constant");
    for (const auto& [f, _] : functions) claim(f, "function");
    for (const auto& [p, _] : predicates) claim(p, "predicate");
    for (const auto& v : individual_variables) claim(v, "individual variable");
    for (const auto& reserved : {"forall", "exists"})
      if (owner.count(reserved)) throw Error(std::string("alphabet: '") + reserved + "' is reserved");
    if (kind == AlphabetKind::propositional) {
      if (!quantifiers.empty()) throw Error("alphabet: quantifiers require a first-order alphabet");
      if (!functions.empty() || !predicates.empty() || !individual_variables.empty() || equality)
        throw Error("alphabet: terms and predicates require a first-order alphabet");
    }
  }

  // Checks a formula against the alphabet; returns an explanation on failure.
  std::optional<std::string> check(const Formula& f) const {
    switch (f.kind()) {
      case FormulaKind::atom:
        if (!is_variable(f.name())) return "unknown propositional variable '" + f.name() + "'";
        return std::nullopt;
      case FormulaKind::falsum:
        if (!is_falsum(f.name())) return "unknown constant '" + f.name() + "'";
        return std::nullopt;
      case FormulaKind::metavariable:
        return "metavariable '" + f.name() + "' in object formula";
      case FormulaKind::predicate: {
        auto ar = predicate_arity(f.name());
        if (!ar) return "unknown predicate '" + f.name() + "'";
        if (*ar != f.terms().size()) return "arity mismatch for predicate '" + f.name() + "'";
        for (const auto& t : f.terms())
          if (auto e = check(t)) return e;
        return std::nullopt;
      }
      case FormulaKind::equality:
        if (!equality) return "equality not in alphabet";
        for (const auto& t : f.terms())
          if (auto e = check(t)) return e;
        return std::nullopt;
      case FormulaKind::forall:
      case FormulaKind::exists:
        if (kind != AlphabetKind::first_order) return "quantifier in propositional language";
        if (!has(f.is(FormulaKind::forall) ? Quantifier::forall : Quantifier::exists)) return "quantifier not in alphabet";
        if (!is_individual_variable(f.name())) return "unknown individual variable '" + f.name() + "'";
        return check(f.child());
      default: {
        auto c = connective_of(f.kind());
        if (c && !has(*c)) return "connective '" + std::string(connective_symbol(*c)) + "' not in alphabet";
        for (const auto& ch : f.children())
          if (auto e = check(ch)) return e;
        return std::nullopt;
      }
    }
  }

  std::optional<std::string> check(const Term& t) const {
    if (t.is_variable()) {
      if (!is_individual_variable(t.name())) return "unknown individual variable '" + t.name() + "'";
      return std::nullopt;
    }
    auto ar = function_arity(t.name());
    if (!ar) return "unknown function '" + t.name() + "'";
    if (*ar != t.args().size()) return "arity mismatch for function '" + t.name() + "'";
    for (const auto& a : t.args())
      if (auto e = check(a)) return e;
    return std::nullopt;
  }

  bool accepts(const Formula& f) const { return !check(f).has_value(); }

  // Alphabet with the variable list replaced (used for instantiation pools).
  Alphabet restricted_to(std::vector<std::string> vars) const {
    Alphabet a = *this;
    a.variables = std::move(vars);
    return a;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

}  // namespace metalogic
