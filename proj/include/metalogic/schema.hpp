#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metalogic/alphabet.hpp"
#include "metalogic/formula.hpp"
#include "metalogic/parser.hpp"

namespace metalogic {

// Binding of schema metavariables. Formula metavariables map to formulas;
// the first-order substitution axiom additionally binds an individual
// variable and a term.
struct MetaAssignment {
  std::map<std::string, Formula> formulas;
  std::map<std::string, Term> terms;

  const Formula* find(const std::string& name) const {
    auto it = formulas.find(name);
    return it == formulas.end() ? nullptr : &it->second;
  }

  std::string text() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : formulas) {
      if (!first) out += ", ";
      first = false;
      out += k + " := " + v.text();
    }
    for (const auto& [k, v] : terms) {
      if (!first) out += ", ";
      first = false;
      out += k + " := " + v.text();
    }
    return out + "}";
  }

  friend bool operator==(const MetaAssignment&, const MetaAssignment&) = default;
};

enum class SchemaKind : std::uint8_t {
  // Pattern formula over formula metavariables.
  pattern,
  // phi_x[a] -> exists x phi, for formula phi, variable x and term a.
  existential_substitution,
};

struct Schema {
  std::string id;
  Formula pattern;
  std::vector<std::string> metavariables;
  SchemaKind kind = SchemaKind::pattern;

  // Pattern schema from text; identifiers in `metavariables` become
  // placeholders.
  static Schema parse(std::string id, std::string_view text, std::vector<std::string> metavariables,
                      const Alphabet& alphabet) {
    ParseOptions opts;
    opts.metavariables = {metavariables.begin(), metavariables.end()};
    Schema s{std::move(id), parse_formula(text, alphabet, opts), std::move(metavariables), SchemaKind::pattern};
    s.validate();
    return s;
  }

  static Schema existential_substitution(std::string id) {
    return Schema{std::move(id),
                  Formula::implication(Formula::metavariable("phi_x[a]"),
                                       Formula::exists("x", Formula::metavariable("phi"))),
                  {"phi", "x", "a"},
                  SchemaKind::existential_substitution};
  }

  void validate() const {
    if (kind != SchemaKind::pattern) return;
    std::set<std::string> used;
    collect_metavariables(pattern, used);
    for (const auto& m : used)
      if (std::find(metavariables.begin(), metavariables.end(), m) == metavariables.end())
        throw Error("schema " + id + ": metavariable '" + m + "' not listed");
  }

  std::string text() const {
    if (kind == SchemaKind::existential_substitution) return "phi_x[a] -> exists x phi";
    return pattern.text();
  }
};

namespace detail {
inline bool match_into(const Formula& pattern, const Formula& f, MetaAssignment& sigma) {
  if (pattern.is(FormulaKind::metavariable)) {
    auto [it, fresh] = sigma.formulas.emplace(pattern.name(), f);
    return fresh || it->second == f;
  }
  if (pattern.kind() != f.kind()) return false;
  if (pattern.children().empty() || is_quantifier(pattern.kind())) {
    if (pattern.name() != f.name() || !(pattern.terms() == f.terms())) return false;
    if (pattern.children().empty()) return true;
  }
  for (std::size_t i = 0; i < pattern.children().size(); ++i)
    if (!match_into(pattern.children()[i], f.children()[i], sigma)) return false;
  return true;
}

inline Formula instantiate_pattern(const Formula& pattern, const MetaAssignment& sigma) {
  if (pattern.is(FormulaKind::metavariable)) {
    if (const Formula* f = sigma.find(pattern.name())) return *f;
    throw Error("instantiate: missing binding for metavariable '" + pattern.name() + "'");
  }
  if (pattern.children().empty()) return pattern;
  std::vector<Formula> kids;
  kids.reserve(pattern.children().size());
  for (const auto& c : pattern.children()) kids.push_back(instantiate_pattern(c, sigma));
  return with_children(pattern, std::move(kids));
}
}  // namespace detail

inline Formula instantiate_schema(const Schema& schema, const MetaAssignment& sigma) {
  if (schema.kind == SchemaKind::existential_substitution) {
    const Formula* phi = sigma.find("phi");
    auto x = sigma.terms.find("x");
    auto a = sigma.terms.find("a");
    if (!phi || x == sigma.terms.end() || a == sigma.terms.end() || !x->second.is_variable())
      throw Error("instantiate: substitution axiom needs phi, variable x and term a");
    return Formula::implication(substitute_term(*phi, x->second.name(), a->second),
                                Formula::exists(x->second.name(), *phi));
  }
  return detail::instantiate_pattern(schema.pattern, sigma);
}

// Syntactic matching. Returns the unique assignment of the metavariables
// occurring in the pattern, or nullopt.
inline std::optional<MetaAssignment> match_schema(const Schema& schema, const Formula& f) {
  if (schema.kind == SchemaKind::existential_substitution) {
    if (!f.is(FormulaKind::implication) || !f.rhs().is(FormulaKind::exists)) return std::nullopt;
    const Formula& antecedent = f.lhs();
    const std::string& x = f.rhs().name();
    const Formula& phi = f.rhs().child();
    std::vector<Term> candidates{Term::variable(x)};
    collect_terms(antecedent, candidates);
    for (const auto& a : candidates) {
      if (substitute_term(phi, x, a) == antecedent) {
        MetaAssignment sigma;
        sigma.formulas.emplace("phi", phi);
        sigma.terms.emplace("x", Term::variable(x));
        sigma.terms.emplace("a", a);
        return sigma;
      }
    }
    return std::nullopt;
  }
  MetaAssignment sigma;
  if (!detail::match_into(schema.pattern, f, sigma)) return std::nullopt;
  return sigma;
}

}  // namespace metalogic
