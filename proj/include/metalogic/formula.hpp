#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace metalogic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Raised when a hard resource bound would be crossed.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

enum class Connective : std::uint8_t { negation, conjunction, disjunction, implication, biconditional };
enum class Quantifier : std::uint8_t { forall, exists };
enum class AlphabetKind : std::uint8_t { propositional, first_order };
enum class Punctuation : std::uint8_t { parentheses, brackets };

inline std::string_view connective_symbol(Connective c) {
  switch (c) {
    case Connective::negation: return "~";
    case Connective::conjunction: return "&";
    case Connective::disjunction: return "|";
    case Connective::implication: return "->";
    case Connective::biconditional: return "<->";
  }
  return "?";
}

inline std::optional<Connective> connective_from_symbol(std::string_view s) {
  if (s == "~" || s == "¬" || s == "∼") return Connective::negation;
  if (s == "&" || s == "∧") return Connective::conjunction;
  if (s == "|" || s == "∨") return Connective::disjunction;
  if (s == "->" || s == "→" || s == "⊃" || s == "=>") return Connective::implication;
  if (s == "<->" || s == "↔") return Connective::biconditional;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  enum class Kind : std::uint8_t { variable, function };

  static Term variable(std::string name) { return Term(Kind::variable, std::move(name), {}); }
  static Term function(std::string name, std::vector<Term> args) {
    return Term(Kind::function, std::move(name), std::move(args));
  }
  // Constants are 0-ary functions.
  static Term constant(std::string name) { return function(std::move(name), {}); }

  Kind kind() const noexcept { return kind_; }
  bool is_variable() const noexcept { return kind_ == Kind::variable; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : args_) n += a.size();
    return n;
  }

  std::string text() const {
    if (args_.empty()) return name_;
    std::string out = name_ + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) out += ", ";
      out += args_[i].text();
    }
    return out + ")";
  }

  void collect_variables(std::set<std::string>& out) const {
    if (is_variable()) out.insert(name_);
    for (const auto& a : args_) a.collect_variables(out);
  }

  bool mentions(std::string_view var) const {
    if (is_variable()) return name_ == var;
    return std::any_of(args_.begin(), args_.end(), [&](const Term& t) { return t.mentions(var); });
  }

  Term substitute(std::string_view var, const Term& replacement) const {
    if (is_variable()) return name_ == var ? replacement : *this;
    std::vector<Term> args;
    args.reserve(args_.size());
    for (const auto& a : args_) args.push_back(a.substitute(var, replacement));
    return function(name_, std::move(args));
  }

  void collect_subterms(std::vector<Term>& out) const {
    out.push_back(*this);
    for (const auto& a : args_) a.collect_subterms(out);
  }

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind k, std::string name, std::vector<Term> args)
      : kind_(k), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind : std::uint8_t {
  atom,          // propositional variable
  falsum,        // propositional constant fixed to False (Church's f)
  predicate,     // predicate symbol applied to terms; 0-ary allowed
  equality,      // term = term
  negation,
  conjunction,
  disjunction,
  implication,
  biconditional,
  forall,
  exists,
  metavariable,  // schema placeholder, never part of an object-language formula
};

inline bool is_binary(FormulaKind k) {
  return k == FormulaKind::conjunction || k == FormulaKind::disjunction ||
         k == FormulaKind::implication || k == FormulaKind::biconditional;
}
inline bool is_quantifier(FormulaKind k) { return k == FormulaKind::forall || k == FormulaKind::exists; }

inline FormulaKind kind_of(Connective c) {
  switch (c) {
    case Connective::negation: return FormulaKind::negation;
    case Connective::conjunction: return FormulaKind::conjunction;
    case Connective::disjunction: return FormulaKind::disjunction;
    case Connective::implication: return FormulaKind::implication;
    case Connective::biconditional: return FormulaKind::biconditional;
  }
  return FormulaKind::negation;
}

inline std::optional<Connective> connective_of(FormulaKind k) {
  switch (k) {
    case FormulaKind::negation: return Connective::negation;
    case FormulaKind::conjunction: return Connective::conjunction;
    case FormulaKind::disjunction: return Connective::disjunction;
    case FormulaKind::implication: return Connective::implication;
    case FormulaKind::biconditional: return Connective::biconditional;
    default: return std::nullopt;
  }
}

class Formula;

namespace detail {
struct FormulaNode;
}

/// Immutable, shareable formula value.
///
/// Every node caches its canonical fully parenthesized text, which doubles as
/// the structural identity: two formulas are equal iff their canonical texts
/// agree. Printing is injective as long as the alphabet keeps its symbol
/// categories disjoint.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula falsum(std::string name);
  static Formula predicate(std::string name, std::vector<Term> terms = {});
  static Formula equality(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula binary(FormulaKind kind, Formula lhs, Formula rhs);
  static Formula conjunction(Formula l, Formula r) { return binary(FormulaKind::conjunction, std::move(l), std::move(r)); }
  static Formula disjunction(Formula l, Formula r) { return binary(FormulaKind::disjunction, std::move(l), std::move(r)); }
  static Formula implication(Formula l, Formula r) { return binary(FormulaKind::implication, std::move(l), std::move(r)); }
  static Formula biconditional(Formula l, Formula r) { return binary(FormulaKind::biconditional, std::move(l), std::move(r)); }
  static Formula quantified(FormulaKind kind, std::string variable, Formula body);
  static Formula forall(std::string v, Formula body) { return quantified(FormulaKind::forall, std::move(v), std::move(body)); }
  static Formula exists(std::string v, Formula body) { return quantified(FormulaKind::exists, std::move(v), std::move(body)); }
  static Formula metavariable(std::string name);

  FormulaKind kind() const noexcept;
  // Atom, constant, predicate, metavariable or bound-variable name.
  const std::string& name() const noexcept;
  const std::vector<Term>& terms() const noexcept;
  const std::vector<Formula>& children() const noexcept;
  const Formula& child(std::size_t i = 0) const { return children().at(i); }
  const Formula& lhs() const { return children().at(0); }
  const Formula& rhs() const { return children().at(1); }

  // AST node count: atoms, connectives, quantifiers and term nodes.
  std::size_t size() const noexcept;
  // Canonical fully parenthesized ASCII text.
  const std::string& text() const noexcept;
  std::size_t hash() const noexcept;

  bool is(FormulaKind k) const noexcept { return kind() == k; }

  friend bool operator==(const Formula& a, const Formula& b) noexcept {
    return a.node_ == b.node_ || (a.hash() == b.hash() && a.text() == b.text());
  }
  // Size-lexicographic order: by size, then by canonical text.
  friend bool operator<(const Formula& a, const Formula& b) noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.text() < b.text();
  }
  friend bool operator>(const Formula& a, const Formula& b) noexcept { return b < a; }
  friend bool operator<=(const Formula& a, const Formula& b) noexcept { return !(b < a); }
  friend bool operator>=(const Formula& a, const Formula& b) noexcept { return !(a < b); }

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  static Formula make(FormulaKind kind, std::string name, std::vector<Term> terms, std::vector<Formula> children);

  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
  FormulaKind kind;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::size_t size = 1;
  std::string text;
  std::size_t hash = 0;
};

inline std::string render_leaf(FormulaKind kind, const std::string& name, const std::vector<Term>& terms) {
  switch (kind) {
    case FormulaKind::atom:
    case FormulaKind::falsum:
    case FormulaKind::metavariable:
      return name;
    case FormulaKind::predicate: {
      if (terms.empty()) return name;
      std::string out = name + "(";
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += ", ";
        out += terms[i].text();
      }
      return out + ")";
    }
    case FormulaKind::equality:
      return terms[0].text() + " = " + terms[1].text();
    default:
      break;
  }
  return {};
}
}  // namespace detail

inline Formula Formula::make(FormulaKind kind, std::string name, std::vector<Term> terms,
                             std::vector<Formula> children) {
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = kind;
  node->size = 1;
  for (const auto& t : terms) node->size += t.size();
  for (const auto& c : children) node->size += c.size();
  switch (kind) {
    case FormulaKind::negation:
      node->text = "~" + children[0].text();
      break;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
    case FormulaKind::biconditional:
      node->text.reserve(children[0].text().size() + children[1].text().size() + 7);
      node->text += '(';
      node->text += children[0].text();
      node->text += ' ';
      node->text += connective_symbol(*connective_of(kind));
      node->text += ' ';
      node->text += children[1].text();
      node->text += ')';
      break;
    case FormulaKind::forall:
    case FormulaKind::exists:
      node->text = std::string(kind == FormulaKind::forall ? "forall " : "exists ") + name + " " + children[0].text();
      break;
    default:
      node->text = detail::render_leaf(kind, name, terms);
  }
  node->hash = std::hash<std::string>{}(node->text) ^ (static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL);
  node->name = std::move(name);
  node->terms = std::move(terms);
  node->children = std::move(children);
  return Formula(std::move(node));
}

inline Formula Formula::atom(std::string name) { return make(FormulaKind::atom, std::move(name), {}, {}); }
inline Formula Formula::falsum(std::string name) { return make(FormulaKind::falsum, std::move(name), {}, {}); }
inline Formula Formula::predicate(std::string name, std::vector<Term> terms) {
  return make(FormulaKind::predicate, std::move(name), std::move(terms), {});
}
inline Formula Formula::equality(Term lhs, Term rhs) {
  return make(FormulaKind::equality, "=", {std::move(lhs), std::move(rhs)}, {});
}
inline Formula Formula::negation(Formula f) { return make(FormulaKind::negation, {}, {}, {std::move(f)}); }
inline Formula Formula::binary(FormulaKind kind, Formula lhs, Formula rhs) {
  if (!is_binary(kind)) throw Error("binary: not a binary connective");
  return make(kind, {}, {}, {std::move(lhs), std::move(rhs)});
}
inline Formula Formula::quantified(FormulaKind kind, std::string variable, Formula body) {
  if (!is_quantifier(kind)) throw Error("quantified: not a quantifier");
  return make(kind, std::move(variable), {}, {std::move(body)});
}
inline Formula Formula::metavariable(std::string name) {
  return make(FormulaKind::metavariable, std::move(name), {}, {});
}

inline FormulaKind Formula::kind() const noexcept { return node_->kind; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline const std::vector<Term>& Formula::terms() const noexcept { return node_->terms; }
inline const std::vector<Formula>& Formula::children() const noexcept { return node_->children; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline const std::string& Formula::text() const noexcept { return node_->text; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using FormulaSet = std::unordered_set<Formula, FormulaHash>;
template <typename V>
using FormulaMap = std::unordered_map<Formula, V, FormulaHash>;

inline std::vector<Formula> sorted(const FormulaSet& s) {
  std::vector<Formula> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

// Canonical text with the given delimiter style. Parentheses output equals
// Formula::text().
inline std::string print_formula(const Formula& f, Punctuation style) {
  if (style == Punctuation::parentheses) return f.text();
  switch (f.kind()) {
    case FormulaKind::negation:
      return "~" + print_formula(f.child(), style);
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
    case FormulaKind::biconditional:
      return "[" + print_formula(f.lhs(), style) + " " + std::string(connective_symbol(*connective_of(f.kind()))) +
             " " + print_formula(f.rhs(), style) + "]";
    case FormulaKind::forall:
    case FormulaKind::exists:
      return std::string(f.is(FormulaKind::forall) ? "forall " : "exists ") + f.name() + " " +
             print_formula(f.child(), style);
    default:
      return f.text();
  }
}

inline std::string print_formula(const Formula& f) { return f.text(); }

// ---------------------------------------------------------------------------
// Structural utilities

inline void collect_subformulas(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  for (const auto& c : f.children()) collect_subformulas(c, out);
}

inline std::vector<Formula> subformulas(const Formula& f) {
  FormulaSet s;
  collect_subformulas(f, s);
  return sorted(s);
}

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is(FormulaKind::atom)) out.insert(f.name());
  for (const auto& c : f.children()) collect_atoms(c, out);
}

inline std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

inline void collect_metavariables(const Formula& f, std::set<std::string>& out) {
  if (f.is(FormulaKind::metavariable)) out.insert(f.name());
  for (const auto& c : f.children()) collect_metavariables(c, out);
}

inline bool contains_metavariable(const Formula& f) {
  if (f.is(FormulaKind::metavariable)) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_metavariable);
}

namespace detail {
inline void free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::predicate:
    case FormulaKind::equality: {
      std::set<std::string> vs;
      for (const auto& t : f.terms()) t.collect_variables(vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FormulaKind::forall:
    case FormulaKind::exists: {
      const bool fresh = bound.insert(f.name()).second;
      free_vars(f.child(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
    default:
      for (const auto& c : f.children()) free_vars(c, bound, out);
  }
}

inline void all_vars(const Formula& f, std::set<std::string>& out) {
  if (is_quantifier(f.kind())) out.insert(f.name());
  for (const auto& t : f.terms()) t.collect_variables(out);
  for (const auto& c : f.children()) all_vars(c, out);
}
}  // namespace detail

// Individual variables with at least one occurrence outside the scope of a
// quantifier over the same variable.
inline std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  detail::free_vars(f, bound, out);
  return out;
}

inline std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  detail::all_vars(f, out);
  return out;
}

inline void collect_terms(const Formula& f, std::vector<Term>& out) {
  for (const auto& t : f.terms()) t.collect_subterms(out);
  for (const auto& c : f.children()) collect_terms(c, out);
}

// Rebuilds a node with new children, keeping kind/name/terms.
inline Formula with_children(const Formula& f, std::vector<Formula> children) {
  switch (f.kind()) {
    case FormulaKind::negation: return Formula::negation(std::move(children.at(0)));
    case FormulaKind::forall:
    case FormulaKind::exists: return Formula::quantified(f.kind(), f.name(), std::move(children.at(0)));
    default:
      if (is_binary(f.kind())) return Formula::binary(f.kind(), std::move(children.at(0)), std::move(children.at(1)));
      return f;
  }
}

// Replaces every occurrence of a propositional atom.
inline Formula substitute_prop(const Formula& f, std::string_view atom, const Formula& replacement) {
  if (f.is(FormulaKind::atom)) return f.name() == atom ? replacement : f;
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  bool changed = false;
  for (const auto& c : f.children()) {
    kids.push_back(substitute_prop(c, atom, replacement));
    changed = changed || !(kids.back() == c);
  }
  return changed ? with_children(f, std::move(kids)) : f;
}

// Replaces free occurrences of an individual variable by a term. Bound
// variables that would capture a variable of the term are renamed first by
// appending primes (x', x'', ...).
inline Formula substitute_term(const Formula& f, const std::string& var, const Term& term) {
  switch (f.kind()) {
    case FormulaKind::predicate:
    case FormulaKind::equality: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      for (const auto& t : f.terms()) ts.push_back(t.substitute(var, term));
      if (f.is(FormulaKind::equality)) return Formula::equality(std::move(ts[0]), std::move(ts[1]));
      return Formula::predicate(f.name(), std::move(ts));
    }
    case FormulaKind::forall:
    case FormulaKind::exists: {
      if (f.name() == var) return f;
      if (!free_variables(f.child()).count(var)) return f;
      if (!term.mentions(f.name())) return with_children(f, {substitute_term(f.child(), var, term)});
      std::set<std::string> used = all_variables(f.child());
      term.collect_variables(used);
      used.insert(var);
      std::string fresh = f.name() + "'";
      while (used.count(fresh)) fresh += "'";
      Formula renamed = substitute_term(f.child(), f.name(), Term::variable(fresh));
      return Formula::quantified(f.kind(), fresh, substitute_term(renamed, var, term));
    }
    default:
      if (f.children().empty()) return f;
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(substitute_term(c, var, term));
      return with_children(f, std::move(kids));
  }
}

}  // namespace metalogic

template <>
struct std::hash<metalogic::Formula> {
  std::size_t operator()(const metalogic::Formula& f) const noexcept { return f.hash(); }
};
