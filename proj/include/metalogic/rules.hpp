#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metalogic/alphabet.hpp"
#include "metalogic/formula.hpp"
#include "metalogic/parser.hpp"
#include "metalogic/semantics.hpp"

namespace metalogic {

using Premises = std::span<const Formula>;

// Everything a rule may consult besides its premises.
struct RuleContext {
  // Parameter universe for rules such as extension and substitution.
  std::span<const Formula> pool;
  // Realized axioms of the running calculus, if any.
  const FormulaSet* axioms = nullptr;
};

// Working set handed to bulk rule application.
struct PremiseSet {
  const std::vector<Formula>& items;
  const FormulaSet& members;
};

// Receives one conclusion together with the premise tuple that produced it.
// Returning false stops the enumeration.
using Emit = std::function<bool(const Formula& conclusion, Premises premises)>;

// Declared metadata; none of these is checked operationally.
struct RuleTraits {
  bool constructing = true;  // false: only transforms expressions
  bool basically_closed = false;
  bool decidable = true;
};

// A computable partial mapping from k-tuples of formulas to finite sets of
// conclusions. An empty result means "inapplicable".
class InferenceRule {
 public:
  using ApplyFn = std::function<std::vector<Formula>(Premises, const RuleContext&)>;
  using BulkFn = std::function<bool(const PremiseSet&, const RuleContext&, const Emit&)>;

  InferenceRule(std::string id, std::size_t arity, ApplyFn apply, RuleTraits traits = {}, BulkFn bulk = {})
      : id_(std::move(id)), arity_(arity), apply_(std::move(apply)), bulk_(std::move(bulk)), traits_(traits) {}

  const std::string& id() const noexcept { return id_; }
  std::size_t arity() const noexcept { return arity_; }
  const RuleTraits& traits() const noexcept { return traits_; }

  // Conclusions for one premise tuple, deduplicated and size-lex sorted.
  std::vector<Formula> apply(Premises premises, const RuleContext& ctx = {}) const {
    if (premises.size() != arity_)
      throw Error("rule " + id_ + ": expected " + std::to_string(arity_) + " premises, got " +
                  std::to_string(premises.size()));
    auto out = apply_(premises, ctx);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Formula> apply(std::initializer_list<Formula> premises, const RuleContext& ctx = {}) const {
    std::vector<Formula> v(premises);
    return apply(Premises(v), ctx);
  }

  // Applies the rule to every premise tuple drawn from the working set.
  // Indexed rules use their own join; the rest enumerate all tuples.
  // Returns false if `emit` asked to stop.
  bool apply_all(const PremiseSet& set, const RuleContext& ctx, const Emit& emit) const {
    if (bulk_) return bulk_(set, ctx, emit);
    return apply_tuples(set, ctx, emit);
  }

  bool apply_tuples(const PremiseSet& set, const RuleContext& ctx, const Emit& emit) const {
    const auto& items = set.items;
    if (arity_ == 0) {
      for (const auto& c : apply_(Premises{}, ctx))
        if (!emit(c, Premises{})) return false;
      return true;
    }
    if (items.empty()) return true;
    std::vector<std::size_t> idx(arity_, 0);
    std::vector<Formula> tuple(arity_, items.front());
    for (;;) {
      for (std::size_t i = 0; i < arity_; ++i) tuple[i] = items[idx[i]];
      for (const auto& c : apply_(Premises(tuple), ctx))
        if (!emit(c, Premises(tuple))) return false;
      std::size_t k = arity_;
      while (k > 0) {
        --k;
        if (++idx[k] < items.size()) break;
        idx[k] = 0;
        if (k == 0) return true;
      }
    }
  }

 private:
  std::string id_;
  std::size_t arity_;
  ApplyFn apply_;
  BulkFn bulk_;
  RuleTraits traits_;
};

// Decides whether the minor premise of validated modus ponens may be used.
struct Validator {
  std::string name;
  std::function<bool(const Formula&, const RuleContext&)> accepts;
};

inline Validator always_true_validator() {
  return {"always_true", [](const Formula&, const RuleContext&) { return true; }};
}

inline Validator tautology_validator() {
  return {"tautology", [](const Formula& f, const RuleContext&) { return is_propositional(f) && is_tautology(f); }};
}

inline Validator axiom_membership_validator() {
  return {"axiom_membership",
          [](const Formula& f, const RuleContext& ctx) { return ctx.axioms && ctx.axioms->count(f) > 0; }};
}

inline Validator validator_by_name(std::string_view name) {
  if (name == "always_true" || name == "always-true") return always_true_validator();
  if (name == "tautology") return tautology_validator();
  if (name == "axiom_membership" || name == "axiom-membership") return axiom_membership_validator();
  throw Error("unknown validator '" + std::string(name) + "'");
}

namespace rules {

namespace detail {
inline bool mp_join(const PremiseSet& set, const Emit& emit,
                    const std::function<bool(const Formula&)>& allow_minor) {
  for (const auto& major : set.items) {
    if (!major.is(FormulaKind::implication)) continue;
    const Formula& minor = major.lhs();
    if (!set.members.count(minor) || !allow_minor(minor)) continue;
    const Formula tuple[2] = {minor, major};
    if (!emit(major.rhs(), Premises(tuple))) return false;
  }
  return true;
}
}  // namespace detail

// phi, phi -> psi |- psi. Premise order: (minor, major).
inline InferenceRule modus_ponens() {
  return InferenceRule(
      "modus_ponens", 2,
      [](Premises p, const RuleContext&) -> std::vector<Formula> {
        if (p[1].is(FormulaKind::implication) && p[1].lhs() == p[0]) return {p[1].rhs()};
        return {};
      },
      {},
      [](const PremiseSet& set, const RuleContext&, const Emit& emit) {
        return detail::mp_join(set, emit, [](const Formula&) { return true; });
      });
}

// Modus ponens that fires only when the validator accepts the minor premise.
inline InferenceRule validated_mp(Validator v) {
  auto shared = std::make_shared<Validator>(std::move(v));
  return InferenceRule(
      "validated_mp(" + shared->name + ")", 2,
      [shared](Premises p, const RuleContext& ctx) -> std::vector<Formula> {
        if (p[1].is(FormulaKind::implication) && p[1].lhs() == p[0] && shared->accepts(p[0], ctx))
          return {p[1].rhs()};
        return {};
      },
      {},
      [shared](const PremiseSet& set, const RuleContext& ctx, const Emit& emit) {
        return detail::mp_join(set, emit, [&](const Formula& m) { return shared->accepts(m, ctx); });
      });
}

// p |- S_q^x p: replaces every occurrence of a propositional variable x of
// the premise by a pool formula q.
inline InferenceRule substitution() {
  return InferenceRule("substitution", 1,
                       [](Premises p, const RuleContext& ctx) {
                         std::vector<Formula> out;
                         for (const auto& x : atoms_of(p[0]))
                           for (const auto& q : ctx.pool) {
                             if (q.is(FormulaKind::atom) && q.name() == x) continue;
                             out.push_back(substitute_prop(p[0], x, q));
                           }
                         return out;
                       },
                       {.constructing = false});
}

// phi |- (phi | psi), psi fixed or drawn from the pool.
inline InferenceRule extension(std::optional<Formula> psi = std::nullopt) {
  std::string id = psi ? "extension[psi=" + psi->text() + "]" : "extension";
  return InferenceRule(std::move(id), 1, [psi](Premises p, const RuleContext& ctx) {
    std::vector<Formula> out;
    if (psi) {
      out.push_back(Formula::disjunction(p[0], *psi));
    } else {
      for (const auto& q : ctx.pool) out.push_back(Formula::disjunction(p[0], q));
    }
    return out;
  });
}

// (phi | phi) |- phi
inline InferenceRule cancellation() {
  return InferenceRule("cancellation", 1, [](Premises p, const RuleContext&) -> std::vector<Formula> {
    if (p[0].is(FormulaKind::disjunction) && p[0].lhs() == p[0].rhs()) return {p[0].lhs()};
    return {};
  });
}

// ((phi | psi) | chi) |- (phi | (psi | chi))
inline InferenceRule associativity_left() {
  return InferenceRule("associativity_left", 1,
                       [](Premises p, const RuleContext&) -> std::vector<Formula> {
                         const Formula& f = p[0];
                         if (f.is(FormulaKind::disjunction) && f.lhs().is(FormulaKind::disjunction))
                           return {Formula::disjunction(f.lhs().lhs(), Formula::disjunction(f.lhs().rhs(), f.rhs()))};
                         return {};
                       },
                       {.constructing = false});
}

// (phi | (psi | chi)) |- ((phi | psi) | chi)
inline InferenceRule associativity_right() {
  return InferenceRule("associativity_right", 1,
                       [](Premises p, const RuleContext&) -> std::vector<Formula> {
                         const Formula& f = p[0];
                         if (f.is(FormulaKind::disjunction) && f.rhs().is(FormulaKind::disjunction))
                           return {Formula::disjunction(Formula::disjunction(f.lhs(), f.rhs().lhs()), f.rhs().rhs())};
                         return {};
                       },
                       {.constructing = false});
}

// (phi | psi), (~phi | chi) |- (psi | chi)
inline InferenceRule cut() {
  auto apply = [](Premises p, const RuleContext&) -> std::vector<Formula> {
    const Formula& a = p[0];
    const Formula& b = p[1];
    if (a.is(FormulaKind::disjunction) && b.is(FormulaKind::disjunction) && b.lhs().is(FormulaKind::negation) &&
        b.lhs().child() == a.lhs())
      return {Formula::disjunction(a.rhs(), b.rhs())};
    return {};
  };
  return InferenceRule("cut", 2, apply, {},
                       [](const PremiseSet& set, const RuleContext&, const Emit& emit) {
                         FormulaMap<std::vector<const Formula*>> by_negated;
                         for (const auto& f : set.items)
                           if (f.is(FormulaKind::disjunction) && f.lhs().is(FormulaKind::negation))
                             by_negated[f.lhs().child()].push_back(&f);
                         for (const auto& a : set.items) {
                           if (!a.is(FormulaKind::disjunction)) continue;
                           auto it = by_negated.find(a.lhs());
                           if (it == by_negated.end()) continue;
                           for (const Formula* b : it->second) {
                             const Formula tuple[2] = {a, *b};
                             if (!emit(Formula::disjunction(a.rhs(), b->rhs()), Premises(tuple))) return false;
                           }
                         }
                         return true;
                       });
}

// (phi -> psi) |- (exists x phi -> psi) for each x free in phi but not in psi.
inline InferenceRule exists_introduction() {
  return InferenceRule("exists_introduction", 1, [](Premises p, const RuleContext&) {
    std::vector<Formula> out;
    const Formula& f = p[0];
    if (!f.is(FormulaKind::implication)) return out;
    const auto in_psi = free_variables(f.rhs());
    for (const auto& x : free_variables(f.lhs()))
      if (!in_psi.count(x)) out.push_back(Formula::implication(Formula::exists(x, f.lhs()), f.rhs()));
    return out;
  });
}

// E(w) = w
inline InferenceRule identity() {
  return InferenceRule(
      "identity", 1, [](Premises p, const RuleContext&) { return std::vector<Formula>{p[0]}; },
      {.constructing = false, .basically_closed = true});
}

// Sequential composition: q applied to every conclusion of r. q must be unary.
inline InferenceRule compose(InferenceRule r, InferenceRule q) {
  if (q.arity() != 1) throw Error("compose: second rule must be unary, got " + q.id());
  auto first = std::make_shared<InferenceRule>(std::move(r));
  auto second = std::make_shared<InferenceRule>(std::move(q));
  const std::string id = "compose(" + first->id() + ", " + second->id() + ")";
  return InferenceRule(
      id, first->arity(),
      [first, second](Premises p, const RuleContext& ctx) {
        std::vector<Formula> out;
        for (const auto& c : first->apply(p, ctx)) {
          const Formula one[1] = {c};
          for (auto& d : second->apply(Premises(one), ctx)) out.push_back(std::move(d));
        }
        return out;
      },
      {},
      [first, second](const PremiseSet& set, const RuleContext& ctx, const Emit& emit) {
        return first->apply_all(set, ctx, [&](const Formula& c, Premises p) {
          const Formula one[1] = {c};
          for (const auto& d : second->apply(Premises(one), ctx))
            if (!emit(d, p)) return false;
          return true;
        });
      });
}

// Keeps only conclusions whose size is strictly below the cap.
inline InferenceRule length_filtered(InferenceRule r, std::size_t cap) {
  if (cap == 0) throw Error("length_filtered: cap must be positive");
  auto inner = std::make_shared<InferenceRule>(std::move(r));
  const std::string id = "length_filtered(" + inner->id() + ", " + std::to_string(cap) + ")";
  return InferenceRule(
      id, inner->arity(),
      [inner, cap](Premises p, const RuleContext& ctx) {
        auto out = inner->apply(p, ctx);
        std::erase_if(out, [cap](const Formula& f) { return f.size() >= cap; });
        return out;
      },
      inner->traits(),
      [inner, cap](const PremiseSet& set, const RuleContext& ctx, const Emit& emit) {
        return inner->apply_all(set, ctx, [&](const Formula& c, Premises p) { return c.size() >= cap || emit(c, p); });
      });
}

}  // namespace rules

class RuleSystem {
 public:
  RuleSystem() = default;
  explicit RuleSystem(std::vector<InferenceRule> rules, bool closed_under_composition = false)
      : rules_(std::move(rules)), closed_under_composition_(closed_under_composition) {
    std::set<std::string> ids;
    for (const auto& r : rules_)
      if (!ids.insert(r.id()).second) throw Error("rule system: duplicate rule id '" + r.id() + "'");
  }

  const std::vector<InferenceRule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }
  bool closed_under_composition() const noexcept { return closed_under_composition_; }

  const InferenceRule* find(std::string_view id) const {
    for (const auto& r : rules_)
      if (r.id() == id) return &r;
    return nullptr;
  }
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  std::set<std::string> ids() const {
    std::set<std::string> out;
    for (const auto& r : rules_) out.insert(r.id());
    return out;
  }

  RuleSystem with(InferenceRule r) const {
    auto rs = rules_;
    if (!contains(r.id())) rs.push_back(std::move(r));
    return RuleSystem(std::move(rs), closed_under_composition_);
  }

 private:
  std::vector<InferenceRule> rules_;
  bool closed_under_composition_ = false;
};

namespace detail {
// Splits "a, b(c, d), e[x=(P, Q)]" at top-level commas.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}
}  // namespace detail

// Builds a rule from its textual specification:
//
//   modus_ponens | substitution | extension | extension[psi=<formula>]
//   | cancellation | associativity_left | associativity_right | cut
//   | exists_introduction | identity
//   | compose(<spec>, <spec>) | length_filtered(<spec>, <cap>)
//   | validated_mp(tautology | axiom_membership | always_true)
inline InferenceRule make_rule(std::string_view spec_text, const Alphabet& alphabet) {
  const std::string spec = detail::trim(spec_text);
  const auto open = spec.find_first_of("([");
  const std::string head = detail::trim(spec.substr(0, open));
  if (open == std::string::npos) {
    if (head == "modus_ponens") return rules::modus_ponens();
    if (head == "substitution") return rules::substitution();
    if (head == "extension") return rules::extension();
    if (head == "cancellation") return rules::cancellation();
    if (head == "associativity_left") return rules::associativity_left();
    if (head == "associativity_right") return rules::associativity_right();
    if (head == "cut") return rules::cut();
    if (head == "exists_introduction") return rules::exists_introduction();
    if (head == "identity") return rules::identity();
    throw Error("unknown rule '" + head + "'");
  }
  const char closer = spec[open] == '(' ? ')' : ']';
  if (spec.back() != closer) throw Error("rule spec '" + spec + "': unbalanced delimiters");
  const std::string body = spec.substr(open + 1, spec.size() - open - 2);
  if (spec[open] == '[') {
    if (head != "extension") throw Error("rule '" + head + "' takes no bracketed parameter");
    const auto eq = body.find('=');
    if (eq == std::string::npos || detail::trim(body.substr(0, eq)) != "psi")
      throw Error("extension parameter must be written psi=<formula>");
    return rules::extension(parse_formula(body.substr(eq + 1), alphabet));
  }
  const auto args = detail::split_top_level(body);
  if (head == "compose") {
    if (args.size() != 2) throw Error("compose expects two rules");
    return rules::compose(make_rule(args[0], alphabet), make_rule(args[1], alphabet));
  }
  if (head == "length_filtered") {
    if (args.size() != 2) throw Error("length_filtered expects a rule and a cap");
    const std::string cap_text = detail::trim(args[1]);
    std::size_t cap = 0;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(cap_text, &used);
      if (used != cap_text.size() || v <= 0) throw Error("");
      cap = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw Error("length_filtered: invalid cap '" + cap_text + "'");
    }
    return rules::length_filtered(make_rule(args[0], alphabet), cap);
  }
  if (head == "validated_mp") {
    if (args.size() != 1) throw Error("validated_mp expects one validator");
    return rules::validated_mp(validator_by_name(detail::trim(args[0])));
  }
  throw Error("unknown rule '" + head + "'");
}

}  // namespace metalogic
