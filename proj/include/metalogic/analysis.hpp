#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metalogic/engine.hpp"
#include "metalogic/language.hpp"
#include "metalogic/library.hpp"
#include "metalogic/semantics.hpp"

namespace metalogic {

enum class Outcome : std::uint8_t { holds, fails, inconclusive };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::inconclusive;
  std::string summary;
  // Formula text, relation pair or identifier the caller can re-check.
  std::optional<std::string> witness;
  std::vector<std::string> details;

  static Verdict holds(std::string summary, std::optional<std::string> witness = std::nullopt) {
    return {Outcome::holds, std::move(summary), std::move(witness), {}};
  }
  static Verdict fails(std::string summary, std::string witness) {
    return {Outcome::fails, std::move(summary), std::move(witness), {}};
  }
  static Verdict inconclusive(std::string summary) { return {Outcome::inconclusive, std::move(summary), {}, {}}; }

  bool is_holds() const noexcept { return outcome == Outcome::holds; }
  bool is_fails() const noexcept { return outcome == Outcome::fails; }
  bool is_inconclusive() const noexcept { return outcome == Outcome::inconclusive; }
};

// ---------------------------------------------------------------------------
// Equivalence of calculi

enum class EquivalenceKind : std::uint8_t { logical, algorithmic, axiomatic };

inline std::string_view to_string(EquivalenceKind k) {
  switch (k) {
    case EquivalenceKind::logical: return "logical";
    case EquivalenceKind::algorithmic: return "algorithmic";
    case EquivalenceKind::axiomatic: return "axiomatic";
  }
  return "?";
}

inline EquivalenceKind equivalence_kind_from_string(std::string_view s) {
  if (s == "logical") return EquivalenceKind::logical;
  if (s == "algorithmic") return EquivalenceKind::algorithmic;
  if (s == "axiomatic") return EquivalenceKind::axiomatic;
  throw Error("unknown equivalence kind '" + std::string(s) + "'");
}

struct Comparison {
  Verdict verdict;
  BodyStatus status_a = BodyStatus::saturated;
  BodyStatus status_b = BodyStatus::saturated;
  std::size_t body_a = 0;
  std::size_t body_b = 0;
  // f(T_a) \ T_b and T_b \ f(T_a), within the shared size cap.
  std::vector<Formula> only_a;
  std::vector<Formula> only_b;
  // Confirmed counterexamples (not derivable on the other side).
  std::vector<Formula> confirmed;
  std::vector<std::string> rule_difference;
  std::vector<Formula> axiom_difference;
};

namespace detail {

inline constexpr std::size_t kConfirmationLimit = 16;

inline bool definitely_underivable(const Calculus& c, const Formula& f, const Bounds& bounds) {
  const DeriveResult r = derive(c, f, bounds);
  return !r.found() && r.status == BodyStatus::saturated;
}

// Splits `image` against `other`; formulas over the cap are outside the
// shared fragment.
inline std::vector<Formula> missing_from(const std::vector<Formula>& image, const BoundedBody& other, std::size_t cap) {
  std::vector<Formula> out;
  for (const auto& f : image)
    if (f.size() <= cap && !other.contains(f)) out.push_back(f);
  return out;
}

}  // namespace detail

// Bounded check of Defs. logical (T_b = f(T_a)), algorithmic (also
// A_b = f(A_a)) and axiomatic (T_a = T_b, H_a = H_b) equivalence.
// The map is oriented automatically by source alphabet.
inline Comparison compare_calculi(EquivalenceKind kind, const Calculus& c, const Calculus& d, const Bounds& bounds,
                                  const std::optional<TranslationMap>& map_in = std::nullopt) {
  const Calculus* a = &c;
  const Calculus* b = &d;
  TranslationMap map = library::identity_map(c.alphabet);
  if (map_in) {
    if (map_in->source == c.alphabet && map_in->target == d.alphabet) {
      map = *map_in;
    } else if (map_in->source == d.alphabet && map_in->target == c.alphabet) {
      map = *map_in;
      std::swap(a, b);
    } else {
      throw Error("compare: translation " + map_in->id + " does not connect the two alphabets");
    }
  } else if (!(c.alphabet == d.alphabet)) {
    throw Error("compare: alphabets differ and no translation map was given");
  }
  if (kind == EquivalenceKind::axiomatic && !(c.alphabet == d.alphabet))
    throw Error("compare: axiomatic equivalence requires the same alphabet");

  Comparison out;
  const BoundedBody ta = enumerate_body(*a, bounds);
  const BoundedBody tb = enumerate_body(*b, bounds);
  out.status_a = ta.status();
  out.status_b = tb.status();
  out.body_a = ta.size();
  out.body_b = tb.size();
  const std::size_t cap = bounds.max_formula_size;

  std::vector<Formula> image;
  image.reserve(ta.size());
  for (const auto& f : ta.formulas()) image.push_back(map.map(f));
  out.only_a = detail::missing_from(image, tb, cap);
  FormulaSet image_set(image.begin(), image.end());
  for (const auto& g : tb.formulas()) {
    if (image_set.count(g)) continue;
    auto pre = map.inverse ? map.inverse(g) : std::nullopt;
    if (!pre || pre->size() > cap) continue;
    out.only_b.push_back(g);
  }
  std::sort(out.only_a.begin(), out.only_a.end());
  std::sort(out.only_b.begin(), out.only_b.end());

  std::size_t tried = 0;
  for (const auto& g : out.only_a) {
    if (tried++ >= detail::kConfirmationLimit) break;
    if (detail::definitely_underivable(*b, g, bounds)) out.confirmed.push_back(g);
  }
  tried = 0;
  for (const auto& g : out.only_b) {
    if (tried++ >= detail::kConfirmationLimit) break;
    if (detail::definitely_underivable(*a, *map.inverse(g), bounds)) out.confirmed.push_back(g);
  }

  bool structural_equal = true;
  if (kind == EquivalenceKind::algorithmic) {
    const auto pool_a = instantiation_pool(*a, bounds.instantiation_pool_size);
    const auto pool_b = instantiation_pool(*b, bounds.instantiation_pool_size);
    FormulaSet ax_a, ax_b;
    for (const auto& [f, _] : realize_axioms(*a, pool_a, cap, bounds.node_budget)) ax_a.insert(map.map(f));
    for (const auto& [f, _] : realize_axioms(*b, pool_b, cap, bounds.node_budget)) ax_b.insert(f);
    for (const auto& f : ax_a)
      if (f.size() <= cap && !ax_b.count(f)) out.axiom_difference.push_back(f);
    for (const auto& f : ax_b)
      if (!ax_a.count(f)) out.axiom_difference.push_back(f);
    std::sort(out.axiom_difference.begin(), out.axiom_difference.end());
    structural_equal = out.axiom_difference.empty();
  }
  if (kind == EquivalenceKind::axiomatic) {
    const auto ia = a->rules.ids();
    const auto ib = b->rules.ids();
    std::set_symmetric_difference(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(out.rule_difference));
    structural_equal = out.rule_difference.empty();
  }

  const bool both_saturated = ta.saturated() && tb.saturated();
  const std::string what = std::string(to_string(kind)) + " equivalence";
  if (!out.rule_difference.empty()) {
    out.verdict = Verdict::fails(what + ": rule systems differ", "rule " + out.rule_difference.front());
  } else if (!out.axiom_difference.empty()) {
    out.verdict = Verdict::fails(what + ": realized axiom sets differ", out.axiom_difference.front().text());
  } else if (!out.confirmed.empty()) {
    out.verdict = Verdict::fails(what + ": theorem bodies differ", out.confirmed.front().text());
  } else if (both_saturated && structural_equal && out.only_a.empty() && out.only_b.empty()) {
    out.verdict = Verdict::holds(what + ": bodies agree and both enumerations saturated");
  } else {
    out.verdict = Verdict::inconclusive(what + ": no confirmed counterexample within bounds (" +
                                        std::string(to_string(ta.status())) + ", " +
                                        std::string(to_string(tb.status())) + ")");
  }
  out.verdict.details.push_back("map " + map.id);
  out.verdict.details.push_back("unconfirmed differences " +
                                std::to_string(out.only_a.size() + out.only_b.size() - out.confirmed.size()));
  std::size_t shown = 0;
  for (const auto* side : {&out.only_a, &out.only_b})
    for (const auto& g : *side) {
      if (shown++ >= 5) break;
      if (std::find(out.confirmed.begin(), out.confirmed.end(), g) == out.confirmed.end())
        out.verdict.details.push_back((side == &out.only_a ? "only in f(T_a): " : "only in T_b: ") + g.text());
    }
  return out;
}

// ---------------------------------------------------------------------------
// Property battery

enum class PropertyKind : std::uint8_t {
  admissible,
  consistent_with,
  consistent,
  consistent_semantic,
  complete_wrt_mapping,
  complete_wrt_rules,
  transitively_closed,
  closed_wrt_axioms,
  closed_wrt_rules,
};

inline constexpr std::pair<PropertyKind, std::string_view> kPropertyNames[] = {
    {PropertyKind::admissible, "admissible"},
    {PropertyKind::consistent_with, "consistent_with"},
    {PropertyKind::consistent, "consistent"},
    {PropertyKind::consistent_semantic, "consistent_semantic"},
    {PropertyKind::complete_wrt_mapping, "complete_wrt_mapping"},
    {PropertyKind::complete_wrt_rules, "complete_wrt_rules"},
    {PropertyKind::transitively_closed, "transitively_closed"},
    {PropertyKind::closed_wrt_axioms, "closed_wrt_axioms"},
    {PropertyKind::closed_wrt_rules, "closed_wrt_rules"},
};

inline std::string_view to_string(PropertyKind k) {
  for (const auto& [kind, name] : kPropertyNames)
    if (kind == k) return name;
  return "?";
}

inline PropertyKind property_from_string(std::string_view s) {
  for (const auto& [kind, name] : kPropertyNames)
    if (name == s) return kind;
  throw Error("unknown property '" + std::string(s) + "'");
}

struct PropertySpec {
  PropertyKind kind = PropertyKind::consistent;
  // consistent_with: the set P.
  std::vector<Formula> forbidden;
  // complete_wrt_mapping: f; negation when unset.
  std::function<Formula(const Formula&)> mapping;
  std::string mapping_name = "negation";
  // complete_wrt_rules: F and Q.
  std::optional<RuleSystem> closure_rules;
  std::vector<Formula> targets;
};

namespace detail {

inline bool rule_preserves_tautologies(std::string_view id) {
  static const std::set<std::string, std::less<>> sound{
      "modus_ponens", "substitution", "extension",  "cancellation",
      "associativity_left", "associativity_right", "cut", "identity"};
  const std::string s = trim(id);
  if (s.rfind("validated_mp(", 0) == 0) return true;
  for (const char* head : {"compose(", "length_filtered("}) {
    const std::string h(head);
    if (s.rfind(h, 0) == 0 && s.back() == ')') {
      const auto args = split_top_level(std::string_view(s).substr(h.size(), s.size() - h.size() - 1));
      if (h == "length_filtered(") return !args.empty() && rule_preserves_tautologies(args.front());
      return std::all_of(args.begin(), args.end(), [](const std::string& a) { return rule_preserves_tautologies(a); });
    }
  }
  const auto bracket = s.find('[');
  return sound.count(s.substr(0, bracket)) > 0;
}

}  // namespace detail

// True when every theorem is provably a tautology: propositional language,
// tautologous axioms and schema patterns, tautology-preserving rules.
inline bool has_soundness_certificate(const Calculus& c) {
  if (c.alphabet.kind != AlphabetKind::propositional) return false;
  try {
    for (const auto& a : c.axioms)
      if (!is_tautology(a)) return false;
    for (const auto& s : c.schemata) {
      if (s.kind != SchemaKind::pattern) return false;
      if (!is_tautology(detail::as_object_formula(s.pattern))) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return std::all_of(c.rules.rules().begin(), c.rules.rules().end(),
                     [](const InferenceRule& r) { return detail::rule_preserves_tautologies(r.id()); });
}

namespace detail {

inline bool is_contradiction_pattern(const Formula& f) {
  return f.is(FormulaKind::conjunction) && f.rhs().is(FormulaKind::negation) && f.rhs().child() == f.lhs();
}

// Calls `visit` on every wff up to the cap in size-lex order until it
// returns false. Returns false when the language ceiling is exceeded.
inline bool for_each_wff(const Alphabet& alphabet, std::size_t cap, const std::function<bool(const Formula&)>& visit) {
  try {
    const auto all = enumerate_wffs(alphabet, cap);
    for (const auto& w : all)
      if (!visit(w)) return true;
    return true;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

}  // namespace detail

// A theorem set without derivations, e.g. read back from a body report.
struct BodySnapshot {
  std::vector<Formula> formulas;
  BodyStatus status = BodyStatus::saturated;
};

namespace detail {
class BodyView {
 public:
  explicit BodyView(BoundedBody body) : live_(std::move(body)), formulas_(live_->formulas()), status_(live_->status()) {
    set_.insert(formulas_.begin(), formulas_.end());
  }
  explicit BodyView(const BodySnapshot& s) : formulas_(s.formulas), status_(s.status) {
    set_.insert(formulas_.begin(), formulas_.end());
  }
  bool contains(const Formula& f) const { return set_.count(f) > 0; }
  const std::vector<Formula>& formulas() const { return formulas_; }
  std::size_t size() const { return formulas_.size(); }
  BodyStatus status() const { return status_; }
  bool saturated() const { return status_ == BodyStatus::saturated; }
  const BoundedBody& live(std::string_view what) const {
    if (!live_) throw Error(std::string(what) + " needs derivation data; a saved body is not enough");
    return *live_;
  }

 private:
  std::optional<BoundedBody> live_;
  std::vector<Formula> formulas_;
  BodyStatus status_;
  FormulaSet set_;
};
}  // namespace detail

// Decides one property on the bounded body of `c`, or on `given` when a
// saved body is supplied.
inline Verdict check_property(const Calculus& c, const PropertySpec& p, const Bounds& bounds,
                              const BodySnapshot* given = nullptr) {
  const detail::BodyView t = given ? detail::BodyView(*given) : detail::BodyView(enumerate_body(c, bounds));
  const std::size_t cap = bounds.max_formula_size;
  const std::string note = "body " + std::to_string(t.size()) + " theorems, " + std::string(to_string(t.status()));
  const auto pool = instantiation_pool(c, bounds.instantiation_pool_size);
  FormulaSet axiom_set;
  try {
    for (auto& [f, _] : realize_axioms(c, pool, cap, bounds.node_budget)) axiom_set.insert(f);
  } catch (const BudgetExceeded&) {
  }
  const RuleContext ctx{pool, &axiom_set};

  switch (p.kind) {
    case PropertyKind::admissible: {
      std::optional<Formula> outside;
      std::optional<Formula> candidate;
      std::size_t checked = 0;
      const bool complete = detail::for_each_wff(c.alphabet, cap, [&](const Formula& w) {
        if (t.contains(w)) return true;
        if (!candidate) candidate = w;
        if (detail::definitely_underivable(c, w, bounds)) {
          outside = w;
          return false;
        }
        return ++checked < detail::kConfirmationLimit;
      });
      if (outside) return Verdict::holds("admissible: a wff within the cap is not a theorem", outside->text());
      if (!complete) return Verdict::inconclusive("admissible: language beyond enumeration ceiling; " + note);
      if (!candidate && t.saturated())
        return Verdict::fails("not admissible within cap: every wff up to size " + std::to_string(cap) +
                                  " is a theorem",
                              "every wff of size <= " + std::to_string(cap));
      return Verdict::inconclusive("admissible: no confirmed non-theorem; " + note);
    }

    case PropertyKind::consistent_with: {
      if (p.forbidden.empty()) throw Error("consistent_with needs a non-empty set P");
      bool open = false;
      for (const auto& f : p.forbidden) {
        if (t.contains(f)) return Verdict::fails("theorem lies in P", f.text());
        const DeriveResult r = derive(c, f, bounds);
        if (r.found()) return Verdict::fails("theorem lies in P", f.text());
        if (r.status != BodyStatus::saturated) open = true;
      }
      if (open) return Verdict::inconclusive("consistent_with: no member of P derived; " + note);
      return Verdict::holds("consistent with P: no member of P is derivable within the cap");
    }

    case PropertyKind::consistent:
    case PropertyKind::consistent_semantic: {
      const bool semantic = p.kind == PropertyKind::consistent_semantic;
      for (const auto& f : t.formulas()) {
        bool bad = detail::is_contradiction_pattern(f);
        if (!bad && semantic && is_propositional(f) && atoms_of(f).size() <= kMaxTruthTableAtoms)
          bad = !is_satisfiable(f);
        if (bad) return Verdict::fails("contradictory theorem", f.text());
      }
      if (has_soundness_certificate(c))
        return Verdict::holds("consistent: every theorem is a tautology (sound axioms and rules); " + note);
      if (t.saturated()) return Verdict::holds("consistent within cap: saturated scan found no contradiction");
      return Verdict::inconclusive("consistent: no contradiction found; " + note);
    }

    case PropertyKind::complete_wrt_mapping: {
      const auto f = p.mapping ? p.mapping : [](const Formula& a) { return Formula::negation(a); };
      std::optional<Verdict> result;
      std::size_t tried = 0;
      bool open = false;
      const bool complete = detail::for_each_wff(c.alphabet, cap, [&](const Formula& a) {
        const Formula fa = f(a);
        if (t.contains(a) || t.contains(fa)) return true;
        Bounds wide = bounds;
        wide.max_formula_size = std::max(cap, fa.size());
        if (detail::definitely_underivable(c, a, bounds) && detail::definitely_underivable(c, fa, wide)) {
          result = Verdict::fails("neither a nor " + p.mapping_name + "(a) is a theorem", a.text());
          return false;
        }
        open = true;
        return ++tried < detail::kConfirmationLimit;
      });
      if (result) return *result;
      if (!complete) return Verdict::inconclusive("complete_wrt_mapping: language beyond enumeration ceiling");
      if (open) return Verdict::inconclusive("complete_wrt_mapping: unresolved candidates; " + note);
      return Verdict::holds("complete w.r.t. " + p.mapping_name + " for every wff up to size " + std::to_string(cap));
    }

    case PropertyKind::complete_wrt_rules: {
      if (!p.closure_rules) throw Error("complete_wrt_rules needs a rule system F");
      const BoundedBody closure = inference_closure(*p.closure_rules, t.formulas(), bounds, pool);
      for (const auto& q : p.targets) {
        if (closure.contains(q)) continue;
        if (t.saturated() && closure.saturated()) return Verdict::fails("Q not contained in F(T)", q.text());
        return Verdict::inconclusive("complete_wrt_rules: " + q.text() + " not reached; " + note);
      }
      return Verdict::holds("complete w.r.t. F and Q: Q is contained in F(T)");
    }

    case PropertyKind::transitively_closed: {
      const auto step = consequence_step(c.rules, t.formulas(), ctx, bounds.node_budget);
      for (const auto& f : step)
        if (f.size() <= cap && !t.contains(f)) {
          if (t.saturated()) return Verdict::fails("H(T) not contained in T", f.text());
          Verdict v = Verdict::inconclusive("bounded body not closed at the stage cap; " + note);
          v.details.push_back("next-stage formula " + f.text());
          return v;
        }
      return Verdict::holds("transitively closed: a further pass adds nothing within the cap");
    }

    case PropertyKind::closed_wrt_axioms: {
      const BoundedBody& body = t.live("closed_wrt_axioms");
      std::set<std::string> used;
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < body.size(); ++i) {
        const auto& th = body.theorems()[i];
        if (th.stage != 1) continue;
        const std::string label =
            th.justification.kind == Justification::Kind::schema_instance ? th.justification.label : th.formula.text();
        labels.push_back(label);
        if (body.used_as_premise(i)) used.insert(label);
      }
      for (const auto& a : c.axioms)
        if (a.size() > cap) return Verdict::inconclusive("axiom " + a.text() + " exceeds the size cap");
      for (const auto& l : labels)
        if (!used.count(l)) {
          if (t.saturated()) return Verdict::fails("axiom never used as a premise", l);
          return Verdict::inconclusive("closed_wrt_axioms: " + l + " unused so far; " + note);
        }
      return Verdict::holds("closed w.r.t. A: every axiom is used");
    }

    case PropertyKind::closed_wrt_rules: {
      const BoundedBody& body = t.live("closed_wrt_rules");
      for (const auto& r : c.rules.rules())
        if (!body.rule_usage().count(r.id())) {
          if (t.saturated()) return Verdict::fails("rule never applied", r.id());
          return Verdict::inconclusive("closed_wrt_rules: " + r.id() + " unused so far; " + note);
        }
      return Verdict::holds("closed w.r.t. H: every rule is applied");
    }
  }
  return Verdict::inconclusive("unknown property");
}

// Re-checks transitive closure of an explicit formula set (e.g. a saved
// body): H(S) restricted to the cap must lie inside S.
inline Verdict check_closed_set(const RuleSystem& rules, std::span<const Formula> set, const RuleContext& ctx,
                                std::size_t cap, std::size_t budget) {
  const FormulaSet members(set.begin(), set.end());
  for (const auto& f : consequence_step(rules, set, ctx, budget))
    if (f.size() <= cap && !members.count(f)) return Verdict::fails("H(T) not contained in T", f.text());
  return Verdict::holds("H(T) within the cap is contained in T");
}

// ---------------------------------------------------------------------------
// Finitely based relations

using Token = std::string;
using PremiseTokens = std::set<Token>;

struct RelationPair {
  PremiseTokens premises;
  Token conclusion;

  std::string text() const {
    std::string out = "({";
    bool first = true;
    for (const auto& p : premises) {
      out += (first ? "" : ", ") + p;
      first = false;
    }
    return out + "}, " + conclusion + ")";
  }
  friend auto operator<=>(const RelationPair&, const RelationPair&) = default;
};

// R ⊆ P_fin(X) × X.
class FiniteRelation {
 public:
  FiniteRelation() = default;
  FiniteRelation(std::initializer_list<RelationPair> pairs) {
    for (const auto& p : pairs) add(p.premises, p.conclusion);
  }

  void add(PremiseTokens premises, Token conclusion) {
    for (const auto& t : premises) carrier_.insert(t);
    carrier_.insert(conclusion);
    pairs_.insert(RelationPair{std::move(premises), std::move(conclusion)});
  }
  void add_to_carrier(Token t) { carrier_.insert(std::move(t)); }

  const std::set<RelationPair>& pairs() const noexcept { return pairs_; }
  const std::set<Token>& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool contains(const PremiseTokens& s, const Token& z) const { return pairs_.count(RelationPair{s, z}) > 0; }

  std::set<Token> range() const {
    std::set<Token> out;
    for (const auto& p : pairs_) out.insert(p.conclusion);
    return out;
  }

  friend bool operator==(const FiniteRelation&, const FiniteRelation&) = default;

 private:
  std::set<Token> carrier_;
  std::set<RelationPair> pairs_;
};

// Component k+1 holds the tuples (x_1, ..., x_k, z) of pairs with |S| = k.
inline std::map<std::size_t, std::set<std::vector<Token>>> decompose_relation(const FiniteRelation& r) {
  std::map<std::size_t, std::set<std::vector<Token>>> out;
  for (const auto& p : r.pairs()) {
    std::vector<Token> tuple(p.premises.begin(), p.premises.end());
    tuple.push_back(p.conclusion);
    out[p.premises.size() + 1].insert(std::move(tuple));
  }
  return out;
}

enum class BoundednessKind : std::uint8_t { bounded, functionally_bounded, strict, functionally_strict };

inline std::string_view to_string(BoundednessKind k) {
  switch (k) {
    case BoundednessKind::bounded: return "bounded";
    case BoundednessKind::functionally_bounded: return "functionally_bounded";
    case BoundednessKind::strict: return "strict";
    case BoundednessKind::functionally_strict: return "functionally_strict";
  }
  return "?";
}

inline BoundednessKind boundedness_from_string(std::string_view s) {
  for (auto k : {BoundednessKind::bounded, BoundednessKind::functionally_bounded, BoundednessKind::strict,
                 BoundednessKind::functionally_strict})
    if (to_string(k) == s) return k;
  throw Error("unknown boundedness kind '" + std::string(s) + "'");
}

// m counts premises.
inline Verdict check_boundedness(const FiniteRelation& r, std::size_t m, BoundednessKind kind) {
  if (m < 1) throw Error("boundedness: m must be at least 1");
  const std::string label = std::to_string(m) + "-" + std::string(to_string(kind));
  switch (kind) {
    case BoundednessKind::bounded:
    case BoundednessKind::strict:
      for (const auto& p : r.pairs()) {
        const bool ok = kind == BoundednessKind::bounded ? p.premises.size() <= m : p.premises.size() == m;
        if (!ok) return Verdict::fails("not " + label, p.text());
      }
      return Verdict::holds(label);
    case BoundednessKind::functionally_bounded:
    case BoundednessKind::functionally_strict: {
      std::map<Token, std::size_t> best;
      std::set<Token> exact;
      for (const auto& p : r.pairs()) {
        auto [it, fresh] = best.emplace(p.conclusion, p.premises.size());
        if (!fresh) it->second = std::min(it->second, p.premises.size());
        if (p.premises.size() == m) exact.insert(p.conclusion);
      }
      for (const auto& [z, k] : best) {
        const bool ok = kind == BoundednessKind::functionally_bounded ? k <= m : exact.count(z) > 0;
        if (!ok) return Verdict::fails("not " + label, z);
      }
      return Verdict::holds(label);
    }
  }
  return Verdict::inconclusive("unknown kind");
}

// Samples ⊢_C: pairs (S, z) for every S ⊆ pool with |S| ≤ max_premises and
// every z in the bounded closure of A ∪ S.
inline FiniteRelation relation_from_calculus(const Calculus& c, std::span<const Formula> premise_pool,
                                             std::size_t max_premises, const Bounds& bounds,
                                             BodyStatus* worst = nullptr) {
  std::vector<Formula> pool(premise_pool.begin(), premise_pool.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const auto params = instantiation_pool(c, bounds.instantiation_pool_size, pool);
  std::vector<Formula> axioms;
  for (auto& [f, _] : realize_axioms(c, params, bounds.max_formula_size, bounds.node_budget)) axioms.push_back(f);

  FiniteRelation r;
  for (const auto& p : pool) r.add_to_carrier(p.text());
  if (worst) *worst = BodyStatus::saturated;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    std::vector<Formula> seed = axioms;
    PremiseTokens s;
    for (auto i : chosen) {
      seed.push_back(pool[i]);
      s.insert(pool[i].text());
    }
    const BoundedBody closure = inference_closure(c.rules, seed, bounds, params);
    if (worst && closure.status() != BodyStatus::saturated &&
        (*worst == BodyStatus::saturated || closure.status() == BodyStatus::budget_exceeded))
      *worst = closure.status();
    for (const auto& z : closure.formulas()) r.add(s, z.text());
    if (chosen.size() == max_premises) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return r;
}

// U = (A, F, T) over an arbitrary carrier.
struct AbstractCalculus {
  std::set<Token> base;
  FiniteRelation relation;
};

enum class AbstractClosure : std::uint8_t { single, iterated };

inline std::set<Token> apply_relation(const FiniteRelation& f, const std::set<Token>& s) {
  std::set<Token> out;
  for (const auto& p : f.pairs())
    if (std::includes(s.begin(), s.end(), p.premises.begin(), p.premises.end())) out.insert(p.conclusion);
  return out;
}

inline std::set<Token> apply_abstract(const AbstractCalculus& u, AbstractClosure mode) {
  if (mode == AbstractClosure::single) return apply_relation(u.relation, u.base);
  std::set<Token> current = u.base;
  for (;;) {
    std::set<Token> next = u.base;
    for (auto& z : apply_relation(u.relation, current)) next.insert(z);
    if (next == current) return current;
    current = std::move(next);
  }
}

}  // namespace metalogic
