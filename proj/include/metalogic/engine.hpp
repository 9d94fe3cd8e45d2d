#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "metalogic/alphabet.hpp"
#include "metalogic/formula.hpp"
#include "metalogic/language.hpp"
#include "metalogic/rules.hpp"
#include "metalogic/schema.hpp"

namespace metalogic {

struct Bounds {
  std::size_t max_stage = 4;
  std::size_t max_formula_size = 25;
  std::size_t node_budget = 200000;
  std::size_t instantiation_pool_size = 7;

  void validate() const {
    if (max_stage < 1 || max_formula_size < 1 || node_budget < 1 || instantiation_pool_size < 1)
      throw Error("bounds: every bound must be at least 1");
  }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class SchemaMode : std::uint8_t {
  // Schema patterns are concrete axioms over object variables; the
  // substitution rule produces their instances.
  substitution_rule,
  // Schemata are instantiated against the finite instantiation pool.
  on_demand,
};

// The triad's inputs: axioms A and rules H over a language. The body T is
// always computed, never stored.
struct Calculus {
  std::string name;
  Alphabet alphabet;
  std::vector<Formula> axioms;
  std::vector<Schema> schemata;
  RuleSystem rules;
  SchemaMode schema_mode = SchemaMode::on_demand;
  // Variables the instantiation pool is built from; empty = all variables.
  std::vector<std::string> pool_variables;
  std::optional<Bounds> default_bounds;

  void validate() const {
    alphabet.validate();
    for (const auto& a : axioms)
      if (auto e = alphabet.check(a)) throw Error("calculus " + name + ": axiom " + a.text() + ": " + *e);
    std::set<std::string> ids;
    for (const auto& s : schemata) {
      if (!ids.insert(s.id).second) throw Error("calculus " + name + ": duplicate schema id '" + s.id + "'");
      s.validate();
      if (s.kind != SchemaKind::pattern) continue;
      for (const auto& m : s.metavariables) {
        const bool object = alphabet.is_variable(m);
        if (schema_mode == SchemaMode::substitution_rule && !object)
          throw Error("schema " + s.id + ": in substitution-rule mode metavariable '" + m +
                      "' must be a propositional variable");
        if (schema_mode == SchemaMode::on_demand && object)
          throw Error("schema " + s.id + ": metavariable '" + m + "' clashes with an object variable");
      }
    }
    if (schema_mode == SchemaMode::substitution_rule && !schemata.empty() && !rules.contains("substitution"))
      throw Error("calculus " + name + ": substitution-rule schema mode requires the substitution rule");
    for (const auto& v : pool_variables)
      if (!alphabet.is_variable(v)) throw Error("calculus " + name + ": pool variable '" + v + "' not in alphabet");
  }

  Bounds bounds_or(const Bounds& fallback) const { return default_bounds.value_or(fallback); }
};

// Why a formula belongs to a body.
struct Justification {
  enum class Kind : std::uint8_t { axiom, schema_instance, premise, rule };
  Kind kind = Kind::axiom;
  std::string label;  // schema id or rule id
  MetaAssignment assignment;
  std::vector<std::size_t> premises;  // indices of earlier entries

  static Justification axiom() { return {}; }
  static Justification premise() { return {Kind::premise, {}, {}, {}}; }
  static Justification schema(std::string id, MetaAssignment sigma) {
    return {Kind::schema_instance, std::move(id), std::move(sigma), {}};
  }
  static Justification rule(std::string id, std::vector<std::size_t> premises) {
    return {Kind::rule, std::move(id), {}, std::move(premises)};
  }

  // Human-readable tag; premise indices are printed 1-based.
  std::string text() const {
    switch (kind) {
      case Kind::axiom: return "axiom";
      case Kind::premise: return "premise";
      case Kind::schema_instance: return "schema " + label + " " + assignment.text();
      case Kind::rule: {
        std::string out = label + ":";
        for (std::size_t i = 0; i < premises.size(); ++i) out += (i ? ", " : " ") + std::to_string(premises[i] + 1);
        return out;
      }
    }
    return {};
  }
};

inline std::string_view to_string(Justification::Kind k) {
  switch (k) {
    case Justification::Kind::axiom: return "axiom";
    case Justification::Kind::schema_instance: return "schema";
    case Justification::Kind::premise: return "premise";
    case Justification::Kind::rule: return "rule";
  }
  return "?";
}

struct DerivationNode {
  Formula formula;
  Justification justification;  // premise indices refer to this derivation
  std::size_t stage = 1;
};

// A proof DAG in topological order; the last node is the conclusion.
struct Derivation {
  std::vector<DerivationNode> nodes;

  const Formula& conclusion() const { return nodes.back().formula; }
  std::size_t size() const noexcept { return nodes.size(); }

  // One line per node: "n. formula  [justification]".
  std::string text() const {
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out += std::to_string(i + 1) + ". " + nodes[i].formula.text() + "  [" + nodes[i].justification.text() + "]\n";
    return out;
  }
};

enum class BodyStatus : std::uint8_t { saturated, stage_cap_hit, budget_exceeded };

inline std::string_view to_string(BodyStatus s) {
  switch (s) {
    case BodyStatus::saturated: return "saturated";
    case BodyStatus::stage_cap_hit: return "stage_cap_hit";
    case BodyStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

struct Theorem {
  Formula formula;
  std::size_t stage;
  Justification justification;
};

// Cumulative staged theorem set T_1 ⊆ T_2 ⊆ ... with first derivations.
class BoundedBody {
 public:
  const std::vector<Theorem>& theorems() const noexcept { return theorems_; }
  std::size_t size() const noexcept { return theorems_.size(); }
  bool empty() const noexcept { return theorems_.empty(); }
  BodyStatus status() const noexcept { return status_; }
  bool saturated() const noexcept { return status_ == BodyStatus::saturated; }

  bool contains(const Formula& f) const { return index_.count(f) > 0; }
  std::optional<std::size_t> index_of(const Formula& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Number of computed stages.
  std::size_t stage_count() const noexcept { return stage_ends_.size(); }
  // Cumulative T_n, 1-based.
  std::vector<Formula> stage(std::size_t n) const {
    if (n == 0 || n > stage_ends_.size()) throw Error("body: no stage " + std::to_string(n));
    std::vector<Formula> out;
    out.reserve(stage_ends_[n - 1]);
    for (std::size_t i = 0; i < stage_ends_[n - 1]; ++i) out.push_back(theorems_[i].formula);
    return out;
  }

  const std::vector<Formula>& formulas() const noexcept { return items_; }
  FormulaSet formula_set() const { return {items_.begin(), items_.end()}; }

  // Realized axioms (or seeded premises): the entries of T_1.
  std::vector<Formula> realized_axioms() const { return stage_ends_.empty() ? std::vector<Formula>{} : stage(1); }

  // Parameter pool the body was computed with.
  std::span<const Formula> pool() const {
    return pool_ ? std::span<const Formula>(*pool_) : std::span<const Formula>{};
  }
  RuleContext context() const { return RuleContext{pool(), axiom_set_.get()}; }

  // How often each rule fired within the size cap (new or not).
  const std::map<std::string, std::size_t>& rule_usage() const noexcept { return rule_usage_; }
  // Theorems that served as a premise of some rule application.
  bool used_as_premise(std::size_t index) const { return used_premises_.count(index) > 0; }

  // Minimal DAG of first derivations ending in `f`.
  std::optional<Derivation> derivation_of(const Formula& f) const {
    auto idx = index_of(f);
    if (!idx) return std::nullopt;
    std::set<std::size_t> keep;
    std::vector<std::size_t> todo{*idx};
    while (!todo.empty()) {
      const std::size_t i = todo.back();
      todo.pop_back();
      if (!keep.insert(i).second) continue;
      for (auto p : theorems_[i].justification.premises) todo.push_back(p);
    }
    std::map<std::size_t, std::size_t> renumber;
    Derivation d;
    for (auto i : keep) {
      renumber[i] = d.nodes.size();
      DerivationNode node{theorems_[i].formula, theorems_[i].justification, theorems_[i].stage};
      for (auto& p : node.justification.premises) p = renumber.at(p);
      d.nodes.push_back(std::move(node));
    }
    return d;
  }

 private:
  friend class BodyRunner;

  void add(Formula f, std::size_t stage, Justification j) {
    index_.emplace(f, theorems_.size());
    items_.push_back(f);
    theorems_.push_back(Theorem{std::move(f), stage, std::move(j)});
  }

  std::vector<Theorem> theorems_;
  std::vector<Formula> items_;
  FormulaMap<std::size_t> index_;
  std::vector<std::size_t> stage_ends_;
  BodyStatus status_ = BodyStatus::saturated;
  std::shared_ptr<const std::vector<Formula>> pool_;
  std::shared_ptr<const FormulaSet> axiom_set_;
  std::map<std::string, std::size_t> rule_usage_;
  std::set<std::size_t> used_premises_;
};

// Drives stage-by-stage saturation: T_1 is the seed, T_n = T_{n-1} ∪ H(T_{n-1})
// restricted to the size cap.
class BodyRunner {
 public:
  BodyRunner(const RuleSystem& rules, const Bounds& bounds, std::shared_ptr<const std::vector<Formula>> pool,
             std::shared_ptr<const FormulaSet> axiom_set)
      : rules_(rules), bounds_(bounds) {
    bounds_.validate();
    body_.pool_ = pool ? std::move(pool) : std::make_shared<const std::vector<Formula>>();
    body_.axiom_set_ = axiom_set ? std::move(axiom_set) : std::make_shared<const FormulaSet>();
  }

  void set_goal(Formula goal) { goal_ = std::move(goal); }
  bool goal_found() const noexcept { return goal_found_; }

  // Seeds T_1. Entries are deduplicated (first justification wins) and
  // ordered size-lexicographically.
  void seed(std::vector<std::pair<Formula, Justification>> initial, bool truncated = false) {
    std::stable_sort(initial.begin(), initial.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [f, j] : initial) {
      if (body_.contains(f)) continue;
      if (body_.size() >= bounds_.node_budget) {
        body_.status_ = BodyStatus::budget_exceeded;
        break;
      }
      body_.add(f, 1, std::move(j));
    }
    body_.stage_ends_.push_back(body_.size());
    if (truncated) body_.status_ = BodyStatus::budget_exceeded;
    if (goal_ && body_.contains(*goal_)) goal_found_ = true;
  }

  BoundedBody run() && {
    if (body_.status_ == BodyStatus::budget_exceeded || goal_found_) return std::move(body_);
    for (std::size_t stage = 2; stage <= bounds_.max_stage; ++stage) {
      const PassResult r = pass(false);
      if (r.fresh.empty() && !r.overflow) {
        body_.status_ = BodyStatus::saturated;
        return std::move(body_);
      }
      std::vector<std::pair<Formula, Candidate>> added(r.fresh.begin(), r.fresh.end());
      std::sort(added.begin(), added.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [f, c] : added) body_.add(f, stage, Justification::rule(rules_.rules()[c.rule].id(), c.premises));
      body_.stage_ends_.push_back(body_.size());
      if (r.overflow) {
        body_.status_ = BodyStatus::budget_exceeded;
        return std::move(body_);
      }
      if (goal_found_) {
        body_.status_ = BodyStatus::stage_cap_hit;
        return std::move(body_);
      }
    }
    body_.status_ = pass(true).witness ? BodyStatus::stage_cap_hit : BodyStatus::saturated;
    return std::move(body_);
  }

 private:
  struct Candidate {
    std::size_t rule;
    std::vector<std::size_t> premises;
  };
  struct PassResult {
    FormulaMap<Candidate> fresh;
    bool overflow = false;
    std::optional<Formula> witness;
  };

  // One full application layer over the current body. In probe mode the
  // pass stops at the first new formula.
  PassResult pass(bool probe) {
    PassResult r;
    FormulaSet members(body_.items_.begin(), body_.items_.end());
    const PremiseSet working{body_.items_, members};
    const RuleContext ctx = body_.context();
    for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
      const InferenceRule& rule = rules_.rules()[ri];
      const bool go_on = rule.apply_all(working, ctx, [&](const Formula& c, Premises p) {
        if (c.size() > bounds_.max_formula_size) return true;
        ++body_.rule_usage_[rule.id()];
        std::vector<std::size_t> idx;
        idx.reserve(p.size());
        for (const auto& prem : p) {
          const std::size_t i = body_.index_.at(prem);
          idx.push_back(i);
          body_.used_premises_.insert(i);
        }
        if (members.count(c)) return true;
        if (probe) {
          r.witness = c;
          return false;
        }
        auto it = r.fresh.find(c);
        if (it == r.fresh.end()) {
          if (body_.size() + r.fresh.size() >= bounds_.node_budget) {
            r.overflow = true;
            return false;
          }
          r.fresh.emplace(c, Candidate{ri, std::move(idx)});
          if (goal_ && c == *goal_) {
            goal_found_ = true;
            return false;
          }
        } else if (std::tie(ri, idx) < std::tie(it->second.rule, it->second.premises)) {
          it->second = Candidate{ri, std::move(idx)};
        }
        return true;
      });
      if (!go_on) break;
    }
    return r;
  }

  const RuleSystem& rules_;
  Bounds bounds_;
  BoundedBody body_;
  std::optional<Formula> goal_;
  bool goal_found_ = false;
};

// ---------------------------------------------------------------------------
// Pools and axiom realization

// All wffs over the pool variables up to the given size, merged with `extra`,
// size-lex ordered.
inline std::vector<Formula> instantiation_pool(const Calculus& c, std::size_t pool_size,
                                               std::span<const Formula> extra = {}) {
  const Alphabet alpha =
      c.pool_variables.empty() ? c.alphabet : c.alphabet.restricted_to(c.pool_variables);
  auto base = enumerate_wffs(alpha, pool_size);
  FormulaSet seen(base.begin(), base.end());
  for (const auto& e : extra)
    if (seen.insert(e).second) base.push_back(e);
  std::sort(base.begin(), base.end());
  return base;
}

namespace detail {

inline std::vector<Term> small_terms(const Alphabet& a) {
  std::vector<Term> base;
  for (const auto& v : a.individual_variables) base.push_back(Term::variable(v));
  for (const auto& [f, ar] : a.functions)
    if (ar == 0) base.push_back(Term::constant(f));
  std::vector<Term> out = base;
  for (const auto& [f, ar] : a.functions)
    if (ar == 1)
      for (const auto& t : base) out.push_back(Term::function(f, {t}));
  return out;
}

inline void count_metavariables(const Formula& f, std::map<std::string, std::size_t>& counts) {
  if (f.is(FormulaKind::metavariable)) ++counts[f.name()];
  for (const auto& c : f.children()) count_metavariables(c, counts);
}

// Instances of a pattern schema over the pool whose size stays within cap.
inline void instantiate_over_pool(const Schema& s, std::span<const Formula> pool, std::size_t cap,
                                  std::size_t limit, std::vector<std::pair<Formula, Justification>>& out) {
  std::map<std::string, std::size_t> counts;
  count_metavariables(s.pattern, counts);
  std::vector<std::pair<std::string, std::size_t>> vars(counts.begin(), counts.end());
  std::size_t base = s.pattern.size();
  for (const auto& [_, c] : vars) base -= c;
  if (base + [&] {
        std::size_t m = 0;
        for (const auto& [_, c] : vars) m += c;
        return m;
      }() > cap)
    return;
  MetaAssignment sigma;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == vars.size()) {
      if (out.size() >= limit) throw BudgetExceeded("schema instantiation exceeds node budget");
      out.emplace_back(instantiate_schema(s, sigma), Justification::schema(s.id, sigma));
      return;
    }
    std::size_t reserve = 0;
    for (std::size_t j = i + 1; j < vars.size(); ++j) reserve += vars[j].second;
    for (const auto& f : pool) {
      if (used + vars[i].second * f.size() + reserve > cap) break;  // pool is size-ordered
      sigma.formulas.insert_or_assign(vars[i].first, f);
      rec(i + 1, used + vars[i].second * f.size());
    }
    sigma.formulas.erase(vars[i].first);
  };
  rec(0, base);
}

inline Formula as_object_formula(const Formula& pattern) {
  if (pattern.is(FormulaKind::metavariable)) return Formula::atom(pattern.name());
  if (pattern.children().empty()) return pattern;
  std::vector<Formula> kids;
  for (const auto& c : pattern.children()) kids.push_back(as_object_formula(c));
  return with_children(pattern, std::move(kids));
}

}  // namespace detail

// The axioms that seed T_1: concrete axioms, then schemata realized per the
// calculus's schema mode. Throws BudgetExceeded past `limit` entries.
inline std::vector<std::pair<Formula, Justification>> realize_axioms(const Calculus& c, std::span<const Formula> pool,
                                                                     std::size_t cap, std::size_t limit) {
  std::vector<std::pair<Formula, Justification>> out;
  for (const auto& a : c.axioms) out.emplace_back(a, Justification::axiom());
  for (const auto& s : c.schemata) {
    if (c.schema_mode == SchemaMode::substitution_rule && s.kind == SchemaKind::pattern) {
      out.emplace_back(detail::as_object_formula(s.pattern), Justification::schema(s.id, {}));
      continue;
    }
    if (s.kind == SchemaKind::pattern) {
      detail::instantiate_over_pool(s, pool, cap, limit, out);
      continue;
    }
    // phi_x[a] -> exists x phi
    const auto terms = detail::small_terms(c.alphabet);
    for (const auto& phi : pool)
      for (const auto& x : c.alphabet.individual_variables)
        for (const auto& a : terms) {
          MetaAssignment sigma;
          sigma.formulas.emplace("phi", phi);
          sigma.terms.emplace("x", Term::variable(x));
          sigma.terms.emplace("a", a);
          Formula inst = instantiate_schema(s, sigma);
          if (inst.size() > cap) continue;
          if (out.size() >= limit) throw BudgetExceeded("schema instantiation exceeds node budget");
          out.emplace_back(std::move(inst), Justification::schema(s.id, std::move(sigma)));
        }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

// One application layer: every conclusion of every rule over tuples drawn
// from the premises. Throws BudgetExceeded past `budget` distinct conclusions.
inline std::vector<Formula> consequence_step(const RuleSystem& rules, std::span<const Formula> premises,
                                             const RuleContext& ctx = {}, std::size_t budget = 200000) {
  std::vector<Formula> items(premises.begin(), premises.end());
  FormulaSet members(items.begin(), items.end());
  items.assign(members.begin(), members.end());
  std::sort(items.begin(), items.end());
  FormulaSet out;
  const PremiseSet set{items, members};
  for (const auto& r : rules.rules()) {
    r.apply_all(set, ctx, [&](const Formula& c, Premises) {
      out.insert(c);
      if (out.size() > budget) throw BudgetExceeded("consequence step exceeds budget of " + std::to_string(budget));
      return true;
    });
  }
  return sorted(out);
}

// H*(Φ) within bounds. Premises are seeded into T_1 so that rule systems
// without the identity rule still retain Φ.
inline BoundedBody inference_closure(const RuleSystem& rules, std::span<const Formula> premises, const Bounds& bounds,
                                     std::span<const Formula> pool = {}) {
  BodyRunner runner(rules, bounds, std::make_shared<const std::vector<Formula>>(pool.begin(), pool.end()),
                    std::make_shared<const FormulaSet>(premises.begin(), premises.end()));
  std::vector<std::pair<Formula, Justification>> seed;
  for (const auto& p : premises)
    if (p.size() <= bounds.max_formula_size) seed.emplace_back(p, Justification::premise());
  runner.seed(std::move(seed));
  return std::move(runner).run();
}

namespace detail {
inline BodyRunner prepare(const Calculus& calc, const Bounds& bounds, std::span<const Formula> extra_pool,
                          bool& truncated, std::vector<std::pair<Formula, Justification>>& seed) {
  bounds.validate();
  auto pool = std::make_shared<const std::vector<Formula>>(
      instantiation_pool(calc, bounds.instantiation_pool_size, extra_pool));
  truncated = false;
  try {
    seed = realize_axioms(calc, *pool, bounds.max_formula_size, bounds.node_budget * 4);
  } catch (const BudgetExceeded&) {
    truncated = true;
  }
  std::erase_if(seed, [&](const auto& e) { return e.first.size() > bounds.max_formula_size; });
  auto axioms = std::make_shared<FormulaSet>();
  for (const auto& [f, _] : seed) axioms->insert(f);
  return BodyRunner(calc.rules, bounds, std::move(pool), std::move(axioms));
}
}  // namespace detail

// Bounded theorem body of a calculus. `extra_pool` widens the instantiation
// pool (derive adds the goal's subformulas this way).
inline BoundedBody enumerate_body(const Calculus& calc, const Bounds& bounds,
                                  std::span<const Formula> extra_pool = {}) {
  std::vector<std::pair<Formula, Justification>> seed;
  bool truncated = false;
  BodyRunner runner = detail::prepare(calc, bounds, extra_pool, truncated, seed);
  runner.seed(std::move(seed), truncated);
  return std::move(runner).run();
}

struct DeriveResult {
  std::optional<Derivation> derivation;
  // Terminating status when not found: saturated means "not derivable
  // within the size cap"; anything else is inconclusive.
  BodyStatus status = BodyStatus::saturated;
  std::size_t explored = 0;
  // Parameter pool used, needed to re-check parameterized rule steps.
  std::vector<Formula> pool;
  FormulaSet realized_axioms;

  bool found() const noexcept { return derivation.has_value(); }
};

// Stage-wise search for `goal`; the instantiation pool is widened with the
// goal's subformulas. Succeeds exactly when the goal lies in the body
// enumerated with the same bounds and widened pool.
inline DeriveResult derive(const Calculus& calc, const Formula& goal, const Bounds& bounds) {
  const auto extra = subformulas(goal);
  std::vector<std::pair<Formula, Justification>> seed;
  bool truncated = false;
  BodyRunner runner = detail::prepare(calc, bounds, extra, truncated, seed);
  runner.set_goal(goal);
  runner.seed(std::move(seed), truncated);
  BoundedBody body = std::move(runner).run();
  DeriveResult r;
  r.status = body.status();
  r.explored = body.size();
  r.pool.assign(body.pool().begin(), body.pool().end());
  if (auto ax = body.context().axioms) r.realized_axioms = *ax;
  r.derivation = body.derivation_of(goal);
  return r;
}

// Axiom sets that change over time: A_1, A_2, ..., each with an optional
// rule-system override. Language, schema mode and pool come from `base`.
struct StagedAxioms {
  struct Stage {
    std::vector<Formula> axioms;
    std::vector<Schema> schemata;
    std::optional<RuleSystem> rules;
  };
  Calculus base;
  std::vector<Stage> stages;
};

// Recomputes T_n from A_n for every stage; nothing carries over.
inline std::vector<BoundedBody> staged_run(const StagedAxioms& staged, const RuleSystem& rules, const Bounds& bounds) {
  if (staged.stages.empty()) throw Error("staged_run: at least one axiom stage is required");
  std::vector<BoundedBody> out;
  for (const auto& st : staged.stages) {
    Calculus c = staged.base;
    c.axioms = st.axioms;
    c.schemata = st.schemata;
    c.rules = st.rules.value_or(rules);
    out.push_back(enumerate_body(c, bounds));
  }
  return out;
}

// Re-validates a derivation node by node against the calculus. Returns an
// explanation of the first defect, or nullopt when every step is justified.
inline std::optional<std::string> check_derivation(const Derivation& d, const Calculus& calc, const RuleContext& ctx,
                                                   std::span<const Formula> premises = {}) {
  if (d.nodes.empty()) return "empty derivation";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& n = d.nodes[i];
    const auto& j = n.justification;
    const std::string where = "node " + std::to_string(i + 1) + ": ";
    switch (j.kind) {
      case Justification::Kind::axiom:
        if (std::find(calc.axioms.begin(), calc.axioms.end(), n.formula) == calc.axioms.end())
          return where + "not an axiom";
        if (n.stage != 1) return where + "axiom outside stage 1";
        break;
      case Justification::Kind::premise:
        if (std::find(premises.begin(), premises.end(), n.formula) == premises.end()) return where + "not a premise";
        break;
      case Justification::Kind::schema_instance: {
        auto s = std::find_if(calc.schemata.begin(), calc.schemata.end(), [&](const Schema& x) { return x.id == j.label; });
        if (s == calc.schemata.end()) return where + "unknown schema " + j.label;
        const Formula expected = calc.schema_mode == SchemaMode::substitution_rule && s->kind == SchemaKind::pattern
                                     ? detail::as_object_formula(s->pattern)
                                     : instantiate_schema(*s, j.assignment);
        if (!(expected == n.formula)) return where + "not an instance of " + j.label;
        break;
      }
      case Justification::Kind::rule: {
        const InferenceRule* r = calc.rules.find(j.label);
        if (!r) return where + "unknown rule " + j.label;
        if (j.premises.size() != r->arity()) return where + "wrong premise count";
        std::vector<Formula> ps;
        std::size_t top = 0;
        for (auto p : j.premises) {
          if (p >= i) return where + "premise does not precede its conclusion";
          ps.push_back(d.nodes[p].formula);
          top = std::max(top, d.nodes[p].stage);
        }
        const auto concl = r->apply(Premises(ps), ctx);
        if (std::find(concl.begin(), concl.end(), n.formula) == concl.end())
          return where + "conclusion not produced by " + j.label;
        if (n.stage != top + 1) return where + "stage index is not 1 + max premise stage";
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace metalogic
