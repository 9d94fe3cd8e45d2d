// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "metalogic/metalogic.hpp"
#include "oracles.hpp"

using namespace metalogic;

namespace {

constexpr double kSweepSeconds = 60.0;
constexpr double kAutomatonSeconds = 30.0;
constexpr std::size_t kSweepBudget = 2000000;

struct Result {
  bool pass = true;
  std::string detail;
};

Result fail(std::string why) { return {false, std::move(why)}; }

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

const Alphabet& prop() {
  static const Alphabet a = oracle::small_alphabet();
  return a;
}

Formula F(std::string_view s) { return parse_formula(s, prop()); }

bool subset(const std::vector<Formula>& xs, const BoundedBody& body) {
  for (const auto& f : xs)
    if (!body.contains(f)) return false;
  return true;
}

// 1
Result soundness_sweep() {
  std::string detail;
  for (const char* name : {"kleene", "church_p1", "church_p2"}) {
    const Calculus c = builtin_calculus(name);
    const auto t0 = std::chrono::steady_clock::now();
    const BoundedBody body = enumerate_body(c, Bounds{3, 21, kSweepBudget, 5});
    const double s = seconds_since(t0);
    if (body.status() == BodyStatus::budget_exceeded) return fail(std::string(name) + ": budget exceeded");
    if (s >= kSweepSeconds) return fail(std::string(name) + ": " + std::to_string(s) + " s");
    for (const auto& f : body.formulas())
      if (!is_tautology(f) || !oracle::tautology(f)) return fail(std::string(name) + ": " + f.text());
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %zu theorems %.1fs", detail.empty() ? "" : "; ", name, body.size(), s);
    detail += buf;
  }
  return {true, detail};
}

// Independent of check_derivation: each rule node's formula is recomputed
// from its premises, each schema node from its assignment.
std::optional<std::string> revalidate(const Calculus& c, const DeriveResult& r) {
  const RuleContext ctx{r.pool, &r.realized_axioms};
  const auto& nodes = r.derivation->nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const auto& j = n.justification;
    if (j.kind == Justification::Kind::rule) {
      const InferenceRule* rule = c.rules.find(j.label);
      if (!rule) return "unknown rule at node " + std::to_string(i + 1);
      std::vector<Formula> ps;
      for (auto p : j.premises) {
        if (p >= i) return "forward reference at node " + std::to_string(i + 1);
        ps.push_back(nodes[p].formula);
      }
      const auto out = rule->apply(Premises(ps), ctx);
      if (std::find(out.begin(), out.end(), n.formula) == out.end()) return "bad step at node " + std::to_string(i + 1);
    } else if (j.kind == Justification::Kind::schema_instance) {
      auto s = std::find_if(c.schemata.begin(), c.schemata.end(), [&](const Schema& x) { return x.id == j.label; });
      if (s == c.schemata.end()) return "unknown schema at node " + std::to_string(i + 1);
      const Formula expected = c.schema_mode == SchemaMode::substitution_rule ? detail::as_object_formula(s->pattern)
                                                                                : instantiate_schema(*s, j.assignment);
      if (!(expected == n.formula)) return "bad instance at node " + std::to_string(i + 1);
    } else if (j.kind == Justification::Kind::axiom) {
      if (std::find(c.axioms.begin(), c.axioms.end(), n.formula) == c.axioms.end())
        return "bad axiom at node " + std::to_string(i + 1);
    } else {
      return "unexpected premise node";
    }
  }
  if (auto e = check_derivation(*r.derivation, c, ctx)) return *e;
  return std::nullopt;
}

// 2
Result derivability() {
  std::string detail;
  const std::pair<const char*, const char*> goals[] = {{"kleene", "P -> P"}, {"church_p1", "[p ⊃ p]"}};
  for (const auto& [name, goal_text] : goals) {
    const Calculus c = builtin_calculus(name);
    Bounds b = c.bounds_or(Bounds{});
    b.max_stage = std::string(name) == "kleene" ? 5 : 6;
    const Formula goal = parse_formula(goal_text, c.alphabet);
    const DeriveResult r = derive(c, goal, b);
    if (!r.found()) return fail(std::string(name) + ": not found (" + std::string(to_string(r.status)) + ")");
    if (!(r.derivation->conclusion() == goal)) return fail(std::string(name) + ": wrong conclusion");
    if (auto e = revalidate(c, r)) return fail(std::string(name) + ": " + *e);
    detail += (detail.empty() ? "" : "; ") + std::string(name) + " " + std::to_string(r.derivation->size()) + " nodes";
  }
  return {true, detail};
}

// 3
Result automaton_language() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> count(0, 30);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Formula> body = oracle::random_formulas(rng, count(rng), 11);
    std::set<std::string> expected;
    std::size_t longest = 0;
    for (const auto& f : body) {
      expected.insert(print_formula(f));
      longest = std::max(longest, print_formula(f).size());
    }
    const EpsilonNFA nfa = build_body_automaton(body);
    const EpsilonNFA trie = build_deterministic_body_automaton(body);
    const auto lang = nfa_language_upto(nfa, longest + 1);
    if (lang != expected) return fail("chain language differs on trial " + std::to_string(trial));
    if (nfa_language_upto(trie, longest + 1) != lang) return fail("trie differs on trial " + std::to_string(trial));
    if (!trie.deterministic_on_symbols()) return fail("trie not deterministic");
  }
  const double s = seconds_since(t0);
  if (s >= kAutomatonSeconds) return fail(std::to_string(s) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "100 bodies %.1fs", s);
  return {true, buf};
}

// 4
Result derive_agrees_with_enumerate() {
  std::mt19937 rng(4);
  std::size_t queries = 0;
  for (int i = 0; i < 20; ++i) {
    Calculus c = oracle::random_calculus(rng, 3, 6);
    c.axioms.push_back(Formula::implication(c.axioms[0], F("P | P")));
    c.axioms.push_back(Formula::disjunction(Formula::negation(c.axioms[0]), F("Q")));
    const Bounds b{3, 11, 50000, 1};
    const BoundedBody body = enumerate_body(c, b);
    if (body.status() == BodyStatus::budget_exceeded) return fail("budget exceeded on calculus " + std::to_string(i));
    std::vector<Formula> candidates = body.formulas();
    for (const auto& f : enumerate_wffs(prop(), 4)) candidates.push_back(f);
    for (const auto& f : oracle::random_formulas(rng, 30, 9)) candidates.push_back(f);
    for (const auto& g : candidates) {
      const DeriveResult r = derive(c, g, b);
      ++queries;
      if (r.found() != body.contains(g)) return fail("disagreement on " + g.text());
      if (r.found() && check_derivation(*r.derivation, c, RuleContext{r.pool, &r.realized_axioms}))
        return fail("invalid derivation of " + g.text());
    }
  }
  return {true, "20 calculi, " + std::to_string(queries) + " goals"};
}

// 5
Result monotonicity() {
  std::mt19937 rng(5);
  int checked = 0, attempts = 0;
  while (checked < 100 && attempts < 400) {
    ++attempts;
    Calculus small = oracle::random_calculus(rng, 2 + attempts % 4, 7);
    small.axioms.push_back(Formula::implication(small.axioms[0], F("P | P")));
    Calculus big = small;
    for (const auto& f : oracle::random_formulas(rng, 2, 7)) big.axioms.push_back(f);
    big.axioms.push_back(Formula::disjunction(Formula::negation(small.axioms[0]), F("Q")));
    for (auto& r : oracle::random_rule_subset(rng))
      if (!big.rules.find(r.id())) big.rules = big.rules.with(r);
    const Bounds b{3, 11, 50000, 1};
    const BoundedBody t = enumerate_body(small, b), q = enumerate_body(big, b);
    if (t.status() == BodyStatus::budget_exceeded || q.status() == BodyStatus::budget_exceeded) continue;
    if (!subset(t.formulas(), q)) return fail("containment broken on pair " + std::to_string(checked));
    ++checked;
  }
  if (checked < 100) return fail("only " + std::to_string(checked) + " pairs without a budget hit");
  return {true, "100 pairs"};
}

// 6
Result consequence_within_inference() {
  std::mt19937 rng(6);
  for (int i = 0; i < 200; ++i) {
    const RuleSystem h(oracle::random_rule_subset(rng));
    auto premises = oracle::random_formulas(rng, 1 + i % 7, 7);
    premises.push_back(Formula::implication(premises[0], F("~R")));
    premises.push_back(Formula::disjunction(Formula::negation(premises[0]), F("Q")));
    const BoundedBody body = inference_closure(h, premises, Bounds{2 + static_cast<std::size_t>(i % 3), 40, 200000, 1});
    const auto step = consequence_step(h, premises);
    if (oracle::consequence(h, premises) != FormulaSet(step.begin(), step.end()))
      return fail("consequence step differs from brute force");
    for (const auto& c : step)
      if (!body.contains(c)) return fail("missing " + c.text());
  }
  return {true, "200 premise sets"};
}

// 7
Result boundedness_oracle() {
  std::mt19937 rng(7);
  std::size_t verdicts = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto [r, o] = oracle::random_relation_pair(rng);
    for (std::size_t m = 1; m <= 5; ++m)
      for (auto kind : {BoundednessKind::bounded, BoundednessKind::functionally_bounded, BoundednessKind::strict,
                        BoundednessKind::functionally_strict}) {
        const Verdict v = check_boundedness(r, m, kind);
        ++verdicts;
        if (v.is_inconclusive() || v.is_holds() != oracle::satisfies(o, m, kind))
          return fail("relation " + std::to_string(trial) + ", m = " + std::to_string(m));
      }
  }
  return {true, "500 relations, " + std::to_string(verdicts) + " verdicts"};
}

Calculus mp_calculus(std::vector<Formula> axioms) {
  Calculus c;
  c.name = "mp";
  c.alphabet = prop();
  c.axioms = std::move(axioms);
  c.rules = RuleSystem({rules::modus_ponens()});
  return c;
}

// 8
Result validated_modus_ponens() {
  const Calculus plain = mp_calculus({F("P"), F("P -> Q")});
  const Bounds b{4, 15, 50000, 1};
  const BoundedBody gated = enumerate_body(library::lv(plain, tautology_validator()), b);
  if (gated.contains(F("Q"))) return fail("tautology validator admitted Q");
  const BoundedBody base = enumerate_body(plain, b);
  if (!base.contains(F("Q"))) return fail("plain body lacks Q");
  if (enumerate_body(library::lv(plain, always_true_validator()), b).formulas() != base.formulas())
    return fail("always-true body differs");
  std::mt19937 rng(8);
  for (int i = 0; i < 50; ++i) {
    Calculus c = mp_calculus(oracle::random_formulas(rng, 4, 6));
    c.axioms.push_back(Formula::implication(c.axioms[0], c.axioms[1]));
    c.axioms.push_back(Formula::implication(c.axioms[1], F("P | ~P")));
    c.axioms.push_back(F("P | ~P"));
    const BoundedBody all = enumerate_body(c, b);
    const BoundedBody taut = enumerate_body(library::lv(c, tautology_validator()), b);
    if (!subset(taut.formulas(), all)) return fail("validated body not contained, run " + std::to_string(i));
    if (enumerate_body(library::lv(c, always_true_validator()), b).formulas() != all.formulas())
      return fail("always-true body differs, run " + std::to_string(i));
  }
  return {true, "50 runs"};
}

// 9
Result equivalence_laws() {
  const auto fam = oracle::calculus_family();
  const Bounds b{5, 5, 100000, 1};
  const std::size_t n = fam.size();
  constexpr EquivalenceKind kinds[] = {EquivalenceKind::logical, EquivalenceKind::algorithmic,
                                       EquivalenceKind::axiomatic};
  std::vector<std::vector<std::vector<bool>>> holds(3, std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
  std::size_t nontrivial = 0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Comparison r = compare_calculi(kinds[k], fam[i], fam[j], b);
        if (r.verdict.is_inconclusive()) return fail("inconclusive " + fam[i].name + " vs " + fam[j].name);
        holds[k][i][j] = r.verdict.is_holds();
        if (holds[k][i][j] && i != j) ++nontrivial;
      }
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!holds[k][i][i]) return fail("not reflexive: " + fam[i].name);
      for (std::size_t j = 0; j < n; ++j) {
        if (holds[k][i][j] != holds[k][j][i]) return fail("not symmetric: " + fam[i].name + ", " + fam[j].name);
        for (std::size_t l = 0; l < n; ++l)
          if (holds[k][i][j] && holds[k][j][l] && !holds[k][i][l]) return fail("not transitive");
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if ((holds[1][i][j] || holds[2][i][j]) && !holds[0][i][j])
        return fail("implication chain broken: " + fam[i].name + ", " + fam[j].name);
      if (holds[1][i][j] && holds[2][i][j]) {
        const BoundedBody x = enumerate_body(fam[i], b), y = enumerate_body(fam[j], b);
        if (x.formula_set() != y.formula_set() || x.realized_axioms() != y.realized_axioms() ||
            fam[i].rules.ids() != fam[j].rules.ids())
          return fail("coincidence broken: " + fam[i].name + ", " + fam[j].name);
      }
    }
  if (nontrivial == 0) return fail("family has no non-trivial equivalences");
  return {true, "10 calculi x 3 kinds, " + std::to_string(nontrivial) + " non-trivial holds"};
}

// 10
Result saturation_fixpoint() {
  std::mt19937 rng(10);
  const Bounds b{6, 9, 50000, 1};
  int single = 0, meets = 0;
  for (int i = 0; i < 60; ++i) {
    Calculus c = oracle::random_calculus(rng, 3, 7);
    c.axioms.push_back(Formula::implication(c.axioms[0], F("P | P")));
    const BoundedBody body = enumerate_body(c, b);
    if (!body.saturated()) continue;
    ++single;
    if (!check_closed_set(c.rules, body.formulas(), body.context(), b.max_formula_size, b.node_budget).is_holds())
      return fail("saturated body not closed, calculus " + std::to_string(i));
    for (const auto& f : consequence_step(c.rules, body.formulas(), body.context()))
      if (f.size() <= b.max_formula_size && !body.contains(f)) return fail("extra pass adds " + f.text());
  }
  for (int i = 0; i < 60; ++i) {
    const RuleSystem h = RuleSystem(oracle::random_rule_subset(rng)).with(rules::identity());
    Calculus a = oracle::random_calculus(rng, 4, 7), c = oracle::random_calculus(rng, 4, 7);
    a.rules = h;
    c.rules = h;
    c.axioms.push_back(a.axioms[0]);
    a.axioms.push_back(Formula::implication(a.axioms[0], F("P | P")));
    c.axioms.push_back(Formula::implication(a.axioms[0], F("P | P")));
    const BoundedBody x = enumerate_body(a, b), y = enumerate_body(c, b);
    if (!x.saturated() || !y.saturated()) continue;
    ++meets;
    std::vector<Formula> meet;
    for (const auto& f : x.formulas())
      if (y.contains(f)) meet.push_back(f);
    for (const auto& f : consequence_step(h, meet))
      if (f.size() <= b.max_formula_size && !(x.contains(f) && y.contains(f)))
        return fail("intersection not closed: " + f.text());
  }
  if (single < 30 || meets < 30) return fail("too few saturated bodies");
  return {true, std::to_string(single) + " bodies, " + std::to_string(meets) + " intersections"};
}

// 11
Result church_comparison() {
  const Calculus p1 = builtin_calculus("church_p1");
  const Calculus p2 = builtin_calculus("church_p2");
  const Comparison r = compare_calculi(EquivalenceKind::logical, p1, p2, *p1.default_bounds, library::p2_to_p1_map());
  if (r.verdict.is_holds()) return fail("verdict holds");
  if (!r.confirmed.empty()) return fail("confirmed counterexample " + r.confirmed.front().text());
  if (!r.verdict.is_inconclusive()) return fail("verdict " + std::string(to_string(r.verdict.outcome)));
  for (const auto* side : {&r.only_a, &r.only_b})
    for (const auto& g : *side)
      if (!oracle::tautology(g)) return fail("non-tautology in a body difference: " + g.text());
  return {true, "inconclusive, 0 confirmed, " + std::to_string(r.only_a.size() + r.only_b.size()) +
                    " unconfirmed differences"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"soundness sweep", soundness_sweep},
      {"derivability", derivability},
      {"body automaton language", automaton_language},
      {"derive agrees with enumerate", derive_agrees_with_enumerate},
      {"monotonicity", monotonicity},
      {"consequence within inference", consequence_within_inference},
      {"boundedness oracle", boundedness_oracle},
      {"validated modus ponens", validated_modus_ponens},
      {"equivalence laws", equivalence_laws},
      {"saturation fixpoint", saturation_fixpoint},
      {"church p1 vs p2", church_comparison},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
