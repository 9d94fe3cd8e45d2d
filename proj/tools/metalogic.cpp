#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "metalogic/io.hpp"
#include "metalogic/metalogic.hpp"

namespace {

using namespace metalogic;
using io::json;

enum Exit : int { kOk = 0, kFails = 1, kInconclusive = 2, kUsage = 3, kBudget = 4 };

struct Common {
  std::string calc;
  bool machine = false;
  bool timing = false;
  std::optional<std::size_t> max_stage, max_size, budget, pool;
};

void add_common(CLI::App* cmd, Common& c, bool needs_calc = true) {
  auto* opt = cmd->add_option("--calc", c.calc, "calculus file or builtin:<name>");
  if (needs_calc) opt->required();
  cmd->add_flag("--json", c.machine, "machine-readable report");
  cmd->add_flag("--timing", c.timing, "include wall time in the report");
  cmd->add_option("--max-stage", c.max_stage, "cap on n in T_n")->check(CLI::PositiveNumber);
  cmd->add_option("--max-size", c.max_size, "formula size cap")->check(CLI::PositiveNumber);
  cmd->add_option("--budget", c.budget, "node budget")->check(CLI::PositiveNumber);
  cmd->add_option("--pool-size", c.pool, "instantiation pool size cap")->check(CLI::PositiveNumber);
}

Bounds resolve_bounds(const Common& c, const Calculus& calc) {
  Bounds b = calc.bounds_or(Bounds{});
  if (c.max_stage) b.max_stage = *c.max_stage;
  if (c.max_size) b.max_formula_size = *c.max_size;
  if (c.budget) b.node_budget = *c.budget;
  if (c.pool) b.instantiation_pool_size = *c.pool;
  b.validate();
  return b;
}

// Formula lists are separated by ';'.
std::vector<Formula> parse_list(const std::vector<std::string>& items, const Alphabet& a) {
  std::vector<Formula> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= item.size(); ++i) {
      if (i < item.size() && item[i] != ';') continue;
      const std::string piece = item.substr(start, i - start);
      start = i + 1;
      if (piece.find_first_not_of(" \t") == std::string::npos) continue;
      out.push_back(parse_formula(piece, a));
    }
  }
  return out;
}

json strings(const std::vector<Formula>& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(f.text());
  return arr;
}

class Clock {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Common& c, json report, const Clock& clock, const std::string& text) {
  if (c.machine) {
    if (c.timing) report["timing_ms"] = clock.ms();
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
    if (c.timing) std::cout << "time: " << clock.ms() << " ms\n";
  }
}

json calc_header(const std::string& command, const Calculus& calc, const Bounds& b) {
  json r = io::report_header(command);
  r["calculus"] = calc.name;
  r["bounds"] = io::bounds_to_json(b);
  return r;
}

int exit_for(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::holds: return kOk;
    case Outcome::fails: return kFails;
    case Outcome::inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int exit_for(BodyStatus s) { return s == BodyStatus::budget_exceeded ? kBudget : kOk; }

std::string body_text(const BoundedBody& body) {
  std::ostringstream os;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto& t = body.theorems()[i];
    os << i + 1 << ". " << t.formula.text() << "  [stage " << t.stage << "; " << t.justification.text() << "]\n";
  }
  os << "status: " << to_string(body.status()) << " (" << body.size() << " theorems, " << body.stage_count()
     << " stages)\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metalogic: syntactic calculi as triads (A, H, T)"};
  app.require_subcommand(1);
  Common common;
  Clock clock;
  int code = kOk;

  // parse
  auto* parse = app.add_subcommand("parse", "parse a formula and print its canonical form");
  std::string text;
  bool strict = false;
  parse->add_option("formula", text, "formula text")->required();
  parse->add_flag("--canonical", strict, "accept only the fully parenthesized grammar");
  add_common(parse, common, false);
  parse->callback([&] {
    const Calculus calc = io::load_calculus(common.calc.empty() ? "builtin:kleene" : common.calc);
    const Formula f = parse_formula(text, calc.alphabet, {strict ? ParseMode::canonical : ParseMode::precedence, {}});
    json r = io::report_header("parse");
    r["formula"] = f.text();
    r["size"] = f.size();
    if (calc.alphabet.kind == AlphabetKind::first_order) {
      json fv = json::array();
      for (const auto& v : free_variables(f)) fv.push_back(v);
      r["free_variables"] = fv;
    }
    emit(common, r, clock, f.text() + "\n");
  });

  // enum-lang
  auto* enum_lang = app.add_subcommand("enum-lang", "enumerate the wffs of the calculus language");
  add_common(enum_lang, common);
  enum_lang->callback([&] {
    const Calculus calc = io::load_calculus(common.calc);
    const Bounds b = resolve_bounds(common, calc);
    const auto wffs = enumerate_wffs(calc.alphabet, b.max_formula_size);
    json r = io::report_header("enum-lang");
    r["max_size"] = b.max_formula_size;
    r["count"] = wffs.size();
    r["wffs"] = strings(wffs);
    std::string t;
    for (const auto& w : wffs) t += w.text() + "\n";
    emit(common, r, clock, t);
  });

  // enum-body
  auto* enum_body = app.add_subcommand("enum-body", "enumerate the bounded theorem body");
  add_common(enum_body, common);
  enum_body->callback([&] {
    const Calculus calc = io::load_calculus(common.calc);
    const Bounds b = resolve_bounds(common, calc);
    const BoundedBody body = enumerate_body(calc, b);
    json r = calc_header("enum-body", calc, b);
    r["body"] = io::body_to_json(body);
    emit(common, r, clock, body_text(body));
    code = exit_for(body.status());
  });

  // derive
  auto* derive_cmd = app.add_subcommand("derive", "search for a derivation of a goal");
  std::string goal_text;
  derive_cmd->add_option("--goal", goal_text, "goal formula")->required();
  add_common(derive_cmd, common);
  derive_cmd->callback([&] {
    const Calculus calc = io::load_calculus(common.calc);
    const Bounds b = resolve_bounds(common, calc);
    const Formula goal = parse_formula(goal_text, calc.alphabet);
    const DeriveResult res = derive(calc, goal, b);
    json r = calc_header("derive", calc, b);
    r["goal"] = goal.text();
    r["found"] = res.found();
    r["status"] = std::string(to_string(res.status));
    r["counters"] = json{{"explored", res.explored}};
    std::string t;
    if (res.found()) {
      r["derivation"] = io::derivation_to_json(*res.derivation);
      t = res.derivation->text();
      code = kOk;
    } else {
      t = "not found within bounds (" + std::string(to_string(res.status)) + ")\n";
      code = res.status == BodyStatus::budget_exceeded ? kBudget : kInconclusive;
    }
    emit(common, r, clock, t);
  });

  // stages
  auto* stages_cmd = app.add_subcommand("stages", "non-monotonic run over changing axiom sets");
  std::vector<std::string> stage_axioms;
  stages_cmd->add_option("--stage", stage_axioms, "axioms of one stage, ';'-separated (repeatable)")->required();
  add_common(stages_cmd, common);
  stages_cmd->callback([&] {
    const Calculus calc = io::load_calculus(common.calc);
    const Bounds b = resolve_bounds(common, calc);
    StagedAxioms staged{calc, {}};
    for (const auto& s : stage_axioms) staged.stages.push_back({parse_list({s}, calc.alphabet), {}, std::nullopt});
    const auto bodies = staged_run(staged, calc.rules, b);
    json r = calc_header("stages", calc, b);
    json arr = json::array();
    std::string t;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      arr.push_back(io::body_to_json(bodies[i]));
      t += "stage " + std::to_string(i + 1) + ": " + std::string(to_string(bodies[i].status())) + "\n";
      for (const auto& f : bodies[i].formulas()) t += "  " + f.text() + "\n";
      if (bodies[i].status() == BodyStatus::budget_exceeded) code = kBudget;
    }
    r["stages"] = arr;
    emit(common, r, clock, t);
  });

  // compare
  auto* compare = app.add_subcommand("compare", "bounded equivalence check of two calculi");
  std::string kind_text = "logical", calc_b, map_name;
  compare->add_option("--kind", kind_text, "logical | algorithmic | axiomatic");
  compare->add_option("--calc-a", common.calc, "first calculus")->required();
  compare->add_option("--calc-b", calc_b, "second calculus")->required();
  compare->add_option("--map", map_name, "translation map (p2_to_p1 | p1_to_p2)");
  compare->add_flag("--json", common.machine, "machine-readable report");
  compare->add_flag("--timing", common.timing, "include wall time in the report");
  compare->add_option("--max-stage", common.max_stage)->check(CLI::PositiveNumber);
  compare->add_option("--max-size", common.max_size)->check(CLI::PositiveNumber);
  compare->add_option("--budget", common.budget)->check(CLI::PositiveNumber);
  compare->add_option("--pool-size", common.pool)->check(CLI::PositiveNumber);
  compare->callback([&] {
    const Calculus a = io::load_calculus(common.calc);
    const Calculus bcalc = io::load_calculus(calc_b);
    const Bounds b = resolve_bounds(common, a);
    std::optional<TranslationMap> map;
    if (!map_name.empty()) map = translation_by_name(map_name);
    const Comparison cmp = compare_calculi(equivalence_kind_from_string(kind_text), a, bcalc, b, map);
    json r = io::report_header("compare");
    r["kind"] = kind_text;
    r["calculi"] = {a.name, bcalc.name};
    r["bounds"] = io::bounds_to_json(b);
    r["result"] = io::verdict_to_json(cmp.verdict);
    r["statuses"] = {std::string(to_string(cmp.status_a)), std::string(to_string(cmp.status_b))};
    r["body_sizes"] = {cmp.body_a, cmp.body_b};
    r["confirmed"] = strings(cmp.confirmed);
    r["difference_sizes"] = {cmp.only_a.size(), cmp.only_b.size()};
    emit(common, r, clock, io::verdict_text(cmp.verdict));
    code = exit_for(cmp.verdict);
  });

  // check
  auto* check = app.add_subcommand("check", "decide a calculus property within bounds");
  std::string property, body_report, mapping = "negation";
  std::vector<std::string> set_items, target_items, closure_rules;
  check->add_option("--property", property, "property name")->required();
  check->add_option("--set", set_items, "P for consistent_with, ';'-separated");
  check->add_option("--mapping", mapping, "negation | identity | p2_to_p1 | p1_to_p2");
  check->add_option("--closure-rule", closure_rules, "rule of F for complete_wrt_rules (repeatable)");
  check->add_option("--targets", target_items, "Q for complete_wrt_rules, ';'-separated");
  check->add_option("--body-report", body_report, "re-check a saved enum-body machine report");
  add_common(check, common);
  check->callback([&] {
    const Calculus calc = io::load_calculus(common.calc);
    const Bounds b = resolve_bounds(common, calc);
    PropertySpec spec;
    spec.kind = property_from_string(property);
    spec.forbidden = parse_list(set_items, calc.alphabet);
    spec.targets = parse_list(target_items, calc.alphabet);
    if (!closure_rules.empty()) {
      std::vector<InferenceRule> rs;
      for (const auto& r : closure_rules) rs.push_back(make_rule(r, calc.alphabet));
      spec.closure_rules = RuleSystem(std::move(rs));
    }
    spec.mapping_name = mapping;
    if (mapping == "identity") spec.mapping = [](const Formula& f) { return f; };
    else if (mapping != "negation") {
      const TranslationMap m = translation_by_name(mapping);
      spec.mapping = m.map;
    }
    std::optional<BodySnapshot> snap;
    if (!body_report.empty()) {
      std::ifstream in(body_report);
      if (!in) throw Error("cannot open body report '" + body_report + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw Error("body report: " + std::string(e.what()));
      }
      snap = io::body_snapshot_from_report(j, calc.alphabet);
    }
    const Verdict v = check_property(calc, spec, b, snap ? &*snap : nullptr);
    json r = calc_header("check", calc, b);
    r["property"] = property;
    r["result"] = io::verdict_to_json(v);
    emit(common, r, clock, io::verdict_text(v));
    code = exit_for(v);
  });

  // relation
  auto* relation = app.add_subcommand("relation", "sample the inference relation over premise subsets");
  std::vector<std::string> premise_items;
  std::size_t max_premises = 2;
  std::string out_path;
  relation->add_option("--premises", premise_items, "premise pool, ';'-separated");
  relation->add_option("--max-premises", max_premises, "largest premise set");
  relation->add_option("-o,--output", out_path, "write the relation file here");
  add_common(relation, common);
  relation->callback([&] {
    const Calculus calc = io::load_calculus(common.calc);
    const Bounds b = resolve_bounds(common, calc);
    BodyStatus worst = BodyStatus::saturated;
    const FiniteRelation rel =
        relation_from_calculus(calc, parse_list(premise_items, calc.alphabet), max_premises, b, &worst);
    const std::string file = io::relation_text(rel);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw Error("cannot write '" + out_path + "'");
      out << file;
    }
    json r = calc_header("relation", calc, b);
    r["pairs"] = rel.size();
    r["status"] = std::string(to_string(worst));
    if (out_path.empty()) r["relation"] = file;
    emit(common, r, clock, out_path.empty() ? file : std::to_string(rel.size()) + " pairs written\n");
    code = exit_for(worst);
  });

  // relation-check
  auto* relation_check = app.add_subcommand("relation-check", "m-boundedness of a finite relation");
  std::string rel_path, bound_kind = "bounded";
  std::size_t m = 1;
  relation_check->add_option("--relation", rel_path, "relation file")->required();
  relation_check->add_option("-m,--m", m, "premise bound")->check(CLI::PositiveNumber);
  relation_check->add_option("--kind", bound_kind, "bounded | functionally_bounded | strict | functionally_strict");
  relation_check->add_flag("--json", common.machine, "machine-readable report");
  relation_check->add_flag("--timing", common.timing, "include wall time in the report");
  relation_check->callback([&] {
    std::ifstream in(rel_path);
    if (!in) throw Error("cannot open relation file '" + rel_path + "'");
    const FiniteRelation rel = io::read_relation(in);
    const Verdict v = check_boundedness(rel, m, boundedness_from_string(bound_kind));
    json r = io::report_header("relation-check");
    r["m"] = m;
    r["kind"] = bound_kind;
    r["pairs"] = rel.size();
    r["result"] = io::verdict_to_json(v);
    emit(common, r, clock, io::verdict_text(v));
    code = exit_for(v);
  });

  // automaton
  auto* automaton = app.add_subcommand("automaton", "finite-body automaton");
  std::vector<std::string> formula_items;
  std::vector<std::string> inputs;
  bool trie = false;
  std::string automaton_out;
  automaton->add_option("--formulas", formula_items, "explicit body, ';'-separated (instead of enumerating)");
  automaton->add_flag("--deterministic", trie, "prefix-trie construction");
  automaton->add_option("--accepts", inputs, "strings to test (repeatable)");
  automaton->add_option("-o,--output", automaton_out, "write the automaton file here");
  add_common(automaton, common);
  automaton->callback([&] {
    const Calculus calc = io::load_calculus(common.calc);
    const Bounds b = resolve_bounds(common, calc);
    std::vector<Formula> body;
    BodyStatus status = BodyStatus::saturated;
    if (!formula_items.empty()) {
      body = parse_list(formula_items, calc.alphabet);
    } else {
      const BoundedBody t = enumerate_body(calc, b);
      body = t.formulas();
      status = t.status();
    }
    const EpsilonNFA nfa = trie ? build_deterministic_body_automaton(body) : build_body_automaton(body);
    const std::string file = automaton_text(nfa);
    if (!automaton_out.empty()) {
      std::ofstream out(automaton_out);
      if (!out) throw Error("cannot write '" + automaton_out + "'");
      out << file;
    }
    json r = calc_header("automaton", calc, b);
    r["construction"] = trie ? "trie" : "chains";
    r["body_status"] = std::string(to_string(status));
    r["body_size"] = body.size();
    r["states"] = nfa.state_count();
    r["transitions"] = nfa.transitions().size();
    std::string t = automaton_out.empty() ? file : "";
    bool all_accepted = true;
    if (!inputs.empty()) {
      json acc = json::object();
      for (const auto& s : inputs) {
        const bool ok = nfa_accepts(nfa, s);
        all_accepted = all_accepted && ok;
        acc[s] = ok;
        t += (ok ? "accepts " : "rejects ") + s + "\n";
      }
      r["accepts"] = acc;
    }
    if (automaton_out.empty()) r["automaton"] = file;
    emit(common, r, clock, t);
    code = status == BodyStatus::budget_exceeded ? kBudget : (all_accepted ? kOk : kFails);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
