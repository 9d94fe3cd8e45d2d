#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "metalogic/analysis.hpp"
#include "metalogic/automaton.hpp"
#include "metalogic/engine.hpp"
#include "metalogic/library.hpp"

namespace metalogic::io {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "metalogic-report";
inline constexpr int kReportVersion = 1;
inline constexpr std::string_view kRelationFormat = "metalogic-relation";

// ---------------------------------------------------------------------------
// Calculus files

namespace detail {

[[noreturn]] inline void field_error(const std::string& where, const std::string& msg) {
  throw Error("calculus file: " + where + ": " + msg);
}

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) field_error(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) field_error(where, "unknown key '" + it.key() + "'");
}

inline std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) field_error(where, "expected a string");
  return v.get<std::string>();
}

inline std::vector<std::string> get_strings(const json& v, const std::string& where) {
  if (!v.is_array()) field_error(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::size_t get_count(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    field_error(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

inline std::map<std::string, std::size_t> get_arities(const json& v, const std::string& where) {
  if (!v.is_object()) field_error(where, "expected an object of name: arity");
  std::map<std::string, std::size_t> out;
  for (auto it = v.begin(); it != v.end(); ++it) out[it.key()] = get_count(it.value(), where + "." + it.key());
  return out;
}

inline Quantifier quantifier_from(const std::string& s, const std::string& where) {
  if (s == "forall" || s == "∀") return Quantifier::forall;
  if (s == "exists" || s == "∃") return Quantifier::exists;
  field_error(where, "unknown quantifier '" + s + "'");
}

inline std::string_view quantifier_name(Quantifier q) { return q == Quantifier::forall ? "forall" : "exists"; }

}  // namespace detail

inline Alphabet alphabet_from_json(const json& j) {
  using namespace detail;
  reject_unknown(j, "language",
                 {"kind", "variables", "connectives", "punctuation", "falsum", "functions", "predicates",
                  "quantifiers", "individual_variables", "equality"});
  Alphabet a;
  if (j.contains("kind")) {
    const auto k = get_string(j["kind"], "language.kind");
    if (k == "propositional") a.kind = AlphabetKind::propositional;
    else if (k == "first_order" || k == "first-order") a.kind = AlphabetKind::first_order;
    else field_error("language.kind", "expected propositional or first_order");
  }
  if (j.contains("variables")) a.variables = get_strings(j["variables"], "language.variables");
  if (j.contains("connectives"))
    for (const auto& s : get_strings(j["connectives"], "language.connectives")) {
      auto c = connective_from_symbol(s);
      if (!c) field_error("language.connectives", "unknown connective '" + s + "'");
      a.connectives.insert(*c);
    }
  if (j.contains("punctuation")) {
    const auto p = get_string(j["punctuation"], "language.punctuation");
    if (p == "parentheses") a.punctuation = Punctuation::parentheses;
    else if (p == "brackets") a.punctuation = Punctuation::brackets;
    else field_error("language.punctuation", "expected parentheses or brackets");
  }
  if (j.contains("falsum") && !j["falsum"].is_null()) a.falsum = get_string(j["falsum"], "language.falsum");
  if (j.contains("functions")) a.functions = get_arities(j["functions"], "language.functions");
  if (j.contains("predicates")) a.predicates = get_arities(j["predicates"], "language.predicates");
  if (j.contains("quantifiers"))
    for (const auto& s : get_strings(j["quantifiers"], "language.quantifiers"))
      a.quantifiers.insert(quantifier_from(s, "language.quantifiers"));
  if (j.contains("individual_variables"))
    a.individual_variables = get_strings(j["individual_variables"], "language.individual_variables");
  if (j.contains("equality")) {
    if (!j["equality"].is_boolean()) field_error("language.equality", "expected true or false");
    a.equality = j["equality"].get<bool>();
  }
  try {
    a.validate();
  } catch (const Error& e) {
    field_error("language", e.what());
  }
  return a;
}

inline json alphabet_to_json(const Alphabet& a) {
  json j;
  j["kind"] = a.kind == AlphabetKind::propositional ? "propositional" : "first_order";
  j["variables"] = a.variables;
  json conns = json::array();
  for (auto c : a.connectives) conns.push_back(std::string(connective_symbol(c)));
  j["connectives"] = conns;
  j["punctuation"] = a.punctuation == Punctuation::parentheses ? "parentheses" : "brackets";
  if (a.falsum) j["falsum"] = *a.falsum;
  if (a.kind == AlphabetKind::first_order) {
    j["functions"] = a.functions;
    j["predicates"] = a.predicates;
    json qs = json::array();
    for (auto q : a.quantifiers) qs.push_back(std::string(detail::quantifier_name(q)));
    j["quantifiers"] = qs;
    j["individual_variables"] = a.individual_variables;
    j["equality"] = a.equality;
  }
  return j;
}

inline json bounds_to_json(const Bounds& b) {
  return json{{"max_stage", b.max_stage},
              {"max_formula_size", b.max_formula_size},
              {"node_budget", b.node_budget},
              {"instantiation_pool_size", b.instantiation_pool_size}};
}

inline Bounds bounds_from_json(const json& j, Bounds base = {}) {
  detail::reject_unknown(j, "bounds", {"max_stage", "max_formula_size", "node_budget", "instantiation_pool_size"});
  if (j.contains("max_stage")) base.max_stage = detail::get_count(j["max_stage"], "bounds.max_stage");
  if (j.contains("max_formula_size"))
    base.max_formula_size = detail::get_count(j["max_formula_size"], "bounds.max_formula_size");
  if (j.contains("node_budget")) base.node_budget = detail::get_count(j["node_budget"], "bounds.node_budget");
  if (j.contains("instantiation_pool_size"))
    base.instantiation_pool_size = detail::get_count(j["instantiation_pool_size"], "bounds.instantiation_pool_size");
  try {
    base.validate();
  } catch (const Error& e) {
    detail::field_error("bounds", e.what());
  }
  return base;
}

inline Calculus calculus_from_json(const json& j) {
  using namespace detail;
  reject_unknown(j, "top level",
                 {"name", "language", "axioms", "schemata", "rules", "schema_mode", "pool_variables", "bounds",
                  "validator"});
  Calculus c;
  c.name = j.contains("name") ? get_string(j["name"], "name") : "unnamed";
  if (!j.contains("language")) field_error("top level", "missing 'language'");
  c.alphabet = alphabet_from_json(j["language"]);
  if (j.contains("schema_mode")) {
    const auto m = get_string(j["schema_mode"], "schema_mode");
    if (m == "on_demand") c.schema_mode = SchemaMode::on_demand;
    else if (m == "substitution_rule") c.schema_mode = SchemaMode::substitution_rule;
    else field_error("schema_mode", "expected on_demand or substitution_rule");
  }
  if (j.contains("axioms")) {
    const auto texts = get_strings(j["axioms"], "axioms");
    for (std::size_t i = 0; i < texts.size(); ++i) {
      try {
        c.axioms.push_back(parse_formula(texts[i], c.alphabet));
      } catch (const Error& e) {
        field_error("axioms[" + std::to_string(i) + "]", e.what());
      }
    }
  }
  if (j.contains("schemata")) {
    if (!j["schemata"].is_array()) field_error("schemata", "expected an array");
    for (std::size_t i = 0; i < j["schemata"].size(); ++i) {
      const std::string where = "schemata[" + std::to_string(i) + "]";
      const json& s = j["schemata"][i];
      reject_unknown(s, where, {"id", "pattern", "metavariables", "kind"});
      if (!s.contains("id")) field_error(where, "missing 'id'");
      const auto id = get_string(s["id"], where + ".id");
      if (s.contains("kind") && get_string(s["kind"], where + ".kind") == "existential_substitution") {
        c.schemata.push_back(Schema::existential_substitution(id));
        continue;
      }
      if (s.contains("kind") && get_string(s["kind"], where + ".kind") != "pattern")
        field_error(where + ".kind", "expected pattern or existential_substitution");
      if (!s.contains("pattern")) field_error(where, "missing 'pattern'");
      const auto mv = s.contains("metavariables") ? get_strings(s["metavariables"], where + ".metavariables")
                                                  : std::vector<std::string>{};
      try {
        c.schemata.push_back(Schema::parse(id, get_string(s["pattern"], where + ".pattern"), mv, c.alphabet));
      } catch (const Error& e) {
        field_error(where, e.what());
      }
    }
  }
  std::vector<InferenceRule> rules;
  if (j.contains("rules")) {
    const auto specs = get_strings(j["rules"], "rules");
    for (std::size_t i = 0; i < specs.size(); ++i) {
      try {
        rules.push_back(make_rule(specs[i], c.alphabet));
      } catch (const Error& e) {
        field_error("rules[" + std::to_string(i) + "]", e.what());
      }
    }
  }
  try {
    c.rules = RuleSystem(std::move(rules));
  } catch (const Error& e) {
    field_error("rules", e.what());
  }
  if (j.contains("validator")) {
    try {
      c = library::lv(std::move(c), validator_by_name(get_string(j["validator"], "validator")));
    } catch (const Error& e) {
      field_error("validator", e.what());
    }
    if (j.contains("name")) c.name = j["name"].get<std::string>();
  }
  if (j.contains("pool_variables")) c.pool_variables = get_strings(j["pool_variables"], "pool_variables");
  if (j.contains("bounds")) c.default_bounds = bounds_from_json(j["bounds"]);
  try {
    c.validate();
  } catch (const Error& e) {
    field_error("calculus", e.what());
  }
  return c;
}

inline json calculus_to_json(const Calculus& c) {
  json j;
  j["name"] = c.name;
  j["language"] = alphabet_to_json(c.alphabet);
  json axioms = json::array();
  for (const auto& a : c.axioms) axioms.push_back(a.text());
  j["axioms"] = axioms;
  json schemata = json::array();
  for (const auto& s : c.schemata) {
    if (s.kind == SchemaKind::existential_substitution) {
      schemata.push_back(json{{"id", s.id}, {"kind", "existential_substitution"}});
      continue;
    }
    schemata.push_back(json{{"id", s.id}, {"pattern", s.pattern.text()}, {"metavariables", s.metavariables}});
  }
  j["schemata"] = schemata;
  json rules = json::array();
  for (const auto& r : c.rules.rules()) rules.push_back(r.id());
  j["rules"] = rules;
  j["schema_mode"] = c.schema_mode == SchemaMode::on_demand ? "on_demand" : "substitution_rule";
  if (!c.pool_variables.empty()) j["pool_variables"] = c.pool_variables;
  if (c.default_bounds) j["bounds"] = bounds_to_json(*c.default_bounds);
  return j;
}

// A path, or builtin:<name>.
inline Calculus load_calculus(const std::string& path) {
  constexpr std::string_view prefix = "builtin:";
  if (path.rfind(prefix, 0) == 0) return builtin_calculus(path.substr(prefix.size()));
  std::ifstream in(path);
  if (!in) throw Error("cannot open calculus file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("calculus file '" + path + "': " + e.what());
  }
  return calculus_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports

inline json report_header(const std::string& command) {
  return json{{"schema", kReportSchema}, {"version", kReportVersion}, {"command", command}};
}

inline json assignment_to_json(const MetaAssignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a.formulas) j[k] = v.text();
  for (const auto& [k, v] : a.terms) j[k] = v.text();
  return j;
}

inline json justification_to_json(const Justification& jf) {
  json j{{"kind", std::string(to_string(jf.kind))}};
  if (!jf.label.empty()) j["label"] = jf.label;
  if (jf.kind == Justification::Kind::schema_instance) j["assignment"] = assignment_to_json(jf.assignment);
  if (jf.kind == Justification::Kind::rule) {
    json ps = json::array();
    for (auto p : jf.premises) ps.push_back(p + 1);
    j["premises"] = ps;
  }
  return j;
}

inline json derivation_to_json(const Derivation& d) {
  json nodes = json::array();
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    nodes.push_back(json{{"index", i + 1},
                         {"formula", d.nodes[i].formula.text()},
                         {"stage", d.nodes[i].stage},
                         {"justification", justification_to_json(d.nodes[i].justification)}});
  return nodes;
}

inline json body_to_json(const BoundedBody& body) {
  json theorems = json::array();
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto& t = body.theorems()[i];
    theorems.push_back(json{{"index", i + 1},
                            {"formula", t.formula.text()},
                            {"stage", t.stage},
                            {"justification", justification_to_json(t.justification)}});
  }
  json stages = json::array();
  for (std::size_t n = 1; n <= body.stage_count(); ++n) stages.push_back(body.stage(n).size());
  json usage = json::object();
  for (const auto& [k, v] : body.rule_usage()) usage[k] = v;
  return json{{"status", std::string(to_string(body.status()))},
              {"size", body.size()},
              {"stage_sizes", stages},
              {"rule_usage", usage},
              {"theorems", theorems}};
}

inline BodyStatus body_status_from_string(std::string_view s) {
  for (auto st : {BodyStatus::saturated, BodyStatus::stage_cap_hit, BodyStatus::budget_exceeded})
    if (to_string(st) == s) return st;
  throw Error("unknown body status '" + std::string(s) + "'");
}

// Reads the theorem list and status of an enum-body machine report.
inline BodySnapshot body_snapshot_from_report(const json& report, const Alphabet& alphabet) {
  if (!report.is_object() || report.value("schema", "") != kReportSchema)
    throw Error("body report: not a " + std::string(kReportSchema) + " document");
  if (report.value("version", 0) != kReportVersion) throw Error("body report: unsupported version");
  if (!report.contains("body")) throw Error("body report: missing 'body'");
  const json& body = report["body"];
  BodySnapshot snap;
  snap.status = body_status_from_string(body.at("status").get<std::string>());
  for (const auto& t : body.at("theorems")) snap.formulas.push_back(parse_formula(t.at("formula").get<std::string>(), alphabet));
  return snap;
}

inline json verdict_to_json(const Verdict& v) {
  json j{{"verdict", std::string(to_string(v.outcome))}, {"summary", v.summary}};
  if (v.witness) j["witness"] = *v.witness;
  if (!v.details.empty()) j["details"] = v.details;
  return j;
}

inline std::string verdict_text(const Verdict& v) {
  std::string out = std::string(to_string(v.outcome)) + ": " + v.summary + "\n";
  if (v.witness) out += "witness: " + *v.witness + "\n";
  for (const auto& d : v.details) out += "  " + d + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Relation files: a header line, then one JSON object per pair.

inline void write_relation(std::ostream& os, const FiniteRelation& r) {
  os << json{{"format", kRelationFormat}, {"version", 1}}.dump() << "\n";
  for (const auto& p : r.pairs()) {
    json premises = json::array();
    for (const auto& t : p.premises) premises.push_back(t);
    os << json{{"premises", premises}, {"conclusion", p.conclusion}}.dump() << "\n";
  }
}

inline FiniteRelation read_relation(std::istream& is) {
  std::string line;
  std::size_t n = 0;
  FiniteRelation r;
  bool header = false;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    const std::string where = "relation line " + std::to_string(n) + ": ";
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(where + e.what());
    }
    if (!header) {
      if (!j.is_object() || j.value("format", "") != kRelationFormat || j.value("version", 0) != 1)
        throw Error(where + "expected the relation header");
      header = true;
      continue;
    }
    detail::reject_unknown(j, where.substr(0, where.size() - 2), {"premises", "conclusion"});
    if (!j.contains("premises") || !j.contains("conclusion")) throw Error(where + "expected premises and conclusion");
    PremiseTokens s;
    for (const auto& t : detail::get_strings(j["premises"], "premises"))
      if (!s.insert(t).second) throw Error(where + "duplicate premise '" + t + "'");
    r.add(std::move(s), detail::get_string(j["conclusion"], "conclusion"));
  }
  if (!header) throw Error("relation file: missing header");
  return r;
}

inline std::string relation_text(const FiniteRelation& r) {
  std::ostringstream os;
  write_relation(os, r);
  return os.str();
}

}  // namespace metalogic::io
