#include <gtest/gtest.h>

#include <random>

#include "metalogic/metalogic.hpp"
#include "oracles.hpp"

using namespace metalogic;

namespace {

Alphabet prop_pq() {
  return Alphabet::propositional({"P", "Q", "R"}, Alphabet::all_connectives());
}

Alphabet first_order() {
  Alphabet a;
  a.kind = AlphabetKind::first_order;
  a.connectives = Alphabet::all_connectives();
  a.functions = {{"a", 0}, {"g", 1}};
  a.predicates = {{"P", 1}, {"Q", 1}, {"R", 2}};
  a.quantifiers = {Quantifier::forall, Quantifier::exists};
  a.individual_variables = {"x", "y", "z"};
  a.equality = true;
  return a;
}

Formula P() { return Formula::atom("P"); }
Formula Q() { return Formula::atom("Q"); }
Formula R() { return Formula::atom("R"); }

}  // namespace

TEST(Parse, Conjunction) {
  EXPECT_EQ(parse_formula("(P & Q)", prop_pq()), Formula::conjunction(P(), Q()));
}

TEST(Parse, Atom) {
  const Formula f = parse_formula("P", prop_pq());
  EXPECT_TRUE(f.is(FormulaKind::atom));
  EXPECT_EQ(f.name(), "P");
}

TEST(Parse, LoneNegationIsAnError) {
  EXPECT_THROW(parse_formula("~", prop_pq()), ParseError);
}

TEST(Parse, UniversalQuantifier) {
  const auto a = first_order();
  const Term x = Term::variable("x");
  const Formula expected = Formula::forall(
      "x", Formula::implication(Formula::predicate("P", {x}), Formula::predicate("Q", {x})));
  EXPECT_EQ(parse_formula("forall x (P(x) -> Q(x))", a), expected);
  EXPECT_EQ(parse_formula("∀x (P(x) → Q(x))", a), expected);
}

TEST(Parse, ErrorsCarryPositions) {
  const auto a = prop_pq();
  try {
    parse_formula("(P & $)", a);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_formula("(P & Q", a), ParseError);
  EXPECT_THROW(parse_formula("P & Q)", a), ParseError);
  EXPECT_THROW(parse_formula("forall x P", a), ParseError);
  EXPECT_THROW(parse_formula("S", a), ParseError);
  EXPECT_THROW(parse_formula("R(x)", first_order()), ParseError);
  EXPECT_THROW(parse_formula("P(x, y)", first_order()), ParseError);
  EXPECT_THROW(parse_formula("P -> Q", Alphabet::propositional({"P", "Q"}, {Connective::conjunction})), ParseError);
}

TEST(Parse, Precedence) {
  const auto a = prop_pq();
  EXPECT_EQ(parse_formula("P & Q | R -> P", a).text(), "(((P & Q) | R) -> P)");
  EXPECT_EQ(parse_formula("P -> Q -> R", a).text(), "(P -> (Q -> R))");
  EXPECT_EQ(parse_formula("P <-> Q <-> R", a).text(), "(P <-> (Q <-> R))");
  EXPECT_EQ(parse_formula("~P & Q", a).text(), "(~P & Q)");
  EXPECT_EQ(parse_formula("¬¬P ∨ Q", a).text(), "(~~P | Q)");
}

TEST(Parse, CanonicalModeIsStrict) {
  const auto a = prop_pq();
  const ParseOptions strict{ParseMode::canonical, {}};
  EXPECT_NO_THROW(parse_formula("((P & Q) -> ~R)", a, strict));
  EXPECT_THROW(parse_formula("P & Q", a, strict), ParseError);
  EXPECT_THROW(parse_formula("(P)", a, strict), ParseError);
  EXPECT_THROW(parse_formula("(~P)", a, strict), ParseError);
}

TEST(Parse, ChurchBrackets) {
  const Calculus p1 = builtin_calculus("church_p1");
  const Formula f = parse_formula("[p ⊃ [q ⊃ p]]", p1.alphabet);
  EXPECT_EQ(f.text(), "(p -> (q -> p))");
  EXPECT_EQ(print_formula(f, Punctuation::brackets), "[p -> [q -> p]]");
  EXPECT_TRUE(parse_formula("[p ⊃ f]", p1.alphabet).rhs().is(FormulaKind::falsum));
}

TEST(Print, Examples) {
  EXPECT_EQ(print_formula(Formula::conjunction(P(), Q())), "(P & Q)");
  EXPECT_EQ(print_formula(P()), "P");
  EXPECT_EQ(print_formula(Formula::negation(Formula::negation(P()))), "~~P");
}

TEST(Size, CountsTermNodes) {
  const auto a = first_order();
  EXPECT_EQ(parse_formula("P(x)", a).size(), 2u);
  EXPECT_EQ(parse_formula("forall x R(x, g(y))", a).size(), 5u);
  EXPECT_EQ(parse_formula("(P -> (Q -> P))", prop_pq()).size(), 5u);
}

TEST(Enumerate, Examples) {
  const auto p_neg_and = Alphabet::propositional({"P"}, {Connective::negation, Connective::conjunction});
  EXPECT_EQ(enumerate_wffs(p_neg_and, 2), (std::vector<Formula>{P(), Formula::negation(P())}));
  const auto pq = Alphabet::propositional({"P", "Q"}, {Connective::negation});
  EXPECT_EQ(enumerate_wffs(pq, 1), (std::vector<Formula>{P(), Q()}));
  const auto p_neg = Alphabet::propositional({"P"}, {Connective::negation});
  EXPECT_EQ(enumerate_wffs(p_neg, 3),
            (std::vector<Formula>{P(), Formula::negation(P()), Formula::negation(Formula::negation(P()))}));
}

TEST(Enumerate, MatchesGrammarOracle) {
  const auto a = Alphabet::propositional({"P", "Q"}, {Connective::negation, Connective::conjunction,
                                                      Connective::implication});
  for (std::size_t n = 1; n <= 7; ++n) {
    std::set<std::string> got;
    for (const auto& f : enumerate_wffs(a, n)) got.insert(f.text());
    EXPECT_EQ(got, oracle::wff_strings({"P", "Q"}, {"&", "->"}, true, n)) << "size " << n;
  }
}

TEST(Enumerate, SizeLexicographicOrder) {
  const auto all = enumerate_wffs(prop_pq(), 5);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
}

TEST(Enumerate, CeilingIsReported) {
  EXPECT_THROW(enumerate_wffs(prop_pq(), 9, 1000), BudgetExceeded);
}

TEST(FreeVariables, Examples) {
  const auto a = first_order();
  EXPECT_EQ(free_variables(parse_formula("P(x)", a)), (std::set<std::string>{"x"}));
  EXPECT_TRUE(free_variables(parse_formula("forall x P(x)", a)).empty());
  EXPECT_EQ(free_variables(parse_formula("P(x) -> forall x Q(x)", a)), (std::set<std::string>{"x"}));
}

TEST(FreeVariables, AgreeWithOracle) {
  for (const auto& f : enumerate_wffs(first_order(), 5)) EXPECT_EQ(free_variables(f), oracle::free_vars(f)) << f.text();
}

TEST(SubstituteProp, Examples) {
  const Calculus p1 = builtin_calculus("church_p1");
  const auto& a = p1.alphabet;
  EXPECT_EQ(substitute_prop(parse_formula("[p ⊃ p]", a), "p", parse_formula("[q ⊃ f]", a)),
            parse_formula("[[q ⊃ f] ⊃ [q ⊃ f]]", a));
  const Formula phi = parse_formula("(P -> (Q & ~P))", prop_pq());
  EXPECT_EQ(substitute_prop(phi, "P", P()), phi);
  EXPECT_EQ(substitute_prop(P(), "Q", R()), P());
}

TEST(SubstituteTerm, Examples) {
  const auto a = first_order();
  EXPECT_EQ(substitute_term(parse_formula("P(x)", a), "x", Term::constant("a")), parse_formula("P(a)", a));
  const Formula bound = parse_formula("forall x P(x)", a);
  EXPECT_EQ(substitute_term(bound, "x", Term::constant("a")), bound);
}

TEST(SubstituteTerm, AvoidsCapture) {
  const auto a = first_order();
  const Term gy = Term::function("g", {Term::variable("y")});
  const Formula out = substitute_term(parse_formula("exists y R(x, y)", a), "x", gy);
  ASSERT_TRUE(out.is(FormulaKind::exists));
  EXPECT_EQ(out.name(), "y'");
  EXPECT_EQ(out.text(), "exists y' R(g(y), y')");
  EXPECT_EQ(oracle::free_vars(out), (std::set<std::string>{"y"}));
}

TEST(Schema, MatchExamples) {
  const Calculus k = builtin_calculus("kleene");
  const Schema& k1 = k.schemata[0];
  auto sigma = match_schema(k1, parse_formula("(P -> (Q -> P))", k.alphabet));
  ASSERT_TRUE(sigma);
  EXPECT_EQ(*sigma->find("phi"), P());
  EXPECT_EQ(*sigma->find("chi"), Q());
  EXPECT_FALSE(match_schema(k1, parse_formula("(P -> (Q -> R))", k.alphabet)));
  const Schema bare = Schema::parse("bare", "phi", {"phi"}, k.alphabet);
  const Formula any = parse_formula("(P & ~Q)", k.alphabet);
  EXPECT_EQ(*match_schema(bare, any)->find("phi"), any);
}

TEST(Schema, NoMatchAgreesWithExhaustiveSearch) {
  const Calculus k = builtin_calculus("kleene");
  const Formula f = parse_formula("(P -> (Q -> R))", k.alphabet);
  const auto subs = subformulas(f);
  for (const auto& phi : subs)
    for (const auto& chi : subs) {
      MetaAssignment s;
      s.formulas.emplace("phi", phi);
      s.formulas.emplace("chi", chi);
      EXPECT_NE(instantiate_schema(k.schemata[0], s), f);
    }
}

TEST(Schema, InstantiateExamples) {
  const Calculus k = builtin_calculus("kleene");
  MetaAssignment s;
  s.formulas.emplace("phi", P());
  s.formulas.emplace("chi", Q());
  EXPECT_EQ(instantiate_schema(k.schemata[0], s).text(), "(P -> (Q -> P))");
  MetaAssignment t;
  t.formulas.emplace("phi", P());
  EXPECT_EQ(instantiate_schema(k.schemata[9], t).text(), "(~~P -> P)");
  EXPECT_EQ(instantiate_schema(Schema::parse("bare", "phi", {"phi"}, k.alphabet), t), P());
  EXPECT_THROW(instantiate_schema(k.schemata[0], t), Error);
}

TEST(Schema, UnlistedMetavariableRejected) {
  EXPECT_THROW(Schema::parse("bad", "phi -> chi", {"phi"}, prop_pq()), Error);
}

TEST(Alphabet, Invariants) {
  Alphabet clash = Alphabet::propositional({"P", "P"}, {Connective::negation});
  EXPECT_THROW(clash.validate(), Error);
  Alphabet quant = prop_pq();
  quant.quantifiers = {Quantifier::forall};
  EXPECT_THROW(quant.validate(), Error);
  Alphabet fo = first_order();
  fo.functions["P"] = 1;
  EXPECT_THROW(fo.validate(), Error);
}

TEST(Language, DemonstrativeAndConstructive) {
  EXPECT_THROW(LanguageDefinition::demonstrative({"a", "a"}), Error);
  const auto d = LanguageDefinition::demonstrative({"a", "b"});
  EXPECT_TRUE(d.accepts("a"));
  EXPECT_FALSE(d.accepts("c"));
  const auto c = LanguageDefinition::constructive(Alphabet::propositional({"P"}, {Connective::negation}));
  EXPECT_TRUE(c.accepts("~~P"));
  EXPECT_FALSE(c.accepts("~"));
  EXPECT_EQ(c.produce(2), (std::vector<std::string>{"P", "~P"}));
}

// ---------------------------------------------------------------------------
// Properties

TEST(Property, RoundTripUpToSize9) {
  const auto a = Alphabet::propositional({"P", "Q"}, {Connective::negation, Connective::conjunction,
                                                      Connective::implication});
  const auto all = enumerate_wffs(a, 9);
  ASSERT_GT(all.size(), 10000u);
  for (const auto& w : all) ASSERT_EQ(parse_formula(print_formula(w), a, {ParseMode::canonical, {}}), w);
  for (const auto& w : enumerate_wffs(first_order(), 5)) ASSERT_EQ(parse_formula(print_formula(w), first_order()), w);
}

namespace {
std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}
}  // namespace

TEST(Property, AcceptanceMatchesProduction) {
  const auto a = Alphabet::propositional({"P"}, {Connective::negation, Connective::conjunction});
  constexpr std::size_t kMaxLength = 12;
  std::set<std::string> produced;
  for (const auto& w : enumerate_wffs(a, kMaxLength)) {
    const std::string s = strip_spaces(print_formula(w));
    if (s.size() <= kMaxLength) produced.insert(s);
  }
  const std::string symbols = "P~&()";
  auto accepted = [&](const std::string& s) { return is_wff(s, a, ParseMode::canonical); };
  // Exhaustive up to length 9.
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= 9; ++len) {
    std::vector<std::string> next;
    for (const auto& s : layer) {
      ASSERT_EQ(accepted(s), produced.count(s) > 0) << "'" << s << "'";
      if (len < 9)
        for (char c : symbols) next.push_back(s + c);
    }
    layer = std::move(next);
  }
  // Lengths 10 to 12: every produced string parses; random strings agree.
  for (const auto& s : produced) ASSERT_TRUE(accepted(s)) << s;
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> len(10, kMaxLength), sym(0, symbols.size() - 1);
  for (int i = 0; i < 20000; ++i) {
    std::string s(len(rng), ' ');
    for (auto& c : s) c = symbols[sym(rng)];
    ASSERT_EQ(accepted(s), produced.count(s) > 0) << "'" << s << "'";
  }
}

TEST(Property, SubstitutionCommutes) {
  std::mt19937 rng(7);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const Formula phi = oracle::random_formulas(rng, 1, 9)[0];
    const Formula psi = oracle::random_formulas(rng, 1, 5, {"P", "R"})[0];
    const Formula chi = oracle::random_formulas(rng, 1, 5, {"Q", "R"})[0];
    if (atoms_of(chi).count("P") || atoms_of(psi).count("Q")) continue;
    const Formula lhs = substitute_prop(substitute_prop(phi, "P", psi), "Q", chi);
    const Formula rhs = substitute_prop(substitute_prop(phi, "Q", chi), "P", psi);
    ASSERT_EQ(lhs, rhs);
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(Property, MatchInstantiateAdjunction) {
  const Calculus k = builtin_calculus("kleene");
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Schema& s = k.schemata[i % k.schemata.size()];
    MetaAssignment sigma;
    for (const auto& m : s.metavariables) sigma.formulas.emplace(m, oracle::random_formulas(rng, 1, 5)[0]);
    const Formula inst = instantiate_schema(s, sigma);
    const auto back = match_schema(s, inst);
    ASSERT_TRUE(back);
    for (const auto& m : s.metavariables) ASSERT_EQ(*back->find(m), *sigma.find(m));
    ASSERT_EQ(instantiate_schema(s, *back), inst);
  }
  for (const auto& f : enumerate_wffs(k.alphabet, 7))
    for (const auto& s : k.schemata)
      if (auto m = match_schema(s, f)) { ASSERT_EQ(instantiate_schema(s, *m), f); }
}

TEST(Property, GroundSubstitutionRemovesVariable) {
  const auto a = first_order();
  for (const Term& ground : {Term::constant("a"), Term::function("g", {Term::constant("a")})})
    for (const auto& f : enumerate_wffs(a, 5)) {
      auto expected = oracle::free_vars(f);
      expected.erase("x");
      ASSERT_EQ(free_variables(substitute_term(f, "x", ground)), expected) << f.text();
    }
}
