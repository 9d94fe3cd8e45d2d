#pragma once

#include <array>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "metalogic/alphabet.hpp"
#include "metalogic/formula.hpp"

namespace metalogic {

enum class ParseMode : std::uint8_t {
  // Accepts the fully parenthesized grammar and precedence input
  // (~ > & > | > -> > <->; -> and <-> associate to the right).
  precedence,
  // Accepts exactly the fully parenthesized wff grammar: every binary
  // connective sits in its own pair of delimiters, nothing else does.
  canonical,
};

struct ParseOptions {
  ParseMode mode = ParseMode::precedence;
  // Identifiers parsed as schema metavariables.
  std::set<std::string> metavariables;
};

namespace detail {

enum class Tok : std::uint8_t { ident, neg, conj, disj, imp, iff, lparen, rparen, lbrack, rbrack, comma, eq, forall, exists, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s) {
  struct Sym {
    std::string_view text;
    Tok kind;
  };
  // Longest spellings first.
  static const std::array<Sym, 23> symbols{{
      {"<->", Tok::iff}, {"->", Tok::imp}, {"=>", Tok::imp}, {"↔", Tok::iff}, {"→", Tok::imp},
      {"⊃", Tok::imp},   {"¬", Tok::neg},  {"∼", Tok::neg},  {"~", Tok::neg},  {"∧", Tok::conj},
      {"&", Tok::conj},  {"∨", Tok::disj}, {"|", Tok::disj}, {"(", Tok::lparen}, {")", Tok::rparen},
      {"[", Tok::lbrack}, {"]", Tok::rbrack}, {",", Tok::comma}, {"=", Tok::eq}, {"∀", Tok::forall},
      {"∃", Tok::exists}, {"⇒", Tok::imp}, {"≡", Tok::iff},
  }};
  static const std::array<std::pair<std::string_view, std::string_view>, 3> greek{{
      {"φ", "phi"}, {"χ", "chi"}, {"ψ", "psi"},
  }};

  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word(s.substr(i, j - i));
      // Primes: ASCII apostrophe or U+2032.
      while (j < s.size()) {
        if (s[j] == '\'') {
          word += '\'';
          ++j;
        } else if (s.substr(j).starts_with("′")) {
          word += '\'';
          j += std::string_view("′").size();
        } else {
          break;
        }
      }
      if (word == "forall")
        out.push_back({Tok::forall, word, i});
      else if (word == "exists")
        out.push_back({Tok::exists, word, i});
      else
        out.push_back({Tok::ident, word, i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [text, name] : greek) {
      if (s.substr(i).starts_with(text)) {
        out.push_back({Tok::ident, std::string(name), i});
        i += text.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (const auto& sym : symbols) {
      if (s.substr(i).starts_with(sym.text)) {
        out.push_back({sym.kind, std::string(sym.text), i});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("unknown symbol '" + std::string(1, s[i]) + "'", i);
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet, const ParseOptions& opts)
      : toks_(tokenize(text)), alphabet_(alphabet), opts_(opts) {}

  Formula parse() {
    Formula f = opts_.mode == ParseMode::canonical ? unary() : iff();
    const Token& t = peek();
    if (t.kind != Tok::end) {
      if (t.kind == Tok::rparen || t.kind == Tok::rbrack) throw ParseError("unbalanced delimiter", t.pos);
      throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
    return f;
  }

  Term parse_term() {
    Term t = term();
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::end) ++pos_;
    return t;
  }

  void require_connective(Connective c, const Token& t) const {
    if (!alphabet_.has(c))
      throw ParseError("connective '" + std::string(connective_symbol(c)) + "' not in alphabet", t.pos);
  }

  static std::optional<FormulaKind> binary_kind(Tok k) {
    switch (k) {
      case Tok::conj: return FormulaKind::conjunction;
      case Tok::disj: return FormulaKind::disjunction;
      case Tok::imp: return FormulaKind::implication;
      case Tok::iff: return FormulaKind::biconditional;
      default: return std::nullopt;
    }
  }

  Formula make_binary(FormulaKind k, const Token& op, Formula l, Formula r) {
    require_connective(*connective_of(k), op);
    return Formula::binary(k, std::move(l), std::move(r));
  }

  Formula iff() {
    Formula l = imp();
    if (peek().kind == Tok::iff) {
      const Token op = next();
      return make_binary(FormulaKind::biconditional, op, std::move(l), iff());
    }
    return l;
  }

  Formula imp() {
    Formula l = disj();
    if (peek().kind == Tok::imp) {
      const Token op = next();
      return make_binary(FormulaKind::implication, op, std::move(l), imp());
    }
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (peek().kind == Tok::disj) {
      const Token op = next();
      l = make_binary(FormulaKind::disjunction, op, std::move(l), conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (peek().kind == Tok::conj) {
      const Token op = next();
      l = make_binary(FormulaKind::conjunction, op, std::move(l), unary());
    }
    return l;
  }

  Formula unary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::neg:
        next();
        require_connective(Connective::negation, t);
        return Formula::negation(unary());
      case Tok::forall:
      case Tok::exists: {
        next();
        if (alphabet_.kind != AlphabetKind::first_order)
          throw ParseError("quantifier in propositional language", t.pos);
        const Quantifier q = t.kind == Tok::forall ? Quantifier::forall : Quantifier::exists;
        if (!alphabet_.has(q)) throw ParseError("quantifier not in alphabet", t.pos);
        const Token v = next();
        if (v.kind != Tok::ident || !alphabet_.is_individual_variable(v.text))
          throw ParseError("expected individual variable after quantifier", v.pos);
        return Formula::quantified(q == Quantifier::forall ? FormulaKind::forall : FormulaKind::exists, v.text,
                                   unary());
      }
      case Tok::lparen:
      case Tok::lbrack: {
        next();
        Formula inner = opts_.mode == ParseMode::canonical ? canonical_binary() : iff();
        close(t);
        return inner;
      }
      case Tok::ident:
        return primary();
      case Tok::end:
        throw ParseError("expected operand", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  Formula canonical_binary() {
    Formula l = unary();
    const Token op = next();
    auto k = binary_kind(op.kind);
    if (!k) {
      if (op.kind == Tok::end) throw ParseError("unbalanced delimiter", op.pos);
      throw ParseError("expected binary connective", op.pos);
    }
    return make_binary(*k, op, std::move(l), unary());
  }

  void close(const Token& open) {
    const Token& t = peek();
    const Tok want = open.kind == Tok::lparen ? Tok::rparen : Tok::rbrack;
    if (t.kind == want) {
      next();
      return;
    }
    if (t.kind == Tok::end || t.kind == Tok::rparen || t.kind == Tok::rbrack)
      throw ParseError("unbalanced delimiter", t.kind == Tok::end ? open.pos : t.pos);
    throw ParseError("unexpected '" + t.text + "'", t.pos);
  }

  Formula primary() {
    const Token t = next();
    const std::string& name = t.text;
    if (opts_.metavariables.count(name)) return Formula::metavariable(name);
    if (alphabet_.is_variable(name)) return Formula::atom(name);
    if (alphabet_.is_falsum(name)) return Formula::falsum(name);
    if (auto ar = alphabet_.predicate_arity(name)) {
      std::vector<Term> args;
      if (*ar > 0 || peek().kind == Tok::lparen) args = term_args(t);
      if (args.size() != *ar) throw ParseError("arity mismatch for predicate '" + name + "'", t.pos);
      return Formula::predicate(name, std::move(args));
    }
    if (alphabet_.is_individual_variable(name) || alphabet_.function_arity(name)) {
      --pos_;
      Term lhs = term();
      const Token eq = next();
      if (eq.kind != Tok::eq) throw ParseError("expected '=' after term", eq.pos);
      if (!alphabet_.equality) throw ParseError("equality not in alphabet", eq.pos);
      return Formula::equality(std::move(lhs), term());
    }
    throw ParseError("unknown symbol '" + name + "'", t.pos);
  }

  std::vector<Term> term_args(const Token& head) {
    const Token open = next();
    if (open.kind != Tok::lparen) throw ParseError("arity mismatch for '" + head.text + "'", open.pos);
    std::vector<Term> args;
    if (peek().kind == Tok::rparen) {
      next();
      return args;
    }
    for (;;) {
      args.push_back(term());
      const Token sep = next();
      if (sep.kind == Tok::rparen) break;
      if (sep.kind != Tok::comma) {
        if (sep.kind == Tok::end) throw ParseError("unbalanced delimiter", open.pos);
        throw ParseError("expected ',' or ')'", sep.pos);
      }
    }
    return args;
  }

  Term term() {
    const Token t = next();
    if (t.kind != Tok::ident) throw ParseError("expected term", t.pos);
    if (alphabet_.is_individual_variable(t.text)) return Term::variable(t.text);
    auto ar = alphabet_.function_arity(t.text);
    if (!ar) throw ParseError("unknown symbol '" + t.text + "'", t.pos);
    std::vector<Term> args;
    if (*ar > 0 || peek().kind == Tok::lparen) args = term_args(t);
    if (args.size() != *ar) throw ParseError("arity mismatch for function '" + t.text + "'", t.pos);
    return Term::function(t.text, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Alphabet& alphabet_;
  const ParseOptions& opts_;
};

}  // namespace detail

// Decides wff-hood: returns the formula or throws ParseError with the
// offending position.
inline Formula parse_formula(std::string_view text, const Alphabet& alphabet, const ParseOptions& opts = {}) {
  return detail::Parser(text, alphabet, opts).parse();
}

inline Term parse_term(std::string_view text, const Alphabet& alphabet) {
  ParseOptions opts;
  return detail::Parser(text, alphabet, opts).parse_term();
}

inline bool is_wff(std::string_view text, const Alphabet& alphabet, ParseMode mode = ParseMode::precedence) {
  try {
    ParseOptions opts;
    opts.mode = mode;
    parse_formula(text, alphabet, opts);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

}  // namespace metalogic
