#pragma once

#include <string>
#include <variant>
#include <vector>

#include "metalogic/alphabet.hpp"
#include "metalogic/formula.hpp"
#include "metalogic/parser.hpp"

namespace metalogic {

inline constexpr std::size_t kDefaultEnumerationCeiling = 2'000'000;

// Produces the wffs of an alphabet bucket by bucket, ordered by size and then
// canonical text. Buckets are built from smaller ones with the formation
// rules: atoms, negation, binary connectives, quantifiers.
class WffEnumerator {
 public:
  explicit WffEnumerator(Alphabet alphabet, std::size_t ceiling = kDefaultEnumerationCeiling)
      : alphabet_(std::move(alphabet)), ceiling_(ceiling) {
    formulas_.emplace_back();  // size 0 is empty
    terms_.emplace_back();
  }

  // Wffs of exactly the given size. Throws BudgetExceeded when the running
  // total would pass the ceiling.
  const std::vector<Formula>& of_size(std::size_t size) {
    while (formulas_.size() <= size) build_next();
    return formulas_[size];
  }

  std::size_t produced() const noexcept { return total_; }

 private:
  const std::vector<Term>& terms_of_size(std::size_t size) {
    while (terms_.size() <= size) {
      const std::size_t s = terms_.size();
      std::vector<Term> bucket;
      if (alphabet_.kind == AlphabetKind::first_order) {
        if (s == 1) {
          for (const auto& v : alphabet_.individual_variables) bucket.push_back(Term::variable(v));
          for (const auto& [f, ar] : alphabet_.functions)
            if (ar == 0) bucket.push_back(Term::constant(f));
        } else {
          for (const auto& [f, ar] : alphabet_.functions) {
            if (ar == 0) continue;
            for (auto& args : term_tuples(ar, s - 1)) bucket.push_back(Term::function(f, std::move(args)));
          }
        }
      }
      std::sort(bucket.begin(), bucket.end(), [](const Term& a, const Term& b) { return a.text() < b.text(); });
      terms_.push_back(std::move(bucket));
    }
    return terms_[size];
  }

  // All tuples of `arity` terms whose sizes add up to `total`.
  std::vector<std::vector<Term>> term_tuples(std::size_t arity, std::size_t total) {
    std::vector<std::vector<Term>> out;
    if (arity == 0) {
      if (total == 0) out.emplace_back();
      return out;
    }
    if (total < arity) return out;
    for (std::size_t first = 1; first + (arity - 1) <= total; ++first) {
      const auto& heads = terms_of_size(first);
      if (heads.empty()) continue;
      auto tails = term_tuples(arity - 1, total - first);
      for (const auto& h : heads)
        for (const auto& t : tails) {
          std::vector<Term> tuple;
          tuple.reserve(arity);
          tuple.push_back(h);
          tuple.insert(tuple.end(), t.begin(), t.end());
          out.push_back(std::move(tuple));
        }
    }
    return out;
  }

  void push(std::vector<Formula>& bucket, Formula f) {
    if (++total_ > ceiling_)
      throw BudgetExceeded("wff enumeration exceeds ceiling of " + std::to_string(ceiling_));
    bucket.push_back(std::move(f));
  }

  void build_next() {
    const std::size_t s = formulas_.size();
    std::vector<Formula> bucket;
    if (s == 1) {
      for (const auto& v : alphabet_.variables) push(bucket, Formula::atom(v));
      if (alphabet_.falsum) push(bucket, Formula::falsum(*alphabet_.falsum));
    }
    if (alphabet_.kind == AlphabetKind::first_order) {
      for (const auto& [p, ar] : alphabet_.predicates) {
        if (ar == 0) {
          if (s == 1) push(bucket, Formula::predicate(p));
          continue;
        }
        for (auto& args : term_tuples(ar, s - 1)) push(bucket, Formula::predicate(p, std::move(args)));
      }
      if (alphabet_.equality && s >= 3)
        for (auto& args : term_tuples(2, s - 1)) push(bucket, Formula::equality(args[0], args[1]));
    }
    if (s >= 2) {
      const auto& smaller = formulas_[s - 1];
      if (alphabet_.has(Connective::negation))
        for (const auto& f : smaller) push(bucket, Formula::negation(f));
      if (alphabet_.kind == AlphabetKind::first_order) {
        for (const auto q : alphabet_.quantifiers)
          for (const auto& v : alphabet_.individual_variables)
            for (const auto& f : smaller)
              push(bucket, Formula::quantified(q == Quantifier::forall ? FormulaKind::forall : FormulaKind::exists,
                                               v, f));
      }
    }
    if (s >= 3) {
      for (const auto c : alphabet_.connectives) {
        if (c == Connective::negation) continue;
        for (std::size_t ls = 1; ls + 1 < s; ++ls) {
          const auto& left = formulas_[ls];
          const auto& right = formulas_[s - 1 - ls];
          for (const auto& l : left)
            for (const auto& r : right) push(bucket, Formula::binary(kind_of(c), l, r));
        }
      }
    }
    std::sort(bucket.begin(), bucket.end());
    formulas_.push_back(std::move(bucket));
  }

  Alphabet alphabet_;
  std::size_t ceiling_;
  std::size_t total_ = 0;
  std::vector<std::vector<Formula>> formulas_;
  std::vector<std::vector<Term>> terms_;
};

// Production mode: every wff of size <= max_size, size-lexicographic order.
inline std::vector<Formula> enumerate_wffs(const Alphabet& alphabet, std::size_t max_size,
                                           std::size_t ceiling = kDefaultEnumerationCeiling) {
  if (max_size < 1) throw Error("enumerate_wffs: max_size must be at least 1");
  WffEnumerator gen(alphabet, ceiling);
  std::vector<Formula> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    const auto& b = gen.of_size(s);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

// A language given either by an explicit finite word list (demonstrative)
// or by an alphabet plus formation rules (constructive).
class LanguageDefinition {
 public:
  struct Demonstrative {
    std::vector<std::string> words;
  };
  struct Constructive {
    Alphabet alphabet;
  };

  static LanguageDefinition demonstrative(std::vector<std::string> words) {
    std::set<std::string> seen;
    for (const auto& w : words)
      if (!seen.insert(w).second) throw Error("demonstrative language: duplicate word '" + w + "'");
    return LanguageDefinition(Demonstrative{std::move(words)});
  }
  static LanguageDefinition constructive(Alphabet alphabet) {
    alphabet.validate();
    return LanguageDefinition(Constructive{std::move(alphabet)});
  }

  bool is_demonstrative() const { return std::holds_alternative<Demonstrative>(def_); }

  // Decision mode.
  bool accepts(std::string_view word) const {
    if (auto* d = std::get_if<Demonstrative>(&def_))
      return std::find(d->words.begin(), d->words.end(), word) != d->words.end();
    return is_wff(word, std::get<Constructive>(def_).alphabet);
  }

  // Production mode, truncated at max_size for constructive definitions.
  std::vector<std::string> produce(std::size_t max_size) const {
    if (auto* d = std::get_if<Demonstrative>(&def_)) return d->words;
    std::vector<std::string> out;
    for (const auto& f : enumerate_wffs(std::get<Constructive>(def_).alphabet, max_size)) out.push_back(f.text());
    return out;
  }

  const Alphabet* alphabet() const {
    if (auto* c = std::get_if<Constructive>(&def_)) return &c->alphabet;
    return nullptr;
  }

 private:
  explicit LanguageDefinition(std::variant<Demonstrative, Constructive> d) : def_(std::move(d)) {}
  std::variant<Demonstrative, Constructive> def_;
};

}  // namespace metalogic
