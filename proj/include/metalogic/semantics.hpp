#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "metalogic/formula.hpp"

namespace metalogic {

// Classical two-valued valuation of propositional atoms. Falsum constants
// are always False and need no entry.
using TruthAssignment = std::map<std::string, bool>;

inline constexpr std::size_t kMaxTruthTableAtoms = 20;

inline bool evaluate_prop(const Formula& f, const TruthAssignment& v) {
  switch (f.kind()) {
    case FormulaKind::atom: {
      auto it = v.find(f.name());
      if (it == v.end()) throw Error("evaluate_prop: unassigned atom '" + f.name() + "'");
      return it->second;
    }
    case FormulaKind::falsum: return false;
    case FormulaKind::negation: return !evaluate_prop(f.child(), v);
    case FormulaKind::conjunction: return evaluate_prop(f.lhs(), v) && evaluate_prop(f.rhs(), v);
    case FormulaKind::disjunction: return evaluate_prop(f.lhs(), v) || evaluate_prop(f.rhs(), v);
    case FormulaKind::implication: return !evaluate_prop(f.lhs(), v) || evaluate_prop(f.rhs(), v);
    case FormulaKind::biconditional: return evaluate_prop(f.lhs(), v) == evaluate_prop(f.rhs(), v);
    default:
      throw Error("evaluate_prop: not a propositional formula: " + f.text());
  }
}

namespace detail {
// Evaluates against a bit-packed row; atom i takes bit i.
inline bool eval_row(const Formula& f, const std::map<std::string, std::size_t>& slot, std::uint32_t row) {
  switch (f.kind()) {
    case FormulaKind::atom: return (row >> slot.at(f.name())) & 1U;
    case FormulaKind::falsum: return false;
    case FormulaKind::negation: return !eval_row(f.child(), slot, row);
    case FormulaKind::conjunction: return eval_row(f.lhs(), slot, row) && eval_row(f.rhs(), slot, row);
    case FormulaKind::disjunction: return eval_row(f.lhs(), slot, row) || eval_row(f.rhs(), slot, row);
    case FormulaKind::implication: return !eval_row(f.lhs(), slot, row) || eval_row(f.rhs(), slot, row);
    case FormulaKind::biconditional: return eval_row(f.lhs(), slot, row) == eval_row(f.rhs(), slot, row);
    default:
      throw Error("truth table: not a propositional formula: " + f.text());
  }
}

inline std::map<std::string, std::size_t> atom_slots(const Formula& f) {
  const auto atoms = atoms_of(f);
  if (atoms.size() > kMaxTruthTableAtoms)
    throw Error("truth table: " + std::to_string(atoms.size()) + " atoms exceeds the limit of " +
                std::to_string(kMaxTruthTableAtoms));
  std::map<std::string, std::size_t> slot;
  for (const auto& a : atoms) slot.emplace(a, slot.size());
  return slot;
}
}  // namespace detail

// True iff every row of the truth table evaluates to True.
inline bool is_tautology(const Formula& f) {
  const auto slot = detail::atom_slots(f);
  const std::uint32_t rows = 1U << slot.size();
  for (std::uint32_t r = 0; r < rows; ++r)
    if (!detail::eval_row(f, slot, r)) return false;
  return true;
}

inline bool is_satisfiable(const Formula& f) {
  const auto slot = detail::atom_slots(f);
  const std::uint32_t rows = 1U << slot.size();
  for (std::uint32_t r = 0; r < rows; ++r)
    if (detail::eval_row(f, slot, r)) return true;
  return false;
}

inline bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::falsum: return true;
    case FormulaKind::negation:
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
    case FormulaKind::biconditional:
      return std::all_of(f.children().begin(), f.children().end(), is_propositional);
    default: return false;
  }
}

}  // namespace metalogic
