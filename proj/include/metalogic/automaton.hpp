#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "metalogic/formula.hpp"

namespace metalogic {

using State = std::size_t;

struct Transition {
  static constexpr int kEpsilon = -1;
  State from = 0;
  int symbol = kEpsilon;  // byte value, or kEpsilon
  State to = 0;

  bool epsilon() const noexcept { return symbol == kEpsilon; }
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

class EpsilonNFA {
 public:
  EpsilonNFA() = default;
  explicit EpsilonNFA(std::size_t states, State start = 0) : states_(states), start_(start), adj_(states) {
    validate();
  }

  std::size_t state_count() const noexcept { return states_; }
  State start() const noexcept { return start_; }
  const std::set<State>& accepting() const noexcept { return accepting_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  State add_state() {
    adj_.emplace_back();
    return states_++;
  }
  void set_start(State s) {
    check_state(s);
    start_ = s;
  }
  void add_accepting(State s) {
    check_state(s);
    accepting_.insert(s);
  }
  void add_transition(State from, int symbol, State to) {
    check_state(from);
    check_state(to);
    if (symbol != Transition::kEpsilon && (symbol < 0 || symbol > 255))
      throw Error("automaton: symbol out of byte range");
    transitions_.push_back(Transition{from, symbol, to});
    adj_[from].push_back(transitions_.back());
  }
  void add_epsilon(State from, State to) { add_transition(from, Transition::kEpsilon, to); }

  std::set<char> input_alphabet() const {
    std::set<char> out;
    for (const auto& t : transitions_)
      if (!t.epsilon()) out.insert(static_cast<char>(t.symbol));
    return out;
  }

  // No two transitions share (state, symbol) among non-epsilon moves.
  bool deterministic_on_symbols() const {
    std::set<std::pair<State, int>> seen;
    for (const auto& t : transitions_)
      if (!t.epsilon() && !seen.emplace(t.from, t.symbol).second) return false;
    return true;
  }

  std::set<State> epsilon_closure(std::set<State> s) const {
    std::vector<State> todo(s.begin(), s.end());
    while (!todo.empty()) {
      const State q = todo.back();
      todo.pop_back();
      for (const auto& t : outgoing(q))
        if (t.epsilon() && s.insert(t.to).second) todo.push_back(t.to);
    }
    return s;
  }

  std::set<State> step(const std::set<State>& s, char c) const {
    std::set<State> out;
    for (State q : s)
      for (const auto& t : outgoing(q))
        if (t.symbol == static_cast<unsigned char>(c)) out.insert(t.to);
    return epsilon_closure(std::move(out));
  }

  void validate() const {
    if (states_ > 0 && start_ >= states_) throw Error("automaton: start state out of range");
    for (auto s : accepting_) check_state(s);
    for (const auto& t : transitions_) {
      check_state(t.from);
      check_state(t.to);
    }
  }

  friend bool operator==(const EpsilonNFA& a, const EpsilonNFA& b) {
    auto ta = a.transitions_;
    auto tb = b.transitions_;
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return a.states_ == b.states_ && a.start_ == b.start_ && a.accepting_ == b.accepting_ && ta == tb;
  }

 private:
  const std::vector<Transition>& outgoing(State q) const { return adj_[q]; }
  void check_state(State s) const {
    if (s >= states_) throw Error("automaton: state " + std::to_string(s) + " out of range");
  }

  std::size_t states_ = 1;
  State start_ = 0;
  std::set<State> accepting_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<Transition>> adj_ = std::vector<std::vector<Transition>>(1);
};

namespace detail {
inline std::vector<std::string> printed_body(std::span<const Formula> body) {
  std::set<std::string> words;
  for (const auto& f : body) words.insert(print_formula(f));
  return {words.begin(), words.end()};
}
}  // namespace detail

// q0 with an epsilon move to the start of one linear chain per theorem;
// each chain accepts exactly the printed theorem.
inline EpsilonNFA build_body_automaton(std::span<const Formula> body) {
  EpsilonNFA nfa(1, 0);
  for (const auto& w : detail::printed_body(body)) {
    State q = nfa.add_state();
    nfa.add_epsilon(0, q);
    for (char c : w) {
      const State next = nfa.add_state();
      nfa.add_transition(q, static_cast<unsigned char>(c), next);
      q = next;
    }
    nfa.add_accepting(q);
  }
  return nfa;
}

// Prefix trie behind a single epsilon move from q0.
inline EpsilonNFA build_deterministic_body_automaton(std::span<const Formula> body) {
  EpsilonNFA nfa(1, 0);
  const auto words = detail::printed_body(body);
  if (words.empty()) return nfa;
  const State root = nfa.add_state();
  nfa.add_epsilon(0, root);
  std::map<std::pair<State, char>, State> child;
  for (const auto& w : words) {
    State q = root;
    for (char c : w) {
      auto it = child.find({q, c});
      if (it == child.end()) {
        const State next = nfa.add_state();
        nfa.add_transition(q, static_cast<unsigned char>(c), next);
        it = child.emplace(std::pair{q, c}, next).first;
      }
      q = it->second;
    }
    nfa.add_accepting(q);
  }
  return nfa;
}

inline bool nfa_accepts(const EpsilonNFA& nfa, std::string_view input) {
  auto current = nfa.epsilon_closure({nfa.start()});
  for (char c : input) {
    current = nfa.step(current, c);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](State q) { return nfa.accepting().count(q) > 0; });
}

// Accepted strings of length ≤ max_length, by breadth-first expansion of
// epsilon-closed state sets.
inline std::set<std::string> nfa_language_upto(const EpsilonNFA& nfa, std::size_t max_length) {
  std::set<std::string> out;
  const auto symbols = nfa.input_alphabet();
  std::vector<std::pair<std::string, std::set<State>>> frontier{{"", nfa.epsilon_closure({nfa.start()})}};
  for (std::size_t len = 0;; ++len) {
    std::vector<std::pair<std::string, std::set<State>>> next;
    for (const auto& [w, s] : frontier) {
      if (std::any_of(s.begin(), s.end(), [&](State q) { return nfa.accepting().count(q) > 0; })) out.insert(w);
      if (len == max_length) continue;
      for (char c : symbols) {
        auto t = nfa.step(s, c);
        if (!t.empty()) next.emplace_back(w + c, std::move(t));
      }
    }
    if (len == max_length || next.empty()) break;
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interchange format:
//   states N
//   start S
//   accepting S1 S2 ...
//   transition FROM SYMBOL TO
// SYMBOL is one character, "eps", "\s" (space) or "\\" (backslash).
// Lines starting with '#' are comments.

namespace detail {
inline std::string encode_symbol(int symbol) {
  if (symbol == Transition::kEpsilon) return "eps";
  const char c = static_cast<char>(symbol);
  if (c == ' ') return "\\s";
  if (c == '\\') return "\\\\";
  return std::string(1, c);
}

inline int decode_symbol(const std::string& tok, std::size_t line) {
  if (tok == "eps") return Transition::kEpsilon;
  if (tok == "\\s") return ' ';
  if (tok == "\\\\") return '\\';
  if (tok.size() == 1) return static_cast<unsigned char>(tok[0]);
  throw Error("automaton line " + std::to_string(line) + ": bad symbol '" + tok + "'");
}
}  // namespace detail

inline void write_automaton(std::ostream& os, const EpsilonNFA& nfa) {
  os << "states " << nfa.state_count() << "\n";
  os << "start " << nfa.start() << "\n";
  os << "accepting";
  for (auto s : nfa.accepting()) os << ' ' << s;
  os << "\n";
  auto ts = nfa.transitions();
  std::sort(ts.begin(), ts.end());
  for (const auto& t : ts) os << "transition " << t.from << ' ' << detail::encode_symbol(t.symbol) << ' ' << t.to << "\n";
}

inline std::string automaton_text(const EpsilonNFA& nfa) {
  std::ostringstream os;
  write_automaton(os, nfa);
  return os.str();
}

inline EpsilonNFA read_automaton(std::istream& is) {
  std::string raw;
  std::size_t line = 0;
  std::optional<EpsilonNFA> nfa;
  std::optional<State> start;
  std::vector<State> accepting;
  std::vector<Transition> transitions;
  auto fail = [&](const std::string& msg) -> Error {
    return Error("automaton line " + std::to_string(line) + ": " + msg);
  };
  auto number = [&](std::istringstream& in) {
    long long v = -1;
    if (!(in >> v) || v < 0) throw fail("expected a non-negative integer");
    return static_cast<std::size_t>(v);
  };
  while (std::getline(is, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '#') continue;
    std::istringstream in(raw);
    std::string key;
    in >> key;
    if (key == "states") {
      if (nfa) throw fail("duplicate states line");
      nfa.emplace(number(in), 0);
    } else if (key == "start") {
      start = number(in);
    } else if (key == "accepting") {
      std::string tok;
      while (in >> tok) {
        std::istringstream n(tok);
        accepting.push_back(number(n));
      }
    } else if (key == "transition") {
      Transition t;
      std::string sym;
      t.from = number(in);
      if (!(in >> sym)) throw fail("missing symbol");
      t.symbol = detail::decode_symbol(sym, line);
      t.to = number(in);
      transitions.push_back(t);
    } else {
      throw fail("unknown key '" + key + "'");
    }
    std::string extra;
    if (key != "accepting" && in >> extra) throw fail("trailing token '" + extra + "'");
  }
  if (!nfa) throw Error("automaton: missing states line");
  if (start) nfa->set_start(*start);
  for (auto s : accepting) nfa->add_accepting(s);
  for (const auto& t : transitions) nfa->add_transition(t.from, t.symbol, t.to);
  return *nfa;
}

}  // namespace metalogic
