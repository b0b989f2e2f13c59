#pragma once

// Deterministic and nondeterministic finite automata and the constructions
// the decision procedures are built from.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orwell/alphabet.hpp"

namespace orwell {

/// Accepting set holding the system language.
inline constexpr std::string_view kLanguageSet = "F";
/// Accepting set holding the secret.
inline constexpr std::string_view kSecretSet = "Fphi";

using Trace = std::vector<EventId>;
using AcceptingSets = std::map<std::string, std::vector<bool>, std::less<>>;

namespace detail {

inline std::string unique_name(const std::map<std::string, StateId, std::less<>>& taken,
                               std::string base) {
  while (taken.count(base) != 0) base += '\'';
  return base;
}

inline std::string join_names(const std::vector<std::string>& names, char open, char close) {
  std::string out(1, open);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  out += close;
  return out;
}

}  // namespace detail

/// Finite deterministic labeled transition system with a partial transition
/// function and any number of named accepting sets ("F", "Fphi", ...).
class Lts {
 public:
  Lts() = default;
  explicit Lts(PartitionedAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

  StateId add_state(const std::string& name) {
    if (name.empty()) throw InputError("empty state name");
    if (index_.count(name) != 0) throw InputError("state '" + name + "' declared twice");
    const auto q = static_cast<StateId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, q);
    delta_.resize(delta_.size() + alphabet_.size(), kNoState);
    for (auto& [_, members] : accepting_) members.push_back(false);
    return q;
  }

  /// Adds a state whose name is derived from `base` and not yet taken.
  StateId add_fresh_state(const std::string& base) {
    return add_state(detail::unique_name(index_, base));
  }

  void set_initial(StateId q) {
    check_state(q);
    initial_ = q;
  }

  void add_transition(StateId from, EventId e, StateId to) {
    check_state(from);
    check_state(to);
    if (e >= alphabet_.size()) throw InputError("event index out of range");
    auto& slot = delta_[from * alphabet_.size() + e];
    if (slot != kNoState && slot != to)
      throw InputError("nondeterministic transition from '" + names_[from] + "' on '" +
                       alphabet_.name(e) + "'");
    slot = to;
  }

  void declare_set(std::string_view set) {
    if (accepting_.find(set) == accepting_.end())
      accepting_.emplace(std::string(set), std::vector<bool>(names_.size(), false));
  }

  void set_accepting(std::string_view set, StateId q, bool member = true) {
    check_state(q);
    declare_set(set);
    accepting_.find(set)->second[q] = member;
  }

  const PartitionedAlphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return names_.size(); }
  const std::string& state_name(StateId q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const noexcept { return names_; }

  std::optional<StateId> find_state(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  StateId state(std::string_view name) const {
    if (auto q = find_state(name)) return *q;
    throw InputError("unknown state '" + std::string(name) + "'");
  }

  StateId initial() const noexcept { return initial_; }
  bool has_initial() const noexcept { return initial_ != kNoState; }

  /// Successor of `q` on `e`, or kNoState when undefined.
  StateId next(StateId q, EventId e) const { return delta_[q * alphabet_.size() + e]; }

  bool has_set(std::string_view set) const { return accepting_.find(set) != accepting_.end(); }

  bool is_accepting(std::string_view set, StateId q) const {
    auto it = accepting_.find(set);
    if (it == accepting_.end()) throw InputError("missing accepting set '" + std::string(set) + "'");
    return it->second[q];
  }

  std::vector<StateId> accepting_states(std::string_view set) const {
    std::vector<StateId> out;
    for (StateId q = 0; q < num_states(); ++q)
      if (is_accepting(set, q)) out.push_back(q);
    return out;
  }

  std::vector<std::string> set_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : accepting_) out.push_back(name);
    return out;
  }

  std::size_t num_transitions() const {
    return static_cast<std::size_t>(
        std::count_if(delta_.begin(), delta_.end(), [](StateId t) { return t != kNoState; }));
  }

  bool is_complete() const {
    return std::find(delta_.begin(), delta_.end(), kNoState) == delta_.end();
  }

  void check_state(StateId q) const {
    if (q >= names_.size()) throw InputError("state index out of range");
  }

 private:
  PartitionedAlphabet alphabet_;
  std::vector<std::string> names_;
  std::map<std::string, StateId, std::less<>> index_;
  std::vector<StateId> delta_;
  StateId initial_ = kNoState;
  AcceptingSets accepting_;
};

/// Nondeterministic automaton with silent (kSilent) transitions.
class EpsilonNfa {
 public:
  struct Edge {
    EventId label;
    StateId target;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  EpsilonNfa() = default;
  explicit EpsilonNfa(PartitionedAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

  StateId add_state(const std::string& name) {
    if (name.empty()) throw InputError("empty state name");
    if (index_.count(name) != 0) throw InputError("state '" + name + "' declared twice");
    const auto q = static_cast<StateId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, q);
    out_.emplace_back();
    for (auto& [_, members] : accepting_) members.push_back(false);
    return q;
  }

  void set_initial(StateId q) {
    check_state(q);
    initial_ = q;
  }

  void add_transition(StateId from, EventId label, StateId to) {
    check_state(from);
    check_state(to);
    if (label != kSilent && label >= alphabet_.size())
      throw InputError("event index out of range");
    Edge edge{label, to};
    auto& edges = out_[from];
    if (std::find(edges.begin(), edges.end(), edge) == edges.end()) edges.push_back(edge);
  }

  void declare_set(std::string_view set) {
    if (accepting_.find(set) == accepting_.end())
      accepting_.emplace(std::string(set), std::vector<bool>(names_.size(), false));
  }

  void set_accepting(std::string_view set, StateId q, bool member = true) {
    check_state(q);
    declare_set(set);
    accepting_.find(set)->second[q] = member;
  }

  const PartitionedAlphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return names_.size(); }
  const std::string& state_name(StateId q) const { return names_.at(q); }
  std::optional<StateId> find_state(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  StateId initial() const noexcept { return initial_; }
  const std::vector<Edge>& edges(StateId q) const { return out_.at(q); }
  bool has_set(std::string_view set) const { return accepting_.find(set) != accepting_.end(); }
  bool is_accepting(std::string_view set, StateId q) const {
    auto it = accepting_.find(set);
    if (it == accepting_.end()) throw InputError("missing accepting set '" + std::string(set) + "'");
    return it->second[q];
  }
  std::vector<std::string> set_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : accepting_) out.push_back(name);
    return out;
  }

  void check_state(StateId q) const {
    if (q >= names_.size()) throw InputError("state index out of range");
  }

 private:
  PartitionedAlphabet alphabet_;
  std::vector<std::string> names_;
  std::map<std::string, StateId, std::less<>> index_;
  std::vector<std::vector<Edge>> out_;
  StateId initial_ = kNoState;
  AcceptingSets accepting_;
};

// ---------------------------------------------------------------------------
// Words and traces

inline Trace to_trace(const PartitionedAlphabet& alphabet, const Word& w) {
  Trace t;
  t.reserve(w.size());
  for (const auto& e : w) t.push_back(alphabet.id(e));
  return t;
}

inline Word to_word(const PartitionedAlphabet& alphabet, const Trace& t) {
  Word w;
  w.reserve(t.size());
  for (auto e : t) w.push_back(alphabet.name(e));
  return w;
}

/// Extended transition function; absent when some step is undefined.
inline std::optional<StateId> step(const Lts& a, StateId q, const Word& s) {
  a.check_state(q);
  for (const auto& e : s) {
    q = a.next(q, a.alphabet().id(e));
    if (q == kNoState) return std::nullopt;
  }
  return q;
}

/// Membership of `w` in the language of accepting set `set`.
inline bool accepts(const Lts& a, std::string_view set, const Word& w) {
  if (!a.has_initial()) return false;
  auto q = step(a, a.initial(), w);
  return q && a.is_accepting(set, *q);
}

/// Membership by simulation of the subset of states reachable on `w`.
inline bool accepts(const EpsilonNfa& n, std::string_view set, const Word& w) {
  if (n.initial() == kNoState) return false;
  std::vector<bool> current(n.num_states(), false);
  auto close = [&](std::vector<bool>& s) {
    std::vector<StateId> stack;
    for (StateId q = 0; q < s.size(); ++q)
      if (s[q]) stack.push_back(q);
    while (!stack.empty()) {
      auto q = stack.back();
      stack.pop_back();
      for (const auto& e : n.edges(q))
        if (e.label == kSilent && !s[e.target]) {
          s[e.target] = true;
          stack.push_back(e.target);
        }
    }
  };
  current[n.initial()] = true;
  close(current);
  for (const auto& ev : w) {
    const auto id = n.alphabet().id(ev);
    std::vector<bool> next(n.num_states(), false);
    for (StateId q = 0; q < current.size(); ++q)
      if (current[q])
        for (const auto& e : n.edges(q))
          if (e.label == id) next[e.target] = true;
    close(next);
    current = std::move(next);
  }
  for (StateId q = 0; q < current.size(); ++q)
    if (current[q] && n.is_accepting(set, q)) return true;
  return false;
}

/// Breadth-first search from `from`, expanding events in declaration order.
/// Returns the shortest, then lexicographically least, trace whose target
/// satisfies `target`.
inline std::optional<Trace> shortest_trace(const Lts& a, StateId from,
                                           const std::function<bool(StateId)>& target) {
  if (from == kNoState) return std::nullopt;
  std::vector<StateId> parent(a.num_states(), kNoState);
  std::vector<EventId> via(a.num_states(), kSilent);
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    auto q = queue.front();
    queue.pop_front();
    if (target(q)) {
      Trace t;
      for (auto p = q; p != from; p = parent[p]) t.push_back(via[p]);
      std::reverse(t.begin(), t.end());
      return t;
    }
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto r = a.next(q, e);
      if (r != kNoState && !seen[r]) {
        seen[r] = true;
        parent[r] = q;
        via[r] = e;
        queue.push_back(r);
      }
    }
  }
  return std::nullopt;
}

/// States reachable from the initial state, in index order.
inline std::vector<StateId> reachable_states(const Lts& a) {
  std::vector<bool> seen(a.num_states(), false);
  if (a.has_initial()) {
    std::vector<StateId> stack{a.initial()};
    seen[a.initial()] = true;
    while (!stack.empty()) {
      auto q = stack.back();
      stack.pop_back();
      for (EventId e = 0; e < a.alphabet().size(); ++e) {
        auto r = a.next(q, e);
        if (r != kNoState && !seen[r]) {
          seen[r] = true;
          stack.push_back(r);
        }
      }
    }
  }
  std::vector<StateId> out;
  for (StateId q = 0; q < a.num_states(); ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

// ---------------------------------------------------------------------------
// Constructions on deterministic systems

/// Removes unreachable states; surviving states keep their relative order.
inline Lts trim(const Lts& a) {
  Lts out(a.alphabet());
  for (const auto& set : a.set_names()) out.declare_set(set);
  const auto kept = reachable_states(a);
  std::vector<StateId> remap(a.num_states(), kNoState);
  for (auto q : kept) remap[q] = out.add_state(a.state_name(q));
  for (auto q : kept) {
    for (EventId e = 0; e < a.alphabet().size(); ++e)
      if (auto r = a.next(q, e); r != kNoState) out.add_transition(remap[q], e, remap[r]);
    for (const auto& set : a.set_names())
      if (a.is_accepting(set, q)) out.set_accepting(set, remap[q]);
  }
  if (a.has_initial()) out.set_initial(remap[a.initial()]);
  return out;
}

/// Same automaton started from `q`.
inline Lts rebase(const Lts& a, StateId q) {
  a.check_state(q);
  Lts out = a;
  out.set_initial(q);
  return out;
}

/// Re-indexes `a` over a larger alphabet; events missing from `a` get no transitions.
inline Lts with_alphabet(const Lts& a, const PartitionedAlphabet& target) {
  std::vector<EventId> remap(a.alphabet().size());
  for (EventId e = 0; e < a.alphabet().size(); ++e) {
    auto id = target.find(a.alphabet().name(e));
    if (!id) throw InputError("alphabet mismatch: event '" + a.alphabet().name(e) + "' unknown");
    remap[e] = *id;
  }
  Lts out(target);
  for (const auto& set : a.set_names()) out.declare_set(set);
  for (StateId q = 0; q < a.num_states(); ++q) out.add_state(a.state_name(q));
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (EventId e = 0; e < a.alphabet().size(); ++e)
      if (auto r = a.next(q, e); r != kNoState) out.add_transition(q, remap[e], r);
    for (const auto& set : a.set_names())
      if (a.is_accepting(set, q)) out.set_accepting(set, q);
  }
  if (a.has_initial()) out.set_initial(a.initial());
  return out;
}

/// Deletes every transition labeled in `removed` and drops those events from
/// the alphabet. States and accepting sets are kept; trimming is up to the caller.
inline Lts restriction(const Lts& a, const EventSet& removed) {
  for (const auto& e : removed)
    if (!a.alphabet().contains(e)) throw InputError("unknown event '" + e + "'");
  const auto alphabet = a.alphabet().without(removed);
  Lts out(alphabet);
  for (const auto& set : a.set_names()) out.declare_set(set);
  for (StateId q = 0; q < a.num_states(); ++q) out.add_state(a.state_name(q));
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (EventId e = 0; e < alphabet.size(); ++e) {
      auto r = a.next(q, a.alphabet().id(alphabet.name(e)));
      if (r != kNoState) out.add_transition(q, e, r);
    }
    for (const auto& set : a.set_names())
      if (a.is_accepting(set, q)) out.set_accepting(set, q);
  }
  if (a.has_initial()) out.set_initial(a.initial());
  return out;
}

/// Total transition function over `over` (which must contain a's events):
/// missing moves go to one fresh, non-accepting sink. The sink is only added
/// when some move is missing.
inline Lts complete(const Lts& a, const PartitionedAlphabet& over) {
  Lts out = with_alphabet(a, over);
  if (out.is_complete() && out.has_initial()) return out;
  const auto sink = out.add_fresh_state("sink");
  if (!out.has_initial()) out.set_initial(sink);
  for (StateId q = 0; q < out.num_states(); ++q)
    for (EventId e = 0; e < over.size(); ++e)
      if (out.next(q, e) == kNoState) out.add_transition(q, e, sink);
  return out;
}

inline Lts complete(const Lts& a) { return complete(a, a.alphabet()); }

namespace detail {

/// Reachable pair product; `label` assigns accepting sets to each new pair.
template <class Label>
Lts pair_product(const Lts& a, const Lts& b, const std::vector<std::string>& sets,
                 Label label) {
  if (!a.alphabet().same_events(b.alphabet()))
    throw InputError("product: alphabet mismatch");
  Lts out(a.alphabet());
  for (const auto& set : sets) out.declare_set(set);
  if (!a.has_initial() || !b.has_initial()) return out;

  std::map<std::pair<StateId, StateId>, StateId> index;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = index.emplace(std::pair{p, q}, kNoState);
    if (inserted) {
      it->second = out.add_fresh_state("(" + a.state_name(p) + "," + b.state_name(q) + ")");
      label(out, it->second, p, q);
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  out.set_initial(intern(a.initial(), b.initial()));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    const auto from = index.at({p, q});
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto p2 = a.next(p, e);
      auto q2 = b.next(q, e);
      if (p2 != kNoState && q2 != kNoState) out.add_transition(from, e, intern(p2, q2));
    }
  }
  return out;
}

}  // namespace detail

/// Pairwise product over a shared alphabet, restricted to reachable pairs.
/// Every accepting set present in both operands becomes the conjunction.
inline Lts product(const Lts& a, const Lts& b) {
  std::vector<std::string> shared;
  for (const auto& set : a.set_names())
    if (b.has_set(set)) shared.push_back(set);
  return detail::pair_product(a, b, shared, [&](Lts& out, StateId s, StateId p, StateId q) {
    for (const auto& set : shared)
      if (a.is_accepting(set, p) && b.is_accepting(set, q)) out.set_accepting(set, s);
  });
}

/// Complete automaton recognizing the complement of accepting set `set`.
inline Lts complement(const Lts& a, std::string_view set) {
  Lts out = complete(a);
  if (!out.has_set(set)) throw InputError("missing accepting set '" + std::string(set) + "'");
  for (StateId q = 0; q < out.num_states(); ++q)
    out.set_accepting(set, q, !out.is_accepting(set, q));
  return out;
}

/// Outcome of a language inclusion test.
struct InclusionResult {
  bool holds = true;
  /// Shortest, then lexicographically least, word in the difference.
  std::optional<Word> counterexample;
};

/// Decides L_aset(a) ⊆ L_bset(b) by searching a × complement(b) for a
/// reachable pair accepting in a and in the complement.
inline InclusionResult is_subset(const Lts& a, std::string_view aset, const Lts& b,
                                 std::string_view bset) {
  if (!a.alphabet().same_events(b.alphabet())) throw InputError("inclusion: alphabet mismatch");
  if (!a.has_set(aset)) throw InputError("missing accepting set '" + std::string(aset) + "'");
  const Lts nb = complement(b, bset);
  if (!a.has_initial()) return {};

  const auto n = a.alphabet().size();
  std::map<std::pair<StateId, StateId>, std::pair<std::pair<StateId, StateId>, EventId>> parent;
  std::deque<std::pair<StateId, StateId>> queue;
  const std::pair start{a.initial(), nb.initial()};
  parent.emplace(start, std::pair{start, kSilent});
  queue.push_back(start);
  while (!queue.empty()) {
    auto node = queue.front();
    queue.pop_front();
    if (a.is_accepting(aset, node.first) && nb.is_accepting(bset, node.second)) {
      Trace t;
      for (auto cur = node; cur != start;) {
        const auto& [prev, e] = parent.at(cur);
        t.push_back(e);
        cur = prev;
      }
      std::reverse(t.begin(), t.end());
      return {false, to_word(a.alphabet(), t)};
    }
    for (EventId e = 0; e < n; ++e) {
      auto p = a.next(node.first, e);
      if (p == kNoState) continue;
      std::pair succ{p, nb.next(node.second, e)};
      if (parent.emplace(succ, std::pair{node, e}).second) queue.push_back(succ);
    }
  }
  return {};
}

/// Builds G × complete(Gphi) with "F" = F × Q' and "Fphi" = F × F_phi, so that
/// one deterministic system recognizes both L and L ∩ φ.
inline Lts incorporate_secret(const Lts& g, std::string_view f, const Lts& gphi,
                              std::string_view fphi) {
  if (!g.has_set(f)) throw InputError("missing accepting set '" + std::string(f) + "'");
  if (!gphi.has_set(fphi)) throw InputError("missing accepting set '" + std::string(fphi) + "'");
  const Lts secret = complete(with_alphabet(gphi, g.alphabet()));
  return detail::pair_product(
      g, secret, {std::string(kLanguageSet), std::string(kSecretSet)},
      [&](Lts& out, StateId s, StateId p, StateId q) {
        if (!g.is_accepting(f, p)) return;
        out.set_accepting(kLanguageSet, s);
        if (secret.is_accepting(fphi, q)) out.set_accepting(kSecretSet, s);
      });
}

/// For each state of `product`, the state of `factor` reached by the same
/// words (kNoState for unreachable states). `product` must be a reachable
/// product having `factor` as a component.
inline std::vector<StateId> factor_states(const Lts& product, const Lts& factor) {
  std::vector<StateId> out(product.num_states(), kNoState);
  if (!product.has_initial()) return out;
  std::vector<StateId> stack{product.initial()};
  out[product.initial()] = factor.initial();
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (EventId e = 0; e < product.alphabet().size(); ++e) {
      auto r = product.next(s, e);
      if (r == kNoState || out[r] != kNoState) continue;
      out[r] = factor.next(out[s], e);
      stack.push_back(r);
    }
  }
  return out;
}

/// The initial state plus every target of a downgrading transition, over the
/// reachable part, in index order.
inline std::vector<StateId> downgrade_entry_states(const Lts& a) {
  if (!a.has_initial()) return {};
  const auto reachable = reachable_states(a);
  std::vector<bool> entry(a.num_states(), false);
  entry[a.initial()] = true;
  for (auto q : reachable)
    for (EventId e = 0; e < a.alphabet().size(); ++e)
      if (a.alphabet().role(e) == EventRole::downgrading)
        if (auto r = a.next(q, e); r != kNoState) entry[r] = true;
  std::vector<StateId> out;
  for (StateId q = 0; q < a.num_states(); ++q)
    if (entry[q]) out.push_back(q);
  return out;
}

/// Shortest, then lexicographically least, word leading from the initial
/// state to `q` that is empty or ends with a downgrading event. The empty word
/// is returned for the initial state.
inline std::optional<Trace> shortest_entry_trace(const Lts& a, StateId q) {
  a.check_state(q);
  if (!a.has_initial()) return std::nullopt;
  if (q == a.initial()) return Trace{};
  // Nodes are (state, last event was downgrading).
  const auto n = a.num_states();
  auto node = [n](StateId s, bool d) { return s + (d ? n : 0); };
  std::vector<std::size_t> parent(2 * n, SIZE_MAX);
  std::vector<EventId> via(2 * n, kSilent);
  std::vector<bool> seen(2 * n, false);
  const auto start = node(a.initial(), false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    const auto s = static_cast<StateId>(cur % n);
    if (cur >= n && s == q) {
      Trace t;
      for (auto x = cur; x != start; x = parent[x]) t.push_back(via[x]);
      std::reverse(t.begin(), t.end());
      return t;
    }
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto r = a.next(s, e);
      if (r == kNoState) continue;
      auto succ = node(r, a.alphabet().role(e) == EventRole::downgrading);
      if (!seen[succ]) {
        seen[succ] = true;
        parent[succ] = cur;
        via[succ] = e;
        queue.push_back(succ);
      }
    }
  }
  return std::nullopt;
}

/// Initial state plus targets of downgrading-labeled edges among reachable states.
inline std::vector<StateId> downgrade_entry_states(const EpsilonNfa& n) {
  if (n.initial() == kNoState) return {};
  std::vector<bool> seen(n.num_states(), false);
  std::vector<StateId> stack{n.initial()};
  seen[n.initial()] = true;
  std::vector<bool> entry(n.num_states(), false);
  entry[n.initial()] = true;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (const auto& e : n.edges(q)) {
      if (e.label != kSilent && n.alphabet().role(e.label) == EventRole::downgrading)
        entry[e.target] = true;
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId q = 0; q < n.num_states(); ++q)
    if (entry[q]) out.push_back(q);
  return out;
}

// ---------------------------------------------------------------------------
// Nondeterministic automata

inline EpsilonNfa to_nfa(const Lts& a) {
  EpsilonNfa out(a.alphabet());
  for (const auto& set : a.set_names()) out.declare_set(set);
  for (StateId q = 0; q < a.num_states(); ++q) out.add_state(a.state_name(q));
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (EventId e = 0; e < a.alphabet().size(); ++e)
      if (auto r = a.next(q, e); r != kNoState) out.add_transition(q, e, r);
    for (const auto& set : a.set_names())
      if (a.is_accepting(set, q)) out.set_accepting(set, q);
  }
  if (a.has_initial()) out.set_initial(a.initial());
  return out;
}

/// Subset construction with silent closure. The result is complete over the
/// NFA's alphabet (the empty subset acts as the sink) and only contains
/// subsets reachable from the initial closure. A subset belongs to an
/// accepting set iff it intersects it.
inline Lts determinize(const EpsilonNfa& n) {
  using Subset = std::vector<StateId>;
  auto closure = [&](Subset seed) {
    std::vector<bool> in(n.num_states(), false);
    for (auto q : seed) in[q] = true;
    std::vector<StateId> stack = seed;
    while (!stack.empty()) {
      auto q = stack.back();
      stack.pop_back();
      for (const auto& e : n.edges(q))
        if (e.label == kSilent && !in[e.target]) {
          in[e.target] = true;
          stack.push_back(e.target);
        }
    }
    Subset out;
    for (StateId q = 0; q < n.num_states(); ++q)
      if (in[q]) out.push_back(q);
    return out;
  };

  Lts out(n.alphabet());
  const auto sets = n.set_names();
  for (const auto& set : sets) out.declare_set(set);

  std::map<Subset, StateId> index;
  std::deque<Subset> queue;
  auto intern = [&](const Subset& s) {
    auto [it, inserted] = index.emplace(s, kNoState);
    if (inserted) {
      std::vector<std::string> names;
      for (auto q : s) names.push_back(n.state_name(q));
      it->second = out.add_fresh_state(detail::join_names(names, '{', '}'));
      for (const auto& set : sets)
        if (std::any_of(s.begin(), s.end(), [&](StateId q) { return n.is_accepting(set, q); }))
          out.set_accepting(set, it->second);
      queue.push_back(s);
    }
    return it->second;
  };

  Subset start;
  if (n.initial() != kNoState) start = closure({n.initial()});
  out.set_initial(intern(start));
  while (!queue.empty()) {
    Subset s = queue.front();
    queue.pop_front();
    const auto from = index.at(s);
    for (EventId e = 0; e < n.alphabet().size(); ++e) {
      std::vector<bool> hit(n.num_states(), false);
      for (auto q : s)
        for (const auto& edge : n.edges(q))
          if (edge.label == e) hit[edge.target] = true;
      Subset moved;
      for (StateId q = 0; q < n.num_states(); ++q)
        if (hit[q]) moved.push_back(q);
      out.add_transition(from, e, intern(closure(std::move(moved))));
    }
  }
  return out;
}

/// Subset construction keeping only accepting set `set`.
inline Lts determinize(const EpsilonNfa& n, std::string_view set) {
  if (!n.has_set(set)) throw InputError("missing accepting set '" + std::string(set) + "'");
  EpsilonNfa copy(n.alphabet());
  copy.declare_set(set);
  for (StateId q = 0; q < n.num_states(); ++q) copy.add_state(n.state_name(q));
  for (StateId q = 0; q < n.num_states(); ++q) {
    for (const auto& e : n.edges(q)) copy.add_transition(q, e.label, e.target);
    if (n.is_accepting(set, q)) copy.set_accepting(set, q);
  }
  if (n.initial() != kNoState) copy.set_initial(n.initial());
  return determinize(copy);
}

// ---------------------------------------------------------------------------
// Structural comparison

/// Isomorphism of the reachable parts, matching labels by event name. When
/// `compare_sets` is set, every accepting set must correspond as well.
inline bool isomorphic(const Lts& a, const Lts& b, bool compare_sets = true) {
  if (a.alphabet().all_events() != b.alphabet().all_events()) return false;
  if (a.has_initial() != b.has_initial()) return false;
  if (!a.has_initial()) return true;
  if (compare_sets && a.set_names() != b.set_names()) return false;
  std::vector<StateId> map_ab(a.num_states(), kNoState), map_ba(b.num_states(), kNoState);
  std::deque<std::pair<StateId, StateId>> queue{{a.initial(), b.initial()}};
  map_ab[a.initial()] = b.initial();
  map_ba[b.initial()] = a.initial();
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    if (compare_sets)
      for (const auto& set : a.set_names())
        if (a.is_accepting(set, p) != b.is_accepting(set, q)) return false;
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto p2 = a.next(p, e);
      auto q2 = b.next(q, b.alphabet().id(a.alphabet().name(e)));
      if ((p2 == kNoState) != (q2 == kNoState)) return false;
      if (p2 == kNoState) continue;
      if (map_ab[p2] == kNoState && map_ba[q2] == kNoState) {
        map_ab[p2] = q2;
        map_ba[q2] = p2;
        queue.emplace_back(p2, q2);
      } else if (map_ab[p2] != q2 || map_ba[q2] != p2) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace orwell
