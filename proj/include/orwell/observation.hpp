#pragma once

// Observation functions: natural projection, Orwellian projection and the
// factorization of a word at its last downgrading event.

#include <deque>
#include <map>
#include <optional>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "orwell/alphabet.hpp"
#include "orwell/automata.hpp"

namespace orwell {

/// Static observer: sees exactly the events of `observable`.
struct NaturalObservation {
  EventSet observable;
};

/// Observer that sees `observable` events and, once a downgrading event
/// occurs, everything up to and including it.
struct OrwellianObservation {
  EventSet observable;
  EventSet downgrading;
};

using ObservationKind = std::variant<NaturalObservation, OrwellianObservation>;

inline NaturalObservation natural_observation(const PartitionedAlphabet& a) {
  return {a.event_set(EventRole::observable)};
}

inline OrwellianObservation orwellian_observation(const PartitionedAlphabet& a) {
  return {a.event_set(EventRole::observable), a.event_set(EventRole::downgrading)};
}

/// Erases every event outside `observable`.
inline Word project_natural(const Word& s, const EventSet& observable) {
  Word out;
  for (const auto& e : s)
    if (observable.count(e) != 0) out.push_back(e);
  return out;
}

/// Word prefix up to and including its last downgrading event, and the rest.
struct Factorization {
  Word prefix;
  Word continuation;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Splits `u` right after its last downgrading event; the prefix is empty
/// when `u` contains none.
inline Factorization factorize(const Word& u, const EventSet& downgrading) {
  std::size_t cut = 0;
  for (std::size_t i = u.size(); i > 0; --i)
    if (downgrading.count(u[i - 1]) != 0) {
      cut = i;
      break;
    }
  return {Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(cut)),
          Word(u.begin() + static_cast<std::ptrdiff_t>(cut), u.end())};
}

/// Keeps the prefix through the last downgrading event verbatim and naturally
/// projects the remainder.
inline Word project_orwellian(const Word& s, const EventSet& observable,
                              const EventSet& downgrading) {
  auto [prefix, rest] = factorize(s, downgrading);
  for (const auto& e : rest)
    if (observable.count(e) != 0) prefix.push_back(e);
  return prefix;
}

inline Word observe(const ObservationKind& kind, const Word& s) {
  return std::visit(
      [&](const auto& k) -> Word {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, NaturalObservation>)
          return project_natural(s, k.observable);
        else
          return project_orwellian(s, k.observable, k.downgrading);
      },
      kind);
}

/// Automaton for the natural projection of accepting set `set` onto
/// `observable`: hidden moves become silent, then the result is determinized.
/// The image carries the same set name and the alphabet restricted to
/// `observable`.
inline Lts project_language(const Lts& a, std::string_view set, const EventSet& observable) {
  for (const auto& e : observable)
    if (!a.alphabet().contains(e)) throw InputError("unknown observable event '" + e + "'");
  if (!a.has_set(set)) throw InputError("missing accepting set '" + std::string(set) + "'");
  const auto image_alphabet = a.alphabet().only(observable);
  EpsilonNfa n(image_alphabet);
  n.declare_set(set);
  for (StateId q = 0; q < a.num_states(); ++q) n.add_state(a.state_name(q));
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto r = a.next(q, e);
      if (r == kNoState) continue;
      auto label = image_alphabet.find(a.alphabet().name(e));
      n.add_transition(q, label ? *label : kSilent, r);
    }
    if (a.is_accepting(set, q)) n.set_accepting(set, q);
  }
  if (a.has_initial()) n.set_initial(a.initial());
  return determinize(n);
}

/// Silent-transition automaton for the Orwellian image of every accepting set
/// of `a`. Three copies of the state space are used:
///   (q,point)  inside the verbatim prefix, right after a downgrade (or at start);
///   (q,prefix) inside the verbatim prefix, after any other event;
///   (q,tail)   inside the continuation, where only `observable` events are
///              emitted and downgrading events are impossible.
/// A silent bridge (q,point) -> (q,tail) exists for each downgrade entry state
/// q, so accepted words are s·π(t) with s empty or ending in a downgrade and
/// t downgrade-free. Accepting sets live on the tail copy.
inline EpsilonNfa orwellian_image_nfa(const Lts& a, const EventSet& observable,
                                      const EventSet& downgrading) {
  EpsilonNfa n(a.alphabet());
  const auto sets = a.set_names();
  for (const auto& set : sets) n.declare_set(set);
  const auto count = static_cast<StateId>(a.num_states());
  for (StateId q = 0; q < count; ++q) n.add_state("(" + a.state_name(q) + ",point)");
  for (StateId q = 0; q < count; ++q) n.add_state("(" + a.state_name(q) + ",prefix)");
  for (StateId q = 0; q < count; ++q) n.add_state("(" + a.state_name(q) + ",tail)");
  auto point = [](StateId q) { return q; };
  auto prefix = [count](StateId q) { return q + count; };
  auto tail = [count](StateId q) { return q + 2 * count; };

  for (StateId q = 0; q < count; ++q) {
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto r = a.next(q, e);
      if (r == kNoState) continue;
      const auto& name = a.alphabet().name(e);
      const bool down = downgrading.count(name) != 0;
      n.add_transition(point(q), e, down ? point(r) : prefix(r));
      n.add_transition(prefix(q), e, down ? point(r) : prefix(r));
      if (down) continue;
      n.add_transition(tail(q), observable.count(name) != 0 ? e : kSilent, tail(r));
    }
    for (const auto& set : sets)
      if (a.is_accepting(set, q)) n.set_accepting(set, tail(q));
  }
  if (a.has_initial()) {
    std::vector<bool> entry(count, false);
    entry[a.initial()] = true;
    for (auto q : reachable_states(a))
      for (EventId e = 0; e < a.alphabet().size(); ++e)
        if (downgrading.count(a.alphabet().name(e)) != 0)
          if (auto r = a.next(q, e); r != kNoState) entry[r] = true;
    for (StateId q = 0; q < count; ++q)
      if (entry[q]) n.add_transition(point(q), kSilent, tail(q));
    n.set_initial(point(a.initial()));
  }
  return n;
}

/// Deterministic automaton for the Orwellian image of accepting set `set`.
inline Lts project_language_orwellian(const Lts& a, std::string_view set,
                                      const EventSet& observable, const EventSet& downgrading) {
  if (!a.has_set(set)) throw InputError("missing accepting set '" + std::string(set) + "'");
  return determinize(orwellian_image_nfa(a, observable, downgrading), set);
}

/// Incremental comparison of a word's observation against a fixed target.
///
/// Progress tracks two hypotheses about the word being read: that a later
/// downgrade will reveal it verbatim (`verbatim` = matched prefix length of
/// the target) and that it ends as is (`projected` = length of its current
/// observation, which must be a prefix of the target). A value of -1 means the
/// hypothesis is refuted; when both are refuted no extension can match.
class ObservationMatcher {
 public:
  struct Progress {
    int verbatim = 0;
    int projected = 0;
    auto operator<=>(const Progress&) const = default;
  };

  ObservationMatcher(const PartitionedAlphabet& alphabet, const ObservationKind& kind,
                     const Word& target)
      : target_(to_trace(alphabet, target)), orwellian_(kind.index() == 1) {
    const EventSet& observable = std::visit([](const auto& k) -> const EventSet& { return k.observable; }, kind);
    const EventSet* downgrading =
        orwellian_ ? &std::get<OrwellianObservation>(kind).downgrading : nullptr;
    kinds_.resize(alphabet.size(), Kind::hidden);
    for (EventId e = 0; e < alphabet.size(); ++e) {
      if (observable.count(alphabet.name(e)) != 0) kinds_[e] = Kind::shown;
      if (downgrading && downgrading->count(alphabet.name(e)) != 0) kinds_[e] = Kind::downgrade;
    }
  }

  Progress start() const { return {orwellian_ ? 0 : -1, 0}; }

  std::optional<Progress> advance(Progress p, EventId e) const {
    const int m = static_cast<int>(target_.size());
    Progress n;
    n.verbatim = (p.verbatim >= 0 && p.verbatim < m && target_[p.verbatim] == e) ? p.verbatim + 1 : -1;
    switch (kinds_[e]) {
      case Kind::downgrade: n.projected = n.verbatim; break;
      case Kind::shown:
        n.projected = (p.projected >= 0 && p.projected < m && target_[p.projected] == e)
                          ? p.projected + 1
                          : -1;
        break;
      case Kind::hidden: n.projected = p.projected; break;
    }
    if (n.verbatim < 0 && n.projected < 0) return std::nullopt;
    return n;
  }

  bool matches(Progress p) const { return p.projected == static_cast<int>(target_.size()); }

 private:
  enum class Kind : std::uint8_t { hidden, shown, downgrade };
  Trace target_;
  bool orwellian_;
  std::vector<Kind> kinds_;
};

/// Shortest (then lexicographically least) word of accepting set `set` whose
/// observation equals `observation`.
inline std::optional<Word> shortest_preimage(const Lts& a, std::string_view set,
                                             const ObservationKind& kind,
                                             const Word& observation) {
  if (!a.has_initial()) return std::nullopt;
  ObservationMatcher matcher(a.alphabet(), kind, observation);
  using Node = std::tuple<StateId, int, int>;
  std::map<Node, std::pair<Node, EventId>> parent;
  std::deque<std::pair<StateId, ObservationMatcher::Progress>> queue;
  auto key = [](StateId q, ObservationMatcher::Progress p) { return Node{q, p.verbatim, p.projected}; };
  const auto start = matcher.start();
  parent.emplace(key(a.initial(), start), std::pair{key(a.initial(), start), kSilent});
  queue.emplace_back(a.initial(), start);
  while (!queue.empty()) {
    auto [q, p] = queue.front();
    queue.pop_front();
    if (a.is_accepting(set, q) && matcher.matches(p)) {
      Trace t;
      for (auto cur = key(q, p); cur != key(a.initial(), start);) {
        const auto& [prev, e] = parent.at(cur);
        t.push_back(e);
        cur = prev;
      }
      std::reverse(t.begin(), t.end());
      return to_word(a.alphabet(), t);
    }
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto r = a.next(q, e);
      if (r == kNoState) continue;
      auto np = matcher.advance(p, e);
      if (!np) continue;
      if (parent.emplace(key(r, *np), std::pair{key(q, p), e}).second) queue.emplace_back(r, *np);
    }
  }
  return std::nullopt;
}

}  // namespace orwell
