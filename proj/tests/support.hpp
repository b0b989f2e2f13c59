#pragma once

// Random models and small reference deciders shared by the test binaries.

#include <random>
#include <string>
#include <vector>

#include "orwell/orwell.hpp"

namespace orwell::testing {

struct ShapeLimits {
  std::size_t max_states = 6;
  std::size_t max_observable = 2;
  std::size_t max_unobservable = 2;
  std::size_t downgrading = 1;
  /// Probability that a (state, event) pair has a transition.
  double density = 0.45;
  /// Probability that a state is in F; 1 makes the language prefix-closed.
  double language_density = 0.8;
  double secret_density = 0.4;
};

inline PartitionedAlphabet random_alphabet(std::mt19937& rng, const ShapeLimits& limits) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  PartitionedAlphabet a;
  const auto obs = pick(1, std::max<std::size_t>(1, limits.max_observable));
  const auto unobs = pick(limits.max_unobservable == 0 ? 0 : 1, limits.max_unobservable);
  for (std::size_t i = 0; i < obs; ++i) a.add("l" + std::to_string(i), kLow);
  for (std::size_t i = 0; i < unobs; ++i) a.add("h" + std::to_string(i), kHigh);
  for (std::size_t i = 0; i < limits.downgrading; ++i) a.add("d" + std::to_string(i), kDown);
  return a;
}

/// Random deterministic system with sets F and Fphi.
inline Lts random_system(std::mt19937& rng, const ShapeLimits& limits = {}) {
  const auto alphabet = random_alphabet(rng, limits);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const auto n = std::uniform_int_distribution<std::size_t>(1, limits.max_states)(rng);
  Lts a(alphabet);
  for (std::size_t q = 0; q < n; ++q) a.add_state(std::to_string(q));
  a.set_initial(0);
  a.declare_set(kLanguageSet);
  a.declare_set(kSecretSet);
  std::uniform_int_distribution<StateId> target(0, static_cast<StateId>(n - 1));
  for (StateId q = 0; q < n; ++q) {
    for (EventId e = 0; e < alphabet.size(); ++e)
      if (coin(rng) < limits.density) a.add_transition(q, e, target(rng));
    if (coin(rng) < limits.language_density) a.set_accepting(kLanguageSet, q);
    if (coin(rng) < limits.secret_density) a.set_accepting(kSecretSet, q);
  }
  return a;
}

/// Random complete secret automaton over `alphabet` with set "Fphi".
inline Lts random_secret(std::mt19937& rng, const PartitionedAlphabet& alphabet,
                         std::size_t max_states = 3) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const auto n = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
  Lts s(alphabet);
  for (std::size_t q = 0; q < n; ++q) s.add_state("s" + std::to_string(q));
  s.set_initial(0);
  s.declare_set(kSecretSet);
  std::uniform_int_distribution<StateId> target(0, static_cast<StateId>(n - 1));
  for (StateId q = 0; q < n; ++q) {
    for (EventId e = 0; e < alphabet.size(); ++e) s.add_transition(q, e, target(rng));
    if (coin(rng) < 0.5) s.set_accepting(kSecretSet, q);
  }
  return s;
}

inline Word random_word(std::mt19937& rng, const PartitionedAlphabet& alphabet,
                        std::size_t max_length) {
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_length)(rng);
  std::uniform_int_distribution<EventId> pick(0, static_cast<EventId>(alphabet.size() - 1));
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(alphabet.name(pick(rng)));
  return w;
}

/// Random word of the language of `a` (set F), by a random walk that stops
/// with some probability at accepting states. Empty if none is found.
inline std::optional<Word> random_member(std::mt19937& rng, const Lts& a, std::size_t max_length) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < 20; ++attempt) {
    StateId q = a.initial();
    Trace t;
    for (std::size_t i = 0; i <= max_length; ++i) {
      if (a.is_accepting(kLanguageSet, q) && coin(rng) < 0.3) return to_word(a.alphabet(), t);
      std::vector<EventId> moves;
      for (EventId e = 0; e < a.alphabet().size(); ++e)
        if (a.next(q, e) != kNoState) moves.push_back(e);
      if (moves.empty()) break;
      auto e = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      t.push_back(e);
      q = a.next(q, e);
    }
    if (a.is_accepting(kLanguageSet, q)) return to_word(a.alphabet(), t);
  }
  return std::nullopt;
}

/// Reference (intransitive) non-interference: walks the system on s and on
/// the projection of s at the same time. A Down event resets the projected
/// run to the actual one, since the projection of s·d is s·d itself.
/// Violated iff some reachable pair has s ∈ L and projection(s) ∉ L.
inline bool reference_interference_holds(const Lts& a, bool intransitive) {
  if (!a.has_initial()) return true;
  std::set<std::pair<StateId, StateId>> seen;
  std::vector<std::pair<StateId, StateId>> stack{{a.initial(), a.initial()}};
  seen.insert(stack.back());
  while (!stack.empty()) {
    auto [q, p] = stack.back();
    stack.pop_back();
    if (a.is_accepting(kLanguageSet, q) && (p == kNoState || !a.is_accepting(kLanguageSet, p)))
      return false;
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
      auto r = a.next(q, e);
      if (r == kNoState) continue;
      StateId pr = p;
      switch (a.alphabet().role(e)) {
        case kLow: pr = p == kNoState ? kNoState : a.next(p, e); break;
        case kHigh: break;
        case kDown: pr = intransitive ? r : p; break;
      }
      if (seen.insert({r, pr}).second) stack.emplace_back(r, pr);
    }
  }
  return true;
}

}  // namespace orwell::testing
