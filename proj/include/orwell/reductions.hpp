#pragma once

// Executable reductions between opacity and (intransitive) non-interference.

#include <string>
#include <variant>
#include <vector>

#include "orwell/automata.hpp"
#include "orwell/observation.hpp"
#include "orwell/opacity.hpp"

namespace orwell {

struct ProvenanceEntry {
  std::string source_state;
  std::string layer;
};

struct ReductionOutput {
  std::variant<EpsilonNfa, Lts> automaton;
  /// Accepting set holding the target problem's language.
  std::string accepting = std::string(kLanguageSet);
  /// Low/High/Down (obs/unobs/down) roles of the target problem.
  PartitionedAlphabet partition;
  /// Indexed by state of `automaton`.
  std::vector<ProvenanceEntry> provenance;
  /// Fresh High event introduced by the construction, if any.
  std::optional<Event> marker;
};

/// Deterministic system of the target problem. Silent automata are
/// determinized, keeping only the target's accepting set.
inline Lts target_system(const ReductionOutput& out) {
  if (const auto* lts = std::get_if<Lts>(&out.automaton)) return *lts;
  return determinize(std::get<EpsilonNfa>(out.automaton), out.accepting);
}

/// How hidden events before the last downgrade are treated when reducing
/// Orwellian opacity to INI.
enum class HiddenPrefix {
  /// Hidden events stay visible (as High events) inside the verbatim prefix,
  /// so the reduced language is the Orwellian image of L \ φ plus the image
  /// of φ followed by the marker. Verdict-preserving.
  reveal,
  /// Hidden events are silent everywhere, downgrades are kept. This merges
  /// verbatim prefixes that differ only in hidden events and can turn a
  /// non-opaque secret into an INI-satisfying language.
  erase,
};

namespace detail {

inline void check_secret_sets(const Lts& system) {
  if (!system.has_set(kLanguageSet)) throw InputError("system has no accepting set F");
  if (!system.has_set(kSecretSet)) throw InputError("system has no secret set Fphi");
}

inline bool in_secret(const Lts& s, StateId q) {
  return s.is_accepting(kLanguageSet, q) && s.is_accepting(kSecretSet, q);
}
inline bool in_public(const Lts& s, StateId q) {
  return s.is_accepting(kLanguageSet, q) && !s.is_accepting(kSecretSet, q);
}

/// Layer-0 copy of `system` keeping events in `kept` and silencing the rest,
/// plus a marker move (q,0) -> (q,1) on every secret state. Kept events get
/// the role `role_of(source role)`.
template <class RoleOf>
ReductionOutput marker_gadget(const Lts& system, const EventSet& kept, RoleOf role_of) {
  check_secret_sets(system);
  PartitionedAlphabet target;
  for (const auto& e : system.alphabet().events())
    if (kept.count(e) != 0) target.add(e, role_of(system.alphabet().role(system.alphabet().id(e))));
  const Event marker = system.alphabet().fresh_name("h");
  const EventId h = target.add(marker, kHigh);

  EpsilonNfa n(target);
  n.declare_set(kLanguageSet);
  ReductionOutput out;
  std::vector<StateId> base(system.num_states()), top(system.num_states(), kNoState);
  for (StateId q = 0; q < system.num_states(); ++q) {
    base[q] = n.add_state("(" + system.state_name(q) + ",0)");
    out.provenance.push_back({system.state_name(q), "0"});
  }
  for (StateId q = 0; q < system.num_states(); ++q)
    if (in_secret(system, q)) {
      top[q] = n.add_state("(" + system.state_name(q) + ",1)");
      out.provenance.push_back({system.state_name(q), "1"});
    }
  for (StateId q = 0; q < system.num_states(); ++q) {
    for (EventId e = 0; e < system.alphabet().size(); ++e) {
      auto r = system.next(q, e);
      if (r == kNoState) continue;
      auto label = target.find(system.alphabet().name(e));
      n.add_transition(base[q], label ? *label : kSilent, base[r]);
    }
    if (in_secret(system, q)) {
      n.add_transition(base[q], h, top[q]);
      n.set_accepting(kLanguageSet, top[q]);
    } else if (in_public(system, q)) {
      n.set_accepting(kLanguageSet, base[q]);
    }
  }
  if (system.has_initial()) n.set_initial(base[system.initial()]);
  out.partition = target;
  out.marker = marker;
  out.automaton = std::move(n);
  return out;
}

}  // namespace detail

/// Static opacity of Fphi for F under π onto `observable` becomes NI of
/// L^b = π(L \ φ) ∪ π(φ)·h with Low = observable and High = {h}. States:
/// (q,0) for every q, (q,1) for every secret q.
inline ReductionOutput opacity_to_ni(const Lts& system, const EventSet& observable) {
  for (const auto& e : observable)
    if (!system.alphabet().contains(e)) throw InputError("unknown observable event '" + e + "'");
  return detail::marker_gadget(system, observable, [](EventRole) { return kLow; });
}

inline ReductionOutput opacity_to_ni(const Lts& system) {
  return opacity_to_ni(system, system.alphabet().event_set(EventRole::observable));
}

/// Orwellian opacity of Fphi for F becomes INI with Low = observable,
/// Down = downgrading and a fresh High marker h.
///
/// With HiddenPrefix::reveal the layer-0 part is the Orwellian image
/// automaton (states (q,point), (q,prefix), (q,tail)); the marker leaves
/// (q,tail) for secret q. Hidden events of the source are High in the target.
/// With HiddenPrefix::erase the layer-0 part is the source with hidden moves
/// silenced and downgrades kept.
inline ReductionOutput opacity_to_ini(const Lts& system,
                                      HiddenPrefix mode = HiddenPrefix::reveal) {
  detail::check_secret_sets(system);
  const auto& alphabet = system.alphabet();
  if (mode == HiddenPrefix::erase) {
    auto kept = alphabet.event_set(EventRole::observable);
    for (const auto& e : alphabet.event_set(EventRole::downgrading)) kept.insert(e);
    return detail::marker_gadget(system, kept, [](EventRole r) { return r; });
  }

  const auto observable = alphabet.event_set(EventRole::observable);
  const auto downgrading = alphabet.event_set(EventRole::downgrading);
  const EpsilonNfa image = orwellian_image_nfa(system, observable, downgrading);

  PartitionedAlphabet target = alphabet;
  const Event marker = alphabet.fresh_name("h");
  const EventId h = target.add(marker, kHigh);

  ReductionOutput out;
  EpsilonNfa n(target);
  n.declare_set(kLanguageSet);
  const auto count = static_cast<StateId>(system.num_states());
  static constexpr const char* kLayers[] = {"point", "prefix", "tail"};
  for (StateId q = 0; q < image.num_states(); ++q) {
    n.add_state(image.state_name(q));
    out.provenance.push_back({system.state_name(q % count), kLayers[q / count]});
  }
  std::vector<StateId> top(count, kNoState);
  for (StateId q = 0; q < count; ++q)
    if (detail::in_secret(system, q)) {
      top[q] = n.add_state("(" + system.state_name(q) + ",1)");
      out.provenance.push_back({system.state_name(q), "1"});
    }
  for (StateId q = 0; q < image.num_states(); ++q)
    for (const auto& edge : image.edges(q)) n.add_transition(q, edge.label, edge.target);
  for (StateId q = 0; q < count; ++q) {
    const StateId tail = q + 2 * count;
    if (detail::in_secret(system, q)) {
      n.add_transition(tail, h, top[q]);
      n.set_accepting(kLanguageSet, top[q]);
    } else if (detail::in_public(system, q)) {
      n.set_accepting(kLanguageSet, tail);
    }
  }
  if (image.initial() != kNoState) n.set_initial(image.initial());
  out.partition = target;
  out.marker = marker;
  out.automaton = std::move(n);
  return out;
}

/// Secret automaton over the system alphabet accepting exactly the words
/// that the Orwellian projection changes: words with a High event after
/// their last Down event. Complement of Low* ∪ Σ*·Down·Low*.
inline Lts projection_changing_words(const PartitionedAlphabet& alphabet) {
  Lts secret(alphabet);
  const auto clean = secret.add_state("clean");
  const auto dirty = secret.add_state("dirty");
  secret.set_initial(clean);
  secret.declare_set(kSecretSet);
  secret.set_accepting(kSecretSet, dirty);
  for (EventId e = 0; e < alphabet.size(); ++e) {
    switch (alphabet.role(e)) {
      case kLow:
        secret.add_transition(clean, e, clean);
        secret.add_transition(dirty, e, dirty);
        break;
      case kHigh:
        secret.add_transition(clean, e, dirty);
        secret.add_transition(dirty, e, dirty);
        break;
      case kDown:
        secret.add_transition(clean, e, clean);
        secret.add_transition(dirty, e, clean);
        break;
    }
  }
  return secret;
}

/// INI of F becomes Orwellian opacity (Σ_o = Low, Σ_d = Down) of the secret
/// {s ∈ L : projection(s) ≠ s}. The output is the incorporated product.
inline ReductionOutput ini_to_opacity(const Lts& system) {
  if (!system.has_set(kLanguageSet)) throw InputError("system has no accepting set F");
  const Lts secret = projection_changing_words(system.alphabet());
  Lts joint = incorporate_secret(system, kLanguageSet, secret, kSecretSet);
  ReductionOutput out;
  const auto from_system = factor_states(joint, system);
  const auto from_secret = factor_states(joint, secret);
  std::vector<ProvenanceEntry> prov;
  for (StateId q = 0; q < joint.num_states(); ++q)
    prov.push_back({system.state_name(from_system[q]), secret.state_name(from_secret[q])});
  out.provenance = std::move(prov);
  out.partition = system.alphabet();
  out.automaton = std::move(joint);
  return out;
}

}  // namespace orwell
