#pragma once

// Opacity deciders: static opacity through image inclusion, and Orwellian
// opacity split into one static check per downgrade entry state.

#include <optional>
#include <string>
#include <vector>

#include "orwell/automata.hpp"
#include "orwell/observation.hpp"

namespace orwell {

/// Result of one sub-check rooted at a downgrade entry state.
struct LocalVerdict {
  /// Entry state of the checked system.
  std::string state;
  /// When a separate secret automaton was incorporated: the state of the
  /// original system underlying `state`.
  std::optional<std::string> system_state;
  bool holds = true;
  /// Witness inside the restricted subsystem rooted at `state`.
  std::optional<Word> local_witness;
  /// The same witness prefixed with the shortest entry word of `state`.
  std::optional<Word> witness;
};

struct OpacityVerdict {
  bool holds = true;
  /// A disclosing trace of the system (a secret word whose whole
  /// observation class lies in the secret).
  std::optional<Word> witness;
  /// Observation of `witness`.
  std::optional<Word> observation;
  /// Per entry-state sub-checks; empty for static checks.
  std::vector<LocalVerdict> breakdown;
};

/// Length first, then lexicographic by event declaration order.
inline bool shortlex_less(const PartitionedAlphabet& alphabet, const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = alphabet.id(a[i]);
    auto y = alphabet.id(b[i]);
    if (x != y) return x < y;
  }
  return false;
}

/// Accepting set of a secret automaton: "Fphi" when declared, otherwise "F".
inline std::string_view secret_set_of(const Lts& secret) {
  return secret.has_set(kSecretSet) ? kSecretSet : kLanguageSet;
}

namespace detail {

inline constexpr std::string_view kSecretPart = "secret";
inline constexpr std::string_view kPublicPart = "public";

/// Copy of `system` with sets for L ∩ φ and L \ φ.
inline Lts split_secret(const Lts& system) {
  if (!system.has_set(kLanguageSet)) throw InputError("system has no accepting set F");
  if (!system.has_set(kSecretSet)) throw InputError("system has no secret set Fphi");
  Lts out = system;
  out.declare_set(kSecretPart);
  out.declare_set(kPublicPart);
  for (StateId q = 0; q < system.num_states(); ++q) {
    const bool in_l = system.is_accepting(kLanguageSet, q);
    const bool in_phi = system.is_accepting(kSecretSet, q);
    out.set_accepting(kSecretPart, q, in_l && in_phi);
    out.set_accepting(kPublicPart, q, in_l && !in_phi);
  }
  return out;
}

}  // namespace detail

/// Decides whether the secret (set "Fphi") is opaque for the language (set
/// "F") under natural projection onto `observable`, by testing
/// π(L ∩ φ) ⊆ π(L \ φ). On violation the witness is a shortest secret
/// preimage of the shortest observation outside π(L \ φ).
inline OpacityVerdict check_opacity_static(const Lts& system, const EventSet& observable) {
  for (const auto& e : observable)
    if (!system.alphabet().contains(e))
      throw InputError("observable event '" + e + "' is not in the alphabet");
  const Lts marked = detail::split_secret(system);
  const Lts secret_image = project_language(marked, detail::kSecretPart, observable);
  const Lts public_image = project_language(marked, detail::kPublicPart, observable);
  auto inclusion = is_subset(secret_image, detail::kSecretPart, public_image, detail::kPublicPart);
  if (inclusion.holds) return {};

  OpacityVerdict v;
  v.holds = false;
  v.observation = inclusion.counterexample;
  v.witness = shortest_preimage(marked, detail::kSecretPart, NaturalObservation{observable},
                                *inclusion.counterexample);
  return v;
}

/// Static check observing the alphabet's observable class.
inline OpacityVerdict check_opacity_static(const Lts& system) {
  return check_opacity_static(system, system.alphabet().event_set(EventRole::observable));
}

/// Decides opacity under the Orwellian projection of the system's partition.
/// One static sub-check runs per downgrade entry state q, on the reachable
/// part of the system restarted at q with downgrading moves deleted. The
/// breakdown lists every entry state in index order; the global witness is
/// the shortest lifted witness among failing sub-checks.
inline OpacityVerdict check_opacity_orwellian(const Lts& system) {
  const auto observable = system.alphabet().event_set(EventRole::observable);
  const auto downgrading = system.alphabet().event_set(EventRole::downgrading);
  detail::split_secret(system);  // validates the accepting sets

  OpacityVerdict v;
  for (auto q : downgrade_entry_states(system)) {
    LocalVerdict local;
    local.state = system.state_name(q);
    const Lts sub = trim(restriction(rebase(system, q), downgrading));
    const auto sub_verdict = check_opacity_static(sub, observable);
    local.holds = sub_verdict.holds;
    if (!sub_verdict.holds) {
      local.local_witness = sub_verdict.witness;
      auto entry = to_word(system.alphabet(), *shortest_entry_trace(system, q));
      Word lifted = entry;
      lifted.insert(lifted.end(), sub_verdict.witness->begin(), sub_verdict.witness->end());
      local.witness = lifted;
      if (v.holds || shortlex_less(system.alphabet(), lifted, *v.witness)) {
        v.holds = false;
        v.witness = lifted;
        Word observed = entry;
        observed.insert(observed.end(), sub_verdict.observation->begin(),
                        sub_verdict.observation->end());
        v.observation = observed;
      }
    }
    v.breakdown.push_back(std::move(local));
  }
  return v;
}

/// Incorporates `secret` into `system` first; state names in the breakdown
/// are those of the product.
inline OpacityVerdict check_opacity_orwellian(const Lts& system, const Lts& secret) {
  const Lts joint = incorporate_secret(system, kLanguageSet, secret, secret_set_of(secret));
  auto v = check_opacity_orwellian(joint);
  const auto origin = factor_states(joint, system);
  for (auto& local : v.breakdown)
    local.system_state = system.state_name(origin[joint.state(local.state)]);
  return v;
}

inline OpacityVerdict check_opacity_static(const Lts& system, const Lts& secret) {
  return check_opacity_static(
      incorporate_secret(system, kLanguageSet, secret, secret_set_of(secret)));
}

/// Every word of the language (set "F") of length at most `bound` with the
/// same observation as `w`, in length-then-lexicographic order.
inline std::vector<Word> disclosing_class(const Lts& system, const Word& w,
                                          const ObservationKind& kind, std::size_t bound) {
  if (!accepts(system, kLanguageSet, w))
    throw InputError("word '" + to_string(w) + "' is not in the language");
  const ObservationMatcher matcher(system.alphabet(), kind, observe(kind, w));
  std::vector<Word> out;

  struct Frame {
    StateId state;
    ObservationMatcher::Progress progress;
    Trace trace;
  };
  std::vector<Frame> layer{{system.initial(), matcher.start(), {}}};
  for (std::size_t len = 0; !layer.empty(); ++len) {
    std::vector<Frame> next;
    for (const auto& f : layer) {
      if (matcher.matches(f.progress) && system.is_accepting(kLanguageSet, f.state))
        out.push_back(to_word(system.alphabet(), f.trace));
      if (len == bound) continue;
      for (EventId e = 0; e < system.alphabet().size(); ++e) {
        auto r = system.next(f.state, e);
        if (r == kNoState) continue;
        auto p = matcher.advance(f.progress, e);
        if (!p) continue;
        Trace t = f.trace;
        t.push_back(e);
        next.push_back({r, *p, std::move(t)});
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace orwell
