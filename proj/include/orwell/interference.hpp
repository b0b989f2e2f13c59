#pragma once

// Non-interference and intransitive non-interference deciders. Roles map
// observable -> Low, unobservable -> High, downgrading -> Down.

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "orwell/automata.hpp"
#include "orwell/observation.hpp"
#include "orwell/opacity.hpp"

namespace orwell {

struct InterferenceVerdict {
  bool holds = true;
  /// A projected word that escapes the language.
  std::optional<Word> witness;
  /// A word of the language whose projection is `witness`.
  std::optional<Word> source;
  /// Per entry-state sub-checks of the decomposed method.
  std::vector<LocalVerdict> breakdown;
};

enum class IniMethod { direct, decomposed, both };

/// Raised when the direct and decomposed INI deciders disagree.
class MethodDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// L satisfies NI iff π_Low(L) ⊆ L. Downgrading events, if any, are erased
/// like High ones.
inline InterferenceVerdict check_ni(const Lts& system) {
  if (!system.has_set(kLanguageSet)) throw InputError("system has no accepting set F");
  const auto low = system.alphabet().event_set(kLow);
  const Lts image = with_alphabet(project_language(system, kLanguageSet, low), system.alphabet());
  auto inclusion = is_subset(image, kLanguageSet, system, kLanguageSet);
  if (inclusion.holds) return {};
  InterferenceVerdict v;
  v.holds = false;
  v.witness = inclusion.counterexample;
  v.source = shortest_preimage(system, kLanguageSet, NaturalObservation{low}, *v.witness);
  return v;
}

/// INI by building the Orwellian image of L (verbatim through the last Down
/// event, Low-only afterwards) and testing its inclusion in L.
inline InterferenceVerdict check_ini_direct(const Lts& system) {
  if (!system.has_set(kLanguageSet)) throw InputError("system has no accepting set F");
  const auto low = system.alphabet().event_set(kLow);
  const auto down = system.alphabet().event_set(kDown);
  const Lts image = project_language_orwellian(system, kLanguageSet, low, down);
  auto inclusion = is_subset(image, kLanguageSet, system, kLanguageSet);
  if (inclusion.holds) return {};
  InterferenceVerdict v;
  v.holds = false;
  v.witness = inclusion.counterexample;
  v.source =
      shortest_preimage(system, kLanguageSet, OrwellianObservation{low, down}, *v.witness);
  return v;
}

/// INI as plain NI of the Down-free subsystem rooted at every downgrade
/// entry state. Local witnesses are lifted by their shortest entry word.
inline InterferenceVerdict check_ini_decomposed(const Lts& system) {
  if (!system.has_set(kLanguageSet)) throw InputError("system has no accepting set F");
  const auto down = system.alphabet().event_set(kDown);
  InterferenceVerdict v;
  for (auto q : downgrade_entry_states(system)) {
    LocalVerdict local;
    local.state = system.state_name(q);
    const auto sub = check_ni(trim(restriction(rebase(system, q), down)));
    local.holds = sub.holds;
    if (!sub.holds) {
      local.local_witness = sub.witness;
      Word lifted = to_word(system.alphabet(), *shortest_entry_trace(system, q));
      lifted.insert(lifted.end(), sub.witness->begin(), sub.witness->end());
      local.witness = lifted;
      if (v.holds || shortlex_less(system.alphabet(), lifted, *v.witness)) {
        v.holds = false;
        v.witness = lifted;
      }
    }
    v.breakdown.push_back(std::move(local));
  }
  if (!v.holds)
    v.source = shortest_preimage(system, kLanguageSet,
                                 OrwellianObservation{system.alphabet().event_set(kLow), down},
                                 *v.witness);
  return v;
}

/// Runs the selected INI method. With `both`, the two methods must agree on
/// the verdict; the decomposed result (which carries the breakdown) is returned.
inline InterferenceVerdict check_ini(const Lts& system, IniMethod method = IniMethod::both) {
  switch (method) {
    case IniMethod::direct: return check_ini_direct(system);
    case IniMethod::decomposed: return check_ini_decomposed(system);
    case IniMethod::both: break;
  }
  auto direct = check_ini_direct(system);
  auto decomposed = check_ini_decomposed(system);
  if (direct.holds != decomposed.holds)
    throw MethodDisagreement("direct and decomposed INI deciders disagree");
  return decomposed;
}

}  // namespace orwell
