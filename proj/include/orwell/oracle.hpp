#pragma once

// Bounded brute-force evaluation of the opacity definition, used as ground
// truth for the automaton-based deciders. Nothing here goes through
// determinization, complementation, restriction or entry states: secret and
// non-secret words are generated directly and their observations are computed
// by the left-to-right recursion of the projection.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <limits>
#include <unordered_set>
#include <vector>

#include "orwell/automata.hpp"
#include "orwell/observation.hpp"
#include "orwell/opacity.hpp"

namespace orwell {

/// If a word with an observation of length `observation_length` exists in the
/// language of an automaton with `states` states, one exists of at most this
/// length: each of the m+1 hidden stretches around the m observed events can
/// be taken without repeating a state.
inline constexpr std::size_t exactness_bound(std::size_t observation_length, std::size_t states) {
  return (observation_length + 1) * states + observation_length;
}

/// Finite slice of a language.
struct BoundedLanguage {
  /// Length-then-lexicographic order.
  std::vector<Word> words;
  std::size_t bound = 0;
  std::size_t complete_up_to = 0;
};

/// All words of accepting set `set` of length at most `max_length`.
inline BoundedLanguage enumerate_language(const Lts& a, std::string_view set,
                                          std::size_t max_length) {
  BoundedLanguage out;
  out.bound = max_length;
  out.complete_up_to = max_length;
  if (!a.has_initial()) return out;
  std::vector<std::pair<StateId, Trace>> layer{{a.initial(), {}}};
  for (std::size_t len = 0; !layer.empty(); ++len) {
    std::vector<std::pair<StateId, Trace>> next;
    for (const auto& [q, t] : layer) {
      if (a.is_accepting(set, q)) out.words.push_back(to_word(a.alphabet(), t));
      if (len == max_length) continue;
      for (EventId e = 0; e < a.alphabet().size(); ++e)
        if (auto r = a.next(q, e); r != kNoState) {
          auto u = t;
          u.push_back(e);
          next.emplace_back(r, std::move(u));
        }
    }
    layer = std::move(next);
  }
  return out;
}

/// Observations (up to a length cap) of the words accepted by a state
/// predicate, each with its shortest, lexicographically least, preimage.
struct ObservationSet {
  /// In order of discovery, i.e. by increasing representative word.
  std::vector<std::pair<Trace, Trace>> entries;
  std::map<Trace, std::size_t> index;
  /// Some branch was cut by the observation cap or the word-length bound.
  bool truncated = false;
};

namespace detail {

/// Interned event sequences: every sequence is a node id, extending by one
/// event is an array lookup.
class TraceTrie {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  explicit TraceTrie(std::size_t events) : width_(events) { add(kNone, kSilent, 0); }

  static constexpr std::uint32_t root() { return 0; }

  std::uint32_t extend(std::uint32_t id, EventId e) {
    auto& child = children_[id * width_ + e];
    if (child == kNone) {
      const auto length = nodes_[id].length + 1;
      const auto fresh = add(id, e, length);
      children_[id * width_ + e] = fresh;  // `child` may dangle after add()
      return fresh;
    }
    return child;
  }

  /// Existing extension, or kNone.
  std::uint32_t find(std::uint32_t id, EventId e) const { return children_[id * width_ + e]; }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t length(std::uint32_t id) const { return nodes_[id].length; }

  Trace trace(std::uint32_t id) const {
    Trace t;
    for (; id != root(); id = nodes_[id].parent) t.push_back(nodes_[id].last);
    std::reverse(t.begin(), t.end());
    return t;
  }

  /// Marks `id` and all its prefixes.
  void mark_prefixes(std::uint32_t id) {
    for (; !nodes_[id].marked; id = nodes_[id].parent) {
      nodes_[id].marked = true;
      if (id == root()) break;
    }
  }
  bool marked(std::uint32_t id) const { return nodes_[id].marked; }

 private:
  struct Entry {
    std::uint32_t parent;
    EventId last;
    std::uint32_t length;
    bool marked;
  };
  std::uint32_t add(std::uint32_t parent, EventId last, std::uint32_t length) {
    nodes_.push_back({parent, last, length, false});
    children_.resize(children_.size() + width_, kNone);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }
  std::size_t width_;
  std::vector<Entry> nodes_;
  std::vector<std::uint32_t> children_;
};

/// Observations as trie ids, each with the search node that first reached it.
struct Generated {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> found;
  std::vector<std::uint32_t> parent;
  std::vector<EventId> via;
  bool truncated = false;

  Trace path(std::uint32_t node) const {
    Trace t;
    for (; node != 0; node = parent[node]) t.push_back(via[node]);
    std::reverse(t.begin(), t.end());
    return t;
  }
};

/// Breadth-first generation of observations; see collect_observations. With
/// `only_marked`, sequences that are not marked prefixes in `trie` are not
/// followed, since they cannot become one of the marked observations.
template <class Accept>
Generated generate_observations(const Lts& a, Accept accept, const ObservationKind& kind,
                                std::size_t max_observation, std::size_t max_length,
                                TraceTrie& trie, bool only_marked) {
  enum class Kind : std::uint8_t { hidden, shown, downgrade };
  constexpr auto kNone = TraceTrie::kNone;
  const bool orwellian = kind.index() == 1;
  const auto events = a.alphabet().size();
  const auto n = a.num_states();
  std::vector<Kind> kinds(events, Kind::hidden);
  for (EventId e = 0; e < events; ++e) {
    const auto& name = a.alphabet().name(e);
    if (std::visit([&](const auto& k) { return k.observable.count(name) != 0; }, kind))
      kinds[e] = Kind::shown;
    if (orwellian && std::get<OrwellianObservation>(kind).downgrading.count(name) != 0)
      kinds[e] = Kind::downgrade;
  }
  // States from which a downgrade, respectively an accepted state, is reachable.
  std::vector<bool> may_downgrade(n, false), may_accept(n, false);
  for (StateId q = 0; q < n; ++q) may_accept[q] = accept(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId q = 0; q < n; ++q)
      for (EventId e = 0; e < events; ++e) {
        auto r = a.next(q, e);
        if (r == kNoState) continue;
        if (!may_accept[q] && may_accept[r]) may_accept[q] = changed = true;
        if (orwellian && !may_downgrade[q] && (kinds[e] == Kind::downgrade || may_downgrade[r]))
          may_downgrade[q] = changed = true;
      }
  }

  auto step = [&](std::uint32_t id, EventId e) {
    if (id == kNone) return kNone;
    if (!only_marked) return trie.extend(id, e);
    auto next = trie.find(id, e);
    return next != kNone && trie.marked(next) ? next : kNone;
  };

  // A node is (state, observation, verbatim word); observation or word may
  // be kNone when they can no longer matter.
  struct Node {
    StateId state;
    std::uint32_t observed;
    std::uint32_t word;
    std::uint32_t depth;
  };
  struct Key {
    StateId state;
    std::uint32_t observed;
    std::uint32_t word;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.state;
      h = h * 0x9E3779B97F4A7C15ULL ^ k.observed;
      h = h * 0x9E3779B97F4A7C15ULL ^ k.word;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  Generated out;
  if (!a.has_initial() || !may_accept[a.initial()]) return out;

  std::vector<Node> nodes;
  std::unordered_set<Key, KeyHash> seen;
  std::vector<bool> recorded;
  const std::uint32_t root = (only_marked && !trie.marked(TraceTrie::root())) ? kNone : TraceTrie::root();
  if (root == kNone) return out;
  nodes.push_back({a.initial(), root, orwellian && may_downgrade[a.initial()] ? root : kNone, 0});
  out.parent.push_back(0);
  out.via.push_back(kSilent);
  seen.insert({nodes[0].state, nodes[0].observed, nodes[0].word});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node node = nodes[i];
    if (node.observed != kNone && accept(node.state)) {
      if (recorded.size() <= node.observed) recorded.resize(trie.size(), false);
      if (!recorded[node.observed]) {
        recorded[node.observed] = true;
        out.found.emplace_back(node.observed, static_cast<std::uint32_t>(i));
      }
    }
    if (node.depth == max_length) {
      out.truncated = true;
      continue;
    }
    for (EventId e = 0; e < events; ++e) {
      auto r = a.next(node.state, e);
      if (r == kNoState || !may_accept[r]) continue;
      Node succ{r, node.observed, kNone, node.depth + 1};
      switch (kinds[e]) {
        case Kind::downgrade:
          // π(sα) = sα
          if (node.word == kNone && !only_marked) {
            out.truncated = true;
            continue;
          }
          if (node.word != kNone && trie.length(node.word) + 1 > max_observation) {
            out.truncated = true;
            continue;
          }
          succ.observed = step(node.word, e);
          break;
        case Kind::shown:
          // π(sα) = π(s)α
          if (node.observed != kNone && trie.length(node.observed) + 1 > max_observation) {
            out.truncated = true;
            continue;
          }
          succ.observed = step(node.observed, e);
          break;
        case Kind::hidden:
          // π(sα) = π(s)
          break;
      }
      if (node.word != kNone && trie.length(node.word) < max_observation && may_downgrade[r])
        succ.word = step(node.word, e);
      if (succ.observed == kNone && succ.word == kNone) continue;
      if (seen.insert({succ.state, succ.observed, succ.word}).second) {
        nodes.push_back(succ);
        out.parent.push_back(static_cast<std::uint32_t>(i));
        out.via.push_back(e);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Generates every observation of length <= `max_observation` produced by a
/// word of length <= `max_length` that ends in a state satisfying `accept`.
///
/// A search node is (state, observation so far, word so far). The word is
/// only needed while a later downgrade could still reveal it within the cap,
/// so it is dropped once longer than the cap or once no downgrade is
/// reachable; nodes are then merged. Search is breadth-first with events in
/// declaration order, so each observation is first met through its
/// shortest, lexicographically least, preimage.
template <class Accept>
ObservationSet collect_observations(const Lts& a, Accept accept, const ObservationKind& kind,
                                    std::size_t max_observation, std::size_t max_length) {
  detail::TraceTrie trie(a.alphabet().size());
  const auto g =
      detail::generate_observations(a, accept, kind, max_observation, max_length, trie, false);
  ObservationSet out;
  out.truncated = g.truncated;
  for (const auto& [id, node] : g.found) {
    out.index.emplace(trie.trace(id), out.entries.size());
    out.entries.emplace_back(trie.trace(id), g.path(node));
  }
  return out;
}

/// Oracle verdict with bookkeeping about how much was explored.
struct OracleRun {
  OpacityVerdict verdict;
  /// Distinct secret observations examined.
  std::size_t observations_checked = 0;
  /// Longest secret observation examined.
  std::size_t longest_observation = 0;
  /// Secret words were cut by the length bound or observation cap, so a
  /// "holds" verdict only covers the explored slice.
  bool truncated = false;
};

/// Evaluates opacity of "Fphi" for "F" literally: a secret word discloses iff
/// no non-secret word of the language shares its observation. Secret words
/// are explored up to `max_length` with observations up to `max_observation`;
/// non-secret preimages are searched up to the exactness bound of the longest
/// secret observation, which makes each per-observation answer exact.
inline OracleRun run_oracle(const Lts& system, const ObservationKind& kind,
                            std::size_t max_length, std::size_t max_observation = 10) {
  if (!system.has_set(kLanguageSet)) throw InputError("system has no accepting set F");
  if (!system.has_set(kSecretSet)) throw InputError("system has no secret set Fphi");
  auto secret = [&](StateId q) {
    return system.is_accepting(kLanguageSet, q) && system.is_accepting(kSecretSet, q);
  };
  auto nonsecret = [&](StateId q) {
    return system.is_accepting(kLanguageSet, q) && !system.is_accepting(kSecretSet, q);
  };

  OracleRun run;
  detail::TraceTrie trie(system.alphabet().size());
  const auto secrets = detail::generate_observations(system, secret, kind, max_observation,
                                                     max_length, trie, false);
  run.truncated = secrets.truncated;
  run.observations_checked = secrets.found.size();
  std::size_t longest = 0;
  for (const auto& [id, _] : secrets.found) longest = std::max(longest, trie.length(id));
  run.longest_observation = longest;

  // Non-secret words only matter through observations that are secret ones.
  for (const auto& [id, _] : secrets.found) trie.mark_prefixes(id);
  const auto others =
      detail::generate_observations(system, nonsecret, kind, longest,
                                    exactness_bound(longest, system.num_states()), trie, true);
  std::vector<bool> shared(trie.size(), false);
  for (const auto& [id, _] : others.found) shared[id] = true;
  for (const auto& [id, node] : secrets.found) {
    if (shared[id]) continue;
    run.verdict.holds = false;
    run.verdict.witness = to_word(system.alphabet(), secrets.path(node));
    run.verdict.observation = to_word(system.alphabet(), trie.trace(id));
    break;
  }
  return run;
}

inline OpacityVerdict oracle_check_opacity(const Lts& system, const ObservationKind& kind,
                                           std::size_t max_length,
                                           std::size_t max_observation = 10) {
  return run_oracle(system, kind, max_length, max_observation).verdict;
}

/// Default word-length budget for secret words: the exactness bound of the
/// observation cap for this system.
inline std::size_t default_oracle_length(const Lts& system, std::size_t max_observation = 10) {
  return exactness_bound(max_observation, system.num_states());
}

}  // namespace orwell
