#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orwell {

/// Raised for malformed models, unknown states or events, and alphabet mismatches.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Event = std::string;
using Word = std::vector<Event>;
using EventSet = std::set<Event, std::less<>>;

using EventId = std::uint32_t;
using StateId = std::uint32_t;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();
inline constexpr EventId kSilent = std::numeric_limits<EventId>::max();

/// Role of an event. The same three classes serve opacity (observable,
/// unobservable, downgrading) and interference (Low, High, Down).
enum class EventRole : std::uint8_t { observable, unobservable, downgrading };

inline constexpr EventRole kLow = EventRole::observable;
inline constexpr EventRole kHigh = EventRole::unobservable;
inline constexpr EventRole kDown = EventRole::downgrading;

inline std::string_view role_keyword(EventRole role) {
  switch (role) {
    case EventRole::observable: return "obs";
    case EventRole::unobservable: return "unobs";
    case EventRole::downgrading: return "down";
  }
  return "?";
}

inline bool is_event_token(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  });
}

/// Finite event set split into three disjoint role classes. Events keep their
/// declaration order, which is the order used for lexicographic comparisons
/// of witnesses.
class PartitionedAlphabet {
 public:
  PartitionedAlphabet() = default;

  static PartitionedAlphabet from_roles(const std::vector<Event>& observable,
                                        const std::vector<Event>& unobservable,
                                        const std::vector<Event>& downgrading) {
    PartitionedAlphabet a;
    for (const auto& e : observable) a.add(e, EventRole::observable);
    for (const auto& e : unobservable) a.add(e, EventRole::unobservable);
    for (const auto& e : downgrading) a.add(e, EventRole::downgrading);
    return a;
  }

  EventId add(const Event& name, EventRole role) {
    if (!is_event_token(name)) throw InputError("invalid event name '" + name + "'");
    if (index_.count(name) != 0) throw InputError("event '" + name + "' declared twice");
    const auto id = static_cast<EventId>(names_.size());
    names_.push_back(name);
    roles_.push_back(role);
    index_.emplace(name, id);
    return id;
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  const Event& name(EventId id) const { return names_.at(id); }
  EventRole role(EventId id) const { return roles_.at(id); }
  const std::vector<Event>& events() const noexcept { return names_; }

  std::optional<EventId> find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  EventId id(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw InputError("unknown event '" + std::string(name) + "'");
  }

  bool contains(std::string_view name) const { return index_.find(name) != index_.end(); }

  std::vector<Event> events_with(EventRole role) const {
    std::vector<Event> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (roles_[i] == role) out.push_back(names_[i]);
    return out;
  }

  EventSet event_set(EventRole role) const {
    auto v = events_with(role);
    return EventSet(v.begin(), v.end());
  }

  EventSet all_events() const { return EventSet(names_.begin(), names_.end()); }

  /// Same event names in the same order; roles are not compared.
  bool same_events(const PartitionedAlphabet& other) const { return names_ == other.names_; }

  /// Alphabet with the given events removed, order and roles preserved.
  PartitionedAlphabet without(const EventSet& removed) const {
    PartitionedAlphabet out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (removed.count(names_[i]) == 0) out.add(names_[i], roles_[i]);
    return out;
  }

  /// Alphabet keeping only the given events, order and roles preserved.
  PartitionedAlphabet only(const EventSet& kept) const {
    PartitionedAlphabet out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (kept.count(names_[i]) != 0) out.add(names_[i], roles_[i]);
    return out;
  }

  /// Returns a fresh event name derived from `base` that is not yet used.
  std::string fresh_name(const std::string& base) const {
    if (!contains(base)) return base;
    for (int i = 1;; ++i) {
      auto candidate = base + "_" + std::to_string(i);
      if (!contains(candidate)) return candidate;
    }
  }

  friend bool operator==(const PartitionedAlphabet& a, const PartitionedAlphabet& b) {
    return a.names_ == b.names_ && a.roles_ == b.roles_;
  }

 private:
  std::vector<Event> names_;
  std::vector<EventRole> roles_;
  std::map<Event, EventId, std::less<>> index_;
};

inline std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

/// Splits a space-separated event list; the empty string is the empty word.
inline Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) w.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return w;
}

}  // namespace orwell
