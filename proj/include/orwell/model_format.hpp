#pragma once

// Line-oriented model files:
//
//   alphabet obs l          # observable (Low)
//   alphabet unobs h        # unobservable (High)
//   alphabet down d         # downgrading (Down)
//   states 1 2 3
//   init 1
//   accept F: all
//   accept Fphi: 3
//   trans 1 h 2
//
// Tokens are whitespace-delimited, '#' starts a comment. Event declaration
// order fixes the lexicographic order of witnesses.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "orwell/alphabet.hpp"
#include "orwell/automata.hpp"

namespace orwell {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& cause)
      : InputError(line == 0 ? cause : "line " + std::to_string(line) + ": " + cause),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Event names must not collide with the regex operators.
inline bool is_model_event_token(std::string_view token) {
  return is_event_token(token) && token.find_first_of("()+*") == std::string_view::npos;
}

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct ModelLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

}  // namespace detail

/// Parses a model. If no "accept F" line is present, every state is in F.
/// In accept lists the keyword `all` stands for every state unless a state
/// is itself named "all".
inline Lts parse_model(std::string_view text) {
  std::vector<detail::ModelLine> lines;
  {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      auto line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      auto tokens = detail::split_tokens(line);
      if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
      pos = end + 1;
    }
  }

  // Pass 1: alphabet and states, in declaration order.
  PartitionedAlphabet alphabet;
  std::vector<std::pair<std::string, std::size_t>> states;
  std::map<std::string, std::size_t, std::less<>> state_line;
  for (const auto& [number, tokens] : lines) {
    const auto& directive = tokens[0];
    if (directive == "alphabet") {
      if (tokens.size() < 2) throw ParseError(number, "alphabet needs a role");
      EventRole role;
      if (tokens[1] == "obs") role = EventRole::observable;
      else if (tokens[1] == "unobs") role = EventRole::unobservable;
      else if (tokens[1] == "down") role = EventRole::downgrading;
      else throw ParseError(number, "unknown event role '" + tokens[1] + "'");
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (!is_model_event_token(tokens[i]))
          throw ParseError(number, "event '" + tokens[i] + "' contains a reserved character");
        if (alphabet.contains(tokens[i]))
          throw ParseError(number, "event '" + tokens[i] + "' declared twice");
        alphabet.add(tokens[i], role);
      }
    } else if (directive == "states") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!state_line.emplace(tokens[i], number).second)
          throw ParseError(number, "state '" + tokens[i] + "' declared twice");
        states.emplace_back(tokens[i], number);
      }
    } else if (directive != "init" && directive != "accept" && directive != "trans") {
      throw ParseError(number, "unknown directive '" + directive + "'");
    }
  }

  Lts a(alphabet);
  for (const auto& [name, _] : states) a.add_state(name);
  auto state_at = [&](std::size_t number, const std::string& name) {
    auto q = a.find_state(name);
    if (!q) throw ParseError(number, "undeclared state '" + name + "'");
    return *q;
  };

  // Pass 2: init, accepting sets, transitions.
  std::optional<std::size_t> init_line;
  bool has_language = false;
  for (const auto& [number, tokens] : lines) {
    const auto& directive = tokens[0];
    if (directive == "init") {
      if (tokens.size() != 2) throw ParseError(number, "init takes exactly one state");
      if (init_line) throw ParseError(number, "duplicate init (first on line " +
                                                  std::to_string(*init_line) + ")");
      init_line = number;
      a.set_initial(state_at(number, tokens[1]));
    } else if (directive == "accept") {
      // "accept F: ..." or "accept F : ..."
      std::vector<std::string> rest(tokens.begin() + 1, tokens.end());
      if (rest.empty()) throw ParseError(number, "accept needs a set name");
      std::string set = rest[0];
      std::size_t first = 1;
      if (!set.empty() && set.back() == ':') {
        set.pop_back();
      } else if (rest.size() > 1 && rest[1] == ":") {
        first = 2;
      } else {
        throw ParseError(number, "expected ':' after accept set name");
      }
      if (set != kLanguageSet && set != kSecretSet)
        throw ParseError(number, "unknown accepting set '" + set + "' (expected F or Fphi)");
      if (a.has_set(set)) throw ParseError(number, "accepting set '" + set + "' given twice");
      a.declare_set(set);
      if (set == kLanguageSet) has_language = true;
      for (std::size_t i = first; i < rest.size(); ++i) {
        if (rest[i] == "all" && !a.find_state("all")) {
          for (StateId q = 0; q < a.num_states(); ++q) a.set_accepting(set, q);
          continue;
        }
        a.set_accepting(set, state_at(number, rest[i]));
      }
    } else if (directive == "trans") {
      if (tokens.size() != 4) throw ParseError(number, "trans takes SRC EVENT DST");
      const auto from = state_at(number, tokens[1]);
      const auto e = alphabet.find(tokens[2]);
      if (!e) throw ParseError(number, "undeclared event '" + tokens[2] + "'");
      const auto to = state_at(number, tokens[3]);
      if (auto existing = a.next(from, *e); existing != kNoState)
        throw ParseError(number, "nondeterministic: state '" + tokens[1] + "' already has a '" +
                                     tokens[2] + "' transition to '" +
                                     a.state_name(existing) + "'");
      a.add_transition(from, *e, to);
    }
  }
  if (!init_line) throw ParseError(lines.empty() ? 0 : lines.back().number, "missing init");
  if (!has_language) {
    a.declare_set(kLanguageSet);
    for (StateId q = 0; q < a.num_states(); ++q) a.set_accepting(kLanguageSet, q);
  }
  return a;
}

/// Writes a model in the format read by parse_model. Only the sets F and Fphi
/// are written.
inline std::string render_model(const Lts& a) {
  std::ostringstream out;
  const auto& alphabet = a.alphabet();
  // One alphabet line per run of equal roles keeps the declaration order.
  for (EventId e = 0; e < alphabet.size();) {
    const auto role = alphabet.role(e);
    out << "alphabet " << role_keyword(role);
    for (; e < alphabet.size() && alphabet.role(e) == role; ++e) out << ' ' << alphabet.name(e);
    out << '\n';
  }
  out << "states";
  for (StateId q = 0; q < a.num_states(); ++q) out << ' ' << a.state_name(q);
  out << '\n';
  if (a.has_initial()) out << "init " << a.state_name(a.initial()) << '\n';
  for (auto set : {kLanguageSet, kSecretSet}) {
    if (!a.has_set(set)) continue;
    out << "accept " << set << ':';
    for (auto q : a.accepting_states(set)) out << ' ' << a.state_name(q);
    out << '\n';
  }
  for (StateId q = 0; q < a.num_states(); ++q)
    for (EventId e = 0; e < alphabet.size(); ++e)
      if (auto r = a.next(q, e); r != kNoState)
        out << "trans " << a.state_name(q) << ' ' << alphabet.name(e) << ' ' << a.state_name(r)
            << '\n';
  return out.str();
}

inline Lts load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_model(buffer.str());
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace orwell
