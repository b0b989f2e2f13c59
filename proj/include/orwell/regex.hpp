#pragma once

// Regular expressions over declared events, for writing secrets.
//
//   expr   := term ('+' term)*
//   term   := factor factor*          (concatenation by juxtaposition)
//   factor := atom '*'*
//   atom   := EVENT | '(' expr ')' | '(' ')'      -- "()" is the empty word
//
// Event tokens are maximal runs of characters other than whitespace and
// "()+*".

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "orwell/alphabet.hpp"
#include "orwell/automata.hpp"

namespace orwell {

class RegexError : public InputError {
 public:
  RegexError(std::size_t position, const std::string& cause)
      : InputError("regex column " + std::to_string(position + 1) + ": " + cause),
        position_(position) {}
  /// Zero-based offset into the pattern.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class ThompsonBuilder {
 public:
  ThompsonBuilder(std::string_view pattern, const PartitionedAlphabet& alphabet)
      : text_(pattern), nfa_(alphabet) {
    nfa_.declare_set(kLanguageSet);
  }

  EpsilonNfa build() {
    skip_space();
    if (pos_ == text_.size()) throw RegexError(pos_, "empty pattern (use () for the empty word)");
    auto [start, end] = expr();
    skip_space();
    if (pos_ != text_.size()) throw RegexError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    nfa_.set_initial(start);
    nfa_.set_accepting(kLanguageSet, end);
    return std::move(nfa_);
  }

 private:
  using Fragment = std::pair<StateId, StateId>;

  StateId fresh() { return nfa_.add_state("n" + std::to_string(nfa_.num_states())); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool is_meta(char c) { return c == '(' || c == ')' || c == '+' || c == '*'; }

  bool at_atom() {
    skip_space();
    return pos_ < text_.size() && (text_[pos_] == '(' || !is_meta(text_[pos_]));
  }

  Fragment expr() {
    Fragment left = term();
    for (skip_space(); pos_ < text_.size() && text_[pos_] == '+'; skip_space()) {
      ++pos_;
      Fragment right = term();
      const auto s = fresh();
      const auto f = fresh();
      nfa_.add_transition(s, kSilent, left.first);
      nfa_.add_transition(s, kSilent, right.first);
      nfa_.add_transition(left.second, kSilent, f);
      nfa_.add_transition(right.second, kSilent, f);
      left = {s, f};
    }
    return left;
  }

  Fragment term() {
    if (!at_atom()) {
      if (pos_ == text_.size()) throw RegexError(pos_, "expected an operand at end of pattern");
      throw RegexError(pos_, "expected an operand before '" + std::string(1, text_[pos_]) + "'");
    }
    Fragment left = factor();
    while (at_atom()) {
      Fragment right = factor();
      nfa_.add_transition(left.second, kSilent, right.first);
      left = {left.first, right.second};
    }
    return left;
  }

  Fragment factor() {
    Fragment f = atom();
    for (skip_space(); pos_ < text_.size() && text_[pos_] == '*'; skip_space()) {
      ++pos_;
      const auto s = fresh();
      const auto e = fresh();
      nfa_.add_transition(s, kSilent, f.first);
      nfa_.add_transition(s, kSilent, e);
      nfa_.add_transition(f.second, kSilent, f.first);
      nfa_.add_transition(f.second, kSilent, e);
      f = {s, e};
    }
    return f;
  }

  Fragment atom() {
    skip_space();
    const auto begin = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        const auto s = fresh();
        const auto e = fresh();
        nfa_.add_transition(s, kSilent, e);
        return {s, e};
      }
      Fragment inner = expr();
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != ')')
        throw RegexError(pos_ == text_.size() ? begin : pos_, "unbalanced '('");
      ++pos_;
      return inner;
    }
    while (pos_ < text_.size() && !is_meta(text_[pos_]) &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string token(text_.substr(begin, pos_ - begin));
    const auto id = nfa_.alphabet().find(token);
    if (!id) throw RegexError(begin, "unknown event '" + token + "'");
    const auto s = fresh();
    const auto e = fresh();
    nfa_.add_transition(s, *id, e);
    return {s, e};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  EpsilonNfa nfa_;
};

}  // namespace detail

/// Thompson automaton of `pattern`, accepting set "F".
inline EpsilonNfa regex_to_nfa(std::string_view pattern, const PartitionedAlphabet& alphabet) {
  return detail::ThompsonBuilder(pattern, alphabet).build();
}

/// Complete deterministic automaton of `pattern` over `alphabet`, accepting
/// set "F", states renamed r0, r1, ... in discovery order.
inline Lts compile_regex(std::string_view pattern, const PartitionedAlphabet& alphabet) {
  const Lts dfa = determinize(regex_to_nfa(pattern, alphabet));
  Lts out(alphabet);
  out.declare_set(kLanguageSet);
  for (StateId q = 0; q < dfa.num_states(); ++q) out.add_state("r" + std::to_string(q));
  for (StateId q = 0; q < dfa.num_states(); ++q) {
    for (EventId e = 0; e < alphabet.size(); ++e)
      if (auto r = dfa.next(q, e); r != kNoState) out.add_transition(q, e, r);
    if (dfa.is_accepting(kLanguageSet, q)) out.set_accepting(kLanguageSet, q);
  }
  out.set_initial(dfa.initial());
  return out;
}

}  // namespace orwell
