#pragma once

#include "pcsync/automaton.hpp"
#include "pcsync/codes.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace pcsync::testing {

inline PrefixCode code_of(std::vector<std::string> words, std::vector<std::string> alphabet = {"0", "1"}) {
  std::vector<Word> out;
  for (const auto& s : words) {
    Word w;
    for (char c : s) w.push_back(static_cast<Letter>(std::find(alphabet.begin(), alphabet.end(), std::string(1, c)) - alphabet.begin()));
    out.push_back(std::move(w));
  }
  return PrefixCode(std::move(alphabet), std::move(out));
}

inline Word word_of(const std::string& s) {
  Word w;
  for (char c : s) w.push_back(static_cast<Letter>(c - '0'));
  return w;
}

/// Literal decoder of {0, 10, 11}: state 0 = root, state 1 = "1".
inline PartialAutomaton small_decoder() { return literal_decoder(code_of({"0", "10", "11"})); }

inline PartialAutomaton single_loop(std::size_t letters) {
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < letters; ++i) alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  return PartialAutomaton(1, alphabet, std::vector<State>(letters, 0));
}

}  // namespace pcsync::testing
