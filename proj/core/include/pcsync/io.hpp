#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcsync/automaton.hpp"
#include "pcsync/error.hpp"
#include "pcsync/codes.hpp"
#include "pcsync/gadgets.hpp"

namespace pcsync {

/// Parse error carrying a 1-based location.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                   message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

/// `dfa <n> <k>`, a symbol line, then n rows of k targets (`-` = undefined).
/// Lines whose first non-blank character is `#` are comments.
PartialAutomaton parse_automaton(std::string_view text);
std::string serialize_automaton(const PartialAutomaton& a);

/// `code <symbols...>` then one codeword per line.
PrefixCode parse_code(std::string_view text);
std::string serialize_code(const PrefixCode& code);

/// `setcover <p>` then one line per set listing its elements.
SetCoverInstance parse_set_cover(std::string_view text);
std::string serialize_set_cover(const SetCoverInstance& instance);

/// Symbol names concatenated; separated by spaces when some name is longer
/// than one character.
std::string render_word(const Word& w, const std::vector<std::string>& alphabet);
Word parse_word(std::string_view text, const std::vector<std::string>& alphabet);

/// Graphviz digraph, one edge per defined transition.
std::string export_dot(const PartialAutomaton& a);

/// FNV-1a, hex encoded.
std::string digest(std::string_view bytes);

}  // namespace pcsync
