#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pcsync/automaton.hpp"
#include "pcsync/error.hpp"

namespace pcsync {

using Rational = boost::multiprecision::cpp_rational;

/// Finite prefix code over an ordered alphabet. Construction validates.
class PrefixCode {
 public:
  /// Throws PrefixViolation or InputError. Word order is preserved.
  PrefixCode(std::vector<std::string> alphabet, std::vector<Word> words);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }

  bool contains(const Word& w) const;

  /// Same words in length-then-lexicographic order.
  PrefixCode canonical() const;

  friend bool operator==(const PrefixCode&, const PrefixCode&) = default;

 private:
  std::vector<std::string> alphabet_;
  std::vector<Word> words_;
};

/// Word `prefix` (by index) is a prefix of word `longer`.
class PrefixViolation : public InputError {
 public:
  PrefixViolation(std::size_t prefix, std::size_t longer, const std::string& what)
      : InputError(what), prefix_index(prefix), longer_index(longer) {}
  std::size_t prefix_index;
  std::size_t longer_index;
};

struct CodeMetadata {
  Rational kraft_sum;
  bool is_maximal = false;
  std::size_t min_len = 0;
  std::size_t max_len = 0;
};

struct ValidatedCode {
  PrefixCode code;
  CodeMetadata metadata;
};

CodeMetadata code_metadata(const PrefixCode& code);
ValidatedCode validate_code(std::vector<std::string> alphabet, std::vector<Word> words);

/// Proper prefixes in length-then-lexicographic order; index i is decoder state i.
std::vector<Word> proper_prefixes(const PrefixCode& code);

/// Decoder whose states are the proper prefixes, reading a codeword returns
/// to the root (state 0). Transitions leaving the code tree stay undefined.
PartialAutomaton literal_decoder(const PrefixCode& code);

/// All first-return words of `root` up to `max_len`. Branches that can no
/// longer reach `root` are pruned; nullopt if a live branch outgrows the cap.
std::optional<PrefixCode> first_return_code(const PartialAutomaton& a, State root,
                                            std::size_t max_len);

/// beta[a] is the index in Z.words() that letter a of H_Y is rewritten to.
struct CompositionMap {
  std::vector<std::size_t> beta;

  static CompositionMap identity(std::size_t size);
};

/// Replaces the out-transitions of every state of `hy` by a copy of the code
/// tree of `z`. States 0..n_Y-1 keep their indices.
PartialAutomaton compose_decoders(const PartialAutomaton& hy, const PrefixCode& z,
                                  const CompositionMap& beta);

inline constexpr std::size_t kDefaultCodewordCap = std::size_t{1} << 20;

/// 0{0,1}^(n-1) ∪ 1{0,1}^n.
PrefixCode wielandt_code(std::size_t n, std::size_t cap = kDefaultCodewordCap);
/// All k^L words of length L over symbols "0".."k-1".
PrefixCode uniform_code(std::size_t k, std::size_t length, std::size_t cap = kDefaultCodewordCap);
/// {(0^n 1^n)^n, (1^n 0^n)^n}.
PrefixCode two_word_code(std::size_t n, std::size_t cap = kDefaultCodewordCap);

/// Dispatch by family name: "wielandt" (n), "uniform" (k, L), "twoword" (n).
PrefixCode generate_code(std::string_view family, std::span<const std::size_t> params,
                         std::size_t cap = kDefaultCodewordCap);

}  // namespace pcsync
