#include "pcsync/codes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pcsync/error.hpp"

namespace pcsync {
namespace {

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

std::string render(const Word& w, const std::vector<std::string>& alphabet) {
  bool wide = std::any_of(alphabet.begin(), alphabet.end(),
                          [](const std::string& s) { return s.size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i > 0) out += ' ';
    out += alphabet[w[i]];
  }
  return out;
}

std::vector<std::string> binary_alphabet() { return {"0", "1"}; }

void check_cap(std::size_t count, std::size_t cap) {
  if (count > cap)
    throw InputError("code would have " + std::to_string(count) + " codewords, cap is " +
                     std::to_string(cap));
}

// Appends every word of length `len` over k letters to `out`, each prefixed by `head`.
void all_words(const Word& head, std::size_t k, std::size_t len, std::vector<Word>& out) {
  Word w = head;
  w.resize(head.size() + len, 0);
  for (;;) {
    out.push_back(w);
    std::size_t i = w.size();
    while (i > head.size() && w[i - 1] == k - 1) w[--i] = 0;
    if (i == head.size()) return;
    ++w[i - 1];
  }
}

}  // namespace

PrefixCode::PrefixCode(std::vector<std::string> alphabet, std::vector<Word> words)
    : alphabet_(std::move(alphabet)), words_(std::move(words)) {
  if (alphabet_.empty()) throw InputError("code alphabet is empty");
  std::set<std::string> names;
  for (const auto& s : alphabet_)
    if (!names.insert(s).second) throw InputError("duplicate symbol '" + s + "'");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw InputError("codeword " + std::to_string(i) + " is empty");
    for (Letter x : words_[i])
      if (x >= alphabet_.size())
        throw InputError("codeword " + std::to_string(i) + " uses a letter outside the alphabet");
  }
  // After lexicographic sorting, a prefix is immediately followed by one of
  // its extensions.
  std::vector<std::size_t> order(words_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return words_[a] < words_[b]; });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const Word& shorter = words_[order[i]];
    const Word& longer = words_[order[i + 1]];
    if (is_prefix(shorter, longer)) {
      std::size_t p = order[i], q = order[i + 1];
      if (shorter.size() == longer.size()) {
        if (p > q) std::swap(p, q);
        throw PrefixViolation(p, q, "duplicate codeword '" + render(shorter, alphabet_) + "'");
      }
      throw PrefixViolation(p, q, "'" + render(shorter, alphabet_) + "' is a prefix of '" +
                                      render(longer, alphabet_) + "'");
    }
  }
}

bool PrefixCode::contains(const Word& w) const {
  return std::find(words_.begin(), words_.end(), w) != words_.end();
}

PrefixCode PrefixCode::canonical() const {
  auto sorted = words_;
  std::sort(sorted.begin(), sorted.end(), shortlex_less);
  return PrefixCode(alphabet_, std::move(sorted));
}

CodeMetadata code_metadata(const PrefixCode& code) {
  using boost::multiprecision::cpp_int;
  CodeMetadata m;
  std::map<std::size_t, std::size_t> by_length;
  for (const auto& w : code.words()) ++by_length[w.size()];
  if (by_length.empty()) return m;
  m.min_len = by_length.begin()->first;
  m.max_len = by_length.rbegin()->first;
  // sum count_L * k^(M-L) / k^M, exact.
  const cpp_int k = static_cast<unsigned>(code.alphabet().size());
  cpp_int numerator = 0;
  for (auto [len, count] : by_length)
    numerator += cpp_int(count) * boost::multiprecision::pow(k, static_cast<unsigned>(m.max_len - len));
  m.kraft_sum = Rational(numerator, boost::multiprecision::pow(k, static_cast<unsigned>(m.max_len)));
  m.is_maximal = m.kraft_sum == 1;
  return m;
}

ValidatedCode validate_code(std::vector<std::string> alphabet, std::vector<Word> words) {
  PrefixCode code(std::move(alphabet), std::move(words));
  auto meta = code_metadata(code);
  return {std::move(code), std::move(meta)};
}

std::vector<Word> proper_prefixes(const PrefixCode& code) {
  std::set<Word> prefixes;
  prefixes.insert(Word{});
  for (const auto& w : code.words())
    for (std::size_t len = 1; len < w.size(); ++len) prefixes.insert(Word(w.begin(), w.begin() + len));
  std::vector<Word> out(prefixes.begin(), prefixes.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

PartialAutomaton literal_decoder(const PrefixCode& code) {
  if (code.size() == 0) throw InputError("literal decoder of an empty code");
  auto prefixes = proper_prefixes(code);
  std::map<Word, State> index;
  for (State i = 0; i < prefixes.size(); ++i) index.emplace(prefixes[i], i);
  std::set<Word> words(code.words().begin(), code.words().end());

  PartialAutomaton a(prefixes.size(), code.alphabet());
  for (State q = 0; q < prefixes.size(); ++q)
    for (Letter x = 0; x < code.alphabet().size(); ++x) {
      Word next = prefixes[q];
      next.push_back(x);
      if (auto it = index.find(next); it != index.end()) a.set(q, x, it->second);
      else if (words.count(next)) a.set(q, x, 0);
    }
  return a;
}

std::optional<PrefixCode> first_return_code(const PartialAutomaton& a, State root,
                                            std::size_t max_len) {
  if (root >= a.size()) throw InputError("state index out of range: " + std::to_string(root));
  if (max_len == 0) throw InputError("max_len must be at least 1");

  // States that can still reach the root.
  std::vector<bool> live(a.size(), false);
  live[root] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < a.size(); ++q) {
      if (live[q]) continue;
      for (Letter x = 0; x < a.alphabet_size(); ++x) {
        State t = a.next(q, x);
        if (t != kUndefined && live[t]) {
          live[q] = true;
          changed = true;
          break;
        }
      }
    }
  }

  std::vector<Word> words;
  Word path;
  bool overflow = false;
  auto walk = [&](auto&& self, State q) -> void {
    for (Letter x = 0; x < a.alphabet_size() && !overflow; ++x) {
      State t = a.next(q, x);
      if (t == kUndefined || !live[t]) continue;
      path.push_back(x);
      if (t == root) words.push_back(path);
      else if (path.size() >= max_len) overflow = true;
      else self(self, t);
      path.pop_back();
    }
  };
  walk(walk, root);
  if (overflow) return std::nullopt;
  return PrefixCode(a.alphabet(), std::move(words));
}

CompositionMap CompositionMap::identity(std::size_t size) {
  CompositionMap m;
  m.beta.resize(size);
  for (std::size_t i = 0; i < size; ++i) m.beta[i] = i;
  return m;
}

PartialAutomaton compose_decoders(const PartialAutomaton& hy, const PrefixCode& z,
                                  const CompositionMap& beta) {
  if (hy.alphabet_size() != z.size())
    throw InputError("decoder has " + std::to_string(hy.alphabet_size()) +
                     " letters but the code has " + std::to_string(z.size()) + " words");
  if (beta.beta.size() != z.size()) throw InputError("composition map has the wrong size");
  std::vector<Letter> inverse(z.size(), kUndefined);
  for (Letter a = 0; a < beta.beta.size(); ++a) {
    std::size_t j = beta.beta[a];
    if (j >= z.size() || inverse[j] != kUndefined)
      throw InputError("composition map is not a bijection onto the code");
    inverse[j] = a;
  }
  if (!code_metadata(z).is_maximal) throw InputError("composition requires a maximal code");

  auto tree = proper_prefixes(z);
  std::map<Word, State> node;
  for (State i = 0; i < tree.size(); ++i) node.emplace(tree[i], i);
  std::map<Word, std::size_t> leaf;
  for (std::size_t j = 0; j < z.size(); ++j) leaf.emplace(z.words()[j], j);

  const std::size_t ny = hy.size();
  const std::size_t inner = tree.size() - 1;
  auto state_of = [&](State q, State tree_node) -> State {
    return tree_node == 0 ? q : static_cast<State>(ny + q * inner + (tree_node - 1));
  };

  PartialAutomaton out(ny * tree.size(), z.alphabet());
  for (State q = 0; q < ny; ++q)
    for (State u = 0; u < tree.size(); ++u)
      for (Letter c = 0; c < z.alphabet().size(); ++c) {
        Word next = tree[u];
        next.push_back(c);
        if (auto it = node.find(next); it != node.end()) {
          out.set(state_of(q, u), c, state_of(q, it->second));
        } else {
          State target = hy.next(q, inverse[leaf.at(next)]);
          out.set(state_of(q, u), c, target);
        }
      }
  return out;
}

PrefixCode wielandt_code(std::size_t n, std::size_t cap) {
  if (n < 1) throw InputError("wielandt family needs n >= 1");
  if (n >= 62) throw InputError("wielandt parameter too large");
  check_cap((std::size_t{1} << (n - 1)) + (std::size_t{1} << n), cap);
  std::vector<Word> words;
  all_words(Word{0}, 2, n - 1, words);
  all_words(Word{1}, 2, n, words);
  return PrefixCode(binary_alphabet(), std::move(words));
}

PrefixCode uniform_code(std::size_t k, std::size_t length, std::size_t cap) {
  if (k < 1 || length < 1) throw InputError("uniform family needs k >= 1 and L >= 1");
  std::size_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > cap / k) check_cap(cap + 1, cap);
    count *= k;
  }
  check_cap(count, cap);
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < k; ++i) alphabet.push_back(std::to_string(i));
  std::vector<Word> words;
  all_words(Word{}, k, length, words);
  return PrefixCode(std::move(alphabet), std::move(words));
}

PrefixCode two_word_code(std::size_t n, std::size_t cap) {
  if (n < 1) throw InputError("two-word family needs n >= 1");
  check_cap(2, cap);
  Word first, second;
  for (std::size_t block = 0; block < n; ++block) {
    first.insert(first.end(), n, 0);
    first.insert(first.end(), n, 1);
    second.insert(second.end(), n, 1);
    second.insert(second.end(), n, 0);
  }
  return PrefixCode(binary_alphabet(), {std::move(first), std::move(second)});
}

PrefixCode generate_code(std::string_view family, std::span<const std::size_t> params,
                         std::size_t cap) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw InputError(std::string(family) + " takes " + std::to_string(count) + " parameter(s)");
  };
  if (family == "wielandt") {
    need(1);
    return wielandt_code(params[0], cap);
  }
  if (family == "uniform") {
    need(2);
    return uniform_code(params[0], params[1], cap);
  }
  if (family == "twoword") {
    need(1);
    return two_word_code(params[0], cap);
  }
  throw InputError("unknown code family '" + std::string(family) + "'");
}

}  // namespace pcsync
