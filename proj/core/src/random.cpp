#include "pcsync/random.hpp"

#include <algorithm>
#include <numeric>

#include "pcsync/error.hpp"

namespace pcsync {
namespace {

std::vector<std::string> digit_alphabet(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::to_string(i));
  return out;
}

std::size_t pick(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

}  // namespace

PrefixCode random_maximal_code(Rng& rng, std::size_t k, std::size_t internal) {
  if (k < 2) throw InputError("random codes need at least two letters");
  if (internal < 1) throw InputError("random codes need at least one inner node");
  std::vector<Word> leaves{Word{}};
  for (std::size_t i = 0; i < internal; ++i) {
    std::size_t at = pick(rng, leaves.size());
    Word parent = std::move(leaves[at]);
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(at));
    for (Letter x = 0; x < k; ++x) {
      Word child = parent;
      child.push_back(x);
      leaves.push_back(std::move(child));
    }
  }
  return PrefixCode(digit_alphabet(k), std::move(leaves)).canonical();
}

PrefixCode random_nonmaximal_code(Rng& rng, std::size_t k, std::size_t internal) {
  auto full = random_maximal_code(rng, k, internal);
  const auto& words = full.words();
  std::vector<bool> keep(words.size());
  for (;;) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      keep[i] = std::bernoulli_distribution(0.6)(rng);
      kept += keep[i];
    }
    if (kept > 0 && kept < words.size()) break;
  }
  std::vector<Word> chosen;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (keep[i]) chosen.push_back(words[i]);
  return PrefixCode(full.alphabet(), std::move(chosen));
}

PartialAutomaton random_automaton(Rng& rng, std::size_t n, std::size_t k, double density) {
  PartialAutomaton a(n, digit_alphabet(k));
  std::bernoulli_distribution defined(density);
  for (State q = 0; q < n; ++q)
    for (Letter x = 0; x < k; ++x)
      if (defined(rng)) a.set(q, x, static_cast<State>(pick(rng, n)));
  return a;
}

PartialAutomaton random_strongly_connected(Rng& rng, std::size_t n, std::size_t k,
                                           double density) {
  auto a = random_automaton(rng, n, k, density);
  std::vector<State> cycle(n);
  std::iota(cycle.begin(), cycle.end(), State{0});
  std::shuffle(cycle.begin(), cycle.end(), rng);
  if (n > 1)
    for (std::size_t i = 0; i < n; ++i)
      a.set(cycle[i], static_cast<Letter>(pick(rng, k)), cycle[(i + 1) % n]);
  return a;
}

SetCoverInstance random_set_cover(Rng& rng, std::size_t p, std::size_t m) {
  if (p < 1 || m < 1) throw InputError("set cover needs p >= 1 and m >= 1");
  SetCoverInstance inst;
  inst.elements = p;
  inst.sets.resize(m);
  std::bernoulli_distribution member(0.35);
  std::vector<bool> covered(p + 1, false);
  for (auto& set : inst.sets)
    for (std::size_t x = 1; x <= p; ++x)
      if (member(rng)) {
        set.push_back(x);
        covered[x] = true;
      }
  for (std::size_t x = 1; x <= p; ++x)
    if (!covered[x]) {
      auto& set = inst.sets[pick(rng, m)];
      set.insert(std::upper_bound(set.begin(), set.end(), x), x);
    }
  return inst;
}

}  // namespace pcsync
