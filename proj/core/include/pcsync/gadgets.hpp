#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcsync/automaton.hpp"

namespace pcsync {

/// Elements are 1..elements; each set lists its members.
struct SetCoverInstance {
  std::size_t elements = 0;
  std::vector<std::vector<std::size_t>> sets;

  /// Throws InputError if a member is out of range or the union misses an element.
  void validate() const;
};

struct GadgetInstance {
  PartialAutomaton automaton;
  std::string kind;
  std::optional<std::size_t> expected_opt;
  std::map<std::string, std::string> provenance;
};

/// Brute-force minimum cover size over all subfamilies. Throws InputError
/// beyond 24 sets.
std::size_t min_cover_size(const SetCoverInstance& instance);

/// Pipe construction: element j owns states q(j,1..p), set k owns letter k,
/// plus a sink f. Shortest reset length is min(min cover, p).
GadgetInstance set_cover_gadget(const SetCoverInstance& instance);

/// State index of q(j, i) in the set cover gadget (1-based j, i).
State set_cover_pipe_state(std::size_t elements, std::size_t j, std::size_t i);

/// Lifts a complete, strongly acyclic, synchronizing automaton to a Huffman
/// decoder over k + 2 letters rooted at its sink, keeping the reset length.
GadgetInstance huffmanize(const PartialAutomaton& a);
GadgetInstance huffmanize(const GadgetInstance& source);

/// Adds s' copying the transitions of s and leaves s with a single
/// transition, letter 0 to s'.
GadgetInstance mortalize(const PartialAutomaton& a, State s);

/// The unique sink of `a` (every letter loops or is undefined), if exactly one exists.
std::optional<State> unique_sink(const PartialAutomaton& a);

}  // namespace pcsync
