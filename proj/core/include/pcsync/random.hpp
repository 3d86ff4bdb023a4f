#pragma once

#include <cstdint>
#include <random>

#include "pcsync/automaton.hpp"
#include "pcsync/codes.hpp"
#include "pcsync/gadgets.hpp"

namespace pcsync {

using Rng = std::mt19937_64;

/// Maximal prefix code from a random full k-ary tree with `internal` inner
/// nodes, so its literal decoder has exactly `internal` states.
PrefixCode random_maximal_code(Rng& rng, std::size_t k, std::size_t internal);

/// A random maximal code with some codewords dropped (at least one dropped,
/// at least one kept). Never maximal.
PrefixCode random_nonmaximal_code(Rng& rng, std::size_t k, std::size_t internal);

/// Each transition defined with probability `density`.
PartialAutomaton random_automaton(Rng& rng, std::size_t n, std::size_t k, double density);

/// random_automaton plus a random Hamiltonian cycle, hence strongly connected.
PartialAutomaton random_strongly_connected(Rng& rng, std::size_t n, std::size_t k,
                                           double density);

/// m random subsets of {1..p}, patched so that the union covers everything.
SetCoverInstance random_set_cover(Rng& rng, std::size_t p, std::size_t m);

}  // namespace pcsync
