#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include <boost/rational.hpp>

#include "pcsync/automaton.hpp"

namespace pcsync {

using Epsilon = boost::rational<std::int64_t>;

/// Caps for the exponential subset searches.
struct SearchBudget {
  std::size_t max_subset_nodes = 2'000'000;
  std::size_t max_word_len = std::numeric_limits<std::size_t>::max();
};

enum class SearchStatus {
  Found,
  NoneExists,        // reachable subset graph exhausted
  LengthCapReached,  // no word up to max_word_len; longer ones not explored
  BudgetExceeded,    // node cap hit
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::NoneExists;
  WordWitness witness;          // valid when status == Found
  std::size_t explored = 0;     // distinct subsets visited
};

/// Breadth-first search over subsets reachable from the full state set.
/// Returns the length-then-lexicographically least word meeting `goal`.
SearchOutcome shortest_word_exact(const PartialAutomaton& a, const Goal& goal,
                                  const SearchBudget& budget);

/// Same search started from an arbitrary subset.
SearchOutcome shortest_word_from(const PartialAutomaton& a, const StateSet& start,
                                 const Goal& goal, const SearchBudget& budget);

/// Smallest t with k^t >= n. A unary alphabet yields n.
std::size_t ceil_log(std::size_t k, std::size_t n);

/// Eppstein-style greedy: repeatedly merge the closest pair of the current
/// image. Input must be complete or strongly connected, and synchronizing.
WordWitness greedy_sync(const PartialAutomaton& a);

/// Word of length ceil_log(k, n) with minimum rank, lexicographically least
/// among those. On complete inputs the rank is at most ceil_log(k, n).
Word low_rank_word(const PartialAutomaton& a, bool allow_partial);

/// O(log n)-approximation for complete literal decoders.
WordWitness approx_sync_log(const PartialAutomaton& a);

/// (1 + eps)-approximation for complete literal decoders.
WordWitness approx_sync_eps(const PartialAutomaton& a, Epsilon eps,
                            const SearchBudget& budget = {});

/// O(log n)-approximation of a shortest mortal word for partial literal decoders.
WordWitness approx_mortal_log(const PartialAutomaton& a);

/// (1 + eps)-approximation of a shortest word avoiding `q`.
WordWitness approx_avoiding_eps(const PartialAutomaton& a, State q, Epsilon eps,
                                const SearchBudget& budget = {});

/// Shortest word (lexicographically least) undefined on `q`; nullopt if
/// every path from `q` stays defined.
std::optional<Word> shortest_killing_word(const PartialAutomaton& a, State q);

}  // namespace pcsync
