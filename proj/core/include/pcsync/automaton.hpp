#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pcsync/state_set.hpp"

namespace pcsync {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

inline constexpr State kUndefined = std::numeric_limits<State>::max();

/// Deterministic automaton whose transition function may be undefined.
///
/// States are dense indices 0..n-1, letters are indices into an ordered
/// alphabet of distinct symbol names. Applying an undefined transition removes
/// the state from any set being mapped.
class PartialAutomaton {
 public:
  /// `table` is row-major, n rows of k entries; kUndefined marks a missing
  /// transition. Throws InputError when an invariant is violated.
  PartialAutomaton(std::size_t states, std::vector<std::string> alphabet,
                   std::vector<State> table);

  /// Automaton with every transition undefined.
  PartialAutomaton(std::size_t states, std::vector<std::string> alphabet);

  std::size_t size() const { return states_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  State next(State q, Letter a) const { return table_[q * alphabet_.size() + a]; }
  bool defined(State q, Letter a) const { return next(q, a) != kUndefined; }
  void set(State q, Letter a, State target);

  bool complete() const;
  std::size_t defined_count() const;

  const std::vector<State>& table() const { return table_; }

  friend bool operator==(const PartialAutomaton&, const PartialAutomaton&) = default;

 private:
  std::size_t states_;
  std::vector<std::string> alphabet_;
  std::vector<State> table_;
};

struct StructureClass {
  bool complete = false;
  bool strongly_connected = false;
  bool weakly_acyclic = false;
  bool strongly_acyclic = false;
};

enum class GoalKind { Sync, Mortal, Avoid };

/// What a word has to do to the full state set.
struct Goal {
  GoalKind kind = GoalKind::Sync;
  State avoided = 0;  // only meaningful for Avoid

  static Goal sync() { return {GoalKind::Sync, 0}; }
  static Goal mortal() { return {GoalKind::Mortal, 0}; }
  static Goal avoid(State q) { return {GoalKind::Avoid, q}; }

  bool satisfied_by(const StateSet& image) const {
    switch (kind) {
      case GoalKind::Sync: return image.size() == 1;
      case GoalKind::Mortal: return image.empty();
      case GoalKind::Avoid: return !image.contains(avoided);
    }
    return false;
  }

  std::string label() const;

  friend bool operator==(const Goal&, const Goal&) = default;
};

struct WordWitness {
  Word word;
  Goal goal;
  std::optional<State> survivor;  // the single surviving state, for Sync
  std::string method;
  std::string bound;              // human-readable guarantee, empty if none
  std::optional<std::uint64_t> bound_value;  // absolute length cap, if any
};

void check_word(const PartialAutomaton& a, const Word& w);

/// Image of `from` under `w`, dropping states whose path is undefined.
StateSet image_of_word(const PartialAutomaton& a, const StateSet& from, const Word& w);
StateSet image_of_letter(const PartialAutomaton& a, const StateSet& from, Letter x);

std::size_t rank(const PartialAutomaton& a, const Word& w);

StructureClass classify(const PartialAutomaton& a);
bool strongly_connected(const PartialAutomaton& a);

bool verify_word(const PartialAutomaton& a, const Word& w, const Goal& goal);
bool verify_witness(const PartialAutomaton& a, const WordWitness& witness);

/// Lexicographically least among the shortest words sending {p, q} to a
/// single state; nullopt when no such word exists.
std::optional<Word> pair_shortest_merge(const PartialAutomaton& a, State p, State q);

/// Length of the shortest merging word for every unordered pair.
class PairDistances {
 public:
  static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

  explicit PairDistances(const PartialAutomaton& a);

  std::uint32_t operator()(State p, State q) const;
  bool all_mergeable() const { return all_mergeable_; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> dist_;  // upper triangle, p < q
  bool all_mergeable_ = true;
};

/// Pairwise criterion for complete or strongly connected inputs, subset
/// search otherwise (may throw BudgetExceeded).
bool is_synchronizing(const PartialAutomaton& a);

/// True when the polynomial pairwise criterion applies to `a`.
bool pairwise_check_applies(const PartialAutomaton& a);
bool pairwise_synchronizable(const PartialAutomaton& a);

struct Minimized {
  PartialAutomaton automaton;
  std::vector<State> class_of;  // original state -> minimized state
};

/// Quotient by behavioural equivalence with state 0 as the distinguished
/// (root) state: p ~ q iff for every word both paths are undefined, or both
/// are defined and end on the root together. Undefined acts as a separate sink.
Minimized minimize_with_map(const PartialAutomaton& a);
PartialAutomaton minimize(const PartialAutomaton& a);

}  // namespace pcsync
