#include "pcsync/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

#include "pcsync/error.hpp"
#include "pcsync/sync.hpp"

namespace pcsync {

PartialAutomaton::PartialAutomaton(std::size_t states, std::vector<std::string> alphabet,
                                   std::vector<State> table)
    : states_(states), alphabet_(std::move(alphabet)), table_(std::move(table)) {
  if (states_ == 0) throw InputError("automaton needs at least one state");
  if (alphabet_.empty()) throw InputError("automaton needs at least one letter");
  if (table_.size() != states_ * alphabet_.size())
    throw InputError("transition table has " + std::to_string(table_.size()) +
                     " entries, expected " + std::to_string(states_ * alphabet_.size()));
  std::set<std::string> seen;
  for (const auto& s : alphabet_) {
    if (s.empty()) throw InputError("empty symbol name");
    if (!seen.insert(s).second) throw InputError("duplicate symbol '" + s + "'");
  }
  for (State t : table_)
    if (t != kUndefined && t >= states_)
      throw InputError("state index out of range: " + std::to_string(t));
}

PartialAutomaton::PartialAutomaton(std::size_t states, std::vector<std::string> alphabet)
    : PartialAutomaton(states, alphabet,
                       std::vector<State>(states * alphabet.size(), kUndefined)) {}

void PartialAutomaton::set(State q, Letter a, State target) {
  if (q >= states_ || a >= alphabet_.size())
    throw InputError("transition source out of range");
  if (target != kUndefined && target >= states_)
    throw InputError("state index out of range: " + std::to_string(target));
  table_[q * alphabet_.size() + a] = target;
}

bool PartialAutomaton::complete() const {
  return std::none_of(table_.begin(), table_.end(), [](State t) { return t == kUndefined; });
}

std::size_t PartialAutomaton::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(table_.begin(), table_.end(), [](State t) { return t != kUndefined; }));
}

std::string Goal::label() const {
  switch (kind) {
    case GoalKind::Sync: return "sync";
    case GoalKind::Mortal: return "mortal";
    case GoalKind::Avoid: return "avoid(" + std::to_string(avoided) + ")";
  }
  return "?";
}

void check_word(const PartialAutomaton& a, const Word& w) {
  for (Letter x : w)
    if (x >= a.alphabet_size())
      throw InputError("letter index out of range: " + std::to_string(x));
}

StateSet image_of_letter(const PartialAutomaton& a, const StateSet& from, Letter x) {
  StateSet out(a.size());
  from.for_each([&](State q) {
    State t = a.next(q, x);
    if (t != kUndefined) out.insert(t);
  });
  return out;
}

StateSet image_of_word(const PartialAutomaton& a, const StateSet& from, const Word& w) {
  check_word(a, w);
  if (from.universe() != a.size()) throw InputError("state set does not match automaton");
  StateSet cur = from;
  for (Letter x : w) {
    if (cur.empty()) break;
    cur = image_of_letter(a, cur, x);
  }
  return cur;
}

std::size_t rank(const PartialAutomaton& a, const Word& w) {
  return image_of_word(a, StateSet::full(a.size()), w).size();
}

namespace {

std::vector<bool> reachable_from(const PartialAutomaton& a, State src, bool reverse) {
  const std::size_t n = a.size();
  std::vector<std::vector<State>> adj(n);
  for (State q = 0; q < n; ++q)
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      State t = a.next(q, x);
      if (t == kUndefined) continue;
      if (reverse) adj[t].push_back(q);
      else adj[q].push_back(t);
    }
  std::vector<bool> seen(n, false);
  std::vector<State> stack{src};
  seen[src] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State t : adj[q])
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  }
  return seen;
}

// Kahn's algorithm on the transition digraph with self-loops removed.
bool acyclic_ignoring_loops(const PartialAutomaton& a) {
  const std::size_t n = a.size();
  std::vector<std::set<State>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (State q = 0; q < n; ++q)
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      State t = a.next(q, x);
      if (t != kUndefined && t != q && succ[q].insert(t).second) ++indegree[t];
    }
  std::vector<State> ready;
  for (State q = 0; q < n; ++q)
    if (indegree[q] == 0) ready.push_back(q);
  std::size_t removed = 0;
  while (!ready.empty()) {
    State q = ready.back();
    ready.pop_back();
    ++removed;
    for (State t : succ[q])
      if (--indegree[t] == 0) ready.push_back(t);
  }
  return removed == n;
}

}  // namespace

bool strongly_connected(const PartialAutomaton& a) {
  auto fwd = reachable_from(a, 0, false);
  auto bwd = reachable_from(a, 0, true);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

StructureClass classify(const PartialAutomaton& a) {
  StructureClass c;
  c.complete = a.complete();
  c.strongly_connected = strongly_connected(a);
  c.weakly_acyclic = acyclic_ignoring_loops(a);
  if (c.weakly_acyclic) {
    c.strongly_acyclic = true;
    for (State q = 0; q < a.size() && c.strongly_acyclic; ++q) {
      bool has_loop = false;
      bool sink = true;
      for (Letter x = 0; x < a.alphabet_size(); ++x) {
        State t = a.next(q, x);
        if (t == q) has_loop = true;
        else if (t != kUndefined) sink = false;
      }
      if (has_loop && !sink) c.strongly_acyclic = false;
    }
  }
  return c;
}

bool verify_word(const PartialAutomaton& a, const Word& w, const Goal& goal) {
  if (goal.kind == GoalKind::Avoid && goal.avoided >= a.size())
    throw InputError("avoided state out of range: " + std::to_string(goal.avoided));
  return goal.satisfied_by(image_of_word(a, StateSet::full(a.size()), w));
}

bool verify_witness(const PartialAutomaton& a, const WordWitness& witness) {
  if (!verify_word(a, witness.word, witness.goal)) return false;
  if (witness.survivor) {
    auto img = image_of_word(a, StateSet::full(a.size()), witness.word);
    if (!img.contains(*witness.survivor)) return false;
  }
  if (witness.bound_value && witness.word.size() > *witness.bound_value) return false;
  return true;
}

namespace {

// Result of applying one letter to a pair: merged, killed, or a new pair.
struct PairStep {
  enum Kind { Merged, Dead, Pair } kind;
  State lo = 0, hi = 0;
};

PairStep step_pair(const PartialAutomaton& a, State p, State q, Letter x) {
  State s = a.next(p, x);
  State t = a.next(q, x);
  if (s == kUndefined && t == kUndefined) return {PairStep::Dead};
  if (s == kUndefined || t == kUndefined || s == t) return {PairStep::Merged};
  if (s > t) std::swap(s, t);
  return {PairStep::Pair, s, t};
}

std::size_t pair_index(std::size_t n, State p, State q) { return p * n + q; }

}  // namespace

std::optional<Word> pair_shortest_merge(const PartialAutomaton& a, State p, State q) {
  const std::size_t n = a.size();
  if (p >= n || q >= n) throw InputError("state index out of range");
  if (p == q) return Word{};
  if (p > q) std::swap(p, q);

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(n * n, kNone);
  std::vector<Letter> via(n * n, 0);
  auto rebuild = [&](std::size_t node) {
    Word w;
    while (parent[node] != node) {
      w.push_back(via[node]);
      node = parent[node];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  std::size_t start = pair_index(n, p, q);
  parent[start] = start;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    State u = static_cast<State>(node / n), v = static_cast<State>(node % n);
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      PairStep st = step_pair(a, u, v, x);
      if (st.kind == PairStep::Merged) {
        Word w = rebuild(node);
        w.push_back(x);
        return w;
      }
      if (st.kind == PairStep::Dead) continue;
      std::size_t next = pair_index(n, st.lo, st.hi);
      if (parent[next] != kNone) continue;
      parent[next] = node;
      via[next] = x;
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

PairDistances::PairDistances(const PartialAutomaton& a)
    : n_(a.size()), dist_(a.size() * a.size(), kUnreachable) {
  // Backward BFS over the pair graph from pairs that merge in one letter.
  std::vector<std::vector<std::uint32_t>> preds(n_ * n_);
  std::deque<std::size_t> queue;
  for (State p = 0; p < n_; ++p)
    for (State q = p + 1; q < n_; ++q) {
      std::size_t idx = pair_index(n_, p, q);
      for (Letter x = 0; x < a.alphabet_size(); ++x) {
        PairStep st = step_pair(a, p, q, x);
        if (st.kind == PairStep::Merged) {
          if (dist_[idx] == kUnreachable) {
            dist_[idx] = 1;
            queue.push_back(idx);
          }
        } else if (st.kind == PairStep::Pair) {
          preds[pair_index(n_, st.lo, st.hi)].push_back(static_cast<std::uint32_t>(idx));
        }
      }
    }
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    for (std::uint32_t pre : preds[idx])
      if (dist_[pre] == kUnreachable) {
        dist_[pre] = dist_[idx] + 1;
        queue.push_back(pre);
      }
  }
  for (State p = 0; p < n_; ++p)
    for (State q = p + 1; q < n_; ++q)
      if (dist_[pair_index(n_, p, q)] == kUnreachable) all_mergeable_ = false;
}

std::uint32_t PairDistances::operator()(State p, State q) const {
  if (p == q) return 0;
  if (p > q) std::swap(p, q);
  return dist_[pair_index(n_, p, q)];
}

bool pairwise_check_applies(const PartialAutomaton& a) {
  return a.complete() || strongly_connected(a);
}

bool pairwise_synchronizable(const PartialAutomaton& a) {
  return PairDistances(a).all_mergeable();
}

bool is_synchronizing(const PartialAutomaton& a) {
  if (pairwise_check_applies(a)) return pairwise_synchronizable(a);
  auto outcome = shortest_word_exact(a, Goal::sync(), SearchBudget{});
  if (outcome.status == SearchStatus::BudgetExceeded)
    throw BudgetExceeded("subset search budget exhausted while checking synchronizability");
  return outcome.status == SearchStatus::Found;
}

Minimized minimize_with_map(const PartialAutomaton& a) {
  const std::size_t n = a.size();
  const std::size_t k = a.alphabet_size();
  constexpr std::int64_t kDeadClass = -1;

  // Moore refinement; the initial split separates the root from the rest.
  std::vector<std::int64_t> cls(n, 1);
  cls[0] = 0;
  std::size_t classes = n > 1 ? 2 : 1;
  for (;;) {
    std::map<std::vector<std::int64_t>, std::int64_t> signature_ids;
    std::vector<std::int64_t> next(n);
    for (State q = 0; q < n; ++q) {
      std::vector<std::int64_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[q]);
      for (Letter x = 0; x < k; ++x) {
        State t = a.next(q, x);
        sig.push_back(t == kUndefined ? kDeadClass : cls[t]);
      }
      auto [it, inserted] =
          signature_ids.emplace(std::move(sig), static_cast<std::int64_t>(signature_ids.size()));
      next[q] = it->second;
    }
    std::size_t count = signature_ids.size();
    cls = std::move(next);
    if (count == classes) break;
    classes = count;
  }

  // Renumber by smallest member so the root class stays 0.
  std::map<std::int64_t, State> renumber;
  std::vector<State> class_of(n);
  std::vector<State> representative;
  for (State q = 0; q < n; ++q) {
    auto [it, inserted] = renumber.emplace(cls[q], static_cast<State>(renumber.size()));
    if (inserted) representative.push_back(q);
    class_of[q] = it->second;
  }
  PartialAutomaton out(representative.size(), a.alphabet());
  for (State c = 0; c < representative.size(); ++c)
    for (Letter x = 0; x < k; ++x) {
      State t = a.next(representative[c], x);
      out.set(c, x, t == kUndefined ? kUndefined : class_of[t]);
    }
  return {std::move(out), std::move(class_of)};
}

PartialAutomaton minimize(const PartialAutomaton& a) { return minimize_with_map(a).automaton; }

}  // namespace pcsync
