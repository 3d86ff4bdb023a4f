#include "pcsync/sync.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "pcsync/error.hpp"

namespace pcsync {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Visited subsets packed into one arena, indexed by an open-addressing table.
class SubsetStore {
 public:
  explicit SubsetStore(std::size_t universe) : stride_((universe + 63) / 64) {
    if (stride_ == 0) stride_ = 1;
    slots_.assign(1024, 0);
  }

  std::size_t size() const { return parent_.size(); }

  // Index of `bits` if present, otherwise inserts and returns size()-1 with
  // inserted = true.
  std::pair<std::uint32_t, bool> intern(std::span<const std::uint64_t> bits,
                                        std::uint32_t parent, Letter via,
                                        std::uint32_t depth) {
    if ((size() + 1) * 2 > slots_.size()) grow();
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(bits) & mask;
    while (slots_[pos] != 0) {
      std::uint32_t idx = slots_[pos] - 1;
      if (std::equal(bits.begin(), bits.end(), arena_.begin() + idx * stride_))
        return {idx, false};
      pos = (pos + 1) & mask;
    }
    auto idx = static_cast<std::uint32_t>(size());
    arena_.insert(arena_.end(), bits.begin(), bits.end());
    parent_.push_back(parent);
    via_.push_back(via);
    depth_.push_back(depth);
    slots_[pos] = idx + 1;
    return {idx, true};
  }

  void load(std::uint32_t idx, StateSet& out) const {
    auto words = out.words();
    std::copy_n(arena_.begin() + idx * stride_, stride_, words.begin());
  }

  std::uint32_t depth(std::uint32_t idx) const { return depth_[idx]; }

  Word word_to(std::uint32_t idx) const {
    Word w;
    while (parent_[idx] != idx) {
      w.push_back(via_[idx]);
      idx = parent_[idx];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  std::uint64_t hash(std::span<const std::uint64_t> bits) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto w : bits) h = mix(h ^ w);
    return h;
  }

  void grow() {
    std::vector<std::uint32_t> old(slots_.size() * 2, 0);
    old.swap(slots_);
    std::size_t mask = slots_.size() - 1;
    for (std::uint32_t slot : old) {
      if (slot == 0) continue;
      std::uint32_t idx = slot - 1;
      std::span<const std::uint64_t> bits(arena_.data() + idx * stride_, stride_);
      std::size_t pos = hash(bits) & mask;
      while (slots_[pos] != 0) pos = (pos + 1) & mask;
      slots_[pos] = slot;
    }
  }

  std::size_t stride_;
  std::vector<std::uint64_t> arena_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> via_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> slots_;
};

WordWitness make_witness(const PartialAutomaton& a, Word word, const Goal& goal,
                         std::string method) {
  WordWitness w;
  w.goal = goal;
  w.method = std::move(method);
  if (goal.kind == GoalKind::Sync) {
    auto img = image_of_word(a, StateSet::full(a.size()), word);
    if (img.size() == 1) w.survivor = img.first();
  }
  w.word = std::move(word);
  return w;
}

void append(Word& w, const Word& tail) { w.insert(w.end(), tail.begin(), tail.end()); }

std::string str(std::uint64_t v) { return std::to_string(v); }

void require_valid_goal(const PartialAutomaton& a, const Goal& goal) {
  if (goal.kind == GoalKind::Avoid && goal.avoided >= a.size())
    throw InputError("avoided state out of range: " + std::to_string(goal.avoided));
}

void require_complete(const PartialAutomaton& a, const char* op) {
  if (!a.complete())
    throw DomainError(std::string(op) + " requires a complete literal decoder");
}

// Length of exhaustive first stages: floor(t / eps).
std::size_t stage_one_length(std::size_t t, Epsilon eps) {
  if (eps <= 0) throw InputError("epsilon must be positive");
  auto num = static_cast<std::uint64_t>(eps.numerator());
  auto den = static_cast<std::uint64_t>(eps.denominator());
  return static_cast<std::size_t>(t * den / num);
}

std::string eps_text(Epsilon eps) {
  std::ostringstream os;
  os << eps.numerator();
  if (eps.denominator() != 1) os << '/' << eps.denominator();
  return os.str();
}

// Greedily merges pairs of `cur` until one state is left, appending to `out`.
void merge_pairwise(const PartialAutomaton& a, const PairDistances& dist, StateSet& cur,
                    Word& out) {
  while (cur.size() > 1) {
    auto members = cur.members();
    State best_p = 0, best_q = 0;
    std::uint32_t best = PairDistances::kUnreachable;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        std::uint32_t d = dist(members[i], members[j]);
        if (d < best) {
          best = d;
          best_p = members[i];
          best_q = members[j];
        }
      }
    if (best == PairDistances::kUnreachable)
      throw DomainError("automaton is not synchronizing: states " + std::to_string(members[0]) +
                        " and " + std::to_string(members[1]) + " cannot be merged");
    auto w = pair_shortest_merge(a, best_p, best_q);
    if (!w || w->size() != best)
      throw InternalError("pair distance table disagrees with forward pair search");
    cur = image_of_word(a, cur, *w);
    append(out, *w);
  }
}

}  // namespace

SearchOutcome shortest_word_from(const PartialAutomaton& a, const StateSet& start,
                                 const Goal& goal, const SearchBudget& budget) {
  require_valid_goal(a, goal);
  if (start.universe() != a.size()) throw InputError("state set does not match automaton");

  SearchOutcome out;
  if (goal.satisfied_by(start)) {
    out.status = SearchStatus::Found;
    out.witness = make_witness(a, {}, goal, "exact");
    out.explored = 1;
    return out;
  }

  SubsetStore store(a.size());
  store.intern(start.words(), 0, 0, 0);
  StateSet cur(a.size());
  bool length_capped = false;
  for (std::uint32_t head = 0; head < store.size(); ++head) {
    std::uint32_t depth = store.depth(head);
    if (depth >= budget.max_word_len) {
      length_capped = true;
      break;
    }
    store.load(head, cur);
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      StateSet next = image_of_letter(a, cur, x);
      // An empty image can never become a singleton again.
      if (goal.kind == GoalKind::Sync && next.empty()) continue;
      auto [idx, inserted] = store.intern(next.words(), head, x, depth + 1);
      if (!inserted) continue;
      if (goal.satisfied_by(next)) {
        out.status = SearchStatus::Found;
        out.witness = make_witness(a, store.word_to(idx), goal, "exact");
        out.explored = store.size();
        return out;
      }
      if (store.size() > budget.max_subset_nodes) {
        out.status = SearchStatus::BudgetExceeded;
        out.explored = store.size();
        return out;
      }
    }
  }
  out.status = length_capped ? SearchStatus::LengthCapReached : SearchStatus::NoneExists;
  out.explored = store.size();
  return out;
}

SearchOutcome shortest_word_exact(const PartialAutomaton& a, const Goal& goal,
                                  const SearchBudget& budget) {
  return shortest_word_from(a, StateSet::full(a.size()), goal, budget);
}

std::size_t ceil_log(std::size_t k, std::size_t n) {
  if (k == 0) throw InputError("alphabet size must be positive");
  if (k == 1) return n;
  std::size_t t = 0;
  std::size_t power = 1;
  while (power < n) {
    power = power > n / k ? n : power * k;
    ++t;
  }
  return t;
}

WordWitness greedy_sync(const PartialAutomaton& a) {
  if (!pairwise_check_applies(a))
    throw DomainError("greedy synchronization requires a complete or strongly connected automaton");
  PairDistances dist(a);
  if (!dist.all_mergeable()) throw DomainError("automaton is not synchronizing");

  StateSet cur = StateSet::full(a.size());
  Word word;
  merge_pairwise(a, dist, cur, word);

  const std::uint64_t n = a.size();
  const std::uint64_t cap = (n * n * n - n) / 6;
  if (word.size() > cap)
    throw InternalError("greedy word of length " + str(word.size()) + " exceeds (n^3-n)/6 = " +
                        str(cap));
  auto w = make_witness(a, std::move(word), Goal::sync(), "greedy");
  w.bound = "<= (n^3-n)/6 = " + str(cap);
  w.bound_value = cap;
  return w;
}

Word low_rank_word(const PartialAutomaton& a, bool allow_partial) {
  const bool complete = a.complete();
  if (!complete && !allow_partial)
    throw DomainError("low-rank word guarantee only holds for complete literal decoders");
  const std::size_t k = a.alphabet_size();
  const std::size_t t = ceil_log(k, a.size());

  // Depth-first enumeration in lexicographic order, one image per depth.
  std::vector<StateSet> images{StateSet::full(a.size())};
  Word cur, best;
  std::size_t best_rank = std::numeric_limits<std::size_t>::max();
  const std::size_t floor_rank = complete ? 1 : 0;
  bool done = false;
  auto visit = [&](auto&& self) -> void {
    if (done) return;
    if (cur.size() == t) {
      std::size_t r = images.back().size();
      if (r < best_rank) {
        best_rank = r;
        best = cur;
        if (r <= floor_rank) done = true;
      }
      return;
    }
    for (Letter x = 0; x < k && !done; ++x) {
      images.push_back(image_of_letter(a, images.back(), x));
      cur.push_back(x);
      self(self);
      cur.pop_back();
      images.pop_back();
    }
  };
  visit(visit);

  if (complete && k >= 2 && best_rank > std::max<std::size_t>(t, 1))
    throw InternalError("no word of length " + str(t) + " has rank <= " + str(t) +
                        " on a complete decoder (best " + str(best_rank) + ")");
  return best;
}

WordWitness approx_sync_log(const PartialAutomaton& a) {
  require_complete(a, "approx_sync_log");
  const std::size_t t = ceil_log(a.alphabet_size(), a.size());
  const std::string bound = "<= t + (t-1)*OPT, t = " + str(t);

  if (a.alphabet_size() == 1) {
    auto exact = shortest_word_exact(a, Goal::sync(), SearchBudget{});
    if (exact.status != SearchStatus::Found) throw DomainError("automaton is not synchronizing");
    exact.witness.method = "log/unary-exact";
    exact.witness.bound = bound;
    return exact.witness;
  }

  SearchBudget stage0;
  stage0.max_word_len = t;
  auto first = shortest_word_exact(a, Goal::sync(), stage0);
  if (first.status == SearchStatus::Found) {
    first.witness.method = "log/exhaustive";
    first.witness.bound = bound;
    return first.witness;
  }
  if (first.status == SearchStatus::NoneExists) throw DomainError("automaton is not synchronizing");
  if (first.status == SearchStatus::BudgetExceeded)
    throw BudgetExceeded("exhaustive stage exceeded the node budget");

  PairDistances dist(a);
  if (!dist.all_mergeable()) throw DomainError("automaton is not synchronizing");
  Word word = low_rank_word(a, false);
  StateSet cur = image_of_word(a, StateSet::full(a.size()), word);
  merge_pairwise(a, dist, cur, word);
  auto w = make_witness(a, std::move(word), Goal::sync(), "log/low-rank+pair-merge");
  w.bound = bound;
  return w;
}

WordWitness approx_sync_eps(const PartialAutomaton& a, Epsilon eps, const SearchBudget& budget) {
  require_complete(a, "approx_sync_eps");
  const std::size_t t = ceil_log(a.alphabet_size(), a.size());
  const std::string bound = "<= (1+" + eps_text(eps) + ")*OPT";

  SearchBudget stage1 = budget;
  stage1.max_word_len = a.alphabet_size() == 1 ? budget.max_word_len : stage_one_length(t, eps);
  auto first = shortest_word_exact(a, Goal::sync(), stage1);
  switch (first.status) {
    case SearchStatus::Found:
      first.witness.method = "eps/exhaustive";
      first.witness.bound = bound;
      return first.witness;
    case SearchStatus::NoneExists: throw DomainError("automaton is not synchronizing");
    case SearchStatus::BudgetExceeded:
      throw BudgetExceeded("exhaustive stage exceeded the node budget");
    case SearchStatus::LengthCapReached: break;
  }

  Word word = low_rank_word(a, false);
  StateSet start = image_of_word(a, StateSet::full(a.size()), word);
  // Every subset reachable from `start` has at most |start| <= t states, so
  // this search only touches the size-restricted power automaton.
  auto second = shortest_word_from(a, start, Goal::sync(), budget);
  if (second.status == SearchStatus::NoneExists) throw DomainError("automaton is not synchronizing");
  if (second.status != SearchStatus::Found)
    throw BudgetExceeded("restricted power automaton search exceeded the budget");
  append(word, second.witness.word);
  auto w = make_witness(a, std::move(word), Goal::sync(), "eps/low-rank+restricted-search");
  w.bound = bound;
  return w;
}

std::optional<Word> shortest_killing_word(const PartialAutomaton& a, State q) {
  if (q >= a.size()) throw InputError("state index out of range");
  constexpr State kNone = kUndefined;
  std::vector<State> parent(a.size(), kNone);
  std::vector<Letter> via(a.size(), 0);
  std::deque<State> queue{q};
  parent[q] = q;
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      if (a.defined(s, x)) continue;
      Word w{x};
      for (State u = s; u != q; u = parent[u]) w.push_back(via[u]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      State t = a.next(s, x);
      if (parent[t] != kNone) continue;
      parent[t] = s;
      via[t] = x;
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

WordWitness approx_mortal_log(const PartialAutomaton& a) {
  if (a.complete()) throw DomainError("automaton has no undefined transition, so no mortal word");
  const std::size_t n = a.size();
  const std::size_t t = ceil_log(a.alphabet_size(), n);
  const std::uint64_t cap = static_cast<std::uint64_t>(t) * (n + 1);
  const std::string bound = "<= t*(n+1) = " + str(cap) + ", t = " + str(t);

  SearchBudget stage0;
  stage0.max_word_len = t;
  auto first = shortest_word_exact(a, Goal::mortal(), stage0);
  if (first.status == SearchStatus::Found) {
    first.witness.method = "mortal-log/exhaustive";
    first.witness.bound = bound;
    return first.witness;
  }
  if (first.status == SearchStatus::NoneExists) throw DomainError("automaton has no mortal word");
  if (first.status == SearchStatus::BudgetExceeded)
    throw BudgetExceeded("exhaustive stage exceeded the node budget");

  Word word = low_rank_word(a, true);
  StateSet cur = image_of_word(a, StateSet::full(n), word);
  while (!cur.empty()) {
    State s = cur.first();
    auto kill = shortest_killing_word(a, s);
    if (!kill) throw DomainError("state " + std::to_string(s) + " can never be killed");
    cur = image_of_word(a, cur, *kill);
    append(word, *kill);
  }
  auto w = make_witness(a, std::move(word), Goal::mortal(), "mortal-log/low-rank+kill");
  w.bound = bound;
  return w;
}

WordWitness approx_avoiding_eps(const PartialAutomaton& a, State q, Epsilon eps,
                                const SearchBudget& budget) {
  if (q >= a.size()) throw InputError("state index out of range: " + std::to_string(q));
  require_complete(a, "approx_avoiding_eps");
  const Goal goal = Goal::avoid(q);
  const std::string bound = "<= (1+" + eps_text(eps) + ")*OPT";

  if (q != 0) {
    for (Letter x = 0; x < a.alphabet_size(); ++x)
      if (verify_word(a, Word{x}, goal)) {
        auto w = make_witness(a, Word{x}, goal, "avoid-eps/single-letter");
        w.bound = "optimal (length 1)";
        w.bound_value = 1;
        return w;
      }
  }

  const std::size_t t = ceil_log(a.alphabet_size(), a.size());
  SearchBudget stage1 = budget;
  stage1.max_word_len = a.alphabet_size() == 1 ? budget.max_word_len : stage_one_length(t, eps);
  auto first = shortest_word_exact(a, goal, stage1);
  switch (first.status) {
    case SearchStatus::Found:
      first.witness.method = "avoid-eps/exhaustive";
      first.witness.bound = bound;
      return first.witness;
    case SearchStatus::NoneExists:
      throw DomainError("no word avoids state " + std::to_string(q));
    case SearchStatus::BudgetExceeded:
      throw BudgetExceeded("exhaustive stage exceeded the node budget");
    case SearchStatus::LengthCapReached: break;
  }

  Word word = low_rank_word(a, false);
  StateSet start = image_of_word(a, StateSet::full(a.size()), word);
  auto second = shortest_word_from(a, start, goal, budget);
  if (second.status == SearchStatus::NoneExists)
    throw DomainError("no word avoids state " + std::to_string(q));
  if (second.status != SearchStatus::Found)
    throw BudgetExceeded("restricted power automaton search exceeded the budget");
  append(word, second.witness.word);
  auto w = make_witness(a, std::move(word), goal, "avoid-eps/low-rank+restricted-search");
  w.bound = bound;
  return w;
}

}  // namespace pcsync
