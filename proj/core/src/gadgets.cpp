#include "pcsync/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "pcsync/error.hpp"

namespace pcsync {

void SetCoverInstance::validate() const {
  if (elements == 0) throw InputError("set cover instance needs at least one element");
  if (sets.empty()) throw InputError("set cover instance needs at least one set");
  std::vector<bool> covered(elements + 1, false);
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (std::size_t x : sets[k]) {
      if (x < 1 || x > elements)
        throw InputError("set " + std::to_string(k + 1) + " has element " + std::to_string(x) +
                         " outside 1.." + std::to_string(elements));
      covered[x] = true;
    }
  for (std::size_t x = 1; x <= elements; ++x)
    if (!covered[x]) throw InputError("element " + std::to_string(x) + " is not covered");
}

std::size_t min_cover_size(const SetCoverInstance& instance) {
  instance.validate();
  const std::size_t m = instance.sets.size();
  if (m > 24) throw InputError("brute-force cover limited to 24 sets");
  std::vector<std::uint64_t> masks(m, 0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t x : instance.sets[k]) masks[k] |= std::uint64_t{1} << (x - 1);
  const std::uint64_t all =
      instance.elements == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << instance.elements) - 1;
  std::size_t best = m;
  for (std::uint64_t choice = 1; choice < (std::uint64_t{1} << m); ++choice) {
    auto size = static_cast<std::size_t>(std::popcount(choice));
    if (size >= best) continue;
    std::uint64_t cover = 0;
    for (std::size_t k = 0; k < m; ++k)
      if ((choice >> k) & 1U) cover |= masks[k];
    if (cover == all) best = size;
  }
  return best;
}

State set_cover_pipe_state(std::size_t elements, std::size_t j, std::size_t i) {
  return static_cast<State>((j - 1) * elements + (i - 1));
}

GadgetInstance set_cover_gadget(const SetCoverInstance& instance) {
  instance.validate();
  const std::size_t p = instance.elements;
  const std::size_t m = instance.sets.size();
  if (p > 64) throw InputError("set cover gadget limited to 64 elements");

  std::vector<std::string> alphabet;
  for (std::size_t k = 1; k <= m; ++k) alphabet.push_back("s" + std::to_string(k));
  const auto sink = static_cast<State>(p * p);
  PartialAutomaton a(p * p + 1, alphabet);
  for (Letter k = 0; k < m; ++k) {
    std::set<std::size_t> members(instance.sets[k].begin(), instance.sets[k].end());
    for (std::size_t j = 1; j <= p; ++j)
      for (std::size_t i = 1; i <= p; ++i) {
        State target = (i == p || members.count(j)) ? sink : set_cover_pipe_state(p, j, i + 1);
        a.set(set_cover_pipe_state(p, j, i), k, target);
      }
    a.set(sink, k, sink);
  }

  GadgetInstance g{std::move(a), "setcover", std::nullopt, {}};
  g.provenance["elements"] = std::to_string(p);
  g.provenance["sets"] = std::to_string(m);
  if (m <= 24) {
    std::size_t cover = min_cover_size(instance);
    g.expected_opt = std::min(cover, p);
    g.provenance["min_cover"] = std::to_string(cover);
  }
  return g;
}

std::optional<State> unique_sink(const PartialAutomaton& a) {
  std::optional<State> found;
  for (State q = 0; q < a.size(); ++q) {
    bool sink = true;
    for (Letter x = 0; x < a.alphabet_size() && sink; ++x) {
      State t = a.next(q, x);
      sink = t == kUndefined || t == q;
    }
    if (!sink) continue;
    if (found) return std::nullopt;
    found = q;
  }
  return found;
}

namespace {

// Full binary tree with `leaves` leaves, laid out left-packed in the next
// power-of-two tree with unary spines contracted. Returns child pairs for
// internal nodes; node 0 is the root, leaves are tagged with their ordinal.
struct TreeNode {
  bool leaf = false;
  std::size_t ordinal = 0;   // leaf: index into S
  std::size_t left = 0, right = 0;
};

std::size_t build_tree(std::vector<TreeNode>& nodes, std::size_t first, std::size_t count,
                       std::size_t height) {
  if (count == 1) {
    nodes.push_back({true, first, 0, 0});
    return nodes.size() - 1;
  }
  const std::size_t half = std::size_t{1} << (height - 1);
  if (count <= half) return build_tree(nodes, first, count, height - 1);
  std::size_t id = nodes.size();
  nodes.push_back({});
  std::size_t l = build_tree(nodes, first, half, height - 1);
  std::size_t r = build_tree(nodes, first + half, count - half, height - 1);
  nodes[id].left = l;
  nodes[id].right = r;
  return id;
}

std::string fresh_name(const std::vector<std::string>& alphabet, std::string name) {
  while (std::find(alphabet.begin(), alphabet.end(), name) != alphabet.end()) name += "'";
  return name;
}

}  // namespace

GadgetInstance huffmanize(const PartialAutomaton& a) {
  if (!a.complete()) throw DomainError("huffmanize requires a complete automaton");
  if (!classify(a).strongly_acyclic) throw DomainError("huffmanize requires a strongly acyclic automaton");
  auto sink = unique_sink(a);
  if (!sink) throw DomainError("huffmanize requires a unique sink (automaton is not synchronizing)");
  // Strongly acyclic + complete: synchronizing iff every state reaches the sink,
  // which holds exactly when the sink is unique.

  const std::size_t n = a.size();
  const std::size_t k = a.alphabet_size();
  std::vector<bool> has_incoming(n, false);
  for (State q = 0; q < n; ++q)
    for (Letter x = 0; x < k; ++x) {
      State t = a.next(q, x);
      if (t != q) has_incoming[t] = true;
    }
  std::vector<State> sources;
  for (State q = 0; q < n; ++q)
    if (!has_incoming[q] && q != *sink) sources.push_back(q);

  std::vector<TreeNode> nodes;
  if (sources.size() >= 2) {
    std::size_t height = static_cast<std::size_t>(std::bit_width(sources.size() - 1));
    build_tree(nodes, 0, sources.size(), height);
  }

  // Internal tree nodes other than the root become new states.
  std::vector<State> state_of(nodes.size(), kUndefined);
  State next_state = static_cast<State>(n);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].leaf) state_of[i] = sources[nodes[i].ordinal];
    else if (i == 0) state_of[i] = *sink;
    else state_of[i] = next_state++;
  }

  auto alphabet = a.alphabet();
  alphabet.push_back(fresh_name(alphabet, "b1"));
  alphabet.push_back(fresh_name(alphabet, "b2"));
  const Letter b1 = static_cast<Letter>(k), b2 = static_cast<Letter>(k + 1);
  PartialAutomaton h(next_state, alphabet);
  for (State q = 0; q < n; ++q) {
    for (Letter x = 0; x < k; ++x) h.set(q, x, a.next(q, x));
    h.set(q, b1, a.next(q, 0));
    h.set(q, b2, a.next(q, 0));
  }
  if (sources.empty()) {
    h.set(*sink, b1, *sink);
    h.set(*sink, b2, *sink);
  } else if (sources.size() == 1) {
    h.set(*sink, b1, sources[0]);
    h.set(*sink, b2, sources[0]);
  } else {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].leaf) continue;
      State s = state_of[i];
      h.set(s, b1, state_of[nodes[i].left]);
      h.set(s, b2, state_of[nodes[i].right]);
      if (i != 0)
        for (Letter x = 0; x < k; ++x) h.set(s, x, *sink);
    }
  }

  GadgetInstance g{std::move(h), "huffmanized", std::nullopt, {}};
  g.provenance["source_states"] = std::to_string(n);
  g.provenance["source_letters"] = std::to_string(k);
  g.provenance["root"] = std::to_string(*sink);
  g.provenance["tree_leaves"] = std::to_string(sources.size());
  return g;
}

GadgetInstance huffmanize(const GadgetInstance& source) {
  auto g = huffmanize(source.automaton);
  g.expected_opt = source.expected_opt;
  g.provenance["source_kind"] = source.kind;
  return g;
}

GadgetInstance mortalize(const PartialAutomaton& a, State s) {
  if (s >= a.size()) throw InputError("state index out of range: " + std::to_string(s));
  const std::size_t n = a.size();
  std::vector<State> table = a.table();
  table.resize((n + 1) * a.alphabet_size());
  for (Letter x = 0; x < a.alphabet_size(); ++x) {
    table[n * a.alphabet_size() + x] = a.next(s, x);
    table[s * a.alphabet_size() + x] = kUndefined;
  }
  table[s * a.alphabet_size()] = static_cast<State>(n);
  GadgetInstance g{PartialAutomaton(n + 1, a.alphabet(), std::move(table)), "mortalized",
                   std::nullopt, {}};
  g.provenance["source_states"] = std::to_string(n);
  g.provenance["pivot"] = std::to_string(s);
  return g;
}

}  // namespace pcsync
