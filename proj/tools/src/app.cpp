#include "pcsync_cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "pcsync/codes.hpp"
#include "pcsync/error.hpp"
#include "pcsync/gadgets.hpp"
#include "pcsync/io.hpp"
#include "pcsync/sync.hpp"
#include "pcsync_cli/bench.hpp"
#include "pcsync_cli/report.hpp"

namespace pcsync::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::size_t budget = SearchBudget{}.max_subset_nodes;
  std::uint64_t seed = 1;
  std::string output;
  bool oracle = false;

  std::string input;
  std::string second_input;
  std::string eps = "1";
  long long state = -1;
  bool allow_partial = false;
  std::size_t max_len = 0;
  std::string beta;
  std::string meta;
  std::vector<std::size_t> params;

  std::string config;
  std::vector<std::string> families;
  std::vector<std::size_t> sizes;
  std::vector<std::string> algorithms;
  std::size_t samples = 1;
  std::size_t letters = 2;
};

struct Context {
  Options opt;
  std::istream& in;
  std::ostream& out;
  std::ostream& err;

  std::string read(const std::string& path) const {
    if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(f), {}};
  }

  void emit(const std::string& bytes) const {
    if (opt.output.empty()) {
      out << bytes;
      return;
    }
    std::ofstream f(opt.output, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + opt.output + "'");
    f << bytes;
  }

  SearchBudget budget() const {
    SearchBudget b;
    b.max_subset_nodes = opt.budget;
    return b;
  }
};

Epsilon parse_eps(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    long long num = std::stoll(text.substr(0, slash), &used);
    if (used != text.substr(0, slash).size()) throw std::invalid_argument(text);
    long long den = 1;
    if (slash != std::string::npos) {
      std::string tail = text.substr(slash + 1);
      den = std::stoll(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    }
    if (num <= 0 || den <= 0) throw std::invalid_argument(text);
    return Epsilon(num, den);
  } catch (const std::logic_error&) {
    throw UsageError("--eps expects a positive rational such as 1/2, got '" + text + "'");
  }
}

State require_state(const Options& opt, const PartialAutomaton& a) {
  if (opt.state < 0) throw UsageError("--state is required");
  if (static_cast<std::size_t>(opt.state) >= a.size())
    throw InputError("state index out of range: " + std::to_string(opt.state));
  return static_cast<State>(opt.state);
}

// Word-producing commands share reporting.
void word_command(Context& ctx, const std::string& name, const Goal& goal,
                  const std::function<WordWitness(const PartialAutomaton&)>& run) {
  std::string bytes = ctx.read(ctx.opt.input);
  auto a = parse_automaton(bytes);
  if (goal.kind == GoalKind::Avoid && goal.avoided >= a.size())
    throw InputError("state index out of range: " + std::to_string(goal.avoided));

  auto start = std::chrono::steady_clock::now();
  WordWitness w = run(a);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!verify_witness(a, w)) throw InternalError("produced word failed re-verification");

  Report r;
  r.command = name;
  r.input_digest = digest(bytes);
  r.witness = std::move(w);
  r.word_text = render_word(r.witness.word, a.alphabet());
  r.wall_time_ms = ms;
  if (ctx.opt.oracle) {
    auto exact = shortest_word_exact(a, goal, ctx.budget());
    OracleComparison cmp;
    cmp.status = exact.status;
    if (exact.status == SearchStatus::Found) cmp.length = exact.witness.word.size();
    r.oracle = cmp;
  }
  ctx.emit(ctx.opt.format == "json" ? r.to_json().dump(2) + "\n" : r.to_text());
}

WordWitness exact_or_throw(const PartialAutomaton& a, const Goal& goal, const SearchBudget& budget) {
  auto r = shortest_word_exact(a, goal, budget);
  switch (r.status) {
    case SearchStatus::Found: return r.witness;
    case SearchStatus::NoneExists:
      throw DomainError(goal.kind == GoalKind::Sync     ? "automaton is not synchronizing"
                        : goal.kind == GoalKind::Mortal ? "automaton has no mortal word"
                                                        : "no word avoids the state");
    default: throw BudgetExceeded("subset search exceeded the budget");
  }
}

Json gadget_metadata(const GadgetInstance& g) {
  Json j;
  j["kind"] = g.kind;
  j["states"] = g.automaton.size();
  j["letters"] = g.automaton.alphabet_size();
  if (g.expected_opt) j["expected_opt"] = *g.expected_opt;
  else j["expected_opt"] = nullptr;
  Json prov = Json::object();
  for (const auto& [k, v] : g.provenance) prov[k] = v;
  j["provenance"] = prov;
  return j;
}

void emit_gadget(Context& ctx, const GadgetInstance& g) {
  Json meta = gadget_metadata(g);
  std::string dfa = serialize_automaton(g.automaton);
  std::string meta_path = ctx.opt.meta;
  if (meta_path.empty() && !ctx.opt.output.empty()) meta_path = ctx.opt.output + ".meta.json";
  if (meta_path.empty()) {
    std::string header = "# gadget " + g.kind + "\n# expected_opt " +
                         (g.expected_opt ? std::to_string(*g.expected_opt) : std::string("unknown")) +
                         "\n";
    ctx.emit(header + dfa);
    return;
  }
  ctx.emit(dfa);
  std::ofstream f(meta_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + meta_path + "'");
  f << meta.dump(2) << '\n';
}

std::optional<std::size_t> certified_optimum(const PartialAutomaton& a, const SearchBudget& b) {
  auto r = shortest_word_exact(a, Goal::sync(), b);
  if (r.status == SearchStatus::Found) return r.witness.word.size();
  return std::nullopt;
}

CompositionMap parse_beta(const std::string& text, std::size_t size) {
  if (text.empty()) return CompositionMap::identity(size);
  CompositionMap m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      m.beta.push_back(std::stoul(item));
    } catch (const std::logic_error&) {
      throw UsageError("--beta expects comma-separated codeword indices");
    }
  }
  return m;
}

void cmd_check(Context& ctx) {
  std::string bytes = ctx.read(ctx.opt.input);
  auto a = parse_automaton(bytes);
  auto start = std::chrono::steady_clock::now();
  auto c = classify(a);
  bool pairwise = pairwise_check_applies(a);
  bool sync = is_synchronizing(a);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::optional<SearchOutcome> oracle;
  if (ctx.opt.oracle) oracle = shortest_word_exact(a, Goal::sync(), ctx.budget());

  if (ctx.opt.format == "json") {
    Json j;
    j["command"] = "check";
    j["input_digest"] = digest(bytes);
    j["states"] = a.size();
    j["letters"] = a.alphabet_size();
    j["complete"] = c.complete;
    j["strongly_connected"] = c.strongly_connected;
    j["weakly_acyclic"] = c.weakly_acyclic;
    j["strongly_acyclic"] = c.strongly_acyclic;
    j["synchronizing"] = sync;
    j["check_path"] = pairwise ? "pairwise" : "subset-search";
    if (oracle) j["oracle"] = status_name(oracle->status);
    else j["oracle"] = nullptr;
    j["wall_time_ms"] = ms;
    ctx.emit(j.dump(2) + "\n");
    return;
  }
  std::ostringstream os;
  os << (sync ? "synchronizing" : "not synchronizing") << '\n';
  os << "states: " << a.size() << '\n' << "letters: " << a.alphabet_size() << '\n';
  os << "complete: " << (c.complete ? "yes" : "no") << '\n';
  os << "strongly_connected: " << (c.strongly_connected ? "yes" : "no") << '\n';
  os << "weakly_acyclic: " << (c.weakly_acyclic ? "yes" : "no") << '\n';
  os << "strongly_acyclic: " << (c.strongly_acyclic ? "yes" : "no") << '\n';
  os << "check_path: " << (pairwise ? "pairwise" : "subset-search") << '\n';
  if (oracle) os << "oracle: " << status_name(oracle->status) << '\n';
  ctx.emit(os.str());
}

void cmd_bench(Context& ctx) {
  BenchConfig config;
  if (!ctx.opt.config.empty()) config = parse_bench_config(ctx.read(ctx.opt.config));
  for (const auto& fam : ctx.opt.families) {
    GeneratorSpec g;
    g.family = fam;
    g.sizes = ctx.opt.sizes;
    g.samples = ctx.opt.samples;
    g.letters = ctx.opt.letters;
    config.generators.push_back(std::move(g));
  }
  if (!ctx.opt.algorithms.empty()) config.algorithms = ctx.opt.algorithms;
  if (ctx.opt.eps != "1" || ctx.opt.config.empty()) config.eps = parse_eps(ctx.opt.eps);
  if (ctx.opt.seed != 1 || ctx.opt.config.empty()) config.seed = ctx.opt.seed;
  if (ctx.opt.budget != SearchBudget{}.max_subset_nodes || ctx.opt.config.empty())
    config.budget.max_subset_nodes = ctx.opt.budget;
  ctx.emit(bench_csv(bench_sweep(config)));
}

void enable_fallthrough(CLI::App* app) {
  app->fallthrough();
  for (auto* sub : app->get_subcommands({})) enable_fallthrough(sub);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
  Context ctx{Options{}, in, out, err};
  Options& o = ctx.opt;
  std::function<void()> action;

  CLI::App app{"Synchronizing, mortal and avoiding words for partial automata and prefix-code decoders",
               "pcsync"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", o.budget, "Maximum number of subsets visited by exhaustive searches");
  app.add_option("--seed", o.seed, "Seed for all randomness");
  app.add_option("-o,--output", o.output, "Write the result to this file");
  app.add_flag("--oracle", o.oracle, "Compare against the exact subset search");

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<void()> fn) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto with_input = [&](CLI::App* sub, const char* what = "Automaton file (- for stdin)") {
    sub->add_option("input", o.input, what)->required();
    return sub;
  };

  with_input(leaf(&app, "check", "Classify an automaton and decide synchronizability", [&] { cmd_check(ctx); }));

  auto* sync = app.add_subcommand("sync", "Find a synchronizing word");
  sync->require_subcommand(1);
  with_input(leaf(sync, "exact", "Shortest word by subset search", [&] {
    word_command(ctx, "sync exact", Goal::sync(),
                 [&](const PartialAutomaton& a) { return exact_or_throw(a, Goal::sync(), ctx.budget()); });
  }));
  with_input(leaf(sync, "greedy", "Greedy pair merging", [&] {
    word_command(ctx, "sync greedy", Goal::sync(), [](const PartialAutomaton& a) { return greedy_sync(a); });
  }));
  with_input(leaf(sync, "log", "Logarithmic approximation for literal decoders", [&] {
    word_command(ctx, "sync log", Goal::sync(), [](const PartialAutomaton& a) { return approx_sync_log(a); });
  }));
  auto* sync_eps = with_input(leaf(sync, "eps", "(1+eps)-approximation for literal decoders", [&] {
    Epsilon eps = parse_eps(o.eps);
    word_command(ctx, "sync eps", Goal::sync(),
                 [&](const PartialAutomaton& a) { return approx_sync_eps(a, eps, ctx.budget()); });
  }));
  sync_eps->add_option("--eps", o.eps, "Approximation slack as a rational, e.g. 1/2");

  auto* mortal = app.add_subcommand("mortal", "Find a mortal word");
  mortal->require_subcommand(1);
  with_input(leaf(mortal, "exact", "Shortest mortal word by subset search", [&] {
    word_command(ctx, "mortal exact", Goal::mortal(),
                 [&](const PartialAutomaton& a) { return exact_or_throw(a, Goal::mortal(), ctx.budget()); });
  }));
  with_input(leaf(mortal, "log", "Logarithmic approximation for partial literal decoders", [&] {
    word_command(ctx, "mortal log", Goal::mortal(),
                 [](const PartialAutomaton& a) { return approx_mortal_log(a); });
  }));

  auto* avoid = app.add_subcommand("avoid", "Find a word avoiding a state");
  avoid->require_subcommand(1);
  auto avoid_goal = [&](const PartialAutomaton& a) {
    State q = require_state(o, a);
    if (!a.complete() && !o.allow_partial)
      throw DomainError("avoiding words are defined for complete automata; pass --allow-partial");
    return q;
  };
  auto* avoid_exact = with_input(leaf(avoid, "exact", "Shortest avoiding word by subset search", [&] {
    if (o.state < 0) throw UsageError("--state is required");
    Goal goal = Goal::avoid(static_cast<State>(o.state));
    word_command(ctx, "avoid exact", goal, [&](const PartialAutomaton& a) {
      return exact_or_throw(a, Goal::avoid(avoid_goal(a)), ctx.budget());
    });
  }));
  auto* avoid_eps = with_input(leaf(avoid, "eps", "(1+eps)-approximation for literal decoders", [&] {
    if (o.state < 0) throw UsageError("--state is required");
    Epsilon eps = parse_eps(o.eps);
    Goal goal = Goal::avoid(static_cast<State>(o.state));
    word_command(ctx, "avoid eps", goal, [&](const PartialAutomaton& a) {
      return approx_avoiding_eps(a, avoid_goal(a), eps, ctx.budget());
    });
  }));
  for (auto* sub : {avoid_exact, avoid_eps}) {
    sub->add_option("--state", o.state, "State to avoid")->required();
    sub->add_flag("--allow-partial", o.allow_partial, "Accept partial automata");
  }
  avoid_eps->add_option("--eps", o.eps, "Approximation slack as a rational, e.g. 1/2");

  auto* decoder = app.add_subcommand("decoder", "Build, minimize, or read back decoders");
  decoder->require_subcommand(1);
  with_input(leaf(decoder, "build", "Literal decoder of a code file", [&] {
    ctx.emit(serialize_automaton(literal_decoder(parse_code(ctx.read(o.input)))));
  }), "Code file (- for stdin)");
  with_input(leaf(decoder, "minimize", "Minimize with state 0 as the root", [&] {
    ctx.emit(serialize_automaton(minimize(parse_automaton(ctx.read(o.input)))));
  }));
  auto* extract = with_input(leaf(decoder, "extract", "First-return code of a state", [&] {
    auto a = parse_automaton(ctx.read(o.input));
    State r = o.state < 0 ? 0 : require_state(o, a);
    if (o.max_len == 0) throw UsageError("--max-len must be at least 1");
    auto code = first_return_code(a, r, o.max_len);
    if (!code)
      throw DomainError("first-return code is not finite within length " + std::to_string(o.max_len));
    ctx.emit(serialize_code(*code));
  }));
  extract->add_option("--state", o.state, "Root state (default 0)");
  extract->add_option("--max-len", o.max_len, "Length cap")->required();

  auto* compose = leaf(&app, "compose", "Compose a decoder with a maximal finite prefix code", [&] {
    auto hy = parse_automaton(ctx.read(o.input));
    auto z = parse_code(ctx.read(o.second_input));
    ctx.emit(serialize_automaton(compose_decoders(hy, z, parse_beta(o.beta, z.size()))));
  });
  compose->add_option("decoder", o.input, "Decoder automaton file")->required();
  compose->add_option("code", o.second_input, "Code file")->required();
  compose->add_option("--beta", o.beta, "Codeword index per decoder letter, comma separated");

  auto* gen = app.add_subcommand("gen", "Generate a named code family");
  gen->require_subcommand(1);
  auto gen_leaf = [&](const std::string& family, std::size_t arity, const std::string& help) {
    auto* sub = leaf(gen, family, help, [&o, &ctx, family, arity] {
      if (o.params.size() != arity)
        throw UsageError(family + " takes " + std::to_string(arity) + " parameter(s)");
      ctx.emit(serialize_code(generate_code(family, o.params)));
    });
    sub->add_option("params", o.params, "Family parameters")->required();
  };
  gen_leaf("wielandt", 1, "0{0,1}^(n-1) u 1{0,1}^n");
  gen_leaf("uniform", 2, "All words of length L over k letters");
  gen_leaf("twoword", 1, "{(0^n1^n)^n, (1^n0^n)^n}");

  auto* gadget = app.add_subcommand("gadget", "Reduction gadgets");
  gadget->require_subcommand(1);
  with_input(leaf(gadget, "setcover", "Set cover pipe automaton", [&] {
    emit_gadget(ctx, set_cover_gadget(parse_set_cover(ctx.read(o.input))));
  }), "Set cover instance file (- for stdin)");
  with_input(leaf(gadget, "huffmanize", "Lift a strongly acyclic automaton to a Huffman decoder", [&] {
    auto a = parse_automaton(ctx.read(o.input));
    auto g = huffmanize(a);
    g.expected_opt = certified_optimum(a, ctx.budget());
    emit_gadget(ctx, g);
  }));
  auto* mortalize_cmd = with_input(leaf(gadget, "mortalize", "Split a state to force mortal words through it", [&] {
    auto a = parse_automaton(ctx.read(o.input));
    emit_gadget(ctx, mortalize(a, require_state(o, a)));
  }));
  mortalize_cmd->add_option("--state", o.state, "State to split")->required();
  for (auto* sub : gadget->get_subcommands({}))
    sub->add_option("--meta", o.meta, "Write metadata JSON to this path");

  auto* exp = app.add_subcommand("export", "Export an automaton");
  exp->require_subcommand(1);
  with_input(leaf(exp, "dot", "Graphviz DOT", [&] {
    ctx.emit(export_dot(parse_automaton(ctx.read(o.input))));
  }));

  auto* bench = leaf(&app, "bench", "Sweep generators and algorithms, print CSV", [&] { cmd_bench(ctx); });
  bench->add_option("--config", o.config, "JSON sweep configuration");
  bench->add_option("--family", o.families, "Generator family (repeatable)");
  bench->add_option_function<std::vector<std::string>>(
            "--sizes",
            [&o](const std::vector<std::string>& items) {
              for (const auto& item : items) {
                auto dots = item.find("..");
                auto num = [&item](const std::string& s) {
                  std::size_t pos = 0;
                  unsigned long long v = 0;
                  try {
                    v = std::stoull(s, &pos);
                  } catch (const std::exception&) {
                    pos = std::string::npos;
                  }
                  if (s.empty() || pos != s.size()) throw CLI::ValidationError("--sizes", "bad size '" + item + "'");
                  return static_cast<std::size_t>(v);
                };
                if (dots == std::string::npos) {
                  o.sizes.push_back(num(item));
                } else {
                  std::size_t lo = num(item.substr(0, dots)), hi = num(item.substr(dots + 2));
                  if (lo > hi) throw CLI::ValidationError("--sizes", "empty range '" + item + "'");
                  for (std::size_t v = lo; v <= hi; ++v) o.sizes.push_back(v);
                }
              }
            },
            "Family parameters: values or ranges like 2..6, comma separated")
      ->delimiter(',');
  bench->add_option("--algorithms", o.algorithms, "Algorithms to run")->delimiter(',');
  bench->add_option("--samples", o.samples, "Samples per random size");
  bench->add_option("--letters", o.letters, "Alphabet size for random and uniform families");
  bench->add_option("--eps", o.eps, "Slack for eps algorithms");

  enable_fallthrough(&app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (!action) throw UsageError("no command given");
    action();
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kBudgetExhausted;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace pcsync::cli
