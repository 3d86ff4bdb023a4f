#include "pcsync_cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <json.hpp>
#include <tuple>

#include "pcsync/codes.hpp"
#include "pcsync/error.hpp"
#include "pcsync/gadgets.hpp"
#include "pcsync/random.hpp"

namespace pcsync::cli {
namespace {

struct Instance {
  std::string family;
  std::size_t param;
  std::size_t sample;
  PartialAutomaton automaton;
};

std::vector<Instance> make_instances(const GeneratorSpec& spec, Rng& rng) {
  std::vector<Instance> out;
  for (std::size_t size : spec.sizes)
    for (std::size_t s = 0; s < spec.samples; ++s) {
      auto add = [&](PartialAutomaton a) { out.push_back({spec.family, size, s, std::move(a)}); };
      if (spec.family == "wielandt") add(literal_decoder(wielandt_code(size)));
      else if (spec.family == "wielandt-min") add(minimize(literal_decoder(wielandt_code(size))));
      else if (spec.family == "uniform") add(literal_decoder(uniform_code(spec.letters, size)));
      else if (spec.family == "twoword") add(literal_decoder(two_word_code(size)));
      else if (spec.family == "random") add(literal_decoder(random_maximal_code(rng, spec.letters, size)));
      else if (spec.family == "random-nonmaximal")
        add(literal_decoder(random_nonmaximal_code(rng, spec.letters, size)));
      else if (spec.family == "setcover")
        add(set_cover_gadget(random_set_cover(rng, size, size + 2)).automaton);
      else throw InputError("unknown bench family '" + spec.family + "'");
      // Deterministic families need only one sample.
      if (spec.family != "random" && spec.family != "random-nonmaximal" && spec.family != "setcover")
        break;
    }
  return out;
}

Goal goal_for(const std::string& algorithm) {
  if (algorithm.rfind("mortal", 0) == 0) return Goal::mortal();
  if (algorithm.rfind("avoid", 0) == 0) return Goal::avoid(0);
  return Goal::sync();
}

WordWitness run_algorithm(const std::string& algorithm, const PartialAutomaton& a,
                          const BenchConfig& config) {
  auto exact = [&](const Goal& goal) {
    auto r = shortest_word_exact(a, goal, config.budget);
    if (r.status == SearchStatus::BudgetExceeded) throw BudgetExceeded("budget");
    if (r.status != SearchStatus::Found) throw DomainError("no word");
    return r.witness;
  };
  if (algorithm == "exact") return exact(Goal::sync());
  if (algorithm == "greedy") return greedy_sync(a);
  if (algorithm == "log") return approx_sync_log(a);
  if (algorithm == "eps") return approx_sync_eps(a, config.eps, config.budget);
  if (algorithm == "mortal-exact") return exact(Goal::mortal());
  if (algorithm == "mortal-log") return approx_mortal_log(a);
  if (algorithm == "avoid-exact") return exact(Goal::avoid(0));
  if (algorithm == "avoid-eps") return approx_avoiding_eps(a, 0, config.eps, config.budget);
  throw InputError("unknown bench algorithm '" + algorithm + "'");
}

std::string fmt_double(double v, const char* pattern) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> bench_sweep(const BenchConfig& config) {
  for (const auto& alg : config.algorithms) goal_for(alg);
  Rng rng(config.seed);
  std::vector<BenchRow> rows;
  for (const auto& spec : config.generators) {
    for (auto& inst : make_instances(spec, rng)) {
      const auto& a = inst.automaton;
      std::map<GoalKind, SearchOutcome> oracles;
      for (const auto& alg : config.algorithms) {
        BenchRow row;
        row.family = inst.family;
        row.param = inst.param;
        row.sample = inst.sample;
        row.states = a.size();
        row.letters = a.alphabet_size();
        row.algorithm = alg;

        Goal goal = goal_for(alg);
        auto it = oracles.find(goal.kind);
        if (it == oracles.end())
          it = oracles.emplace(goal.kind, shortest_word_exact(a, goal, config.budget)).first;
        if (it->second.status == SearchStatus::Found)
          row.oracle_length = it->second.witness.word.size();

        auto start = std::chrono::steady_clock::now();
        try {
          auto w = run_algorithm(alg, a, config);
          if (!verify_witness(a, w)) throw InternalError("witness failed re-verification");
          row.status = "ok";
          row.length = w.word.size();
          if (row.oracle_length) {
            if (*row.oracle_length > 0)
              row.ratio = static_cast<double>(*row.length) / static_cast<double>(*row.oracle_length);
            else if (*row.length == 0)
              row.ratio = 1.0;
          }
        } catch (const BudgetExceeded&) {
          row.status = "budget";
        } catch (const DomainError&) {
          row.status = "domain";
        }
        row.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                          .count();
        rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) {
    return std::tie(x.family, x.param, x.sample, x.algorithm) <
           std::tie(y.family, y.param, y.sample, y.algorithm);
  });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out(kBenchHeader);
  out += '\n';
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& r : rows) {
    out += r.family + ',' + std::to_string(r.param) + ',' + std::to_string(r.sample) + ',' +
           std::to_string(r.states) + ',' + std::to_string(r.letters) + ',' + r.algorithm + ',' +
           r.status + ',' + opt(r.length) + ',' + opt(r.oracle_length) + ',' +
           (r.ratio ? fmt_double(*r.ratio, "%.4f") : std::string()) + ',' +
           fmt_double(r.time_ms, "%.3f") + '\n';
  }
  return out;
}

BenchConfig parse_bench_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("bench config: ") + e.what());
  }
  BenchConfig c;
  try {
    if (j.contains("generators"))
      for (const auto& g : j.at("generators")) {
        GeneratorSpec spec;
        spec.family = g.at("family").get<std::string>();
        spec.sizes = g.at("sizes").get<std::vector<std::size_t>>();
        spec.samples = g.value("samples", std::size_t{1});
        spec.letters = g.value("letters", std::size_t{2});
        c.generators.push_back(std::move(spec));
      }
    if (j.contains("algorithms")) c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("budget")) c.budget.max_subset_nodes = j.at("budget").get<std::size_t>();
    if (j.contains("eps")) {
      auto text = j.at("eps").get<std::string>();
      auto slash = text.find('/');
      std::int64_t num = std::stoll(text.substr(0, slash));
      std::int64_t den = slash == std::string::npos ? 1 : std::stoll(text.substr(slash + 1));
      if (num <= 0 || den <= 0) throw InputError("bench config: eps must be positive");
      c.eps = Epsilon(num, den);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bench config: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("bench config: ") + e.what());
  }
  return c;
}

}  // namespace pcsync::cli
