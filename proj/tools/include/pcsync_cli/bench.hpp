#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcsync/sync.hpp"

namespace pcsync::cli {

/// One instance source. `sizes` is the family parameter (n for wielandt and
/// twoword, inner-node count for random codes, p for setcover).
struct GeneratorSpec {
  std::string family;
  std::vector<std::size_t> sizes;
  std::size_t samples = 1;
  std::size_t letters = 2;
};

struct BenchConfig {
  std::vector<GeneratorSpec> generators;
  std::vector<std::string> algorithms{"exact", "greedy", "log"};
  Epsilon eps{1, 2};
  std::uint64_t seed = 1;
  SearchBudget budget;
};

struct BenchRow {
  std::string family;
  std::size_t param = 0;
  std::size_t sample = 0;
  std::size_t states = 0;
  std::size_t letters = 0;
  std::string algorithm;
  std::string status;
  std::optional<std::size_t> length;
  std::optional<std::size_t> oracle_length;
  std::optional<double> ratio;
  double time_ms = 0;
};

inline constexpr std::string_view kBenchHeader =
    "family,param,sample,n,k,algorithm,status,length,oracle_length,ratio,time_ms";

/// Rows sorted by (family, param, sample, algorithm).
std::vector<BenchRow> bench_sweep(const BenchConfig& config);
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Parses the JSON config accepted by `bench --config`.
BenchConfig parse_bench_config(std::string_view json_text);

}  // namespace pcsync::cli
