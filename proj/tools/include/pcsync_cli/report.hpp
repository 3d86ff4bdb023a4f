#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pcsync/automaton.hpp"
#include "pcsync/sync.hpp"

namespace pcsync::cli {

using Json = nlohmann::ordered_json;

struct OracleComparison {
  SearchStatus status = SearchStatus::NoneExists;
  std::size_t length = 0;
};

/// Result record of one word-finding command. Key order is fixed.
struct Report {
  std::string command;
  std::string input_digest;
  WordWitness witness;
  std::string word_text;
  std::optional<OracleComparison> oracle;
  double wall_time_ms = 0;

  Json to_json() const;
  std::string to_text() const;
};

std::string status_name(SearchStatus s);

/// length / oracle, with 0/0 read as 1; nullopt if the oracle did not finish.
std::optional<double> ratio(std::size_t length, const OracleComparison& oracle);

}  // namespace pcsync::cli
