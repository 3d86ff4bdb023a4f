#include "pcsync_cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace pcsync::cli {

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NoneExists: return "none";
    case SearchStatus::LengthCapReached: return "length-cap";
    case SearchStatus::BudgetExceeded: return "budget";
  }
  return "?";
}

std::optional<double> ratio(std::size_t length, const OracleComparison& oracle) {
  if (oracle.status != SearchStatus::Found) return std::nullopt;
  if (oracle.length == 0) return length == 0 ? 1.0 : std::optional<double>{};
  return static_cast<double>(length) / static_cast<double>(oracle.length);
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["goal"] = witness.goal.label();
  j["word"] = word_text;
  j["length"] = witness.word.size();
  j["method"] = witness.method;
  j["guarantee"] = witness.bound;
  if (oracle) {
    Json o;
    o["status"] = status_name(oracle->status);
    if (oracle->status == SearchStatus::Found) o["length"] = oracle->length;
    else o["length"] = nullptr;
    if (auto r = ratio(witness.word.size(), *oracle)) o["ratio"] = *r;
    else o["ratio"] = nullptr;
    j["oracle"] = o;
  } else {
    j["oracle"] = nullptr;
  }
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command << '\n';
  os << "input_digest: " << input_digest << '\n';
  os << "goal: " << witness.goal.label() << '\n';
  os << "word: " << word_text << '\n';
  os << "length: " << witness.word.size() << '\n';
  os << "method: " << witness.method << '\n';
  if (!witness.bound.empty()) os << "guarantee: " << witness.bound << '\n';
  if (oracle) {
    os << "oracle: " << status_name(oracle->status);
    if (oracle->status == SearchStatus::Found) os << ", length " << oracle->length;
    if (auto r = ratio(witness.word.size(), *oracle)) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", *r);
      os << ", ratio " << buf;
    }
    os << '\n';
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", wall_time_ms);
  os << "wall_time_ms: " << buf << '\n';
  return os.str();
}

}  // namespace pcsync::cli
