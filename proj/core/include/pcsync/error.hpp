#pragma once

#include <stdexcept>
#include <string>

namespace pcsync {

// Malformed input: bad indices, unparsable files, violated type invariants.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input outside an operation's domain, e.g. a non-synchronizing
// automaton handed to a synchronization algorithm.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search hit its node or length cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proven guarantee failed to hold. Seeing this means a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pcsync
