#pragma once

#include <stdexcept>
#include <string>

namespace gp2 {

/// Raised when an engine invariant or operation precondition is violated.
/// These indicate a bug in the caller (or in the engine), never bad user input.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

[[noreturn]] inline void contract_failure(const std::string& what) { throw ContractViolation(what); }

}  // namespace gp2

// Build with -DGP2_UNCHECKED to strip validation from hot paths.
#ifndef GP2_UNCHECKED
#define GP2_CHECK(cond, msg)                          \
  do {                                                \
    if (!(cond)) ::gp2::contract_failure(msg);        \
  } while (0)
#else
#define GP2_CHECK(cond, msg) ((void)0)
#endif
