#ifndef CHARPOLY_ERROR_HPP
#define CHARPOLY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace charpoly {

// Malformed or contract-violating input (CLI exit code 1).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation undefined on this value, e.g. exp(g) for g in <u>.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iteration budget ran out; the computation was not wrong, only unfinished
// (CLI exit code 2).
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A postcondition that is a theorem failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace charpoly

#endif
