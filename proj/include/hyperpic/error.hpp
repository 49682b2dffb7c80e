#ifndef HYPERPIC_ERROR_HPP
#define HYPERPIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hyperpic {

/// Invalid field parameters, mismatched fields, failed embeddings.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside an operation's precondition (non-smooth form, repeated points, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size or time budget would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hyperpic

#endif  // HYPERPIC_ERROR_HPP
