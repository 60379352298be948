#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kbg {

/// Caller passed arguments that violate a precondition (bad s, mismatched rings, unknown flag).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial or file text that does not conform to the grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Exponent arithmetic left the representable range.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A computation exceeded its configured size budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t pending_pairs)
      : std::runtime_error(what + " (pending pairs: " + std::to_string(pending_pairs) + ")"),
        pending_pairs_(pending_pairs) {}

  std::size_t pending_pairs() const noexcept { return pending_pairs_; }

 private:
  std::size_t pending_pairs_;
};

/// The quotient ring has no finite monomial basis.
class InfiniteQuotientError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bounded search stopped before it could certify its answer; the bound must be raised.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed; indicates a bug or a falsified mathematical assumption.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Corrupt, mismatched, or unreadable cache/interchange file.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kbg
