#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cnull {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: syntax errors, bad JSON, unknown variables.
class input_error : public error {
 public:
  explicit input_error(const std::string& what,
                       std::optional<std::size_t> position = std::nullopt)
      : error(position ? what + " at position " + std::to_string(*position)
                       : what),
        position_(position) {}

  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  std::optional<std::size_t> position_;
};

/// Operands that cannot be combined (different fields, different arity),
/// or an operation outside its domain such as inverting zero.
class argument_error : public error {
 public:
  using error::error;
};

/// The instance does not satisfy the hypotheses of the theorem being checked.
class precondition_error : public error {
 public:
  using error::error;
};

/// A proven identity failed to hold. Always an implementation bug.
class invariant_violation : public error {
 public:
  using error::error;
};

}  // namespace cnull
