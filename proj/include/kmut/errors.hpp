#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kmut {

// Invalid arguments are reported with std::invalid_argument. The types below
// cover mathematically meaningful requests the calculator refuses to answer.

class math_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Euler pairing between two objects with no defined formula (fiber/fiber).
class unsupported_pairing : public math_error {
public:
  using math_error::math_error;
};

/// Operation not defined for the given input (twisting a virtual bundle,
/// dualising a fiber sheaf, ...).
class unsupported_operation : public math_error {
public:
  using math_error::math_error;
};

/// A failure inside a mutation sequence, tagged with the offending step.
class sequence_error : public math_error {
public:
  sequence_error(std::size_t step, const std::string& what)
      : math_error("step " + std::to_string(step + 1) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

} // namespace kmut
