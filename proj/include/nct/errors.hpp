#pragma once

#include <stdexcept>
#include <string>

namespace nct {

/// Invalid argument or violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The enclosure of Omega is too wide for the requested quantity. Callers
/// re-request the input at a higher truncation order; nothing is guessed.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The certified convergent range does not reach the requested index or eps.
class DepthError : public std::runtime_error {
 public:
  DepthError(const std::string& what, int required_depth)
      : std::runtime_error(what), required_depth_(required_depth) {}

  int required_depth() const noexcept { return required_depth_; }

 private:
  int required_depth_;
};

}  // namespace nct
