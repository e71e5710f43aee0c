#pragma once

#include <stdexcept>
#include <string>

namespace ivp {

/// Malformed or out-of-contract input (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap was hit: slot cap, depth ceiling, search bound
/// (CLI exit code 3). Never a wrong answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A factor handed to canonicalization turned out to be reducible over Q.
class ReducibleFactorError : public InputError {
 public:
  ReducibleFactorError(const std::string& what, std::string left, std::string right)
      : InputError(what), left_(std::move(left)), right_(std::move(right)) {}
  const std::string& left() const { return left_; }
  const std::string& right() const { return right_; }

 private:
  std::string left_;
  std::string right_;
};

/// A family's hypothesis or self-check failed on replay.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ivp
