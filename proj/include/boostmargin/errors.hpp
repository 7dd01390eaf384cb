#pragma once

#include <stdexcept>
#include <string>

namespace boostmargin {

// Bad caller input: out-of-range parameters, malformed files, size guards.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A checked invariant did not hold at runtime.
class InvariantFailure : public std::logic_error {
 public:
  explicit InvariantFailure(const std::string& what) : std::logic_error(what) {}
};

// The weak-learnable problem generator could not certify its output.
class GenerationFailed : public std::runtime_error {
 public:
  explicit GenerationFailed(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantFailure(what);
}

}  // namespace boostmargin
