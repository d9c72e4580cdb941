#pragma once

#include <stdexcept>

namespace zhukit {

/// An operation would produce a component above the configured weight cutoff.
class CutoffError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for its inputs.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace zhukit
