#pragma once

#include <stdexcept>
#include <string>

namespace gsi {

/// Malformed or inconsistent user input (bad ids, syntax, missing data).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on data that does not satisfy its precondition.
class precondition_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal invariant failed. Always a bug, never bad input.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw invariant_error(what);
}
}  // namespace detail

}  // namespace gsi
