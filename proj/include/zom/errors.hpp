#pragma once

#include <stdexcept>
#include <string>

namespace zom {

/// Base class for every domain error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad pattern text, unknown registry name, parameter out of range.
class invalid_input : public error {
 public:
  using error::error;
};

/// A construction or tensor would exceed the configured cell/ones cap.
class cap_exceeded : public error {
 public:
  using error::error;
};

/// A search ran out of its node budget; the answer is unknown, not negative.
class budget_exceeded : public error {
 public:
  using error::error;
};

/// An audit found a state that a proven statement rules out.
class inconsistency : public error {
 public:
  using error::error;
};

}  // namespace zom
