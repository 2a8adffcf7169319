#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace weil2 {

/// Set WEIL2_UNSAFE_DISABLE_CAPS=1 to lift every enumeration size cap.
inline bool size_caps_disabled() {
  const char* s = std::getenv("WEIL2_UNSAFE_DISABLE_CAPS");
  return s != nullptr && *s != '\0' && std::string(s) != "0";
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration or search was refused because of its size.
struct CapExceeded : Error {
  using Error::Error;
};

/// A pair of Lagrangians (or oriented Lagrangians) is not in general position.
struct NotTransversal : Error {
  using Error::Error;
};

struct NonUnit : Error {
  using Error::Error;
};

/// Degenerate symmetric form, or invalid structure (non-Lagrangian basis, bad alpha table, ...).
struct InvalidInput : Error {
  using Error::Error;
};

/// Two operators that must be proportional were not; this would contradict irreducibility.
struct InconsistentScalar : Error {
  using Error::Error;
};

}  // namespace weil2
