#pragma once

#include <stdexcept>
#include <string>

namespace tfim {

/// Thrown when an operation would exceed its configured dense/scan cap.
/// Caps fail loudly instead of switching algorithms.
struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tfim
