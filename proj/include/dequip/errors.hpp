#pragma once

#include <stdexcept>
#include <string>

namespace dequip {

// I/O failures: unreadable/unwritable files, truncated payloads.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file contents (bad magic, bad header fields).
struct FormatError : IoError {
  using IoError::IoError;
};

// Violated preconditions on in-memory values.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solver failures (non-convergence, singular fits).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem size beyond what the dense solver path supports.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dequip
