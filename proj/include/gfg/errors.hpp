#pragma once

#include <stdexcept>
#include <string>

namespace gfg {

// Invalid argument for the mathematical domain of an operation (odd n,
// non-vertex, cyclic input to a DAG routine, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query outside the range a precomputed table covers.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Memory budget or search cap exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checkpoint and output file failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A resumed computation does not match the stored configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gfg
