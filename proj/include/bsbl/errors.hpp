#pragma once

#include <stdexcept>
#include <string>

namespace bsbl {

// Invalid dimensions, bad configuration values, infeasible scenario specs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric breakdown (failed factorization, non-finite intermediate).
// Messages carry whatever iteration context the call site has.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bsbl
