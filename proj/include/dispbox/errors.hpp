#pragma once

#include <stdexcept>
#include <string>

namespace dispbox {

// Bad arguments, violated preconditions, malformed input files. CLI exit code 2.
class usage_error : public std::invalid_argument {
 public:
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// A combinatorial enumeration would exceed the configured cap. CLI exit code 2.
class cap_exceeded : public std::runtime_error {
 public:
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// A verified-impossible state was reached (e.g. a hitting set whose extracted
// family refutes). CLI exit code 1.
class internal_check_failure : public std::logic_error {
 public:
  explicit internal_check_failure(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dispbox
