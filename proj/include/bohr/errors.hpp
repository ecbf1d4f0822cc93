#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

// Input/file/argument problems the caller can fix. CLI exit code 2.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Domain/precondition violations (out-of-range n, |lambda| >= 1, f(0)=0, ...).
// CLI exit code 3.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Numerical machinery failed to meet its contract. CLI exit code 4.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bohr
