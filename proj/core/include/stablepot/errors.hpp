#pragma once

#include <stdexcept>
#include <string>

namespace stablepot {

// Argument outside the mathematical domain of an operation, or an invalid
// parameter pair. Messages state which constraint was violated.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Requested integral is provably infinite (e.g. an incomplete beta over the
// full interval with a non-positive second parameter).
class divergence_error : public std::runtime_error {
 public:
  explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// log-gamma evaluated at a pole (zero or a negative integer).
class pole_error : public domain_error {
 public:
  explicit pole_error(const std::string& what) : domain_error(what) {}
};

// Monte Carlo estimation plumbing failure: empty record sets, grid shape
// mismatches between estimates and references.
class estimation_error : public std::runtime_error {
 public:
  explicit estimation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stablepot
