#pragma once

#include <stdexcept>
#include <string>

namespace evim {

// Bad user data: malformed tables, broken metric/poset axioms, failed
// operation preconditions.
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// An instance hook produced inconsistent data (factorization mismatch,
// non-invertible induced automorphism, ...). Always a bug, never user error.
struct contract_violation : std::logic_error {
  explicit contract_violation(const std::string& what) : std::logic_error(what) {}
};

// An enumeration or power-search guard was exceeded.
struct guard_exceeded : std::runtime_error {
  explicit guard_exceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evim
