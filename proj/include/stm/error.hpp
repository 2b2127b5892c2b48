#pragma once

#include <stdexcept>
#include <string>

namespace stm {

/// Malformed or out-of-range input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A lattice generator pairs non-integrally with some coroot.
class InvalidIsogeny : public InputError {
 public:
  explicit InvalidIsogeny(const std::string& what) : InputError("invalid isogeny: " + what) {}
};

/// The weight multiset admits no splitting into a representation and its dual.
class NoPolarization : public std::domain_error {
 public:
  explicit NoPolarization(const std::string& what)
      : std::domain_error("no torus polarization exists: " + what) {}
};

/// A closure computation exceeded its hard cap; the datum is not of finite type.
class ClosureOverflow : public std::runtime_error {
 public:
  explicit ClosureOverflow(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stm
