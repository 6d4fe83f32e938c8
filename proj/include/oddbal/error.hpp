#pragma once

#include <stdexcept>
#include <string>

namespace oddbal {

/// Operands live in different coefficient rings (e.g. cyclotomic orders differ).
struct ring_mismatch : std::invalid_argument {
  explicit ring_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Constant term of a series is not invertible in its ring.
struct non_unit : std::domain_error {
  explicit non_unit(const std::string& what) : std::domain_error(what) {}
};

struct index_out_of_range : std::out_of_range {
  explicit index_out_of_range(const std::string& what) : std::out_of_range(what) {}
};

/// A sum, product or integral was asked for outside its region of convergence,
/// or failed to settle within the iteration cap.
struct nonconvergent : std::domain_error {
  explicit nonconvergent(const std::string& what) : std::domain_error(what) {}
};

/// A denominator vanished (Appell pole, theta zero) within tolerance.
struct pole_error : std::domain_error {
  explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace oddbal
