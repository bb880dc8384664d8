#pragma once

#include <stdexcept>
#include <string>

namespace qflow {

/// A tensor product or input left the symmetric traceless subspace.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigen-structure is undefined for the requested quantity (repeated top
/// eigenvalue, zero tensor).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration, parameters or shape mismatch.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runtime failure inside the solver (assertions on numerical invariants).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qflow
