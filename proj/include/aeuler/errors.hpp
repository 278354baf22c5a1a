#pragma once

#include <stdexcept>
#include <string>

namespace aeuler {

/// Array or grid dimensions do not match.
class SizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spectral coefficients are not the transform of a real field.
class SymmetryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical or numerical parameter is out of its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared while evaluating a right-hand side.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The adaptive step size fell below its floor. The integrated state passed
/// by reference still holds the last committed step.
class StiffnessError : public std::runtime_error {
 public:
  StiffnessError(const std::string& what, double t, double dt)
      : std::runtime_error(what), t_(t), dt_(dt) {}
  double time() const { return t_; }
  double step() const { return dt_; }

 private:
  double t_;
  double dt_;
};

/// Evaluation of a singular kernel at zero separation.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Not enough usable data for a least-squares fit.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested time window selects no data.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed or incompatible file on disk.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aeuler
