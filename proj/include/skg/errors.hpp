#ifndef SKG_ERRORS_HPP_
#define SKG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace skg {

// Malformed input: asymmetric matrix, entry out of range, bad file.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A resource guard (vertex count, group count, enumeration size) was exceeded.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace skg

#endif  // SKG_ERRORS_HPP_
