#ifndef LIEFOCK_ERRORS_HPP
#define LIEFOCK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liefock {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on caller-supplied data.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InfeasibleSector : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class StateLookupError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotHermitian : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Parameters at which a closed form is singular (e.g. zero detuning).
class SingularParameter : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Generator set whose Gram matrix is numerically singular.
class DegenerateGenerators : public Error {
 public:
  using Error::Error;
};

// Scenario/config schema violation. `path` names the offending field.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string path, const std::string& what)
      : InvalidArgument(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// A computed result broke a numeric contract (unitarity, hermiticity, ...).
class NumericContractError : public Error {
 public:
  using Error::Error;
};

// A request would exceed a configured resource limit (dense threshold, ...).
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace liefock

#endif  // LIEFOCK_ERRORS_HPP
