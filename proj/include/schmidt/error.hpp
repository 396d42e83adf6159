#pragma once

#include <stdexcept>
#include <string>

namespace schmidt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct RefinementBudgetExceeded : Error {
  using Error::Error;
};

struct FieldMismatch : Error {
  FieldMismatch() : Error("scalars belong to different number fields") {}
};

struct ParseError : Error {
  using Error::Error;
};

struct ModelError : Error {
  using Error::Error;
};

struct InadmissibleWord : ModelError {
  using ModelError::ModelError;
};

struct UnknownSymbol : ModelError {
  using ModelError::ModelError;
};

struct ConfigError : Error {
  ConfigError(std::string field, const std::string& msg)
      : Error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace schmidt
