#pragma once

#include <stdexcept>
#include <string>

namespace flicker {

// Base of every error raised by the library. Callers that only need a
// message can catch this; the CLI maps each subclass to a structured report.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define FLICKER_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(what) {}     \
    const char* kind() const noexcept override { return #Name; } \
  }

FLICKER_DEFINE_ERROR(PreconditionError);
FLICKER_DEFINE_ERROR(InvalidConfig);
FLICKER_DEFINE_ERROR(RootFindingError);
FLICKER_DEFINE_ERROR(NoBistability);
FLICKER_DEFINE_ERROR(EmptyTrajectory);
FLICKER_DEFINE_ERROR(LengthMismatch);
FLICKER_DEFINE_ERROR(ParseError);
FLICKER_DEFINE_ERROR(IoError);

#undef FLICKER_DEFINE_ERROR

// Raised by config loading. `field` names the offending key, dotted by section.
class ValidationError : public InvalidConfig {
 public:
  ValidationError(std::string field, const std::string& what)
      : InvalidConfig(field + ": " + what), field_(std::move(field)) {}
  const char* kind() const noexcept override { return "ValidationError"; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace flicker
