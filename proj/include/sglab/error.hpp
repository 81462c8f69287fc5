#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sglab {

/// Every library error names the operation that raised it and the offending
/// parameter, so the CLI can report them without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(std::string_view op, std::string_view param, const std::string& what)
      : std::runtime_error(std::string(op) + ": " + what + " [" +
                           std::string(param) + "]"),
        op_(op),
        param_(param) {}

  const std::string& op() const noexcept { return op_; }
  const std::string& param() const noexcept { return param_; }

 private:
  std::string op_;
  std::string param_;
};

/// Inputs violate a documented precondition (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The numerics refused or broke down on admissible-looking input (exit 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define SGLAB_DEFINE_ERROR(Name, Base) \
  class Name : public Base {           \
   public:                             \
    using Base::Base;                  \
  }

SGLAB_DEFINE_ERROR(DomainError, ConfigError);
SGLAB_DEFINE_ERROR(ShapeError, ConfigError);
SGLAB_DEFINE_ERROR(PreconditionError, ConfigError);
SGLAB_DEFINE_ERROR(CFLError, ConfigError);

SGLAB_DEFINE_ERROR(BranchCutError, NumericalError);
SGLAB_DEFINE_ERROR(SingularError, NumericalError);
SGLAB_DEFINE_ERROR(OverflowError, NumericalError);
SGLAB_DEFINE_ERROR(ConvergenceError, NumericalError);
SGLAB_DEFINE_ERROR(QuadratureError, NumericalError);
SGLAB_DEFINE_ERROR(PositivityError, NumericalError);
SGLAB_DEFINE_ERROR(StabilityError, NumericalError);
SGLAB_DEFINE_ERROR(DivisionWindowError, NumericalError);

#undef SGLAB_DEFINE_ERROR

}  // namespace sglab
