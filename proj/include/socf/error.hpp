#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace socf {

enum class ErrorKind {
  NonFinite,
  NonSymmetric,
  NotPSD,
  DimensionMismatch,
  NotDifferentiable,
  ZeroDirection,
  DimensionTooLarge,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace socf
