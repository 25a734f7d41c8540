#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crosshull {

enum class ErrorKind {
  InvalidBase,
  OutsideDomain,
  UnsupportedMap,
  NoClosedForm,
  NoConvergence,
  EmptyInput,
  BadOrder,
  LengthMismatch,
  OutsideAmbient,
  NotMember,
  DimensionMismatch,
  UnsupportedSigmaKind,
  NotInHull,
  SamplingExhausted,
  UndefinedValue,
  IllConditioned,
  InsufficientSamples,
  DenominatorVanishesIdentically,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library. The kind is part of the
/// contract; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace crosshull
