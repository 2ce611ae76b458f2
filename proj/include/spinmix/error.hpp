#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinmix {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NonConvergence,
  ReducibleMatrix,
  EtaOutOfRange,
  MuOutOfRange,
  GammaOutOfRange,
  KappaExceedsHalfAlpha,
  DeltaTooSmall,
  QTooSmall,
  NoCertificate,
  PreconditionFailed,
  EmptyGraph,
  NotSymmetric,
  IrrationalEntries,
  BoundsMismatch,
  NoLegalColor,
  StateSpaceTooLarge,
  CapExceeded,
  ParseError,
  SelfLoop,
  NegativeEntry,
  NotSquare,
  Overflow,
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spinmix
