#include "spinmix/error.hpp"

namespace spinmix {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ReducibleMatrix: return "ReducibleMatrix";
    case ErrorKind::EtaOutOfRange: return "EtaOutOfRange";
    case ErrorKind::MuOutOfRange: return "MuOutOfRange";
    case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorKind::KappaExceedsHalfAlpha: return "KappaExceedsHalfAlpha";
    case ErrorKind::DeltaTooSmall: return "DeltaTooSmall";
    case ErrorKind::QTooSmall: return "QTooSmall";
    case ErrorKind::NoCertificate: return "NoCertificate";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::IrrationalEntries: return "IrrationalEntries";
    case ErrorKind::BoundsMismatch: return "BoundsMismatch";
    case ErrorKind::NoLegalColor: return "NoLegalColor";
    case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace spinmix
