#include "mdl/error.hpp"

namespace mdl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::CompositeModulus: return "CompositeModulus";
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::ZeroInverse: return "ZeroInverse";
  case ErrorKind::InvalidExponent: return "InvalidExponent";
  case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
  case ErrorKind::BothZero: return "BothZero";
  case ErrorKind::ZeroModulus: return "ZeroModulus";
  case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
  case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
  case ErrorKind::SizeMismatch: return "SizeMismatch";
  case ErrorKind::NotCoprime: return "NotCoprime";
  case ErrorKind::CongruenceFailed: return "CongruenceFailed";
  case ErrorKind::VerificationFailed: return "VerificationFailed";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

} // namespace mdl
