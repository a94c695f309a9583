#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cremona {

enum class Errc {
  NotDivisible,
  DivisionByZero,
  DegreeMismatch,
  ZeroInput,
  CoincidentPoints,
  Parse,
  Degenerate,
  IndeterminateAt,
  IdentityMap,
  Precondition,
  Inconsistent,
  NotFound,
  Verification,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::Parse: return "ParseError";
    case Errc::Degenerate: return "Degenerate";
    case Errc::IndeterminateAt: return "IndeterminateAt";
    case Errc::IdentityMap: return "IdentityMap";
    case Errc::Precondition: return "Precondition";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NotFound: return "NotFound";
    case Errc::Verification: return "VerificationFailed";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported as a cremona::Error
/// carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cremona
