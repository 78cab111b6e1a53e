#pragma once

#include <stdexcept>
#include <string>

namespace bdiv {

/// Failure categories surfaced by the library. The CLI maps these to exit
/// codes: validation-type errors -> 2, OutsideCatalogRange -> 3, Internal -> 4.
enum class ErrorKind {
  BlowUpOnCurve,
  UnknownHost,
  LabelConflict,
  DifferentBase,
  NotComparable,
  EmptyInput,
  IncompatibleTable,
  OutsideProbeSet,
  OutsideCatalogRange,
  NotPseudoEffective,
  NotNef,
  SingularGram,
  UnsupportedMorphism,
  UnknownCheckName,
  ParseError,
  ValidationError,
  Internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::BlowUpOnCurve: return "BlowUpOnCurve";
    case ErrorKind::UnknownHost: return "UnknownHost";
    case ErrorKind::LabelConflict: return "LabelConflict";
    case ErrorKind::DifferentBase: return "DifferentBase";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::IncompatibleTable: return "IncompatibleTable";
    case ErrorKind::OutsideProbeSet: return "OutsideProbeSet";
    case ErrorKind::OutsideCatalogRange: return "OutsideCatalogRange";
    case ErrorKind::NotPseudoEffective: return "NotPseudoEffective";
    case ErrorKind::NotNef: return "NotNef";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::UnsupportedMorphism: return "UnsupportedMorphism";
    case ErrorKind::UnknownCheckName: return "UnknownCheckName";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace bdiv
