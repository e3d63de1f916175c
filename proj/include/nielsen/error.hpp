#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nielsen {

enum class Errc {
  NonSymmetric,
  BoxRequired,
  BoxTooLarge,
  EmptyInput,
  DimensionMismatch,
  IsotropicVector,
  NotIntegral,
  NotAnIsometry,
  DegenerateForm,
  LatticeMismatch,
  UnsupportedRank,
  OddArity,
  ArityMismatch,
  RankTooSmall,
  ScaleExceeded,
  NotARoot,
  RegionTooLarge,
  TransversalityFailure,
  EvenAmbient,
  ProportionalRoots,
  InvalidArgument,
  UnknownLattice,
  ParseError,
};

constexpr std::string_view error_name(Errc e) noexcept {
  switch (e) {
  case Errc::NonSymmetric: return "NonSymmetric";
  case Errc::BoxRequired: return "BoxRequired";
  case Errc::BoxTooLarge: return "BoxTooLarge";
  case Errc::EmptyInput: return "EmptyInput";
  case Errc::DimensionMismatch: return "DimensionMismatch";
  case Errc::IsotropicVector: return "IsotropicVector";
  case Errc::NotIntegral: return "NotIntegral";
  case Errc::NotAnIsometry: return "NotAnIsometry";
  case Errc::DegenerateForm: return "DegenerateForm";
  case Errc::LatticeMismatch: return "LatticeMismatch";
  case Errc::UnsupportedRank: return "UnsupportedRank";
  case Errc::OddArity: return "OddArity";
  case Errc::ArityMismatch: return "ArityMismatch";
  case Errc::RankTooSmall: return "RankTooSmall";
  case Errc::ScaleExceeded: return "ScaleExceeded";
  case Errc::NotARoot: return "NotARoot";
  case Errc::RegionTooLarge: return "RegionTooLarge";
  case Errc::TransversalityFailure: return "TransversalityFailure";
  case Errc::EvenAmbient: return "EvenAmbient";
  case Errc::ProportionalRoots: return "ProportionalRoots";
  case Errc::InvalidArgument: return "InvalidArgument";
  case Errc::UnknownLattice: return "UnknownLattice";
  case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error raised by every module; `code()` names the failure class.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

private:
  Errc code_;
};

} // namespace nielsen
