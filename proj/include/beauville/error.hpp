#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace beauville {

enum class Errc {
  InvalidArgument,
  NotPrime,
  CapExceeded,
  NoIrreducibleFound,
  SpecMismatch,
  DivisionByZero,
  ParseError,
  OrderMismatch,
  NoGeneratingPair,
  TableInvalid,
  NonIntegerResult,
  DegenerateEigenvalues,
  NotGenerating,
  NotHyperbolic,
  NotSmooth,
  NonIntegerGenus,
  TrivialElement,
  EquivalentTriples,
  HypothesisFailed,
  PoolExhausted,
  NotCoprimeType,
  TooFewTriples,
  RangeError,
  NoValidTraces,
  NoValidW,
  Internal,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotPrime: return "NotPrime";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ParseError: return "ParseError";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::NoGeneratingPair: return "NoGeneratingPair";
    case Errc::TableInvalid: return "TableInvalid";
    case Errc::NonIntegerResult: return "NonIntegerResult";
    case Errc::DegenerateEigenvalues: return "DegenerateEigenvalues";
    case Errc::NotGenerating: return "NotGenerating";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::NotSmooth: return "NotSmooth";
    case Errc::NonIntegerGenus: return "NonIntegerGenus";
    case Errc::TrivialElement: return "TrivialElement";
    case Errc::EquivalentTriples: return "EquivalentTriples";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::PoolExhausted: return "PoolExhausted";
    case Errc::NotCoprimeType: return "NotCoprimeType";
    case Errc::TooFewTriples: return "TooFewTriples";
    case Errc::RangeError: return "RangeError";
    case Errc::NoValidTraces: return "NoValidTraces";
    case Errc::NoValidW: return "NoValidW";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure in the library surfaces as an Error carrying a code, so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace beauville
