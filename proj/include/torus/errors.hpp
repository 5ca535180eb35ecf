#pragma once

#include <stdexcept>
#include <string>

namespace torus {

enum class Errc {
  CapExceeded,
  BoundaryPoint,
  NotDyadic,
  NonDyadicBreakpoints,
  DepthCapExceeded,
  ZeroFunction,
  IrrationalPower,
  NonPositive,
  TooManyCubes,
  EpsilonOutOfRange,
  WeightDepthMismatch,
  ParamOrder,
  PreconditionViolated,
  InfeasibleAnchor,
  InvalidN,
  RangeEmpty,
  NonIntegrableDual,
  NotIntegrable,
  TailDiverges,
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::BoundaryPoint: return "BoundaryPoint";
    case Errc::NotDyadic: return "NotDyadic";
    case Errc::NonDyadicBreakpoints: return "NonDyadicBreakpoints";
    case Errc::DepthCapExceeded: return "DepthCapExceeded";
    case Errc::ZeroFunction: return "ZeroFunction";
    case Errc::IrrationalPower: return "IrrationalPower";
    case Errc::NonPositive: return "NonPositive";
    case Errc::TooManyCubes: return "TooManyCubes";
    case Errc::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case Errc::WeightDepthMismatch: return "WeightDepthMismatch";
    case Errc::ParamOrder: return "ParamOrder";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InfeasibleAnchor: return "InfeasibleAnchor";
    case Errc::InvalidN: return "InvalidN";
    case Errc::RangeEmpty: return "RangeEmpty";
    case Errc::NonIntegrableDual: return "NonIntegrableDual";
    case Errc::NotIntegrable: return "NotIntegrable";
    case Errc::TailDiverges: return "TailDiverges";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

  // A cap overflow suggests a closed-form or coarser alternative; the CLI
  // maps these to a distinct exit code.
  bool is_cap() const {
    return code_ == Errc::CapExceeded || code_ == Errc::DepthCapExceeded;
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace torus
