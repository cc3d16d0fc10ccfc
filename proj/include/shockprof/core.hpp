#pragma once

#include <stdexcept>
#include <string>

namespace shockprof {

// Extended precision throughout the solver core. The near-zero branches of the
// alpha equation produce roots of magnitude exp(-c/param); at param = 1e-4 that
// is far below double underflow but still a normal 80-bit value.
using Real = long double;

enum class Errc {
  NotSupersonic,
  JumpRootNotFound,
  EntropyViolation,
  AlphaOutOfDomain,
  DegenerateWeight,
  NonphysicalPressure,
  QuadratureFailure,
  NoRootInDomain,
  BracketExpansionExhausted,
  NonMonotoneSamples,
  ShootingDiverged,
  StepSizeUnderflow,
  RatioOverflow,
  XOutOfUnitInterval,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NotSupersonic:             return "NotSupersonic";
    case Errc::JumpRootNotFound:          return "JumpRootNotFound";
    case Errc::EntropyViolation:          return "EntropyViolation";
    case Errc::AlphaOutOfDomain:          return "AlphaOutOfDomain";
    case Errc::DegenerateWeight:          return "DegenerateWeight";
    case Errc::NonphysicalPressure:       return "NonphysicalPressure";
    case Errc::QuadratureFailure:         return "QuadratureFailure";
    case Errc::NoRootInDomain:            return "NoRootInDomain";
    case Errc::BracketExpansionExhausted: return "BracketExpansionExhausted";
    case Errc::NonMonotoneSamples:        return "NonMonotoneSamples";
    case Errc::ShootingDiverged:          return "ShootingDiverged";
    case Errc::StepSizeUnderflow:         return "StepSizeUnderflow";
    case Errc::RatioOverflow:             return "RatioOverflow";
    case Errc::XOutOfUnitInterval:        return "XOutOfUnitInterval";
  }
  return "Unknown";
}

class SolverError : public std::runtime_error {
public:
  SolverError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw SolverError(code, what);
}

}  // namespace shockprof
