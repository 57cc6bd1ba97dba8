#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdnls {

enum class Errc {
  DivisionByZeroJet,
  OrderOutOfRange,
  BaseMismatch,
  InvalidBackground,
  NotFirstQuadrant,
  DegenerateSpectrum,
  ZeroNormingConstant,
  InvalidOrder,
  EvaluationAtZero,
  PoleOfTraceFormula,
  VanishingLeadingDerivative,
  SingularG,
  QuadratureNoConvergence,
  StencilHitSingularity,
  NoDecayDetected,
  UnknownPreset,
  InvalidConfig,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sdnls
