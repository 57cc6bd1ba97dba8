#include "sdnls/error.hpp"

namespace sdnls {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZeroJet: return "DivisionByZeroJet";
    case Errc::OrderOutOfRange: return "OrderOutOfRange";
    case Errc::BaseMismatch: return "BaseMismatch";
    case Errc::InvalidBackground: return "InvalidBackground";
    case Errc::NotFirstQuadrant: return "NotFirstQuadrant";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::ZeroNormingConstant: return "ZeroNormingConstant";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::EvaluationAtZero: return "EvaluationAtZero";
    case Errc::PoleOfTraceFormula: return "PoleOfTraceFormula";
    case Errc::VanishingLeadingDerivative: return "VanishingLeadingDerivative";
    case Errc::SingularG: return "SingularG";
    case Errc::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case Errc::StencilHitSingularity: return "StencilHitSingularity";
    case Errc::NoDecayDetected: return "NoDecayDetected";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace sdnls
