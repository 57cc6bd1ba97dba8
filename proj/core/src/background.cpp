#include "sdnls/background.hpp"

#include <cmath>

#include "sdnls/error.hpp"

namespace sdnls {

void BackgroundParams::validate() const {
  if (sigma != 1 && sigma != -1) throw Error(Errc::InvalidBackground, "sigma must be +1 or -1");
  if (eta != 1 && eta != -1) throw Error(Errc::InvalidBackground, "eta must be +1 or -1");
  if (!std::isfinite(q_minus.real()) || !std::isfinite(q_minus.imag()) || !(q0() > 0.0)) {
    throw Error(Errc::InvalidBackground, "q_minus must be finite and nonzero");
  }
  if (!std::isfinite(x0) || !std::isfinite(t0)) {
    throw Error(Errc::InvalidBackground, "shifts x0, t0 must be finite");
  }
}

}  // namespace sdnls
