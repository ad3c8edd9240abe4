#pragma once

#include "rosenblatt/spectrum.h"

namespace rosenblatt::detail {

// φ_ε(z) = exp(log_modulus) · exp(i(slow_phase - z·lambda_sum)).
// slow_phase = Σ ½·atan(2λz) stays bounded, so the fast rotation is isolated
// in the linear term.
struct CharfnParts {
  double log_modulus;
  double slow_phase;
};

CharfnParts charfn_parts(const Spectrum& spec, double z);

double lambda_sum(const Spectrum& spec);

}  // namespace rosenblatt::detail
