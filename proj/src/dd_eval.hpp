#pragma once

#include "holoext/conformal.hpp"

namespace holoext {
namespace detail {

// Evaluates the inverse welding chain in double-double (~106-bit) arithmetic.
// Used for evaluations whose double-precision pass transits too close to a
// slit tip or Mobius pole, where the lost digits would otherwise surface in
// the result.
Cplx eval_deep(const ConformalMap& map, Cplx zeta);

}  // namespace detail
}  // namespace holoext
