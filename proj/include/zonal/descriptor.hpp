#ifndef ZONAL_DESCRIPTOR_HPP
#define ZONAL_DESCRIPTOR_HPP

#include <json.hpp>

#include "zonal/kernel.hpp"

namespace zonal {

// Builds a kernel from its JSON description:
//   {"family": "truncated_power", "m", "t"}          (t - arccos x)^m_+
//   {"family": "montee", "m", "k", "t"}              I^k of the above
//   {"family": "cap_conv", "d", "s"}                 normalised cap self-convolution N_d
//   {"family": "series", "lambda", "coeffs", "basis"?}
//       basis "gegenbauer" (default, f = sum a_n C^lambda_n) or "transform"
//   {"family": "cap_indicator", "c", "k"?}           I^k chi_[c,1]
//   {"family": "gegenbauer", "lambda", "n", "normalized"?}
// Any family accepts an optional positive or negative "scale".
// Malformed input throws ArgumentError.
ZonalKernel kernel_from_descriptor(const nlohmann::json& desc);

// Throws ArgumentError when the kernel has no descriptor.
nlohmann::json kernel_descriptor(const ZonalKernel& kernel);

}  // namespace zonal

#endif  // ZONAL_DESCRIPTOR_HPP
