#include "zonal/descriptor.hpp"

#include <cmath>
#include <string>

#include "zonal/convolution.hpp"
#include "zonal/error.hpp"
#include "zonal/gegenbauer.hpp"
#include "zonal/kernel_families.hpp"

namespace zonal {

namespace {

const nlohmann::json& field(const nlohmann::json& desc, const char* name) {
  const auto it = desc.find(name);
  if (it == desc.end()) throw ArgumentError(std::string("kernel descriptor is missing \"") + name + "\"");
  return *it;
}

double number(const nlohmann::json& desc, const char* name) {
  const nlohmann::json& v = field(desc, name);
  if (!v.is_number()) throw ArgumentError(std::string("descriptor field \"") + name + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ArgumentError(std::string("descriptor field \"") + name + "\" is not finite");
  return x;
}

int integer(const nlohmann::json& desc, const char* name) {
  const nlohmann::json& v = field(desc, name);
  if (!v.is_number_integer()) throw ArgumentError(std::string("descriptor field \"") + name + "\" must be an integer");
  return v.get<int>();
}

int integer_or(const nlohmann::json& desc, const char* name, int fallback) {
  return desc.contains(name) ? integer(desc, name) : fallback;
}

ZonalKernel build(const nlohmann::json& desc) {
  if (!desc.is_object()) throw ArgumentError("kernel descriptor must be a JSON object");
  const nlohmann::json& fam = field(desc, "family");
  if (!fam.is_string()) throw ArgumentError("descriptor field \"family\" must be a string");
  const std::string family = fam.get<std::string>();

  if (family == "truncated_power") {
    return truncated_power_kernel(TruncatedPower(integer(desc, "m"), number(desc, "t")));
  }
  if (family == "montee") {
    const TruncatedPower base(integer(desc, "m"), number(desc, "t"));
    const int k = integer(desc, "k");
    return k == 0 ? truncated_power_kernel(base) : montee_iterate_kernel(MonteeIterate(base, k));
  }
  if (family == "cap_conv") return cap_kernel(integer(desc, "d"), number(desc, "s"));
  if (family == "series") {
    SeriesCoeffs s;
    s.params = GegenbauerParams(number(desc, "lambda"));
    const nlohmann::json& c = field(desc, "coeffs");
    if (!c.is_array() || c.empty()) throw ArgumentError("descriptor field \"coeffs\" must be a nonempty array");
    for (const auto& v : c) {
      if (!v.is_number()) throw ArgumentError("series coefficients must be numbers");
      s.coeffs.push_back(v.get<double>());
    }
    const std::string basis = desc.value("basis", std::string("gegenbauer"));
    if (basis == "gegenbauer") {
      s.basis = CoeffBasis::gegenbauer;
    } else if (basis == "transform") {
      s.basis = CoeffBasis::transform;
    } else {
      throw ArgumentError("series basis must be \"gegenbauer\" or \"transform\"");
    }
    return series_kernel(std::move(s));
  }
  if (family == "cap_indicator") return cap_power(CapFunction(number(desc, "c")), integer_or(desc, "k", 0));
  if (family == "gegenbauer") {
    const bool normalized = desc.value("normalized", false);
    return gegenbauer_kernel(GegenbauerParams(number(desc, "lambda")), integer(desc, "n"), normalized);
  }
  throw ArgumentError("unknown kernel family '" + family + "'");
}

}  // namespace

ZonalKernel kernel_from_descriptor(const nlohmann::json& desc) {
  try {
    ZonalKernel k = build(desc);
    if (desc.contains("scale")) k = k.scaled(number(desc, "scale"));
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed kernel descriptor: ") + e.what());
  }
}

nlohmann::json kernel_descriptor(const ZonalKernel& kernel) {
  if (kernel.descriptor().is_null()) throw ArgumentError("kernel has no JSON description");
  return kernel.descriptor();
}

}  // namespace zonal
