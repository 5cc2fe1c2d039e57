#ifndef ZONAL_VERIFY_HPP
#define ZONAL_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace zonal {

struct CheckResult {
  std::string name;
  std::string description;
  double deviation = 0.0;  // worst deviation found
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string error;  // set when the check threw
};

struct VerifyOptions {
  // Replaces every check's own tolerance.
  std::optional<double> tolerance;
  // Run only these checks (all when empty). Unknown names throw ArgumentError.
  std::vector<std::string> only;
};

// Names of the available identity checks, in run order.
std::vector<std::string> verify_check_names();

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options = {});

nlohmann::json to_json(const std::vector<CheckResult>& results);

}  // namespace zonal

#endif  // ZONAL_VERIFY_HPP
