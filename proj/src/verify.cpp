#include "zonal/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "zonal/adaptive.hpp"
#include "zonal/convolution.hpp"
#include "zonal/dimension_ops.hpp"
#include "zonal/error.hpp"
#include "zonal/gegenbauer.hpp"
#include "zonal/kernel_families.hpp"

namespace zonal {

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  const char* name;
  const char* description;
  double tolerance;
  std::function<double()> run;
};

double grid_x(int i, int points) { return -1.0 + 2.0 * i / (points - 1); }

double check_d_identity() {
  double worst = 0.0;
  for (double lam : {0.0, 0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 10; ++n) worst = std::max(worst, check_D_on_gegenbauer(GegenbauerParams(lam), n));
  }
  return worst;
}

double check_i_identity() {
  double worst = 0.0;
  for (double lam : {0.0, 0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 10; ++n) worst = std::max(worst, check_I_on_gegenbauer(GegenbauerParams(lam), n));
  }
  return worst;
}

double check_coeff_map() {
  const GegenbauerParams lam(1.0);
  constexpr int N = 30;
  constexpr std::size_t order = 200;
  const ZonalKernel f2 = truncated_power_kernel(TruncatedPower(2, kPi / 2));
  const SeriesCoeffs mapped = coeff_map_derivative(fourier_transform(f2, lam, N + 1, order));
  const ZonalKernel df = descente_numeric(f2).as_kernel();
  const SeriesCoeffs direct = fourier_transform(df, lam.raised(), N, order);
  double worst = 0.0;
  for (int n = 0; n <= N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    worst = std::max(worst, std::abs(mapped.coeffs[i] - direct.coeffs[i]));
  }
  return worst;
}

double check_closed_forms() {
  constexpr int points = 2001;
  double worst = 0.0;
  for (double t : {0.5, kPi / 2, 2.5}) {
    for (auto [m, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}}) {
      const TruncatedPower base(m, t);
      const ZonalKernel lower = k == 1 ? truncated_power_kernel(base) : montee_iterate_kernel(MonteeIterate(base, k - 1));
      const OperatorImage numeric = montee_numeric(lower, 1e-13);
      const ZonalKernel closed = montee_iterate_kernel(MonteeIterate(base, k));
      for (int i = 0; i < points; ++i) {
        const double x = grid_x(i, points);
        worst = std::max(worst, std::abs(numeric(x) - closed(x)));
      }
    }
  }
  return worst;
}

double check_recurrence() {
  constexpr int points = 2001;
  double worst = 0.0;
  for (double t : {0.5, kPi / 2, 2.5}) {
    for (int m = 1; m <= 8; ++m) {
      const OperatorImage numeric = montee_numeric(truncated_power_kernel(TruncatedPower(m, t)), 1e-13);
      for (int i = 0; i < points; ++i) {
        const double x = grid_x(i, points);
        worst = std::max(worst, std::abs(numeric(x) - eval_montee_recurrence(m, t, 1, x)));
      }
    }
  }
  return worst;
}

double check_hop_values() {
  double worst = 0.0;
  auto one = [&](int K, double s) {
    const ZonalKernel chi = cap_indicator(CapFunction(std::cos(s)));
    const double hop = dimension_hop_conv(chi, chi, GegenbauerParams(K - 1.0), 1.0).value;
    worst = std::max(worst, std::abs(hop - cap_kernel_coefficients(2 * K + 1, s).a));
  };
  one(1, kPi / 4);
  for (int K = 2; K <= 4; ++K) {
    for (double s : {kPi / 6, kPi / 3}) one(K, s);
  }
  return worst;
}

double check_cap_kernel_ends() {
  double worst = 0.0;
  for (int d : {3, 5, 7, 9}) {
    for (double s : {kPi / 6, kPi / 4, kPi / 3}) {
      const CapKernelCoefficients k = cap_kernel_coefficients(d, s);
      worst = std::max(worst, std::abs(eval_cap_kernel(k, 1.0) - 1.0));
      worst = std::max(worst, std::abs(eval_cap_kernel_formula(k, std::cos(2.0 * s))));
    }
  }
  return worst;
}

double check_cap_kernel_hop() {
  double worst = 0.0;
  for (double s : {kPi / 6, kPi / 4, kPi / 3}) {
    const double c = std::cos(s);
    const ZonalKernel chi = cap_indicator(CapFunction(c));
    const HopConvolution hop(chi, chi, GegenbauerParams(0.0));
    const CapKernelCoefficients k = cap_kernel_coefficients(3, s);
    const double kink = std::cos(2.0 * s);
    for (int i = 1; i <= 101; ++i) {
      const double x = -1.0 + 2.0 * i / 102.0;
      if (std::abs(x - kink) < 1e-9) continue;
      worst = std::max(worst, std::abs(hop(x).value / k.a - eval_cap_kernel(k, x)));
    }
  }
  return worst;
}

double cap_quadrature(double lam, double c, int n) {
  const GegenbauerParams p(lam);
  const AdaptiveResult r = integrate_adaptive(
      [&](double t) { return eval_gegenbauer(p, n, std::cos(t)) * std::pow(std::sin(t), 2.0 * lam); }, 0.0,
      std::acos(c), 1e-15);
  return r.value;
}

double check_cap_transform() {
  double worst = 0.0;
  for (double lam : {1.0, 2.0}) {
    for (double c : {-0.5, 0.0, 0.5}) {
      for (int n = 1; n <= 15; ++n) {
        const double closed = cap_transform(GegenbauerParams(lam), c, n).value;
        worst = std::max(worst, std::abs(closed - cap_quadrature(lam, c, n)));
      }
    }
  }
  return worst;
}

double check_conv_properties() {
  const ZonalKernel f = cap_indicator(CapFunction(0.0));
  const ZonalKernel g = cap_indicator(CapFunction(0.5));
  const ZonalKernel h = cap_power(CapFunction(-0.3), 1);
  const ConvolutionReport r = conv_property_check(f, g, h, GegenbauerParams(0.0));
  const double norm_excess = r.norm_ratio ? std::max(0.0, *r.norm_ratio - 1.0) : 0.0;
  return std::max({norm_excess, r.commutativity, r.associativity, r.multiplicativity, r.coefficient_commutativity,
                   r.coefficient_associativity});
}

double check_hop_factor() {
  double worst = 0.0;
  for (double lam : {0.0, 0.5, 1.0, 2.0}) {
    for (int n = 0; n <= 20; ++n) {
      worst = std::max(worst, std::abs(hop_coefficient_factor(GegenbauerParams(lam), n) * (2.0 * lam + 1.0) - 1.0));
    }
  }
  return worst;
}

double check_hop_series() {
  double worst = 0.0;
  for (double c : {0.0, 0.5}) {
    const ZonalKernel chi = cap_indicator(CapFunction(c));
    const HopConvolution hop(chi, chi, GegenbauerParams(0.0));
    const SeriesCoeffs a = cap_coefficients(GegenbauerParams(1.0), c, 60);
    const SeriesCoeffs product = conv_lambda_coeffs(a, a);
    for (int i = 1; i <= 101; ++i) {
      const double x = -1.0 + 2.0 * i / 102.0;
      bool at_kink = false;
      for (double k : hop.kinks()) at_kink = at_kink || std::abs(x - k) < 1e-9;
      if (at_kink) continue;
      worst = std::max(worst, std::abs(hop(x).value - series_eval(product, x)));
    }
  }
  return worst;
}

double check_self_convolution_signs() {
  double worst = 0.0;
  for (double lam : {1.0, 2.0, 3.0}) {
    for (double c : {-0.5, 0.0, 0.5, 0.9}) {
      const SeriesCoeffs a = cap_coefficients(GegenbauerParams(lam), c, 40);
      for (double v : conv_lambda_coeffs(a, a).coeffs) worst = std::max(worst, -v);
    }
  }
  return worst;
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all{
      {"gegenbauer_D", "D C^l_n = 2 mu C^{l+1}_{n-1}, l in {0,.5,1,2}, n <= 10", 1e-9, check_d_identity},
      {"gegenbauer_I", "I C^{l+1}_{n-1} = (C^l_n - C^l_n(-1)) / (2 mu), numeric montee", 1e-9, check_i_identity},
      {"coeff_map", "transform of D f_2 against the shifted coefficient map, n <= 30", 1e-4, check_coeff_map},
      {"montee_closed_forms", "five closed montee forms against numeric montee, 2001 points", 1e-8,
       check_closed_forms},
      {"montee_recurrence", "recurrence for I f_m, m <= 8, against numeric montee", 1e-8, check_recurrence},
      {"hop_cap_values", "dimension hop of cap indicators at x = 1 against a", 1e-8, check_hop_values},
      {"cap_kernel_ends", "N_d(1) = 1 and N_d(cos 2s) = 0", 1e-10, check_cap_kernel_ends},
      {"cap_kernel_hop", "N_3 against the dimension hop divided by a, 101 interior points", 1e-6,
       check_cap_kernel_hop},
      {"cap_transform", "cap transform closed form against quadrature", 1e-10, check_cap_transform},
      {"conv_properties", "norm bound, commutativity, associativity, multiplicativity at lambda = 0", 1e-8,
       check_conv_properties},
      {"hop_factor", "(2 lambda + 1) a_{lambda,n+1} = 1, n <= 20", 1e-12, check_hop_factor},
      {"hop_series", "dimension hop against the truncated product series, N = 60", 2e-3, check_hop_series},
      {"self_convolution_signs", "coefficients of cap self-convolutions are nonnegative", 1e-12,
       check_self_convolution_signs},
  };
  return all;
}

}  // namespace

std::vector<std::string> verify_check_names() {
  std::vector<std::string> names;
  for (const Check& c : checks()) names.emplace_back(c.name);
  return names;
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options) {
  const std::vector<std::string> names = verify_check_names();
  for (const std::string& want : options.only) {
    if (std::find(names.begin(), names.end(), want) == names.end()) {
      throw ArgumentError("unknown check '" + want + "'");
    }
  }
  if (options.tolerance && !(*options.tolerance >= 0.0)) throw ArgumentError("tolerance must be nonnegative");

  std::vector<CheckResult> results;
  for (const Check& c : checks()) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.name) == options.only.end()) {
      continue;
    }
    CheckResult r;
    r.name = c.name;
    r.description = c.description;
    r.tolerance = options.tolerance.value_or(c.tolerance);
    const auto start = std::chrono::steady_clock::now();
    try {
      r.deviation = c.run();
      r.passed = std::isfinite(r.deviation) && r.deviation <= r.tolerance;
    } catch (const std::exception& e) {
      r.deviation = std::numeric_limits<double>::infinity();
      r.error = e.what();
      r.passed = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

nlohmann::json to_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks_json = nlohmann::json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    nlohmann::json j{{"name", r.name},
                     {"description", r.description},
                     {"deviation", std::isfinite(r.deviation) ? nlohmann::json(r.deviation) : nlohmann::json(nullptr)},
                     {"tolerance", r.tolerance},
                     {"passed", r.passed}};
    if (!r.error.empty()) j["error"] = r.error;
    checks_json.push_back(std::move(j));
    all = all && r.passed;
  }
  return {{"passed", all}, {"checks", checks_json}};
}

}  // namespace zonal
