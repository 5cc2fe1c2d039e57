// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "zonal/adaptive.hpp"
#include "zonal/convolution.hpp"
#include "zonal/dimension_ops.hpp"
#include "zonal/gegenbauer.hpp"
#include "zonal/interpolation.hpp"
#include "zonal/kernel_families.hpp"
#include "zonal/spd_analysis.hpp"

using namespace zonal;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kIdentityTol = 1e-9;
constexpr double kIdentitySeconds = 5.0;
constexpr double kCoeffMapTol = 1e-4;
constexpr double kMonteeTol = 1e-8;
constexpr double kHopValueTol = 1e-8;
constexpr double kCapEndTol = 1e-10;
constexpr double kCapHopTol = 1e-6;
constexpr double kCapTransformTol = 1e-10;
constexpr double kConvTol = 1e-8;
constexpr double kCoeffAssocTol = 1e-15;
constexpr double kSpdSeconds = 30.0;
constexpr double kInterpRelTol = 1e-9;
constexpr double kEquivarianceTol = 1e-10;
constexpr double kHopFactorTol = 1e-12;
constexpr double kBoundaryAlgebraTol = 1e-12;

struct Outcome {
  bool passed;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double grid_x(int i, int points) { return -1.0 + 2.0 * i / (points - 1); }

Outcome criterion_identities() {
  const auto start = std::chrono::steady_clock::now();
  double worst_d = 0.0, worst_i = 0.0;
  for (double lam : {0.0, 0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 10; ++n) {
      worst_d = std::max(worst_d, check_D_on_gegenbauer(GegenbauerParams(lam), n));
      worst_i = std::max(worst_i, check_I_on_gegenbauer(GegenbauerParams(lam), n));
    }
  }
  const double t = seconds_since(start);
  const bool ok = worst_d <= kIdentityTol && worst_i <= kIdentityTol && t < kIdentitySeconds;
  return {ok, fmt::format("max D deviation {:.2e}, max I deviation {:.2e} (tol {:.0e}), {:.2f} s (limit {} s)", worst_d,
                          worst_i, kIdentityTol, t, kIdentitySeconds)};
}

Outcome criterion_coeff_map() {
  const GegenbauerParams lam(1.0);
  constexpr int N = 30;
  const ZonalKernel f2 = truncated_power_kernel(TruncatedPower(2, kPi / 2));
  const SeriesCoeffs mapped = coeff_map_derivative(fourier_transform(f2, lam, N + 1, 200));
  const SeriesCoeffs direct = fourier_transform(descente_numeric(f2).as_kernel(), lam.raised(), N, 200);
  double worst = 0.0;
  for (std::size_t n = 0; n <= N; ++n) worst = std::max(worst, std::abs(mapped.coeffs[n] - direct.coeffs[n]));
  return {worst <= kCoeffMapTol, fmt::format("max coefficient deviation {:.2e} over n <= 30 (tol {:.0e})", worst, kCoeffMapTol)};
}

Outcome criterion_montee() {
  constexpr int points = 2001;
  double closed = 0.0, recurrence = 0.0;
  for (double t : {0.5, kPi / 2, 2.5}) {
    for (auto [m, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}}) {
      const TruncatedPower base(m, t);
      const ZonalKernel lower = k == 1 ? truncated_power_kernel(base) : montee_iterate_kernel(MonteeIterate(base, k - 1));
      const OperatorImage numeric = montee_numeric(lower, 1e-13);
      const ZonalKernel form = montee_iterate_kernel(MonteeIterate(base, k));
      for (int i = 0; i < points; ++i) closed = std::max(closed, std::abs(numeric(grid_x(i, points)) - form(grid_x(i, points))));
    }
    for (int m = 1; m <= 8; ++m) {
      const OperatorImage numeric = montee_numeric(truncated_power_kernel(TruncatedPower(m, t)), 1e-13);
      for (int i = 0; i < points; ++i) {
        const double x = grid_x(i, points);
        recurrence = std::max(recurrence, std::abs(numeric(x) - eval_montee_recurrence(m, t, 1, x)));
      }
    }
  }
  const bool ok = closed <= kMonteeTol && recurrence <= kMonteeTol;
  return {ok, fmt::format("closed forms {:.2e}, recurrence m <= 8 {:.2e} (tol {:.0e})", closed, recurrence, kMonteeTol)};
}

Outcome criterion_hop_values() {
  struct Case {
    int K;
    double s;
    double a;  // int_0^s sin^(2K), mpmath
  };
  constexpr std::array<Case, 7> cases{{
      {1, kPi / 4, 0.14269908169872415481},
      {2, kPi / 6, 0.0069064837715161234244},
      {2, kPi / 3, 0.14912943688435078541},
      {3, kPi / 6, 0.0012448541648861515684},
      {3, kPi / 3, 0.083679589934563426271},
      {4, kPi / 6, 0.00024351946089214175637},
      {4, kPi / 3, 0.050384986991395494606},
  }};
  double worst = 0.0;
  for (const Case& c : cases) {
    const ZonalKernel chi = cap_indicator(CapFunction(std::cos(c.s)));
    const double hop = dimension_hop_conv(chi, chi, GegenbauerParams(c.K - 1.0), 1.0).value;
    worst = std::max({worst, std::abs(hop - c.a), std::abs(hop - cap_kernel_coefficients(2 * c.K + 1, c.s).a)});
  }
  return {worst <= kHopValueTol, fmt::format("max |hop - a| {:.2e} (tol {:.0e})", worst, kHopValueTol)};
}

Outcome criterion_cap_kernel() {
  double ends = 0.0;
  for (int d : {3, 5, 7, 9}) {
    for (double s : {kPi / 6, kPi / 4, kPi / 3}) {
      const CapKernelCoefficients k = cap_kernel_coefficients(d, s);
      ends = std::max({ends, std::abs(eval_cap_kernel(k, 1.0) - 1.0), std::abs(eval_cap_kernel_formula(k, std::cos(2 * s)))});
    }
  }
  double hop_dev = 0.0;
  for (double s : {kPi / 6, kPi / 4, kPi / 3}) {
    const ZonalKernel chi = cap_indicator(CapFunction(std::cos(s)));
    const HopConvolution hop(chi, chi, GegenbauerParams(0.0));
    const CapKernelCoefficients k = cap_kernel_coefficients(3, s);
    for (int i = 1; i <= 101; ++i) {
      const double x = -1.0 + 2.0 * i / 102.0;
      hop_dev = std::max(hop_dev, std::abs(hop(x).value / k.a - eval_cap_kernel(k, x)));
    }
  }
  const bool ok = ends <= kCapEndTol && hop_dev <= kCapHopTol;
  return {ok, fmt::format("ends {:.2e} (tol {:.0e}), N_3 against hop at 101 interior points {:.2e} (tol {:.0e})", ends,
                          kCapEndTol, hop_dev, kCapHopTol)};
}

Outcome criterion_cap_transform() {
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    const GegenbauerParams p(lam);
    for (double c : {-0.5, 0.0, 0.5}) {
      for (int n = 1; n <= 15; ++n) {
        const double quad = integrate_adaptive(
                                [&](double t) { return eval_gegenbauer(p, n, std::cos(t)) * std::pow(std::sin(t), 2 * lam); },
                                0.0, std::acos(c), 1e-15)
                                .value;
        worst = std::max(worst, std::abs(cap_transform(p, c, n).value - quad));
      }
    }
  }
  return {worst <= kCapTransformTol, fmt::format("max deviation {:.2e} (tol {:.0e})", worst, kCapTransformTol)};
}

Outcome criterion_convolution() {
  const ZonalKernel f = cap_indicator(CapFunction(0.0));
  const ZonalKernel g = cap_indicator(CapFunction(0.5));
  const ZonalKernel h = cap_power(CapFunction(-0.3), 1);
  const ConvolutionReport r = conv_property_check(f, g, h, GegenbauerParams(0.0));
  const double norm_excess = r.norm_ratio ? std::max(0.0, *r.norm_ratio - 1.0) : 1.0;
  const double grid = std::max({norm_excess, r.commutativity, r.associativity, r.multiplicativity});
  const bool ok = grid <= kConvTol && r.coefficient_commutativity == 0.0 &&
                  r.coefficient_associativity <= kCoeffAssocTol;
  return {ok, fmt::format("grid identities max {:.2e} (tol {:.0e}), coefficient commutativity {:.1e} (exact), "
                          "associativity {:.1e} (tol {:.0e})",
                          grid, kConvTol, r.coefficient_commutativity, r.coefficient_associativity, kCoeffAssocTol)};
}

Outcome criterion_spd() {
  const auto start = std::chrono::steady_clock::now();
  const ClassificationReport f2 =
      classify(truncated_power_kernel(TruncatedPower(2, kPi / 2)), GegenbauerParams(1.0), 40);
  const SeriesCoeffs chi = cap_coefficients(GegenbauerParams(1.0), 0.5, 60);
  const SeriesCoeffs self = conv_lambda_coeffs(chi, chi);
  const double max_abs = std::abs(*std::max_element(self.coeffs.begin(), self.coeffs.end(),
                                                    [](double a, double b) { return std::abs(a) < std::abs(b); }));
  int even = 0, odd = 0;
  for (std::size_t n = 0; n < self.coeffs.size(); ++n) {
    if (self.coeffs[n] > 1e-10 * max_abs) (n % 2 == 0 ? even : odd)++;
  }
  const PointSet fib = generate_points(2, 100, PointScheme::fibonacci_s2);
  const ZonalKernel n3 = cap_kernel(3, kPi / 3);
  const double min_eig = gram_min_eig(n3, fib);
  bool cholesky_ok = true;
  try {
    cholesky_lower(gram_matrix(n3, fib));
  } catch (const std::exception&) {
    cholesky_ok = false;
  }
  const double t = seconds_since(start);
  const bool ok = f2.min_coeff > 0.0 && even >= 20 && odd >= 20 && min_eig > 0.0 && cholesky_ok && t < kSpdSeconds;
  return {ok, fmt::format("f_2 min coefficient {:.2e}, cap self-convolution positive even {} / odd {}, Gram min "
                          "eigenvalue {:.3e}, Cholesky {}, {:.2f} s (limit {} s)",
                          f2.min_coeff, even, odd, min_eig, cholesky_ok ? "ok" : "failed", t, kSpdSeconds)};
}

Eigen::VectorXd test_values(const PointSet& pts) {
  Eigen::VectorXd f(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::VectorXd p = pts.point(i);
    f(static_cast<Eigen::Index>(i)) = std::exp(p(0)) * std::sin(3.0 * p(1)) + p(2) * p(2);
  }
  return f;
}

Outcome criterion_interpolation() {
  double worst_rel = 0.0;
  for (int d : {3, 5}) {
    for (std::size_t n : {50u, 200u}) {
      const PointSet pts = generate_points(2, n, PointScheme::random_seeded, 2024);
      const Eigen::VectorXd f = test_values(pts);
      const Interpolant itp = solve_interpolation(pts, f, cap_kernel(d, kPi / 3));
      worst_rel = std::max(worst_rel, itp.residual / f.cwiseAbs().maxCoeff());
    }
  }
  const double a = 0.3, b = 1.1, c = -0.7;
  Eigen::MatrixXd rz(3, 3), rx(3, 3), ry(3, 3);
  rz << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  rx << 1, 0, 0, 0, std::cos(b), -std::sin(b), 0, std::sin(b), std::cos(b);
  ry << std::cos(c), 0, std::sin(c), 0, 1, 0, -std::sin(c), 0, std::cos(c);
  const Eigen::MatrixXd R = rz * rx * ry;
  const PointSet pts = generate_points(2, 100, PointScheme::random_seeded, 7);
  const Eigen::VectorXd f = test_values(pts);
  const ZonalKernel k = cap_kernel(3, kPi / 3);
  const Interpolant plain = solve_interpolation(pts, f, k);
  const Interpolant rotated = solve_interpolation(pts.rotated(R), f, k);
  const PointSet probes = generate_points(2, 200, PointScheme::random_seeded, 8);
  double equiv = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Eigen::VectorXd y = probes.point(i);
    equiv = std::max(equiv, std::abs(evaluate_interpolant(rotated, R * y) - evaluate_interpolant(plain, y)));
  }
  const bool ok = worst_rel <= kInterpRelTol && equiv <= kEquivarianceTol;
  return {ok, fmt::format("max residual / ||f|| {:.2e} (tol {:.0e}), rotation deviation {:.2e} (tol {:.0e})", worst_rel,
                          kInterpRelTol, equiv, kEquivarianceTol)};
}

Outcome criterion_hop_factor() {
  double worst = 0.0;
  for (double lam : {0.0, 0.5, 1.0, 2.0}) {
    for (int n = 0; n <= 20; ++n) {
      worst = std::max(worst, std::abs(hop_coefficient_factor(GegenbauerParams(lam), n) - 1.0 / (2 * lam + 1)));
    }
  }
  // N_3 at the support edge: r = tan s and 2a = s - sin s cos s give zero.
  double boundary = 0.0;
  for (double s : {kPi / 6, kPi / 4, kPi / 3, 1.4}) {
    const CapKernelCoefficients k = cap_kernel_coefficients(3, s);
    const double x = std::cos(2 * s);
    boundary = std::max({boundary, std::abs(2 * k.a - (s - std::sin(s) * std::cos(s))),
                         std::abs(std::sqrt((1 - x) / (1 + x)) - std::tan(s)), std::abs(eval_cap_kernel_formula(k, x))});
  }
  const bool ok = worst <= kHopFactorTol && boundary <= kBoundaryAlgebraTol;
  return {ok, fmt::format("max |a_(lambda,n+1) - 1/(2 lambda + 1)| {:.2e} (tol {:.0e}), N_3 boundary algebra {:.2e} "
                          "(tol {:.0e})",
                          worst, kHopFactorTol, boundary, kBoundaryAlgebraTol)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Gegenbauer descente/montee identities", criterion_identities},
      {"coefficient map of the descente", criterion_coeff_map},
      {"montee closed forms and recurrence", criterion_montee},
      {"dimension hop of cap indicators at x = 1", criterion_hop_values},
      {"cap self-convolution kernel", criterion_cap_kernel},
      {"cap transform closed form", criterion_cap_transform},
      {"convolution algebra on the circle", criterion_convolution},
      {"strict positive definiteness evidence", criterion_spd},
      {"scattered-data interpolation", criterion_interpolation},
      {"hop coefficient factor", criterion_hop_factor},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s criterion %d: %s: %s\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str());
    if (!o.passed) ++failures;
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
