#include <array>
#include <cmath>

#include "support.hpp"
#include "zonal/adaptive.hpp"
#include "zonal/convolution.hpp"
#include "zonal/error.hpp"
#include "zonal/kernel_families.hpp"

using namespace zonal;
using zonal::testing::grid_x;
using zonal::testing::kPi;

namespace {

// int_0^s sin^(2K) by mpmath, the value of chi *_K chi at x = 1.
struct HopValue {
  int K;
  double s;
  double a;
};

constexpr std::array<HopValue, 7> kHopValues{{
    {1, kPi / 4, 0.14269908169872415481},
    {2, kPi / 6, 0.0069064837715161234244},
    {2, kPi / 3, 0.14912943688435078541},
    {3, kPi / 6, 0.0012448541648861515684},
    {3, kPi / 3, 0.083679589934563426271},
    {4, kPi / 6, 0.00024351946089214175637},
    {4, kPi / 3, 0.050384986991395494606},
}};

double quadrature_cap_transform(double lam, double c, int n) {
  const GegenbauerParams p(lam);
  return integrate_adaptive(
             [&](double t) { return eval_gegenbauer(p, n, std::cos(t)) * std::pow(std::sin(t), 2.0 * lam); }, 0.0,
             std::acos(c), 1e-15)
      .value;
}

}  // namespace

TEST_SUITE("convolution") {
  TEST_CASE("cap indicator and its montee powers") {
    const CapFunction cap(0.25);
    CHECK(cap(0.25) == 1.0);
    CHECK(cap(0.2) == 0.0);
    CHECK_THROWS_AS(CapFunction(1.0), ArgumentError);
    CHECK_THROWS_AS(CapFunction(-1.0), ArgumentError);
    const ZonalKernel p2 = cap_power(cap, 2);
    CHECK_NEAR(p2(0.75), 0.125, 1e-15);
    REQUIRE(p2.derivative() != nullptr);
    CHECK_NEAR((*p2.derivative())(0.75), 0.5, 1e-15);
    CHECK_THROWS_AS(cap_power(cap, -1), ArgumentError);
  }

  TEST_CASE("circle convolution of arcs is their overlap") {
    for (double s : {0.3, 0.9, 1.4}) {
      const ZonalKernel chi = cap_indicator(CapFunction(std::cos(s)));
      for (double theta : {0.0, 0.1, 0.5, 1.0, 2.0, 3.0}) {
        const double overlap = std::max(0.0, 2.0 * s - theta);
        CHECK_NEAR(conv0(chi, chi, theta), 0.5 * overlap, 1e-13);
      }
    }
    const ZonalKernel one = constant_kernel(1.0);
    CHECK_NEAR(conv0(one, one, 0.7), kPi, 1e-13);
  }

  TEST_CASE("circle convolution of cosines") {
    // cos(m t) * cos(m t) = (pi/2) cos(m theta).
    for (int m : {1, 3}) {
      const ZonalKernel c([m](double x) { return std::cos(m * std::acos(x)); });
      for (double theta : {0.0, 0.4, 2.2}) CHECK_NEAR(conv0(c, c, theta), 0.5 * kPi * std::cos(m * theta), 1e-12);
    }
  }

  TEST_CASE("coefficient product is entrywise in the transform basis") {
    const GegenbauerParams p(1.0);
    SeriesCoeffs f{p, {1.0, 2.0, 3.0}, CoeffBasis::transform};
    SeriesCoeffs g{p, {0.5, -1.0, 2.0}, CoeffBasis::transform};
    CHECK(conv_lambda_coeffs(f, g).coeffs == std::vector<double>{0.5, -2.0, 6.0});
    SeriesCoeffs short_g{p, {1.0}, CoeffBasis::transform};
    CHECK_THROWS_AS(conv_lambda_coeffs(f, short_g), ArgumentError);
    SeriesCoeffs other{GegenbauerParams(2.0), {1.0, 2.0, 3.0}, CoeffBasis::transform};
    CHECK_THROWS_AS(conv_lambda_coeffs(f, other), ArgumentError);
  }

  TEST_CASE("transform of the circle convolution is the product of transforms") {
    const GegenbauerParams p(0.0);
    const ZonalKernel f = cap_indicator(CapFunction(0.1));
    const ZonalKernel g = cap_power(CapFunction(-0.4), 1);
    const SeriesCoeffs direct = fourier_transform(conv0_kernel(f, g), p, 15, 60);
    const SeriesCoeffs product = conv_lambda_coeffs(fourier_transform(f, p, 15, 60), fourier_transform(g, p, 15, 60));
    for (std::size_t n = 0; n <= 15; ++n) CHECK_NEAR(direct.coeffs[n], product.coeffs[n], 1e-11);
  }

  TEST_CASE("hop factor equals 1 / (2 lambda + 1)") {
    for (double lam : {0.0, 0.5, 1.0, 2.0, 3.5}) {
      for (int n = 0; n <= 20; ++n) {
        CHECK_NEAR(hop_coefficient_factor(GegenbauerParams(lam), n), 1.0 / (2.0 * lam + 1.0), 1e-13);
      }
    }
  }

  TEST_CASE("dimension hop of cap indicators at x = 1") {
    for (const HopValue& v : kHopValues) {
      INFO("K = " << v.K << ", s = " << v.s);
      const ZonalKernel chi = cap_indicator(CapFunction(std::cos(v.s)));
      const FlaggedValue r = dimension_hop_conv(chi, chi, GegenbauerParams(v.K - 1.0), 1.0);
      CHECK_NEAR(r.value, v.a, 1e-8);
    }
  }

  TEST_CASE("dimension hop reproduces the closed cap kernels") {
    for (int d : {3, 5, 7}) {
      const double s = 0.8;
      const ZonalKernel chi = cap_indicator(CapFunction(std::cos(s)));
      const HopConvolution hop(chi, chi, GegenbauerParams((d - 1) / 2 - 1.0));
      CHECK(hop.target().lambda() == (d - 1) / 2);
      const ZonalKernel exact = cap_self_convolution(d, s);
      for (int i = 1; i < 60; ++i) {
        const double x = grid_x(i, 61);
        if (std::abs(x - std::cos(2.0 * s)) < 1e-9) continue;
        CHECK_NEAR(hop(x).value, exact(x), 1e-9);
      }
    }
  }

  TEST_CASE("dimension hop flags kinks and rejects unsupported indices") {
    const double s = 0.7;
    const ZonalKernel chi = cap_indicator(CapFunction(std::cos(s)));
    const HopConvolution hop(chi, chi, GegenbauerParams(0.0));
    bool has_edge = false;
    for (double k : hop.kinks()) has_edge = has_edge || std::abs(k - std::cos(2.0 * s)) < 1e-12;
    CHECK(has_edge);
    CHECK(hop(std::cos(2.0 * s)).one_sided);
    CHECK_FALSE(hop(0.9).one_sided);
    CHECK_THROWS_AS(HopConvolution(chi, chi, GegenbauerParams(0.5)), UnsupportedIndexError);
    CHECK_THROWS_AS(HopConvolution(chi, chi, GegenbauerParams(25.0)), ArgumentError);
  }

  TEST_CASE("cap transform closed form against quadrature") {
    for (double lam : {0.5, 1.0, 2.0, 3.5}) {
      for (double c : {-0.6, 0.0, 0.45}) {
        for (int n = 1; n <= 12; ++n) {
          const CapTransform t = cap_transform(GegenbauerParams(lam), c, n);
          CHECK_FALSE(t.by_quadrature);
          CHECK_NEAR(t.value, quadrature_cap_transform(lam, c, n), 1e-10);
        }
        const CapTransform zero = cap_transform(GegenbauerParams(lam), c, 0);
        CHECK(zero.by_quadrature);
        CHECK_NEAR(zero.value, quadrature_cap_transform(lam, c, 0), 1e-12);
      }
    }
    CHECK_THROWS_AS(cap_transform(GegenbauerParams(0.0), 0.3, 2), UnsupportedIndexError);
    CHECK_THROWS_AS(cap_transform(GegenbauerParams(1.0), 1.0, 2), ArgumentError);
  }

  TEST_CASE("cap coefficients agree with direct transforms") {
    for (double lam : {0.0, 1.0, 2.0}) {
      const GegenbauerParams p(lam);
      const ZonalKernel chi = cap_indicator(CapFunction(0.3));
      const SeriesCoeffs closed = cap_coefficients(p, 0.3, 12);
      const SeriesCoeffs numeric = fourier_transform(chi, p, 12, 60);
      for (std::size_t n = 0; n <= 12; ++n) CHECK_NEAR(closed.coeffs[n], numeric.coeffs[n], 1e-12);
    }
  }

  TEST_CASE("norm of a constant is the measure mass") {
    for (double lam : {0.0, 0.5, 2.0}) {
      CHECK_NEAR(b_norm(constant_kernel(-2.0), GegenbauerParams(lam)), 2.0 * measure_mass(GegenbauerParams(lam)), 1e-12);
    }
  }

  TEST_CASE("convolution properties on the circle") {
    const ZonalKernel f = cap_indicator(CapFunction(0.0));
    const ZonalKernel g = cap_indicator(CapFunction(0.5));
    const ZonalKernel h = cap_power(CapFunction(-0.3), 1);
    const ConvolutionReport r = conv_property_check(f, g, h, GegenbauerParams(0.0));
    REQUIRE(r.norm_ratio.has_value());
    CHECK(r.norm_holds());
    CHECK(r.commutativity <= 1e-8);
    CHECK(r.associativity <= 1e-8);
    CHECK(r.multiplicativity <= 1e-8);
    CHECK(r.coefficient_commutativity == 0.0);
    CHECK(r.coefficient_associativity <= 1e-15);
  }

  TEST_CASE("convolution properties through the hop and in coefficient space") {
    const ZonalKernel f = cap_indicator(CapFunction(0.2));
    const ZonalKernel g = cap_indicator(CapFunction(0.6));
    const ZonalKernel h = cap_power(CapFunction(-0.5), 1);
    const ConvolutionReport hop = conv_property_check(f, g, h, GegenbauerParams(1.0), kDefaultConvOrder, 15, 21);
    CHECK(hop.norm_holds());
    CHECK(hop.commutativity <= 1e-8);
    CHECK(hop.multiplicativity <= 1e-8);
    const ConvolutionReport half = conv_property_check(f, g, h, GegenbauerParams(0.5), kDefaultConvOrder, 15, 21);
    CHECK_FALSE(half.norm_ratio.has_value());
    CHECK(half.coefficient_commutativity == 0.0);
    CHECK(half.coefficient_associativity <= 1e-15);
  }
}

TEST_SUITE("convolution properties") {
  TEST_CASE("self-convolution of a cap has nonnegative coefficients") {
    for (double lam : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      for (double c : {-0.8, -0.2, 0.0, 0.3, 0.7, 0.95}) {
        const SeriesCoeffs a = cap_coefficients(GegenbauerParams(lam), c, 50);
        for (double v : conv_lambda_coeffs(a, a).coeffs) CHECK(v >= 0.0);
      }
    }
  }

  TEST_CASE("self-convolution at x = 1 is the squared norm and positive") {
    // (chi * chi)(1) = sum w(n) chat(n)^2 = int chi^2 dOmega.
    for (double lam : {1.0, 2.0}) {
      const GegenbauerParams p(lam);
      for (double c : {-0.5, 0.0, 0.6}) {
        const ZonalKernel chi = cap_indicator(CapFunction(c));
        const double at_one = dimension_hop_conv(chi, chi, GegenbauerParams(lam - 1.0), 1.0).value;
        CHECK(at_one > 0.0);
        CHECK_NEAR(at_one, b_norm(chi, p), 1e-10);
      }
    }
  }

  TEST_CASE("cap transforms of degree >= 1 change sign with c") {
    // chat(n) is proportional to C^{lambda+1}_{n-1}(c): zero exactly at its roots.
    const GegenbauerParams p(1.0);
    for (int n = 2; n <= 6; ++n) {
      int sign_changes = 0;
      double prev = cap_transform(p, -0.999, n).value;
      for (int i = 1; i < 400; ++i) {
        const double v = cap_transform(p, -0.999 + 1.998 * i / 399.0, n).value;
        if (v * prev < 0.0) ++sign_changes;
        prev = v;
      }
      CHECK(sign_changes == n - 1);
    }
  }
}
