#ifndef ZONAL_CONVOLUTION_HPP
#define ZONAL_CONVOLUTION_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "zonal/dimension_ops.hpp"
#include "zonal/gegenbauer.hpp"
#include "zonal/kernel.hpp"

namespace zonal {

// chi_[c,1], the indicator of a spherical cap, -1 < c < 1.
struct CapFunction {
  double c;

  explicit CapFunction(double c);
  // 1 iff x >= c.
  double operator()(double x) const;
};

// chi_[c,1] as a kernel with its exact montee chain attached.
ZonalKernel cap_indicator(const CapFunction& cap);

// I^k chi_[c,1] = (x - c)^k_+ / k!, k >= 0.
ZonalKernel cap_power(const CapFunction& cap, int k);

inline constexpr std::size_t kDefaultConvOrder = 40;

// (F *_0 G)(cos theta) = 1/2 int_{-pi}^{pi} F(cos(theta - t)) G(cos t) dt.
// The t-range is split where either factor has a breakpoint and at the poles;
// each panel gets an `order`-point Gauss-Legendre rule, panels outside either
// support are skipped.
double conv0(const ZonalKernel& F, const ZonalKernel& G, double theta, std::size_t order = kDefaultConvOrder);

// x -> (F *_0 G)(x) as a kernel, breakpoints at the kinks cos(beta_F +- beta_G).
ZonalKernel conv0_kernel(const ZonalKernel& F, const ZonalKernel& G, std::size_t order = kDefaultConvOrder);

// (f *_lambda g)^(n) = fhat(n) ghat(n). Both inputs must share lambda and
// truncation; the product is formed in the transform basis and returned in
// the basis of the first argument.
SeriesCoeffs conv_lambda_coeffs(const SeriesCoeffs& fhat, const SeriesCoeffs& ghat);

// f *_{lambda+1} g through the dimension-hop identity
//   f *_{lambda+1} g = (2 lambda + 1) D[(I f) *_lambda (I g)],
// iterated down to *_0:  f *_K g = (2K-1)!! D^K[(I^K f) *_0 (I^K g)], K = lambda + 1.
// The derivatives are exact: theta-derivatives are moved under the integral
// onto the factors, interior points use the chain rule for d/dx, and x = +-1
// use the Taylor expansion of the even function theta -> (.)(cos theta).
// lambda must be a nonnegative integer. At a kink of the result the value is
// the limit from the right and is flagged.
class HopConvolution {
 public:
  HopConvolution(const ZonalKernel& f, const ZonalKernel& g, GegenbauerParams params,
                 std::size_t order = kDefaultConvOrder);

  FlaggedValue operator()(double x) const;

  // Target index lambda + 1.
  GegenbauerParams target() const;
  // Abscissae where the result is not smooth (excluding the poles).
  const std::vector<double>& kinks() const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

FlaggedValue dimension_hop_conv(const ZonalKernel& f, const ZonalKernel& g, GegenbauerParams params, double x,
                                std::size_t order = kDefaultConvOrder);

// f *_{lambda+1} g as a kernel.
ZonalKernel star_kernel(const ZonalKernel& f, const ZonalKernel& g, GegenbauerParams params,
                        std::size_t order = kDefaultConvOrder);

// a_{lambda,n+1} = C^lambda_{n+1}(1) w_{lambda+1}(n) / (2 mu C^{lambda+1}_n(1) w_lambda(n+1)),
// the factor in (I f)^_lambda(n+1) = a_{lambda,n+1} fhat_{lambda+1}(n). Equals 1/(2 lambda + 1).
double hop_coefficient_factor(GegenbauerParams params, int n);

struct CapTransform {
  double value;
  // n = 0 has no closed form; the value then comes from quadrature.
  bool by_quadrature;
};

// int_c^1 C^lambda_n dOmega_lambda = 2 lambda / (n (2 lambda + n)) (1-c^2)^(lambda+1/2) C^{lambda+1}_{n-1}(c).
// lambda > 0 (UnsupportedIndexError at 0), -1 < c < 1, n >= 0.
CapTransform cap_transform(GegenbauerParams params, double c, int n);

// Transform-basis coefficients of chi_[c,1] for n = 0..N. At lambda = 0 they
// are fhat(0) = s, fhat(n) = sin(n s)/n with s = arccos c.
SeriesCoeffs cap_coefficients(GegenbauerParams params, double c, int N);

// Maximum deviations in the convolution identities
//   (i) ||f * g|| <= ||f|| ||g||, (ii) f * g = g * f,
//   (iii) f * (g * h) = (f * g) * h, (iv) (f * g)^ = fhat ghat.
struct ConvolutionReport {
  GegenbauerParams params{0.0};
  // ||f * g|| / (||f|| ||g||); absent when the convolution is only known in coefficient space.
  std::optional<double> norm_ratio;
  double commutativity = 0.0;           // on the x grid (lambda = 0 or integer hop), else coefficients
  double associativity = 0.0;           // on the x grid at lambda = 0, else coefficients
  double coefficient_commutativity = 0.0;
  double coefficient_associativity = 0.0;
  double multiplicativity = 0.0;        // |transform of f*g - fhat ghat|, max over n <= N
  int truncation = 0;

  bool norm_holds(double slack = 1e-12) const { return !norm_ratio || *norm_ratio <= 1.0 + slack; }
};

// Checks (i)-(iv). At lambda = 0 the direct convolution is used on a grid of
// `grid` points; at integer lambda > 0 the dimension hop; otherwise only the
// coefficient identities (to truncation N) are available.
ConvolutionReport conv_property_check(const ZonalKernel& f, const ZonalKernel& g, const ZonalKernel& h,
                                      GegenbauerParams params, std::size_t order = kDefaultConvOrder, int N = 20,
                                      int grid = 41);

// ||f|| = int |f| dOmega_lambda, by theta-panels split at the breakpoints.
double b_norm(const ZonalKernel& f, GegenbauerParams params, std::size_t order = 60);

}  // namespace zonal

#endif  // ZONAL_CONVOLUTION_HPP
