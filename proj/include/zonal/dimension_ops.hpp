#ifndef ZONAL_DIMENSION_OPS_HPP
#define ZONAL_DIMENSION_OPS_HPP

#include <memory>

#include "zonal/gegenbauer.hpp"
#include "zonal/kernel.hpp"

namespace zonal {

// mu_lambda = lambda for lambda > 0, 1 at lambda = 0.
double mu(GegenbauerParams params);

enum class Operator { montee, descente };
enum class Provenance { analytic, numeric };

struct FlaggedValue {
  double value = 0.0;
  // Set when the value is a one-sided limit taken at a breakpoint or pole.
  bool one_sided = false;
};

// The image of a kernel under the montee I f(x) = int_{-1}^x f, or the descente
// D f = f'. Holds the source by value; evaluation is pure.
class OperatorImage {
 public:
  struct State;
  explicit OperatorImage(std::shared_ptr<const State> state);

  double operator()(double x) const;
  FlaggedValue evaluate_flagged(double x) const;

  Operator op() const;
  Provenance provenance() const;
  const ZonalKernel& source() const;

  // Kernel view. A montee image records the source as its exact derivative.
  ZonalKernel as_kernel() const;

 private:
  std::shared_ptr<const State> state_;
};

// Adaptive Gauss-Kronrod of the cumulative integral, split at the source's
// breakpoints. Throws AccuracyError carrying the achieved error estimate when
// the requested absolute tolerance is not met.
OperatorImage montee_numeric(const ZonalKernel& f, double tol = 1e-12);

// Ridders-Richardson differences. Central away from breakpoints; next to one
// the stencil moves to the smooth side; exactly at one (or at a pole) the
// value is one-sided from the right (from the left at x = 1) and flagged.
// With use_analytic the exact derivative recorded in the kernel is returned.
OperatorImage descente_numeric(const ZonalKernel& f, double tol = 1e-10, bool use_analytic = true);

// I f as a kernel: the closed form when the kernel knows one, else numeric.
ZonalKernel montee(const ZonalKernel& f, double tol = 1e-12);

// max over 501 points of |d/dx C^lambda_n - 2 mu C^{lambda+1}_{n-1}|.
double check_D_on_gegenbauer(GegenbauerParams params, int n);

// max over 501 points of |I C^{lambda+1}_{n-1} - (C^lambda_n - C^lambda_n(-1)) / (2 mu)|
// with the montee done numerically.
double check_I_on_gegenbauer(GegenbauerParams params, int n);

// Coefficients of f' at lambda + 1 from those of f at lambda:
// b_{n-1} = 2 mu a_n in the Gegenbauer basis. The input basis is preserved.
// A single constant coefficient maps to the zero series {0}.
SeriesCoeffs coeff_map_derivative(const SeriesCoeffs& a);

// Smallest C >= 0 making the constant Gegenbauer coefficient of C + I f
// nonnegative at index lambda (the image sits two dimensions below f).
double montee_shift_constant(const ZonalKernel& f, GegenbauerParams image_params, std::size_t order = 200);

}  // namespace zonal

#endif  // ZONAL_DIMENSION_OPS_HPP
