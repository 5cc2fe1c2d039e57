#ifndef ZONAL_GEGENBAUER_HPP
#define ZONAL_GEGENBAUER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zonal/kernel.hpp"

namespace zonal {

// Gegenbauer index lambda >= 0. The sphere S^d pairs with lambda = (d-1)/2;
// lambda = 0 (the circle) uses the Chebyshev limit C^0_n = (2/n) T_n.
class GegenbauerParams {
 public:
  explicit GegenbauerParams(double lambda);
  static GegenbauerParams for_sphere(int d);

  double lambda() const noexcept { return lambda_; }
  bool is_zero() const noexcept { return lambda_ == 0.0; }
  // 2*lambda + 1 when that is an integer.
  std::optional<int> sphere_dim() const;
  GegenbauerParams raised() const { return GegenbauerParams(lambda_ + 1.0); }

  friend bool operator==(const GegenbauerParams&, const GegenbauerParams&) = default;

 private:
  double lambda_;
};

// C^lambda_n(x) by the three-term recurrence. x is clamped per clamp_unit.
double eval_gegenbauer(GegenbauerParams params, int n, double x);

struct ValueAndDerivative {
  double value;
  double derivative;
};

// C^lambda_n(x) and d/dx C^lambda_n(x), the derivative carried through the
// differentiated recurrence (no use of the index-raising identity).
ValueAndDerivative eval_gegenbauer_with_derivative(GegenbauerParams params, int n, double x);

// C^lambda_0(x) ... C^lambda_N(x) into out (size N+1).
void eval_gegenbauer_all(GegenbauerParams params, double x, std::span<double> out);

// C^lambda_n(1).
double gegenbauer_at_one(GegenbauerParams params, int n);

// W^lambda_n = C^lambda_n / C^lambda_n(1), equal to one at x = 1.
double eval_normalized(GegenbauerParams params, int n, double x);

// h^lambda_n = int (C^lambda_n)^2 (1-x^2)^(lambda-1/2) dx. lambda > 0 only.
double norm_h(GegenbauerParams params, int n);

// w_lambda(n) with int (W^lambda_n)^2 dOmega_lambda = 1 / w_lambda(n).
double weight_w(GegenbauerParams params, int n);

// Total mass of dOmega_lambda(x) = (1-x^2)^(lambda-1/2) dx on [-1,1].
double measure_mass(GegenbauerParams params);

// Gauss rule for dOmega_lambda. Nodes strictly increasing, weights positive,
// exact for polynomials of degree <= 2*order - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  GegenbauerParams params{0.5};

  std::size_t order() const noexcept { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

inline constexpr std::size_t kMaxQuadratureOrder = 100000;

// Golub-Welsch eigenvalues of the Jacobi matrix, Christoffel weights, one
// Newton polish. Throws ResourceError for order > kMaxQuadratureOrder.
QuadratureRule quadrature_rule(GegenbauerParams params, std::size_t order);

// Gauss-Legendre rule on [-1,1], cached per order. Thread-safe.
const QuadratureRule& gauss_legendre(std::size_t order);

// int_a^b g over the panels [cuts[i], cuts[i+1]] with an order-point
// Gauss-Legendre rule on each; cuts must be sorted.
template <class F>
double integrate_panels(F&& g, std::span<const double> cuts, std::size_t order) {
  const QuadratureRule& rule = gauss_legendre(order);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    if (half <= 0.0) continue;
    const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) panel += rule.weights[i] * g(mid + half * rule.nodes[i]);
    total += half * panel;
  }
  return total;
}

// Coefficients of a zonal function. In the transform basis the entries are
// fhat_lambda(n) = int f W^lambda_n dOmega_lambda and f ~ sum w(n) fhat(n) W_n;
// in the Gegenbauer basis they are a_n with f ~ sum a_n C^lambda_n.
enum class CoeffBasis { transform, gegenbauer };

struct SeriesCoeffs {
  GegenbauerParams params{0.5};
  std::vector<double> coeffs;
  CoeffBasis basis = CoeffBasis::transform;

  // N, the highest index held; -1 for an empty vector.
  int truncation() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

SeriesCoeffs to_basis(const SeriesCoeffs& s, CoeffBasis basis);

// fhat_lambda(n) by quadrature. Kernels without breakpoints use the Gauss rule
// for dOmega_lambda with `order` nodes; otherwise the integral is taken in
// theta = arccos x, split at the breakpoints, with `order` Gauss-Legendre nodes
// per panel.
double fourier_coeff(const ZonalKernel& f, GegenbauerParams params, int n, std::size_t order);

// fhat_lambda(0..N) sharing one set of kernel samples.
SeriesCoeffs fourier_transform(const ZonalKernel& f, GegenbauerParams params, int N, std::size_t order);

enum class Summation { partial, cesaro };

// Partial sum (or Cesaro (C,1) mean) of the expansion at x.
double series_eval(const SeriesCoeffs& s, double x, Summation mode = Summation::partial);

// The series as a kernel (descriptor family "series").
ZonalKernel series_kernel(SeriesCoeffs s);

// C^lambda_n, or W^lambda_n when normalized.
ZonalKernel gegenbauer_kernel(GegenbauerParams params, int n, bool normalized = false);

}  // namespace zonal

#endif  // ZONAL_GEGENBAUER_HPP
