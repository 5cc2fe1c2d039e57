#ifndef ZONAL_KERNEL_HPP
#define ZONAL_KERNEL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace zonal {

// Arguments this close outside [-1,1] are rounding noise from dot products
// of unit vectors and are clamped; anything further out is rejected.
inline constexpr double kDomainSlack = 1e-12;

// Clamp x into [-1,1]; throws ArgumentError if |x| > 1 + kDomainSlack or x is NaN.
double clamp_unit(double x);

// A zonal function f on [-1,1]; the kernel value between two points on the
// sphere is f(cos theta) = f(x^T y).
//
// Besides the evaluator a kernel carries metadata used by the quadrature and
// differentiation routines:
//  * breakpoints: abscissae in [-1,1] where f is not analytic. The poles are
//    listed when f has a square-root type behaviour there in x (arccos etc.).
//  * support_start: f vanishes identically on [-1, support_start].
//  * derivative: exact D f when the kernel knows it (e.g. it was built as I g).
//  * montee: factory for an exact I f when a closed form is known.
//  * descriptor: JSON description for serialisation; null when not expressible.
//
// Kernels are immutable and cheap to copy.
class ZonalKernel {
 public:
  using Function = std::function<double(double)>;

  // The zero function.
  ZonalKernel();
  explicit ZonalKernel(Function f, std::vector<double> breakpoints = {});

  // Evaluates at clamp_unit(x).
  double operator()(double x) const;

  const std::vector<double>& breakpoints() const;
  double support_start() const;
  const ZonalKernel* derivative() const;
  std::optional<ZonalKernel> analytic_montee() const;
  const nlohmann::json& descriptor() const;

  ZonalKernel with_breakpoints(std::vector<double> breakpoints) const;
  ZonalKernel with_support_start(double x0) const;
  ZonalKernel with_derivative(ZonalKernel derivative) const;
  ZonalKernel with_montee(std::function<ZonalKernel()> factory) const;
  ZonalKernel with_descriptor(nlohmann::json descriptor) const;

  // alpha * f, metadata carried over (derivative and montee scaled as well).
  ZonalKernel scaled(double alpha) const;

 private:
  struct Impl;
  explicit ZonalKernel(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Constant function.
ZonalKernel constant_kernel(double value);

// Union of the breakpoint lists, sorted and deduplicated.
std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b);

}  // namespace zonal

#endif  // ZONAL_KERNEL_HPP
