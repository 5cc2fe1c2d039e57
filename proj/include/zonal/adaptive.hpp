#ifndef ZONAL_ADAPTIVE_HPP
#define ZONAL_ADAPTIVE_HPP

#include <cstddef>
#include <functional>

namespace zonal {

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  bool converged = true;
};

// Globally adaptive 7/15-point Gauss-Kronrod: bisects the panel with the
// largest error estimate until the summed estimate is <= abs_tol or the panel
// budget runs out (converged = false).
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  std::size_t max_panels = 4000);

}  // namespace zonal

#endif  // ZONAL_ADAPTIVE_HPP
