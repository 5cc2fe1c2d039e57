#ifndef ZONAL_INTERPOLATION_HPP
#define ZONAL_INTERPOLATION_HPP

#include <cstddef>

#include <Eigen/Dense>
#include <json.hpp>

#include "zonal/kernel.hpp"
#include "zonal/spd_analysis.hpp"

namespace zonal {

inline constexpr std::size_t kMaxInterpolationPoints = 5000;

// s(x) = sum_j c_j g(x . x_j) with s(x_i) = f_i.
struct Interpolant {
  PointSet centers;
  ZonalKernel kernel;
  Eigen::VectorXd coefficients;
  // max_i |s(x_i) - f_i| at construction.
  double residual = 0.0;

  nlohmann::json to_json() const;
  // The kernel is rebuilt from its descriptor.
  static Interpolant from_json(const nlohmann::json& j);
};

// Lower Cholesky factor of a symmetric matrix. Throws NotPositiveDefiniteError
// with the failing column when a pivot is not positive.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& M);

// Solves M_X c = f by Cholesky with one step of iterative refinement. Throws
// ArgumentError on a size mismatch, NotPositiveDefiniteError when the Gram
// matrix is not numerically positive definite, AccuracyError when the residual
// exceeds 1e-9 ||f||_inf.
Interpolant solve_interpolation(const PointSet& pts, const Eigen::VectorXd& values, const ZonalKernel& kernel);

// Throws ArgumentError unless x has the centers' dimension and unit norm within 1e-12.
double evaluate_interpolant(const Interpolant& itp, const Eigen::VectorXd& x);

}  // namespace zonal

#endif  // ZONAL_INTERPOLATION_HPP
