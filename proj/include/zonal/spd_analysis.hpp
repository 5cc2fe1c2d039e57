#ifndef ZONAL_SPD_ANALYSIS_HPP
#define ZONAL_SPD_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "zonal/gegenbauer.hpp"
#include "zonal/kernel.hpp"

namespace zonal {

struct ClassifyOptions {
  // Magnitudes below tol_rel * max|coefficient| count as zero.
  double tol_rel = 1e-10;
  // A coefficient counts as positive only above error_factor * (its quadrature error estimate).
  double error_factor = 10.0;
  // Positive coefficients needed in each parity class for the evidence flag.
  int evidence_min = 10;
  // Gauss-Legendre nodes per theta panel; 0 picks max(2N + 40, 120).
  std::size_t order = 0;
  // Points of the nonnegativity grid used by cx_evidence.
  int grid = 401;
};

// Evidence for membership in the positive definite classes up to truncation N.
// Coefficients are fhat_lambda(n); signs agree with the Gegenbauer basis.
struct ClassificationReport {
  GegenbauerParams params{0.0};
  int truncation = 0;
  SeriesCoeffs coeffs;
  std::vector<double> errors;  // |c(order) - c(2 order)| per coefficient
  double tolerance = 0.0;      // absolute zero threshold tol_rel * max|c|
  double min_coeff = 0.0;
  int neg_count = 0;
  int pos_even = 0;
  int pos_odd = 0;
  int evidence_min = 0;
  // No coefficient below -tolerance.
  bool schoenberg_up_to_N = false;
  // schoenberg_up_to_N and at least evidence_min positive entries of each parity.
  bool cms_evidence = false;
  // Every coefficient positive and f >= 0 on the sampling grid.
  bool cx_evidence = false;
  // On the circle the parity condition is necessary but not sufficient.
  bool cms_necessary_only = false;

  nlohmann::json to_json() const;
};

// Throws ArgumentError for N < 10.
ClassificationReport classify(const ZonalKernel& f, GegenbauerParams params, int N,
                              const ClassifyOptions& options = {});

// n distinct unit vectors in R^{d+1}, stored as rows.
class PointSet {
 public:
  // Validates unit norms (1e-12) and pairwise distinctness.
  PointSet(int d, Eigen::MatrixXd points);

  // Longitude/latitude in degrees onto S^2.
  static PointSet from_lonlat(const std::vector<double>& lon_deg, const std::vector<double>& lat_deg);

  int dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  const Eigen::MatrixXd& points() const noexcept { return points_; }
  Eigen::VectorXd point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }

  // Smallest pairwise geodesic distance; +inf for a single point.
  double min_separation() const;

  PointSet rotated(const Eigen::MatrixXd& rotation) const;

 private:
  int d_;
  Eigen::MatrixXd points_;
};

// cos of the geodesic distance between unit vectors, clamped into [-1,1].
// Close pairs use 1 - |a - b|^2 / 2, which keeps the angle accurate where the
// dot product loses it; identical vectors give exactly 1.
template <class A, class B>
double cos_geodesic(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  double dot = 0.0;
  double chord2 = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    dot += a(k) * b(k);
    const double diff = a(k) - b(k);
    chord2 += diff * diff;
  }
  const double x = dot > 0.5 ? 1.0 - 0.5 * chord2 : dot;
  return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

// M_ij = f(x_i . x_j).
Eigen::MatrixXd gram_matrix(const ZonalKernel& f, const PointSet& pts);

// Smallest eigenvalue of the Gram matrix.
double gram_min_eig(const ZonalKernel& f, const PointSet& pts);

struct GramReport {
  double min_eig;
  double norm;  // spectral norm
  // min_eig > -1e-10 * norm
  bool semidefinite;
  bool positive_definite;  // min_eig > 0
};

GramReport gram_report(const ZonalKernel& f, const PointSet& pts);

enum class PointScheme { random_seeded, fibonacci_s2 };

PointScheme parse_point_scheme(std::string_view name);
std::string_view to_string(PointScheme scheme);

// Deterministic in (d, n, scheme, seed). Random points are normalised Gaussian
// vectors from a 64-bit Mersenne twister; the Fibonacci lattice is S^2 only.
PointSet generate_points(int d, std::size_t n, PointScheme scheme, std::uint64_t seed = 0);

}  // namespace zonal

#endif  // ZONAL_SPD_ANALYSIS_HPP
