#include "zonal/spd_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "zonal/error.hpp"

namespace zonal {

// ---------------------------------------------------------------------------
// classification

nlohmann::json ClassificationReport::to_json() const {
  return {{"lambda", params.lambda()},
          {"truncation", truncation},
          {"coeffs", coeffs.coeffs},
          {"errors", errors},
          {"tolerance", tolerance},
          {"min_coeff", min_coeff},
          {"neg_count", neg_count},
          {"pos_even", pos_even},
          {"pos_odd", pos_odd},
          {"evidence_min", evidence_min},
          {"flags",
           {{"schoenberg_up_to_N", schoenberg_up_to_N},
            {"cms_evidence", cms_evidence},
            {"cms_evidence_scope", cms_necessary_only ? "necessary-only" : "sufficient"},
            {"cx_evidence", cx_evidence}}}};
}

ClassificationReport classify(const ZonalKernel& f, GegenbauerParams params, int N, const ClassifyOptions& options) {
  if (N < 10) throw ArgumentError("classification needs N >= 10, got " + std::to_string(N));
  if (!(options.tol_rel >= 0.0) || !(options.error_factor >= 0.0)) {
    throw ArgumentError("classification tolerances must be nonnegative");
  }
  const std::size_t order = options.order > 0 ? options.order : std::max<std::size_t>(2 * N + 40, 120);

  ClassificationReport r;
  r.params = params;
  r.truncation = N;
  r.evidence_min = options.evidence_min;
  r.coeffs = fourier_transform(f, params, N, order);
  const SeriesCoeffs fine = fourier_transform(f, params, N, 2 * order);

  double scale = 0.0;
  for (double c : r.coeffs.coeffs) scale = std::max(scale, std::abs(c));
  r.tolerance = options.tol_rel * scale;
  r.errors.resize(r.coeffs.coeffs.size());
  r.min_coeff = std::numeric_limits<double>::infinity();
  bool all_positive = true;
  for (int n = 0; n <= N; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double c = r.coeffs.coeffs[i];
    r.errors[i] = std::abs(c - fine.coeffs[i]);
    r.min_coeff = std::min(r.min_coeff, c);
    if (c < -r.tolerance) ++r.neg_count;
    const bool positive = c > r.tolerance && c > options.error_factor * r.errors[i];
    if (positive) {
      ++(n % 2 == 0 ? r.pos_even : r.pos_odd);
    } else {
      all_positive = false;
    }
  }
  r.schoenberg_up_to_N = r.neg_count == 0;
  r.cms_evidence = r.schoenberg_up_to_N && r.pos_even >= options.evidence_min && r.pos_odd >= options.evidence_min;
  r.cms_necessary_only = params.is_zero();

  if (all_positive) {
    double fmax = 0.0, fmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < options.grid; ++i) {
      const double x = options.grid == 1 ? 1.0 : -1.0 + 2.0 * i / (options.grid - 1);
      const double v = f(x);
      fmax = std::max(fmax, std::abs(v));
      fmin = std::min(fmin, v);
    }
    r.cx_evidence = fmin >= -1e-14 * fmax;
  }
  return r;
}

// ---------------------------------------------------------------------------
// point sets

namespace {

constexpr double kUnitTol = 1e-12;

// Geodesic distance, accurate for nearly coincident and nearly antipodal pairs.
double geodesic(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double chord = (a - b).norm();
  return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

}  // namespace

PointSet::PointSet(int d, Eigen::MatrixXd points) : d_(d), points_(std::move(points)) {
  if (d < 1) throw ArgumentError("sphere dimension must be >= 1");
  if (points_.rows() < 1) throw ArgumentError("point set is empty");
  if (points_.cols() != d + 1) {
    throw ArgumentError("points on S^" + std::to_string(d) + " need " + std::to_string(d + 1) + " coordinates, got " +
                        std::to_string(points_.cols()));
  }
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    const double norm = points_.row(i).norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitTol) {
      throw ArgumentError("point " + std::to_string(i) + " is not a unit vector (norm " + std::to_string(norm) + ")");
    }
  }
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if ((points_.row(i) - points_.row(j)).norm() == 0.0) {
        throw ArgumentError("points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
}

PointSet PointSet::from_lonlat(const std::vector<double>& lon_deg, const std::vector<double>& lat_deg) {
  if (lon_deg.size() != lat_deg.size()) throw ArgumentError("longitude and latitude counts differ");
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(lon_deg.size()), 3);
  constexpr double deg = std::numbers::pi / 180.0;
  for (std::size_t i = 0; i < lon_deg.size(); ++i) {
    if (!(std::abs(lat_deg[i]) <= 90.0) || !std::isfinite(lon_deg[i])) {
      throw ArgumentError("invalid longitude/latitude at row " + std::to_string(i));
    }
    const double lon = lon_deg[i] * deg, lat = lat_deg[i] * deg;
    const auto r = static_cast<Eigen::Index>(i);
    pts(r, 0) = std::cos(lat) * std::cos(lon);
    pts(r, 1) = std::cos(lat) * std::sin(lon);
    pts(r, 2) = std::sin(lat);
    pts.row(r).normalize();
  }
  return PointSet(2, std::move(pts));
}

double PointSet::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      best = std::min(best, geodesic(points_.row(i).transpose(), points_.row(j).transpose()));
    }
  }
  return best;
}

PointSet PointSet::rotated(const Eigen::MatrixXd& rotation) const {
  if (rotation.rows() != d_ + 1 || rotation.cols() != d_ + 1) throw ArgumentError("rotation has the wrong shape");
  const Eigen::MatrixXd gram = rotation.transpose() * rotation;
  if (!gram.isApprox(Eigen::MatrixXd::Identity(d_ + 1, d_ + 1), 1e-12)) {
    throw ArgumentError("rotation is not orthogonal");
  }
  Eigen::MatrixXd moved = points_ * rotation.transpose();
  for (Eigen::Index i = 0; i < moved.rows(); ++i) moved.row(i).normalize();
  return PointSet(d_, std::move(moved));
}

Eigen::MatrixXd gram_matrix(const ZonalKernel& f, const PointSet& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  const Eigen::MatrixXd& X = pts.points();
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, i) = f(1.0);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = f(cos_geodesic(X.row(i), X.row(j)));
      if (!std::isfinite(v)) throw EvaluationError("kernel returned a non-finite Gram entry");
      M(i, j) = v;
      M(j, i) = v;
    }
  }
  if (!std::isfinite(M(0, 0))) throw EvaluationError("kernel returned a non-finite value at x = 1");
  return M;
}

double gram_min_eig(const ZonalKernel& f, const PointSet& pts) { return gram_report(f, pts).min_eig; }

GramReport gram_report(const ZonalKernel& f, const PointSet& pts) {
  const Eigen::MatrixXd M = gram_matrix(f, pts);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EvaluationError("symmetric eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  GramReport r{};
  r.min_eig = ev.minCoeff();
  r.norm = ev.cwiseAbs().maxCoeff();
  r.semidefinite = r.min_eig > -1e-10 * r.norm;
  r.positive_definite = r.min_eig > 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// generators

PointScheme parse_point_scheme(std::string_view name) {
  if (name == "random" || name == "random_seeded") return PointScheme::random_seeded;
  if (name == "fibonacci" || name == "fibonacci_s2") return PointScheme::fibonacci_s2;
  throw ArgumentError("unknown point scheme '" + std::string(name) + "'");
}

std::string_view to_string(PointScheme scheme) {
  return scheme == PointScheme::random_seeded ? "random_seeded" : "fibonacci_s2";
}

PointSet generate_points(int d, std::size_t n, PointScheme scheme, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("need at least one point");
  if (d < 1) throw ArgumentError("sphere dimension must be >= 1");
  if (n > 100000) throw ResourceError("point count above 100000");
  const auto rows = static_cast<Eigen::Index>(n);

  if (scheme == PointScheme::fibonacci_s2) {
    if (d != 2) throw ArgumentError("the Fibonacci lattice is defined on S^2 only");
    Eigen::MatrixXd pts(rows, 3);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(i);
      pts.row(i) << r * std::cos(phi), r * std::sin(phi), z;
      pts.row(i).normalize();
    }
    return PointSet(2, std::move(pts));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd pts(rows, d + 1);
  constexpr int kMaxRetries = 100;
  for (Eigen::Index i = 0; i < rows; ++i) {
    int attempt = 0;
    for (;; ++attempt) {
      if (attempt > kMaxRetries) throw EvaluationError("could not draw a point distinct from the others");
      for (int k = 0; k <= d; ++k) pts(i, k) = normal(rng);
      const double norm = pts.row(i).norm();
      if (!(norm > 1e-8)) continue;
      pts.row(i) /= norm;
      bool distinct = true;
      for (Eigen::Index j = 0; j < i && distinct; ++j) distinct = (pts.row(i) - pts.row(j)).norm() > 0.0;
      if (distinct) break;
    }
  }
  return PointSet(d, std::move(pts));
}

}  // namespace zonal
