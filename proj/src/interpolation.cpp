#include "zonal/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zonal/descriptor.hpp"
#include "zonal/error.hpp"

namespace zonal {

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw ArgumentError("Cholesky needs a square matrix");
  const Eigen::Index n = M.rows();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pivot = M(j, j) - L.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0)) {
      throw NotPositiveDefiniteError(
          "kernel not positive definite on this point set (pivot " + std::to_string(j) + " = " +
              std::to_string(pivot) + ")",
          static_cast<std::size_t>(j));
    }
    const double d = std::sqrt(pivot);
    L(j, j) = d;
    if (j + 1 < n) {
      const Eigen::Index rest = n - j - 1;
      L.col(j).tail(rest) =
          (M.col(j).tail(rest) - L.bottomLeftCorner(rest, j) * L.row(j).head(j).transpose()) / d;
    }
  }
  return L;
}

namespace {

Eigen::VectorXd cholesky_solve(const Eigen::MatrixXd& L, const Eigen::VectorXd& b) {
  const Eigen::VectorXd y = L.triangularView<Eigen::Lower>().solve(b);
  return L.transpose().triangularView<Eigen::Upper>().solve(y);
}

}  // namespace

Interpolant solve_interpolation(const PointSet& pts, const Eigen::VectorXd& values, const ZonalKernel& kernel) {
  if (static_cast<std::size_t>(values.size()) != pts.size()) {
    throw ArgumentError("got " + std::to_string(values.size()) + " values for " + std::to_string(pts.size()) +
                        " points");
  }
  if (pts.size() > kMaxInterpolationPoints) {
    throw ResourceError("dense interpolation is limited to " + std::to_string(kMaxInterpolationPoints) + " points");
  }
  if (!values.allFinite()) throw ArgumentError("data values must be finite");

  const Eigen::MatrixXd M = gram_matrix(kernel, pts);
  const Eigen::MatrixXd L = cholesky_lower(M);
  Eigen::VectorXd c = cholesky_solve(L, values);
  c += cholesky_solve(L, values - M * c);

  const double residual = (M * c - values).cwiseAbs().maxCoeff();
  const double scale = values.cwiseAbs().maxCoeff();
  if (!(residual <= 1e-9 * scale) && residual != 0.0) {
    throw AccuracyError("interpolation residual " + std::to_string(residual) + " exceeds 1e-9 * ||f||", residual);
  }
  return Interpolant{pts, kernel, std::move(c), residual};
}

double evaluate_interpolant(const Interpolant& itp, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd& X = itp.centers.points();
  if (x.size() != X.cols()) {
    throw ArgumentError("evaluation point has " + std::to_string(x.size()) + " coordinates, expected " +
                        std::to_string(X.cols()));
  }
  if (!x.allFinite() || std::abs(x.norm() - 1.0) > 1e-12) throw ArgumentError("evaluation point is not a unit vector");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    sum += itp.coefficients(j) * itp.kernel(cos_geodesic(X.row(j), x));
  }
  return sum;
}

nlohmann::json Interpolant::to_json() const {
  nlohmann::json centers_json = nlohmann::json::array();
  const Eigen::MatrixXd& X = centers.points();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index k = 0; k < X.cols(); ++k) row[static_cast<std::size_t>(k)] = X(i, k);
    centers_json.push_back(row);
  }
  return {{"kernel", kernel_descriptor(kernel)},
          {"d", centers.dim()},
          {"centers", centers_json},
          {"coefficients", std::vector<double>(coefficients.data(), coefficients.data() + coefficients.size())},
          {"residual", residual}};
}

Interpolant Interpolant::from_json(const nlohmann::json& j) {
  try {
    const int d = j.at("d").get<int>();
    const auto& cj = j.at("centers");
    const auto& coef = j.at("coefficients");
    if (!cj.is_array() || !coef.is_array() || cj.size() != coef.size()) {
      throw ArgumentError("interpolant centers and coefficients do not match");
    }
    Eigen::MatrixXd X(static_cast<Eigen::Index>(cj.size()), d + 1);
    Eigen::VectorXd c(static_cast<Eigen::Index>(coef.size()));
    for (std::size_t i = 0; i < cj.size(); ++i) {
      const auto row = cj[i].get<std::vector<double>>();
      if (row.size() != static_cast<std::size_t>(d + 1)) throw ArgumentError("center has the wrong dimension");
      for (int k = 0; k <= d; ++k) X(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
      c(static_cast<Eigen::Index>(i)) = coef[i].get<double>();
    }
    return Interpolant{PointSet(d, std::move(X)), kernel_from_descriptor(j.at("kernel")), std::move(c),
                       j.value("residual", 0.0)};
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed interpolant JSON: ") + e.what());
  }
}

}  // namespace zonal
