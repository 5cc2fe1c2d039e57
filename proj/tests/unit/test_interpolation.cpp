#include <cmath>

#include <Eigen/Dense>

#include "support.hpp"
#include "zonal/descriptor.hpp"
#include "zonal/error.hpp"
#include "zonal/interpolation.hpp"
#include "zonal/kernel_families.hpp"

using namespace zonal;
using zonal::testing::kPi;

namespace {

Eigen::VectorXd sample(const PointSet& pts) {
  Eigen::VectorXd f(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::VectorXd p = pts.point(i);
    f(static_cast<Eigen::Index>(i)) = std::exp(p(0)) * std::cos(2.0 * p(1)) + p(2);
  }
  return f;
}

Eigen::MatrixXd rotation_s2(double a, double b, double c) {
  Eigen::MatrixXd rz(3, 3), rx(3, 3), ry(3, 3);
  rz << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  rx << 1, 0, 0, 0, std::cos(b), -std::sin(b), 0, std::sin(b), std::cos(b);
  ry << std::cos(c), 0, std::sin(c), 0, 1, 0, -std::sin(c), 0, std::cos(c);
  return rz * rx * ry;
}

}  // namespace

TEST_SUITE("interpolation") {
  TEST_CASE("Cholesky factor reproduces the matrix and reports the failing pivot") {
    Eigen::MatrixXd A(3, 3);
    A << 4, 2, 0, 2, 5, 1, 0, 1, 3;
    const Eigen::MatrixXd L = cholesky_lower(A);
    CHECK((L * L.transpose() - A).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(L(0, 1) == 0.0);
    Eigen::MatrixXd B(3, 3);
    B << 1, 0, 0, 0, 1, 2, 0, 2, 1;
    try {
      cholesky_lower(B);
      FAIL("expected NotPositiveDefiniteError");
    } catch (const NotPositiveDefiniteError& e) {
      CHECK(e.pivot() == 2);
    }
    CHECK_THROWS_AS(cholesky_lower(Eigen::MatrixXd(2, 3)), ArgumentError);
  }

  TEST_CASE("interpolant reproduces the data") {
    for (int d : {3, 5}) {
      for (std::size_t n : {50u, 200u}) {
        const PointSet pts = generate_points(2, n, PointScheme::random_seeded, 11);
        const Eigen::VectorXd f = sample(pts);
        const Interpolant itp = solve_interpolation(pts, f, cap_kernel(d, kPi / 3));
        CHECK(itp.residual <= 1e-9 * f.cwiseAbs().maxCoeff());
        for (std::size_t i = 0; i < n; i += 17) {
          CHECK_NEAR(evaluate_interpolant(itp, pts.point(i)), f(static_cast<Eigen::Index>(i)), 1e-9);
        }
      }
    }
  }

  TEST_CASE("interpolation rejects bad input") {
    const PointSet pts = generate_points(2, 20, PointScheme::fibonacci_s2);
    CHECK_THROWS_AS(solve_interpolation(pts, Eigen::VectorXd::Zero(19), cap_kernel(3, 1.0)), ArgumentError);
    Eigen::VectorXd bad = Eigen::VectorXd::Zero(20);
    bad(3) = std::nan("");
    CHECK_THROWS_AS(solve_interpolation(pts, bad, cap_kernel(3, 1.0)), ArgumentError);
    const ZonalKernel indefinite([](double x) { return x; });
    CHECK_THROWS_AS(solve_interpolation(pts, sample(pts), indefinite), NotPositiveDefiniteError);
    const Interpolant itp = solve_interpolation(pts, sample(pts), cap_kernel(3, 1.0));
    CHECK_THROWS_AS(evaluate_interpolant(itp, Eigen::VectorXd::Ones(3)), ArgumentError);
    CHECK_THROWS_AS(evaluate_interpolant(itp, Eigen::VectorXd::Ones(4) * 0.5), ArgumentError);
  }

  TEST_CASE("interpolant JSON round trip") {
    const PointSet pts = generate_points(2, 30, PointScheme::fibonacci_s2);
    const Interpolant itp = solve_interpolation(pts, sample(pts), cap_kernel(5, 0.8));
    const Interpolant back = Interpolant::from_json(nlohmann::json::parse(itp.to_json().dump()));
    CHECK(back.centers.points() == itp.centers.points());
    CHECK(back.coefficients == itp.coefficients);
    Eigen::VectorXd probe(3);
    probe << 0.6, 0.0, 0.8;
    CHECK(evaluate_interpolant(back, probe) == evaluate_interpolant(itp, probe));
  }
}

TEST_SUITE("interpolation properties") {
  TEST_CASE("interpolant commutes with rotations") {
    const PointSet pts = generate_points(2, 80, PointScheme::random_seeded, 5);
    const Eigen::VectorXd f = sample(pts);
    const ZonalKernel k = cap_kernel(3, kPi / 3);
    const Eigen::MatrixXd R = rotation_s2(0.4, 1.3, -0.8);
    const Interpolant itp = solve_interpolation(pts, f, k);
    const Interpolant rot = solve_interpolation(pts.rotated(R), f, k);
    const PointSet probes = generate_points(2, 40, PointScheme::random_seeded, 99);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const Eigen::VectorXd y = probes.point(i);
      CHECK_NEAR(evaluate_interpolant(rot, R * y), evaluate_interpolant(itp, y), 1e-10);
    }
  }

  TEST_CASE("interpolant does not depend on the point order") {
    const PointSet pts = generate_points(2, 60, PointScheme::fibonacci_s2);
    const Eigen::VectorXd f = sample(pts);
    const ZonalKernel k = cap_kernel(5, 1.0);
    const Interpolant itp = solve_interpolation(pts, f, k);
    const Eigen::MatrixXd reversed_pts = pts.points().colwise().reverse();
    const Eigen::VectorXd reversed_f = f.reverse();
    const Interpolant rev = solve_interpolation(PointSet(2, reversed_pts), reversed_f, k);
    Eigen::VectorXd probe(3);
    probe << 0.0, 0.6, -0.8;
    CHECK_NEAR(evaluate_interpolant(rev, probe), evaluate_interpolant(itp, probe), 1e-10);
  }

  TEST_CASE("a function in the span of the kernels is reproduced everywhere") {
    const PointSet pts = generate_points(2, 40, PointScheme::fibonacci_s2);
    const ZonalKernel k = cap_kernel(3, 1.1);
    Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(40, -1.0, 2.0);
    Eigen::VectorXd f = gram_matrix(k, pts) * c;
    const Interpolant itp = solve_interpolation(pts, f, k);
    CHECK((itp.coefficients - c).cwiseAbs().maxCoeff() <= 1e-8);
  }
}
