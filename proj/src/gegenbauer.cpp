#include "zonal/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "zonal/error.hpp"

namespace zonal {

namespace {

double lgam(double x) { return boost::math::lgamma(x); }

void require_degree(int n) {
  if (n < 0) throw ArgumentError("negative polynomial degree " + std::to_string(n));
}

}  // namespace

GegenbauerParams::GegenbauerParams(double lambda) : lambda_(lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw ArgumentError("Gegenbauer index must be finite and >= 0, got " + std::to_string(lambda));
  }
}

GegenbauerParams GegenbauerParams::for_sphere(int d) {
  if (d < 1) throw ArgumentError("sphere dimension must be >= 1");
  return GegenbauerParams(0.5 * (d - 1));
}

std::optional<int> GegenbauerParams::sphere_dim() const {
  const double d = 2.0 * lambda_ + 1.0;
  if (d == std::round(d)) return static_cast<int>(d);
  return std::nullopt;
}

double eval_gegenbauer(GegenbauerParams params, int n, double x) {
  return eval_gegenbauer_with_derivative(params, n, x).value;
}

ValueAndDerivative eval_gegenbauer_with_derivative(GegenbauerParams params, int n, double x) {
  require_degree(n);
  x = clamp_unit(x);
  if (n == 0) return {1.0, 0.0};

  if (params.is_zero()) {
    // (2/n) T_n
    double t0 = 1.0, t1 = x, d0 = 0.0, d1 = 1.0;
    for (int k = 2; k <= n; ++k) {
      const double t2 = 2.0 * x * t1 - t0;
      const double d2 = 2.0 * t1 + 2.0 * x * d1 - d0;
      t0 = t1;
      t1 = t2;
      d0 = d1;
      d1 = d2;
    }
    return {2.0 / n * t1, 2.0 / n * d1};
  }

  const double lam = params.lambda();
  double c0 = 1.0, c1 = 2.0 * lam * x, d0 = 0.0, d1 = 2.0 * lam;
  for (int k = 2; k <= n; ++k) {
    const double a = 2.0 * (k + lam - 1.0);
    const double b = k + 2.0 * lam - 2.0;
    const double c2 = (a * x * c1 - b * c0) / k;
    const double d2 = (a * (c1 + x * d1) - b * d0) / k;
    c0 = c1;
    c1 = c2;
    d0 = d1;
    d1 = d2;
  }
  return {c1, d1};
}

void eval_gegenbauer_all(GegenbauerParams params, double x, std::span<double> out) {
  if (out.empty()) return;
  x = clamp_unit(x);
  out[0] = 1.0;
  if (out.size() == 1) return;
  const std::size_t N = out.size() - 1;
  if (params.is_zero()) {
    double t0 = 1.0, t1 = x;
    out[1] = 2.0 * t1;
    for (std::size_t k = 2; k <= N; ++k) {
      const double t2 = 2.0 * x * t1 - t0;
      t0 = t1;
      t1 = t2;
      out[k] = 2.0 / static_cast<double>(k) * t1;
    }
    return;
  }
  const double lam = params.lambda();
  out[1] = 2.0 * lam * x;
  for (std::size_t k = 2; k <= N; ++k) {
    const double kk = static_cast<double>(k);
    out[k] = (2.0 * (kk + lam - 1.0) * x * out[k - 1] - (kk + 2.0 * lam - 2.0) * out[k - 2]) / kk;
  }
}

double gegenbauer_at_one(GegenbauerParams params, int n) {
  require_degree(n);
  if (n == 0) return 1.0;
  if (params.is_zero()) return 2.0 / n;
  const double two_lam = 2.0 * params.lambda();
  if (n <= 64) {
    // binom(n + 2 lambda - 1, n) as a running product
    double v = 1.0;
    for (int k = 1; k <= n; ++k) v *= (k + two_lam - 1.0) / k;
    return v;
  }
  return std::exp(lgam(n + two_lam) - lgam(two_lam) - lgam(n + 1.0));
}

double eval_normalized(GegenbauerParams params, int n, double x) {
  return eval_gegenbauer(params, n, x) / gegenbauer_at_one(params, n);
}

double norm_h(GegenbauerParams params, int n) {
  require_degree(n);
  if (params.is_zero()) {
    throw UnsupportedIndexError("norm_h is undefined at lambda = 0; use weight_w");
  }
  const double lam = params.lambda();
  const double log_h = std::log(std::numbers::pi) + lgam(n + 2.0 * lam) - (2.0 * lam - 1.0) * std::numbers::ln2 -
                       lgam(n + 1.0) - std::log(n + lam) - 2.0 * lgam(lam);
  return std::exp(log_h);
}

double weight_w(GegenbauerParams params, int n) {
  require_degree(n);
  if (params.is_zero()) return n == 0 ? 1.0 / std::numbers::pi : 2.0 / std::numbers::pi;
  const double lam = params.lambda();
  const double log_w = lgam(lam) + std::log(n + lam) + lgam(n + 2.0 * lam) - 0.5 * std::log(std::numbers::pi) -
                       lgam(lam + 0.5) - lgam(2.0 * lam) - lgam(n + 1.0);
  return std::exp(log_w);
}

double measure_mass(GegenbauerParams params) {
  const double lam = params.lambda();
  return std::exp(0.5 * std::log(std::numbers::pi) + lgam(lam + 0.5) - lgam(lam + 1.0));
}

namespace {

// Squared off-diagonal of the monic recurrence p_{k+1} = x p_k - beta_k p_{k-1}.
double recurrence_beta(double lam, std::size_t k) {
  if (k == 1) return 1.0 / (2.0 * (1.0 + lam));
  const double kk = static_cast<double>(k);
  return kk * (kk + 2.0 * lam - 1.0) / (4.0 * (kk + lam) * (kk + lam - 1.0));
}

}  // namespace

QuadratureRule quadrature_rule(GegenbauerParams params, std::size_t order) {
  if (order < 1) throw ArgumentError("quadrature order must be >= 1");
  if (order > kMaxQuadratureOrder) {
    throw ResourceError("quadrature order " + std::to_string(order) + " exceeds " +
                        std::to_string(kMaxQuadratureOrder));
  }
  const double lam = params.lambda();
  const double mass = measure_mass(params);

  std::vector<double> sqrt_beta(order + 1, 0.0);
  for (std::size_t k = 1; k <= order; ++k) sqrt_beta[k] = std::sqrt(recurrence_beta(lam, k));

  std::vector<double> nodes(order, 0.0);
  if (order > 1) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(order));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(order - 1));
    for (std::size_t k = 1; k < order; ++k) sub[static_cast<Eigen::Index>(k - 1)] = sqrt_beta[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw AccuracyError("Jacobi matrix eigensolve failed", 0.0);
    for (std::size_t i = 0; i < order; ++i) nodes[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
  }

  // Orthonormal recurrence q_0..q_order at x; returns q_order, q_order' and sum q_k^2, k < order.
  struct Sweep {
    double q, dq, sum_sq;
  };
  auto sweep = [&](double x) {
    double q_prev = 0.0, q = 1.0 / std::sqrt(mass), dq_prev = 0.0, dq = 0.0;
    double sum_sq = q * q;
    for (std::size_t k = 0; k < order; ++k) {
      const double q_next = (x * q - sqrt_beta[k] * q_prev) / sqrt_beta[k + 1];
      const double dq_next = (q + x * dq - sqrt_beta[k] * dq_prev) / sqrt_beta[k + 1];
      q_prev = q;
      q = q_next;
      dq_prev = dq;
      dq = dq_next;
      if (k + 1 < order) sum_sq += q * q;
    }
    return Sweep{q, dq, sum_sq};
  };

  QuadratureRule rule;
  rule.params = params;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (std::size_t i = 0; i < order; ++i) {
    double x = nodes[i];
    Sweep s = sweep(x);
    if (s.dq != 0.0) {
      x -= s.q / s.dq;
      s = sweep(x);
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / s.sum_sq;
  }
  // The rule is symmetric; enforce it exactly.
  for (std::size_t i = 0; i < order / 2; ++i) {
    const std::size_t j = order - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

const QuadratureRule& gauss_legendre(std::size_t order) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<QuadratureRule>(quadrature_rule(GegenbauerParams(0.5), order));
  return *slot;
}

SeriesCoeffs to_basis(const SeriesCoeffs& s, CoeffBasis basis) {
  if (s.basis == basis) return s;
  SeriesCoeffs out = s;
  out.basis = basis;
  for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
    const int k = static_cast<int>(n);
    const double factor = weight_w(s.params, k) / gegenbauer_at_one(s.params, k);
    out.coeffs[n] = basis == CoeffBasis::gegenbauer ? s.coeffs[n] * factor : s.coeffs[n] / factor;
  }
  return out;
}

namespace {

// Nodes and weights (for dOmega_lambda) used to integrate against f.
struct Sampling {
  std::vector<double> x;
  std::vector<double> w;
};

Sampling sampling_for(const ZonalKernel& f, GegenbauerParams params, std::size_t order) {
  Sampling s;
  if (f.breakpoints().empty()) {
    QuadratureRule rule = quadrature_rule(params, order);
    s.x = std::move(rule.nodes);
    s.w = std::move(rule.weights);
    return s;
  }
  std::vector<double> cuts{0.0, std::numbers::pi};
  for (double b : f.breakpoints()) cuts.push_back(std::acos(b));
  std::sort(cuts.begin(), cuts.end());
  const QuadratureRule& gl = gauss_legendre(order);
  const double two_lam = 2.0 * params.lambda();
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    if (half <= 0.0) continue;
    const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
    for (std::size_t i = 0; i < gl.order(); ++i) {
      const double theta = mid + half * gl.nodes[i];
      s.x.push_back(std::cos(theta));
      s.w.push_back(half * gl.weights[i] * (two_lam == 0.0 ? 1.0 : std::pow(std::sin(theta), two_lam)));
    }
  }
  return s;
}

}  // namespace

SeriesCoeffs fourier_transform(const ZonalKernel& f, GegenbauerParams params, int N, std::size_t order) {
  require_degree(N);
  const Sampling s = sampling_for(f, params, order);
  std::vector<double> at_one(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) at_one[static_cast<std::size_t>(n)] = gegenbauer_at_one(params, n);

  SeriesCoeffs out;
  out.params = params;
  out.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
  std::vector<double> c(static_cast<std::size_t>(N) + 1);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double fx = f(s.x[i]);
    if (!std::isfinite(fx)) {
      throw EvaluationError("kernel returned a non-finite value at x = " + std::to_string(s.x[i]));
    }
    eval_gegenbauer_all(params, s.x[i], c);
    const double wf = s.w[i] * fx;
    for (std::size_t n = 0; n < c.size(); ++n) out.coeffs[n] += wf * c[n] / at_one[n];
  }
  return out;
}

double fourier_coeff(const ZonalKernel& f, GegenbauerParams params, int n, std::size_t order) {
  return fourier_transform(f, params, n, order).coeffs.back();
}

double series_eval(const SeriesCoeffs& s, double x, Summation mode) {
  x = clamp_unit(x);
  const SeriesCoeffs a = to_basis(s, CoeffBasis::gegenbauer);
  if (a.coeffs.empty()) return 0.0;
  std::vector<double> c(a.coeffs.size());
  eval_gegenbauer_all(a.params, x, c);
  const double n_plus_one = static_cast<double>(a.coeffs.size());
  double sum = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double damping = mode == Summation::cesaro ? 1.0 - static_cast<double>(n) / n_plus_one : 1.0;
    sum += damping * a.coeffs[n] * c[n];
  }
  return sum;
}

ZonalKernel series_kernel(SeriesCoeffs s) {
  nlohmann::json desc = {{"family", "series"},
                         {"lambda", s.params.lambda()},
                         {"basis", s.basis == CoeffBasis::transform ? "transform" : "gegenbauer"},
                         {"coeffs", s.coeffs}};
  // Cache the Gegenbauer-basis coefficients once.
  auto a = std::make_shared<const SeriesCoeffs>(to_basis(s, CoeffBasis::gegenbauer));
  return ZonalKernel([a](double x) { return series_eval(*a, x); }).with_descriptor(std::move(desc));
}

ZonalKernel gegenbauer_kernel(GegenbauerParams params, int n, bool normalized) {
  require_degree(n);
  const double scale = normalized ? 1.0 / gegenbauer_at_one(params, n) : 1.0;
  return ZonalKernel([params, n, scale](double x) { return scale * eval_gegenbauer(params, n, x); })
      .with_descriptor({{"family", "gegenbauer"}, {"lambda", params.lambda()}, {"n", n}, {"normalized", normalized}});
}

}  // namespace zonal
