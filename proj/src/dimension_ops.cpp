#include "zonal/dimension_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "zonal/adaptive.hpp"
#include "zonal/error.hpp"

namespace zonal {

double mu(GegenbauerParams params) { return params.is_zero() ? 1.0 : params.lambda(); }

struct OperatorImage::State {
  ZonalKernel source;
  Operator op;
  Provenance provenance;
  double tol;
};

OperatorImage::OperatorImage(std::shared_ptr<const State> state) : state_(std::move(state)) {}

Operator OperatorImage::op() const { return state_->op; }
Provenance OperatorImage::provenance() const { return state_->provenance; }
const ZonalKernel& OperatorImage::source() const { return state_->source; }

double OperatorImage::operator()(double x) const { return evaluate_flagged(x).value; }

namespace {

double montee_at(const ZonalKernel& f, double x, double tol) {
  x = clamp_unit(x);
  const double lo = std::max(-1.0, f.support_start());
  if (x <= lo) return 0.0;

  std::vector<double> cuts{lo};
  for (double b : f.breakpoints()) {
    if (b > lo && b < x) cuts.push_back(b);
  }
  cuts.push_back(x);

  const double panel_tol = tol / static_cast<double>(cuts.size() - 1);
  double value = 0.0, error = 0.0;
  bool converged = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const AdaptiveResult r = integrate_adaptive([&f](double u) { return f(u); }, cuts[i], cuts[i + 1], panel_tol);
    value += r.value;
    error += r.error;
    converged = converged && r.converged;
  }
  if (!converged) {
    throw AccuracyError("montee did not reach tolerance " + std::to_string(tol) + " at x = " + std::to_string(x),
                        error);
  }
  return value;
}

// Ridders' extrapolation of difference quotients. `central` selects the
// symmetric quotient (error series in h^2); otherwise the one-sided quotient
// towards `direction` (error series in h).
double ridders(const ZonalKernel& f, double x, double h0, bool central, double direction, double tol) {
  constexpr int kMax = 12;
  constexpr double kShrink = 1.6;
  const double ratio = central ? kShrink * kShrink : kShrink;
  double table[kMax][kMax];
  const double fx = central ? 0.0 : f(x);
  auto quotient = [&](double h) {
    if (central) return (f(x + h) - f(x - h)) / (2.0 * h);
    return (f(x + direction * h) - fx) / (direction * h);
  };

  double h = h0;
  table[0][0] = quotient(h);
  double best = table[0][0];
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kMax; ++i) {
    h /= kShrink;
    table[0][i] = quotient(h);
    double fac = ratio;
    for (int j = 1; j <= i; ++j) {
      table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
      fac *= ratio;
      const double e = std::max(std::abs(table[j][i] - table[j - 1][i]), std::abs(table[j][i] - table[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        best = table[j][i];
      }
    }
    if (std::abs(table[i][i] - table[i - 1][i - 1]) >= 2.0 * err) break;
    if (err < tol) break;
  }
  return best;
}

FlaggedValue descente_at(const ZonalKernel& f, double x, double tol) {
  x = clamp_unit(x);
  constexpr double kAtBreak = 1e-12;
  constexpr double kStep = 0.05;
  constexpr double kMinRoom = 1e-3;

  // Smooth stretch around x: nearest non-analytic points on either side.
  double left = -1.0, right = 1.0;
  bool at_break = false;
  for (double b : f.breakpoints()) {
    if (std::abs(b - x) <= kAtBreak) {
      at_break = true;
    } else if (b < x) {
      left = std::max(left, b);
    } else {
      right = std::min(right, b);
    }
  }
  const double room_left = x - left;
  const double room_right = right - x;

  if (at_break || room_left <= kAtBreak || room_right <= kAtBreak) {
    // one-sided from the right, from the left at the pole x = 1
    const bool go_right = x < 1.0 - kAtBreak;
    const double dir = go_right ? 1.0 : -1.0;
    const double room = go_right ? room_right : room_left;
    return {ridders(f, x, std::min(kStep, 0.5 * room), false, dir, tol), true};
  }
  const double room = std::min(room_left, room_right);
  if (room >= kMinRoom) return {ridders(f, x, std::min(kStep, 0.5 * room), true, 0.0, tol), false};
  // Close to a breakpoint: difference on the wider side only.
  const double dir = room_right > room_left ? 1.0 : -1.0;
  return {ridders(f, x, std::min(kStep, 0.5 * std::max(room_left, room_right)), false, dir, tol), false};
}

}  // namespace

FlaggedValue OperatorImage::evaluate_flagged(double x) const {
  const State& s = *state_;
  if (s.op == Operator::montee) return {montee_at(s.source, x, s.tol), false};
  if (s.provenance == Provenance::analytic) return {(*s.source.derivative())(x), false};
  return descente_at(s.source, x, s.tol);
}

ZonalKernel OperatorImage::as_kernel() const {
  const State& s = *state_;
  OperatorImage self = *this;
  ZonalKernel k([self](double x) { return self(x); }, s.source.breakpoints());
  if (s.op == Operator::montee) {
    k = k.with_derivative(s.source);
    if (s.source.support_start() > -1.0) k = k.with_support_start(s.source.support_start());
  } else if (s.provenance == Provenance::analytic) {
    return *s.source.derivative();
  } else if (s.source.support_start() > -1.0) {
    k = k.with_support_start(s.source.support_start());
  }
  return k;
}

OperatorImage montee_numeric(const ZonalKernel& f, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("montee tolerance must be positive");
  return OperatorImage(std::make_shared<const OperatorImage::State>(
      OperatorImage::State{f, Operator::montee, Provenance::numeric, tol}));
}

OperatorImage descente_numeric(const ZonalKernel& f, double tol, bool use_analytic) {
  if (!(tol > 0.0)) throw ArgumentError("descente tolerance must be positive");
  const Provenance p = use_analytic && f.derivative() ? Provenance::analytic : Provenance::numeric;
  return OperatorImage(
      std::make_shared<const OperatorImage::State>(OperatorImage::State{f, Operator::descente, p, tol}));
}

ZonalKernel montee(const ZonalKernel& f, double tol) {
  if (auto m = f.analytic_montee()) return *m;
  return montee_numeric(f, tol).as_kernel();
}

namespace {

constexpr int kCheckGrid = 501;

double grid_point(int i) { return -1.0 + 2.0 * i / (kCheckGrid - 1); }

void require_positive_degree(int n) {
  if (n < 1) throw ArgumentError("identity checks need n >= 1");
}

}  // namespace

double check_D_on_gegenbauer(GegenbauerParams params, int n) {
  require_positive_degree(n);
  const double two_mu = 2.0 * mu(params);
  double worst = 0.0;
  for (int i = 0; i < kCheckGrid; ++i) {
    const double x = grid_point(i);
    const double lhs = eval_gegenbauer_with_derivative(params, n, x).derivative;
    const double rhs = two_mu * eval_gegenbauer(params.raised(), n - 1, x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double check_I_on_gegenbauer(GegenbauerParams params, int n) {
  require_positive_degree(n);
  const double two_mu = 2.0 * mu(params);
  const OperatorImage image = montee_numeric(gegenbauer_kernel(params.raised(), n - 1), 1e-13);
  const double at_minus_one = eval_gegenbauer(params, n, -1.0);
  double worst = 0.0;
  for (int i = 0; i < kCheckGrid; ++i) {
    const double x = grid_point(i);
    const double rhs = (eval_gegenbauer(params, n, x) - at_minus_one) / two_mu;
    worst = std::max(worst, std::abs(image(x) - rhs));
  }
  return worst;
}

SeriesCoeffs coeff_map_derivative(const SeriesCoeffs& a) {
  if (a.coeffs.empty()) throw ArgumentError("coefficient vector is empty");
  const SeriesCoeffs g = to_basis(a, CoeffBasis::gegenbauer);
  SeriesCoeffs b;
  b.params = a.params.raised();
  b.basis = CoeffBasis::gegenbauer;
  if (g.coeffs.size() == 1) {
    b.coeffs = {0.0};
  } else {
    const double two_mu = 2.0 * mu(a.params);
    b.coeffs.resize(g.coeffs.size() - 1);
    for (std::size_t n = 1; n < g.coeffs.size(); ++n) b.coeffs[n - 1] = two_mu * g.coeffs[n];
  }
  return to_basis(b, a.basis);
}

double montee_shift_constant(const ZonalKernel& f, GegenbauerParams image_params, std::size_t order) {
  const ZonalKernel image = montee(f);
  // a_0 = w(0) fhat(0) / C_0(1) with C_0 = 1
  const double a0 = weight_w(image_params, 0) * fourier_coeff(image, image_params, 0, order);
  return std::max(0.0, -a0);
}

}  // namespace zonal
