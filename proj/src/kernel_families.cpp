#include "zonal/kernel_families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "zonal/dimension_ops.hpp"
#include "zonal/error.hpp"

namespace zonal {

namespace {

void require_support_angle(double t) {
  if (!(t > 0.0 && t < std::numbers::pi)) {
    throw ArgumentError("support angle t must lie in (0, pi), got " + std::to_string(t));
  }
}

}  // namespace

TruncatedPower::TruncatedPower(int m_, double t_) : m(m_), t(t_) {
  if (m < 1) throw ArgumentError("truncated power exponent must be >= 1");
  require_support_angle(t);
}

double eval_truncated_power(const TruncatedPower& k, double x) {
  const double u = k.t - std::acos(clamp_unit(x));
  return u > 0.0 ? std::pow(u, k.m) : 0.0;
}

MonteeForm parse_montee_form(std::string_view tag) {
  if (tag == "If2") return MonteeForm::If2;
  if (tag == "If3") return MonteeForm::If3;
  if (tag == "I2f3") return MonteeForm::I2f3;
  if (tag == "If4") return MonteeForm::If4;
  if (tag == "I2f4") return MonteeForm::I2f4;
  throw ArgumentError("unknown montee closed form '" + std::string(tag) + "'");
}

std::string_view to_string(MonteeForm form) {
  switch (form) {
    case MonteeForm::If2: return "If2";
    case MonteeForm::If3: return "If3";
    case MonteeForm::I2f3: return "I2f3";
    case MonteeForm::If4: return "If4";
    case MonteeForm::I2f4: return "I2f4";
  }
  return "?";
}

double eval_montee_closed_form(MonteeForm form, double t, double x) {
  require_support_angle(t);
  const double theta = std::acos(clamp_unit(x));
  if (theta >= t) return 0.0;
  const double u = t - theta;
  const double u2 = u * u;
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);

  switch (form) {
    case MonteeForm::If2:
      return c1 * (u2 - 2.0) + 2.0 * s1 * u + 2.0 * std::cos(t);
    case MonteeForm::If3:
      return c1 * (u2 * u - 6.0 * u) + s1 * (3.0 * u2 - 6.0) + 6.0 * std::sin(t);
    case MonteeForm::I2f3: {
      constexpr double a7 = 1.0 / 4.0, a6 = -21.0 / 8.0, a5 = 9.0 / 8.0, a4 = -45.0 / 16.0;
      constexpr double a2 = 1.0 / 2.0, a1 = -3.0;
      const double a3 = 6.0 * std::sin(t);
      const double a0 = -3.0 / 16.0 * std::sin(2.0 * t);
      return c2 * (a7 * u2 * u + a6 * u) + s2 * (a5 * u2 + a4) + c1 * a3 + a2 * u2 * u + a1 * u + a0;
    }
    case MonteeForm::If4:
      return c1 * (u2 * u2 - 12.0 * u2 + 24.0) + s1 * (4.0 * u2 * u - 24.0 * u) - 24.0 * std::cos(t);
    case MonteeForm::I2f4: {
      constexpr double b8 = 1.0 / 4.0, b7 = -21.0 / 4.0, b6 = 93.0 / 8.0, b5 = 3.0 / 2.0, b4 = -45.0 / 4.0;
      constexpr double b2 = 1.0 / 2.0, b1 = -6.0;
      const double ct = std::cos(t);
      const double b3 = -24.0 * ct;
      const double b0 = 3.0 / 4.0 * ct * ct + 93.0 / 8.0;
      return c2 * (b8 * u2 * u2 + b7 * u2 + b6) + s2 * (b5 * u2 * u + b4 * u) + c1 * b3 +
             (b2 * u2 * u2 + b1 * u2 + b0);
    }
  }
  throw ArgumentError("unknown montee closed form");
}

double eval_montee_recurrence(int m, double t, int k, double x) {
  if (m <= 0) throw ArgumentError("recurrence needs m >= 1");
  if (k != 1) throw ArgumentError("the recurrence covers a single montee (k = 1)");
  require_support_angle(t);
  const double theta = std::acos(clamp_unit(x));
  if (theta >= t) return 0.0;
  const double u = t - theta;
  const double c = std::cos(theta), s = std::sin(theta);

  // I f_1 or I f_2, then climb two at a time.
  int j = (m % 2 == 1) ? 1 : 2;
  double value = j == 1 ? c * u + s - std::sin(t) : c * u * u + 2.0 * s * u - 2.0 * (c - std::cos(t));
  while (j < m) {
    j += 2;
    value = c * std::pow(u, j) + j * s * std::pow(u, j - 1) - static_cast<double>(j) * (j - 1) * value;
  }
  return value;
}

MonteeIterate::MonteeIterate(TruncatedPower base_, int k_) : base(base_), k(k_) {
  if (k < 1) throw ArgumentError("montee iterate needs k >= 1");
}

namespace {

std::optional<MonteeForm> closed_form_for(int m, int k) {
  if (m == 2 && k == 1) return MonteeForm::If2;
  if (m == 3 && k == 1) return MonteeForm::If3;
  if (m == 3 && k == 2) return MonteeForm::I2f3;
  if (m == 4 && k == 1) return MonteeForm::If4;
  if (m == 4 && k == 2) return MonteeForm::I2f4;
  return std::nullopt;
}

ZonalKernel with_support(ZonalKernel kernel, double t) {
  return kernel.with_breakpoints({std::cos(t), 1.0}).with_support_start(std::cos(t));
}

}  // namespace

ZonalKernel truncated_power_kernel(const TruncatedPower& k) {
  ZonalKernel kernel([k](double x) { return eval_truncated_power(k, x); });
  return with_support(std::move(kernel), k.t)
      .with_montee([k] { return montee_iterate_kernel(MonteeIterate(k, 1)); })
      .with_descriptor({{"family", "truncated_power"}, {"m", k.m}, {"t", k.t}});
}

ZonalKernel montee_iterate_kernel(const MonteeIterate& it) {
  const TruncatedPower base = it.base;
  const int k = it.k;
  const ZonalKernel parent =
      k == 1 ? truncated_power_kernel(base) : montee_iterate_kernel(MonteeIterate(base, k - 1));

  ZonalKernel kernel;
  if (auto form = closed_form_for(base.m, k)) {
    const MonteeForm f = *form;
    const double t = base.t;
    kernel = with_support(ZonalKernel([f, t](double x) { return eval_montee_closed_form(f, t, x); }), t);
  } else if (k == 1) {
    const int m = base.m;
    const double t = base.t;
    kernel = with_support(ZonalKernel([m, t](double x) { return eval_montee_recurrence(m, t, 1, x); }), t);
  } else {
    kernel = montee_numeric(parent).as_kernel();
  }
  return kernel.with_derivative(parent)
      .with_montee([base, k] { return montee_iterate_kernel(MonteeIterate(base, k + 1)); })
      .with_descriptor({{"family", "montee"}, {"m", base.m}, {"k", k}, {"t", base.t}});
}

CapKernelCoefficients cap_kernel_coefficients(int dim, double s) {
  if (!(s > 0.0 && s < 0.5 * std::numbers::pi)) {
    throw ArgumentError("cap angle s must lie in (0, pi/2), got " + std::to_string(s));
  }
  const double c = std::cos(s), sn = std::sin(s);
  const double c2 = c * c, c4 = c2 * c2, c6 = c4 * c2, c8 = c4 * c4;

  CapKernelCoefficients k{};
  k.dim = dim;
  k.s = s;
  switch (dim) {
    case 3:
      k.a = 0.5 * s - 0.25 * std::sin(2.0 * s);
      k.ab = -1.0 / 4.0;
      k.ad = 0.25 * (1.0 + std::cos(2.0 * s));
      break;
    case 5:
      k.a = 0.25 * sn * c2 * c - 5.0 / 8.0 * sn * c + 3.0 / 8.0 * s;
      k.ab = -3.0 / 16.0;
      k.ad = 0.75 * c2 - 0.25 * c4;
      k.ae = -0.25 * c4;
      break;
    case 7:
      k.a = 5.0 / 16.0 * s - 11.0 / 16.0 * sn * c + 13.0 / 24.0 * sn * c2 * c - 1.0 / 6.0 * sn * c4 * c;
      k.ab = -5.0 / 32.0;
      k.ad = 15.0 / 16.0 * c2 - 5.0 / 8.0 * c4 + 1.0 / 6.0 * c6;
      k.ae = -5.0 / 8.0 * c4 + 1.0 / 6.0 * c6;
      k.af = 0.25 * c6;
      break;
    case 9:
      k.a = 35.0 / 128.0 * s - 93.0 / 128.0 * sn * c + 163.0 / 192.0 * sn * c2 * c - 25.0 / 48.0 * sn * c4 * c +
            1.0 / 8.0 * sn * c6 * c;
      k.ab = -35.0 / 256.0;
      k.ad = (105.0 * c2 - 105.0 * c4 + 56.0 * c6 - 12.0 * c8) / 96.0;
      k.ae = (-105.0 * c4 + 56.0 * c6 - 12.0 * c8) / 96.0;
      k.af = (84.0 * c6 - 18.0 * c8) / 96.0;
      k.ah = -30.0 * c8 / 96.0;
      break;
    default:
      throw ArgumentError("cap kernels exist for d in {3,5,7,9}, got " + std::to_string(dim));
  }
  if (!(k.a > 0.0)) throw ArgumentError("degenerate cap: a = (g * g)(1) is not positive");
  k.b = k.ab / k.a;
  k.d = k.ad / k.a;
  k.e = k.ae / k.a;
  k.f = k.af / k.a;
  k.h = k.ah / k.a;
  return k;
}

double eval_cap_kernel(const CapKernelCoefficients& k, double x) {
  x = clamp_unit(x);
  if (x <= std::cos(2.0 * k.s)) return 0.0;
  return eval_cap_kernel_formula(k, x);
}

double eval_cap_kernel_formula(const CapKernelCoefficients& k, double x) {
  x = clamp_unit(x);
  if (x <= -1.0) throw ArgumentError("the cap kernel formula is singular at x = -1");
  const double theta = std::acos(x);
  // sqrt((1-x)/(1+x)) = tan(theta/2); the tangent form avoids cancellation near x = 1
  const double r = x > 0.9 ? std::tan(0.5 * theta) : std::sqrt((1.0 - x) / (1.0 + x));
  const double inv_v = 1.0 / (1.0 + x);
  const double tail = k.d + inv_v * (k.e + inv_v * (k.f + inv_v * k.h));
  return 1.0 + k.b * theta + r * tail;
}

double eval_cap_kernel(int dim, double s, double x) { return eval_cap_kernel(cap_kernel_coefficients(dim, s), x); }

ZonalKernel cap_kernel(int dim, double s) {
  const CapKernelCoefficients k = cap_kernel_coefficients(dim, s);
  const double edge = std::cos(2.0 * s);
  return ZonalKernel([k](double x) { return eval_cap_kernel(k, x); }, {edge, 1.0})
      .with_support_start(edge)
      .with_descriptor({{"family", "cap_conv"}, {"d", dim}, {"s", s}});
}

ZonalKernel cap_self_convolution(int dim, double s) {
  const double a = cap_kernel_coefficients(dim, s).a;
  return cap_kernel(dim, s).scaled(a);
}

}  // namespace zonal
