#ifndef ZONAL_KERNEL_FAMILIES_HPP
#define ZONAL_KERNEL_FAMILIES_HPP

#include <string_view>

#include "zonal/kernel.hpp"

namespace zonal {

// f_m(cos theta) = (t - theta)^m_+, 0 < t < pi.
struct TruncatedPower {
  int m;
  double t;

  TruncatedPower(int m, double t);
};

double eval_truncated_power(const TruncatedPower& k, double x);

// f_m with its montee I f_m attached (recurrence; the closed forms for m = 2, 3, 4).
ZonalKernel truncated_power_kernel(const TruncatedPower& k);

// The printed closed forms of single and double montee images.
enum class MonteeForm { If2, If3, I2f3, If4, I2f4 };

MonteeForm parse_montee_form(std::string_view tag);
std::string_view to_string(MonteeForm form);

double eval_montee_closed_form(MonteeForm form, double t, double x);

// I f_m via the two-step recurrence
//   I f_m = cos(theta) u^m + m sin(theta) u^(m-1) - m(m-1) I f_{m-2},  u = (t - theta)_+,
// started from I f_1 and I f_2. Only k = 1 is accepted.
double eval_montee_recurrence(int m, double t, int k, double x);

// I^k f_m. Closed forms where printed, the recurrence for k = 1, and numeric
// montee on top of the deepest closed form otherwise (e.g. I^3 f_4).
struct MonteeIterate {
  TruncatedPower base;
  int k;

  MonteeIterate(TruncatedPower base, int k);
};

ZonalKernel montee_iterate_kernel(const MonteeIterate& it);

// Coefficients of the normalised cap self-convolution N_d, d in {3,5,7,9}:
//   N_d(x) = 1 + b arccos x + sqrt((1-x)/(1+x)) (d + e/v + f/v^2 + h/v^3),  v = 1 + x,
// on cos(2s) < x <= 1 and zero below. The products (ab, ad, ...) are stored as
// printed; the ratios are those products divided by a = (g *_lambda g)(1).
struct CapKernelCoefficients {
  int dim;
  double s;
  double a;
  double ab, ad, ae, af, ah;
  double b, d, e, f, h;
};

CapKernelCoefficients cap_kernel_coefficients(int dim, double s);

double eval_cap_kernel(const CapKernelCoefficients& coeffs, double x);
double eval_cap_kernel(int dim, double s, double x);

// The closed-form expression without the support cut, for x in (-1, 1].
// It vanishes at x = cos(2s), where it meets the zero branch. For narrow caps
// in high dimension (d = 9, s < 0.3) the ratios grow like 1/a and the sum
// cancels, costing up to ~1e-7 absolute.
double eval_cap_kernel_formula(const CapKernelCoefficients& coeffs, double x);

// N_d as a kernel (descriptor family "cap_conv").
ZonalKernel cap_kernel(int dim, double s);

// chi_[cos s,1] *_lambda chi_[cos s,1] = a N_d with lambda = (d-1)/2.
ZonalKernel cap_self_convolution(int dim, double s);

}  // namespace zonal

#endif  // ZONAL_KERNEL_FAMILIES_HPP
