#include "zonal/convolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "zonal/adaptive.hpp"
#include "zonal/error.hpp"

namespace zonal {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKinkTol = 1e-12;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Reduce an angle to [-pi, pi].
double wrap(double t) {
  t = std::remainder(t, 2.0 * kPi);
  return std::clamp(t, -kPi, kPi);
}

std::vector<double> breakpoint_angles(const std::vector<double>& breakpoints) {
  std::vector<double> out;
  out.reserve(breakpoints.size());
  for (double b : breakpoints) out.push_back(std::acos(std::clamp(b, -1.0, 1.0)));
  return out;
}

void sort_unique(std::vector<double>& v, double tol) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [tol](double a, double b) { return std::abs(a - b) <= tol; }), v.end());
}

// Panel cuts in t for integrands of the form F(cos(theta - t)) G(cos t).
std::vector<double> conv_cuts(const std::vector<double>& beta_f, const std::vector<double>& beta_g, double theta) {
  std::vector<double> cuts{-kPi, 0.0, kPi, wrap(theta), wrap(theta - kPi), wrap(theta + kPi)};
  for (double b : beta_g) {
    cuts.push_back(b);
    cuts.push_back(-b);
  }
  for (double b : beta_f) {
    cuts.push_back(wrap(theta - b));
    cuts.push_back(wrap(theta + b));
  }
  sort_unique(cuts, 0.0);
  return cuts;
}

// 1/2 int_{-pi}^{pi} a(theta - t) b(t) dt over the given cuts; panels whose
// midpoint lies outside either support are skipped.
template <class A, class B>
double conv_integral(A&& a, B&& b, double theta, const std::vector<double>& cuts, double support_a,
                     double support_b, std::size_t order) {
  const QuadratureRule& gl = gauss_legendre(order);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    if (half <= 0.0) continue;
    const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
    if (std::cos(mid) < support_b || std::cos(theta - mid) < support_a) continue;
    double panel = 0.0;
    for (std::size_t i = 0; i < gl.order(); ++i) {
      const double t = mid + half * gl.nodes[i];
      panel += gl.weights[i] * a(theta - t) * b(t);
    }
    total += half * panel;
  }
  return 0.5 * total;
}

std::vector<double> result_kinks(const std::vector<double>& beta_f, const std::vector<double>& beta_g) {
  std::vector<double> kinks;
  for (double bf : beta_f) {
    for (double bg : beta_g) {
      for (double angle : {bf + bg, bf - bg}) {
        const double x = std::cos(angle);
        if (std::abs(x) < 1.0 - kKinkTol) kinks.push_back(x);
      }
    }
  }
  sort_unique(kinks, kKinkTol);
  return kinks;
}

}  // namespace

// ---------------------------------------------------------------------------
// caps

CapFunction::CapFunction(double c_) : c(c_) {
  if (!(c > -1.0 && c < 1.0)) throw ArgumentError("cap parameter c must lie in (-1, 1), got " + std::to_string(c));
}

double CapFunction::operator()(double x) const { return clamp_unit(x) >= c ? 1.0 : 0.0; }

ZonalKernel cap_power(const CapFunction& cap, int k) {
  if (k < 0) throw ArgumentError("cap montee order must be >= 0");
  const double c = cap.c;
  ZonalKernel kernel;
  if (k == 0) {
    kernel = ZonalKernel([cap](double x) { return cap(x); }, {c});
  } else {
    const double inv_fact = 1.0 / factorial(k);
    kernel = ZonalKernel(
                 [c, k, inv_fact](double x) {
                   const double u = clamp_unit(x) - c;
                   return u > 0.0 ? std::pow(u, k) * inv_fact : 0.0;
                 },
                 {c})
                 .with_derivative(cap_power(cap, k - 1));
  }
  nlohmann::json desc{{"family", "cap_indicator"}, {"c", c}};
  if (k > 0) desc["k"] = k;
  return kernel.with_support_start(c)
      .with_montee([cap, k] { return cap_power(cap, k + 1); })
      .with_descriptor(std::move(desc));
}

ZonalKernel cap_indicator(const CapFunction& cap) { return cap_power(cap, 0); }

// ---------------------------------------------------------------------------
// *_0

double conv0(const ZonalKernel& F, const ZonalKernel& G, double theta, std::size_t order) {
  if (order < 1) throw ArgumentError("quadrature order must be >= 1");
  const std::vector<double> bf = breakpoint_angles(F.breakpoints());
  const std::vector<double> bg = breakpoint_angles(G.breakpoints());
  auto a = [&F](double u) { return F(std::cos(u)); };
  auto b = [&G](double u) { return G(std::cos(u)); };
  return conv_integral(a, b, theta, conv_cuts(bf, bg, theta), F.support_start(), G.support_start(), order);
}

ZonalKernel conv0_kernel(const ZonalKernel& F, const ZonalKernel& G, std::size_t order) {
  std::vector<double> kinks = result_kinks(breakpoint_angles(F.breakpoints()), breakpoint_angles(G.breakpoints()));
  return ZonalKernel([F, G, order](double x) { return conv0(F, G, std::acos(clamp_unit(x)), order); },
                     std::move(kinks));
}

// ---------------------------------------------------------------------------
// *_lambda in coefficient space

SeriesCoeffs conv_lambda_coeffs(const SeriesCoeffs& fhat, const SeriesCoeffs& ghat) {
  if (!(fhat.params == ghat.params)) throw ArgumentError("convolution factors have different lambda");
  if (fhat.coeffs.size() != ghat.coeffs.size()) throw ArgumentError("convolution factors have different truncation");
  const SeriesCoeffs a = to_basis(fhat, CoeffBasis::transform);
  const SeriesCoeffs b = to_basis(ghat, CoeffBasis::transform);
  SeriesCoeffs out = a;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] = a.coeffs[n] * b.coeffs[n];
  return to_basis(out, fhat.basis);
}

// ---------------------------------------------------------------------------
// dimension hop

namespace {

// d^j/du^j F(cos u) = sum coef cos^a(u) sin^b(u) F^(i)(cos u).
struct ChainTerm {
  int i, a, b;
  double coef;
};

std::vector<std::vector<ChainTerm>> chain_table(int jmax) {
  std::vector<std::vector<ChainTerm>> table(static_cast<std::size_t>(jmax) + 1);
  table[0] = {{0, 0, 0, 1.0}};
  for (int j = 0; j < jmax; ++j) {
    std::map<std::tuple<int, int, int>, double> next;
    for (const ChainTerm& t : table[static_cast<std::size_t>(j)]) {
      next[{t.i + 1, t.a, t.b + 1}] -= t.coef;
      if (t.a > 0) next[{t.i, t.a - 1, t.b + 1}] -= t.a * t.coef;
      if (t.b > 0) next[{t.i, t.a + 1, t.b - 1}] += t.b * t.coef;
    }
    for (const auto& [key, coef] : next) {
      if (coef != 0.0) table[static_cast<std::size_t>(j) + 1].push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), coef});
    }
  }
  return table;
}

// (d/dx)^K in terms of theta-derivatives of h(theta) = P(cos theta):
// sum coef cos^a(theta) sin^e(theta) h^(i)(theta), e possibly negative.
std::vector<ChainTerm> inverse_chain(int K) {
  std::map<std::tuple<int, int, int>, double> terms{{{0, 0, 0}, 1.0}};
  for (int k = 0; k < K; ++k) {
    std::map<std::tuple<int, int, int>, double> next;
    for (const auto& [key, c] : terms) {
      const auto [i, a, e] = key;
      // -(1/sin) d/dtheta
      if (a > 0) next[{i, a - 1, e}] += a * c;
      if (e != 0) next[{i, a + 1, e - 2}] -= e * c;
      next[{i + 1, a, e - 1}] -= c;
    }
    terms = std::move(next);
  }
  std::vector<ChainTerm> out;
  for (const auto& [key, c] : terms) {
    if (c != 0.0) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  }
  return out;
}

// Montee ladder I^K f, I^{K-1} f, ..., f; level(i) is the i-th x-derivative of I^K f.
struct Ladder {
  std::vector<ZonalKernel> levels;  // levels[m] = I^m f
  std::vector<double> angles;
  double support = -1.0;

  Ladder(const ZonalKernel& f, int K) {
    levels.push_back(f);
    for (int m = 1; m <= K; ++m) levels.push_back(montee(levels.back()));
    std::vector<double> bps;
    support = f.support_start();
    for (const ZonalKernel& k : levels) {
      bps.insert(bps.end(), k.breakpoints().begin(), k.breakpoints().end());
      support = std::min(support, k.support_start());
    }
    sort_unique(bps, 0.0);
    angles = breakpoint_angles(bps);
  }

  int top() const { return static_cast<int>(levels.size()) - 1; }
  const ZonalKernel& derivative(int i) const { return levels[static_cast<std::size_t>(top() - i)]; }
};

}  // namespace

struct HopConvolution::Impl {
  int K;
  GegenbauerParams target{1.0};
  std::size_t order;
  Ladder lf, lg;
  std::vector<std::vector<ChainTerm>> chain;
  std::vector<ChainTerm> inverse;
  std::vector<double> kinks;
  double scale;  // (2K-1)!!

  Impl(const ZonalKernel& f, const ZonalKernel& g, int K_, std::size_t order_)
      : K(K_), target(static_cast<double>(K_)), order(order_), lf(f, K_), lg(g, K_) {
    chain = chain_table(K);
    inverse = inverse_chain(K);
    kinks = result_kinks(lf.angles, lg.angles);
    scale = 1.0;
    for (int j = 1; j <= K; ++j) scale *= 2.0 * j - 1.0;
  }

  // d^j/du^j of I^K f (cos u).
  double phi(const Ladder& l, int j, double u) const {
    const double x = std::cos(u), s = std::sin(u);
    std::array<double, 32> vals{};
    for (int i = 0; i <= j; ++i) vals[static_cast<std::size_t>(i)] = l.derivative(i)(x);
    double sum = 0.0;
    for (const ChainTerm& t : chain[static_cast<std::size_t>(j)]) {
      sum += t.coef * std::pow(x, t.a) * std::pow(s, t.b) * vals[static_cast<std::size_t>(t.i)];
    }
    return sum;
  }

  // 1/2 int phi_F^(jf)(theta - t) phi_G^(jg)(t) dt = h^(jf + jg)(theta).
  double h_derivative(int jf, int jg, double theta) const {
    auto a = [&](double u) { return phi(lf, jf, u); };
    auto b = [&](double u) { return phi(lg, jg, u); };
    return conv_integral(a, b, theta, conv_cuts(lf.angles, lg.angles, theta), lf.support, lg.support, order);
  }

  // D^K P at x = e, e = +-1, from the even Taylor expansion of h about theta_e.
  double at_pole(bool plus) const {
    const double theta_e = plus ? 0.0 : kPi;
    // h(theta_e + tau) = sum alpha_j z^j, z = tau^2
    std::vector<double> alpha(static_cast<std::size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) alpha[static_cast<std::size_t>(j)] = h_derivative(j, j, theta_e) / factorial(2 * j);
    // y(z) = cos(tau) - 1 as a series in z; powers y^i truncated at z^K.
    std::vector<double> y(static_cast<std::size_t>(K) + 1, 0.0);
    for (int m = 1; m <= K; ++m) y[static_cast<std::size_t>(m)] = (m % 2 ? -1.0 : 1.0) / factorial(2 * m);
    std::vector<std::vector<double>> ypow(static_cast<std::size_t>(K) + 1, std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0));
    ypow[0][0] = 1.0;
    for (int i = 1; i <= K; ++i) {
      for (int p = 0; p <= K; ++p) {
        for (int q = 1; p + q <= K; ++q) {
          ypow[static_cast<std::size_t>(i)][static_cast<std::size_t>(p + q)] +=
              ypow[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(p)] * y[static_cast<std::size_t>(q)];
        }
      }
    }
    // sum q_i y^i = sum alpha_j z^j, triangular in z.
    std::vector<double> q(static_cast<std::size_t>(K) + 1, 0.0);
    for (int j = 0; j <= K; ++j) {
      double rhs = alpha[static_cast<std::size_t>(j)];
      for (int i = 0; i < j; ++i) rhs -= q[static_cast<std::size_t>(i)] * ypow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      q[static_cast<std::size_t>(j)] = rhs / ypow[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
    }
    // x - e = +-y
    const double p_K = q[static_cast<std::size_t>(K)] * ((!plus && K % 2) ? -1.0 : 1.0);
    return factorial(K) * p_K;
  }

  double interior(double x) const {
    const double theta = std::acos(x);
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<double> h(static_cast<std::size_t>(K) + 1, 0.0);
    std::vector<bool> have(static_cast<std::size_t>(K) + 1, false);
    double sum = 0.0;
    for (const ChainTerm& t : inverse) {
      const auto i = static_cast<std::size_t>(t.i);
      if (!have[i]) {
        const int jg = t.i / 2;
        h[i] = h_derivative(t.i - jg, jg, theta);
        have[i] = true;
      }
      sum += t.coef * std::pow(c, t.a) * std::pow(s, t.b) * h[i];
    }
    return sum;
  }

  double derivative_K(double x) const {
    if (x >= 1.0) return at_pole(true);
    if (x <= -1.0) return at_pole(false);
    return interior(x);
  }

  FlaggedValue evaluate(double x) const {
    x = clamp_unit(x);
    const auto near = std::find_if(kinks.begin(), kinks.end(), [x](double k) { return std::abs(k - x) <= kKinkTol; });
    if (near == kinks.end()) return {scale * derivative_K(x), false};
    // Limit from the right, linear extrapolation from two nearby points.
    double gap = 1.0 - x;
    for (double k : kinks) {
      if (k > x + kKinkTol) gap = std::min(gap, k - x);
    }
    const double step = std::min(1e-6, 0.25 * gap);
    const double v1 = derivative_K(x + step), v2 = derivative_K(x + 2.0 * step);
    return {scale * (2.0 * v1 - v2), true};
  }
};

HopConvolution::HopConvolution(const ZonalKernel& f, const ZonalKernel& g, GegenbauerParams params,
                               std::size_t order) {
  const double lam = params.lambda();
  if (lam != std::floor(lam)) {
    throw UnsupportedIndexError("the dimension hop reaches *_0 only from integer lambda, got " +
                                std::to_string(lam));
  }
  if (lam > 20.0) throw ArgumentError("dimension hop depth above 21 is not supported");
  if (order < 1) throw ArgumentError("quadrature order must be >= 1");
  impl_ = std::make_shared<const Impl>(f, g, static_cast<int>(lam) + 1, order);
}

FlaggedValue HopConvolution::operator()(double x) const { return impl_->evaluate(x); }
GegenbauerParams HopConvolution::target() const { return impl_->target; }
const std::vector<double>& HopConvolution::kinks() const { return impl_->kinks; }

FlaggedValue dimension_hop_conv(const ZonalKernel& f, const ZonalKernel& g, GegenbauerParams params, double x,
                                std::size_t order) {
  return HopConvolution(f, g, params, order)(x);
}

ZonalKernel star_kernel(const ZonalKernel& f, const ZonalKernel& g, GegenbauerParams params, std::size_t order) {
  const HopConvolution hop(f, g, params, order);
  std::vector<double> bps = hop.kinks();
  bps.push_back(-1.0);
  bps.push_back(1.0);
  return ZonalKernel([hop](double x) { return hop(x).value; }, std::move(bps));
}

double hop_coefficient_factor(GegenbauerParams params, int n) {
  if (n < 0) throw ArgumentError("degree must be >= 0");
  const GegenbauerParams up = params.raised();
  return gegenbauer_at_one(params, n + 1) * weight_w(up, n) /
         (2.0 * mu(params) * gegenbauer_at_one(up, n) * weight_w(params, n + 1));
}

// ---------------------------------------------------------------------------
// caps in coefficient space

CapTransform cap_transform(GegenbauerParams params, double c, int n) {
  if (params.is_zero()) throw UnsupportedIndexError("cap_transform needs lambda > 0");
  if (!(c > -1.0 && c < 1.0)) throw ArgumentError("cap parameter c must lie in (-1, 1)");
  if (n < 0) throw ArgumentError("degree must be >= 0");
  const double lam = params.lambda();
  if (n == 0) {
    // int_0^s sin^(2 lambda) theta dtheta
    const double s = std::acos(c);
    const AdaptiveResult r = integrate_adaptive([lam](double t) { return std::pow(std::sin(t), 2.0 * lam); }, 0.0,
                                                s, 1e-15);
    return {r.value, true};
  }
  const double factor = 2.0 * lam / (n * (2.0 * lam + n));
  return {factor * std::pow(1.0 - c * c, lam + 0.5) * eval_gegenbauer(params.raised(), n - 1, c), false};
}

SeriesCoeffs cap_coefficients(GegenbauerParams params, double c, int N) {
  if (N < 0) throw ArgumentError("truncation must be >= 0");
  const CapFunction cap(c);
  SeriesCoeffs out;
  out.params = params;
  out.basis = CoeffBasis::transform;
  out.coeffs.resize(static_cast<std::size_t>(N) + 1);
  if (params.is_zero()) {
    const double s = std::acos(cap.c);
    out.coeffs[0] = s;
    for (int n = 1; n <= N; ++n) out.coeffs[static_cast<std::size_t>(n)] = std::sin(n * s) / n;
    return out;
  }
  for (int n = 0; n <= N; ++n) {
    out.coeffs[static_cast<std::size_t>(n)] = cap_transform(params, c, n).value / gegenbauer_at_one(params, n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// properties

double b_norm(const ZonalKernel& f, GegenbauerParams params, std::size_t order) {
  std::vector<double> cuts{0.0, kPi};
  for (double b : f.breakpoints()) cuts.push_back(std::acos(std::clamp(b, -1.0, 1.0)));
  sort_unique(cuts, 0.0);
  const double two_lam = 2.0 * params.lambda();
  return integrate_panels(
      [&](double t) {
        const double w = two_lam == 0.0 ? 1.0 : std::pow(std::sin(t), two_lam);
        return std::abs(f(std::cos(t))) * w;
      },
      cuts, order);
}

namespace {

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

ConvolutionReport conv_property_check(const ZonalKernel& f, const ZonalKernel& g, const ZonalKernel& h,
                                      GegenbauerParams params, std::size_t order, int N, int grid) {
  if (N < 0) throw ArgumentError("truncation must be >= 0");
  if (grid < 2) throw ArgumentError("grid needs at least two points");
  ConvolutionReport r;
  r.params = params;
  r.truncation = N;

  const std::size_t coeff_order = std::max<std::size_t>(order, 2 * static_cast<std::size_t>(N) + 20);
  const SeriesCoeffs fh = fourier_transform(f, params, N, coeff_order);
  const SeriesCoeffs gh = fourier_transform(g, params, N, coeff_order);
  const SeriesCoeffs hh = fourier_transform(h, params, N, coeff_order);
  const SeriesCoeffs fg = conv_lambda_coeffs(fh, gh);
  r.coefficient_commutativity = max_diff(fg.coeffs, conv_lambda_coeffs(gh, fh).coeffs);
  r.coefficient_associativity = max_diff(conv_lambda_coeffs(fh, conv_lambda_coeffs(gh, hh)).coeffs,
                                         conv_lambda_coeffs(fg, hh).coeffs);
  r.commutativity = r.coefficient_commutativity;
  r.associativity = r.coefficient_associativity;

  const double lam = params.lambda();
  std::optional<ZonalKernel> fg_kernel, gf_kernel;
  if (params.is_zero()) {
    fg_kernel = conv0_kernel(f, g, order);
    gf_kernel = conv0_kernel(g, f, order);
  } else if (lam == std::floor(lam)) {
    const GegenbauerParams lower(lam - 1.0);
    fg_kernel = star_kernel(f, g, lower, order);
    gf_kernel = star_kernel(g, f, lower, order);
  }
  if (!fg_kernel) return r;

  double comm = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = -1.0 + 2.0 * i / (grid - 1);
    comm = std::max(comm, std::abs((*fg_kernel)(x) - (*gf_kernel)(x)));
  }
  r.commutativity = comm;

  const double nf = b_norm(f, params), ng = b_norm(g, params);
  if (nf > 0.0 && ng > 0.0) r.norm_ratio = b_norm(*fg_kernel, params) / (nf * ng);

  const SeriesCoeffs direct = fourier_transform(*fg_kernel, params, N, std::max<std::size_t>(order, 40));
  r.multiplicativity = max_diff(direct.coeffs, fg.coeffs);

  if (params.is_zero()) {
    const ZonalKernel left = conv0_kernel(f, conv0_kernel(g, h, order), order);
    const ZonalKernel right = conv0_kernel(*fg_kernel, h, order);
    double assoc = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double x = -1.0 + 2.0 * i / (grid - 1);
      assoc = std::max(assoc, std::abs(left(x) - right(x)));
    }
    r.associativity = assoc;
  }
  return r;
}

}  // namespace zonal
