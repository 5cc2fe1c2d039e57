#include "zonal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "zonal/convolution.hpp"
#include "zonal/descriptor.hpp"
#include "zonal/error.hpp"
#include "zonal/gegenbauer.hpp"
#include "zonal/interpolation.hpp"
#include "zonal/kernel_families.hpp"
#include "zonal/spd_analysis.hpp"
#include "zonal/verify.hpp"

namespace zonal::cli {

namespace {

using nlohmann::json;

// Bad table contents or other input problems found after option parsing.
class InputError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

struct Globals {
  std::optional<double> lambda;
  std::optional<int> sphere_dim;
  int trunc = 20;
  std::size_t quad_order = 200;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  std::string format = "csv";

  GegenbauerParams params(std::optional<double> fallback = std::nullopt) const {
    if (lambda) return GegenbauerParams(*lambda);
    if (sphere_dim) {
      if (*sphere_dim < 1) throw ArgumentError("--sphere-dim must be >= 1");
      return GegenbauerParams::for_sphere(*sphere_dim);
    }
    if (fallback) return GegenbauerParams(*fallback);
    throw ArgumentError("this command needs --lambda or --sphere-dim");
  }
};

json parse_kernel_arg(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw ArgumentError("cannot read kernel file " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("kernel descriptor is not valid JSON: ") + e.what());
  }
}

std::vector<double> grid_in_x(int n, const std::string& var) {
  std::vector<double> xs;
  if (n <= 0) return xs;
  if (n == 1) return {1.0};
  for (int i = 0; i < n; ++i) {
    if (var == "theta") {
      const double theta = std::numbers::pi * (1.0 - static_cast<double>(i) / (n - 1));
      xs.push_back(i == n - 1 ? 1.0 : std::cos(theta));
    } else {
      xs.push_back(i == n - 1 ? 1.0 : -1.0 + 2.0 * i / (n - 1));
    }
  }
  return xs;
}

std::vector<std::vector<double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw InputError("non-numeric row in " + path + ": " + line);
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) throw InputError("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const Globals& g, const std::string& body, std::ostream& out) {
  if (g.out.empty() || g.out == "-") {
    out << body;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw ArgumentError("cannot write " + g.out);
  file << body;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ArgumentError("cannot write " + path);
  file << body;
}

// ---------------------------------------------------------------------------
// commands

int cmd_eval(const Globals& g, const std::string& kernel_text, int grid, const std::string& var, std::ostream& out) {
  const json desc = parse_kernel_arg(kernel_text);
  const ZonalKernel k = kernel_from_descriptor(desc);
  const std::vector<double> xs = grid_in_x(grid, var);
  if (g.format == "json") {
    json rows = json::array();
    for (double x : xs) rows.push_back({{"x", x}, {"theta", std::acos(x)}, {"value", k(x)}});
    emit(g, json{{"kernel", desc}, {"rows", rows}}.dump(2) + "\n", out);
  } else {
    std::string body = "x,theta,value\n";
    for (double x : xs) body += fmt::format("{},{},{}\n", num(x), num(std::acos(x)), num(k(x)));
    emit(g, body, out);
  }
  return kOk;
}

int cmd_coeffs(const Globals& g, const std::string& kernel_text, std::ostream& out) {
  if (g.trunc < 0) throw ArgumentError("--trunc must be >= 0");
  const json desc = parse_kernel_arg(kernel_text);
  const ZonalKernel k = kernel_from_descriptor(desc);
  const GegenbauerParams p = g.params();
  const SeriesCoeffs fhat = fourier_transform(k, p, g.trunc, g.quad_order);
  std::vector<double> coeffs(fhat.coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) coeffs[n] = weight_w(p, static_cast<int>(n)) * fhat.coeffs[n];

  if (g.format == "json") {
    json j{{"kernel", desc},
           {"lambda", p.lambda()},
           {"truncation", g.trunc},
           {"normalization", "coeff = w_lambda(n) fhat_lambda(n), the coefficient of W^lambda_n"},
           {"coeffs", coeffs}};
    if (g.trunc >= 10) {
      ClassifyOptions opts;
      if (g.tol) opts.tol_rel = *g.tol;
      opts.order = g.quad_order;
      j["classification"] = classify(k, p, g.trunc, opts).to_json();
    }
    emit(g, j.dump(2) + "\n", out);
  } else {
    std::string body = fmt::format("# coeff = w_lambda(n) fhat_lambda(n), coefficient of W^lambda_n, lambda = {}\n",
                                   num(p.lambda()));
    body += "n,coeff\n";
    for (std::size_t n = 0; n < coeffs.size(); ++n) body += fmt::format("{},{}\n", n, num(coeffs[n]));
    emit(g, body, out);
  }
  return kOk;
}

int cmd_verify(const Globals& g, const std::vector<std::string>& only, bool list, std::ostream& out,
               std::ostream& err) {
  if (list) {
    std::string body;
    for (const std::string& n : verify_check_names()) body += n + "\n";
    emit(g, body, out);
    return kOk;
  }
  VerifyOptions opts;
  opts.tolerance = g.tol;
  opts.only = only;
  const std::vector<CheckResult> results = run_verify_suite(opts);
  emit(g, to_json(results).dump(2) + "\n", out);
  bool all = true;
  for (const CheckResult& r : results) {
    if (!r.passed) {
      err << "FAILED " << r.name << ": deviation " << num(r.deviation) << " > " << num(r.tolerance)
          << (r.error.empty() ? "" : " (" + r.error + ")") << "\n";
      all = false;
    }
  }
  return all ? kOk : kVerificationFailed;
}

int cmd_conv(const Globals& g, const std::string& f_text, const std::string& g_text, int grid, bool coeffs,
             std::ostream& out) {
  const ZonalKernel f = kernel_from_descriptor(parse_kernel_arg(f_text));
  const ZonalKernel h = kernel_from_descriptor(parse_kernel_arg(g_text));
  const GegenbauerParams p = g.params(0.0);

  if (coeffs) {
    if (g.trunc < 0) throw ArgumentError("--trunc must be >= 0");
    const SeriesCoeffs product = conv_lambda_coeffs(fourier_transform(f, p, g.trunc, g.quad_order),
                                                    fourier_transform(h, p, g.trunc, g.quad_order));
    if (g.format == "json") {
      emit(g, json{{"lambda", p.lambda()}, {"basis", "transform"}, {"coeffs", product.coeffs}}.dump(2) + "\n", out);
    } else {
      std::string body = "n,value\n";
      for (std::size_t n = 0; n < product.coeffs.size(); ++n) body += fmt::format("{},{}\n", n, num(product.coeffs[n]));
      emit(g, body, out);
    }
    return kOk;
  }

  std::function<FlaggedValue(double)> eval;
  if (p.is_zero()) {
    const ZonalKernel k = conv0_kernel(f, h);
    eval = [k](double x) { return FlaggedValue{k(x), false}; };
  } else {
    const HopConvolution hop(f, h, GegenbauerParams(p.lambda() - 1.0));
    eval = [hop](double x) { return hop(x); };
  }
  const std::vector<double> xs = grid_in_x(grid, "x");
  if (g.format == "json") {
    json rows = json::array();
    for (double x : xs) {
      const FlaggedValue v = eval(x);
      rows.push_back({{"x", x}, {"value", v.value}, {"one_sided", v.one_sided}});
    }
    emit(g, json{{"lambda", p.lambda()}, {"rows", rows}}.dump(2) + "\n", out);
  } else {
    std::string body = "x,value\n";
    for (double x : xs) body += fmt::format("{},{}\n", num(x), num(eval(x).value));
    emit(g, body, out);
  }
  return kOk;
}

int cmd_caps(const Globals& g, double s, int grid, std::ostream& out) {
  const GegenbauerParams p = g.params();
  const std::optional<int> d = p.sphere_dim();
  if (!d) throw ArgumentError("cap kernels need an odd sphere dimension");
  const CapKernelCoefficients k = cap_kernel_coefficients(*d, s);
  const ZonalKernel chi = cap_indicator(CapFunction(std::cos(s)));
  const HopConvolution hop(chi, chi, GegenbauerParams(p.lambda() - 1.0));
  const std::vector<double> xs = grid_in_x(grid, "x");

  if (g.format == "json") {
    json rows = json::array();
    for (double x : xs) {
      const double closed = eval_cap_kernel(k, x);
      const double viahop = hop(x).value / k.a;
      rows.push_back({{"x", x}, {"theta", std::acos(x)}, {"value", closed}, {"hop_value", viahop}});
    }
    emit(g,
         json{{"d", *d},
              {"s", s},
              {"coefficients", {{"a", k.a}, {"b", k.b}, {"d", k.d}, {"e", k.e}, {"f", k.f}, {"h", k.h}}},
              {"rows", rows}}
                 .dump(2) +
             "\n",
         out);
  } else {
    std::string body = fmt::format("# N_{} with s = {}, a = {}\n", *d, num(s), num(k.a));
    body += "x,theta,value,hop_value,difference\n";
    for (double x : xs) {
      const double closed = eval_cap_kernel(k, x);
      const double viahop = hop(x).value / k.a;
      body += fmt::format("{},{},{},{},{}\n", num(x), num(std::acos(x)), num(closed), num(viahop),
                          num(viahop - closed));
    }
    emit(g, body, out);
  }
  return kOk;
}

int cmd_interp(const Globals& g, const std::string& points_path, bool lonlat, const std::string& kernel_text,
               const std::string& residuals_path, int test_grid, const std::string& grid_out, std::ostream& out) {
  const json desc = parse_kernel_arg(kernel_text);
  const ZonalKernel k = kernel_from_descriptor(desc);
  const std::vector<std::vector<double>> rows = read_table(points_path);
  if (rows.empty()) throw InputError("no data rows in " + points_path);
  const std::size_t cols = rows.front().size();
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd values(n);

  std::optional<PointSet> pts;
  if (lonlat) {
    if (cols != 3) throw InputError("lon/lat input needs columns lon,lat,value");
    std::vector<double> lon, lat;
    for (Eigen::Index i = 0; i < n; ++i) {
      lon.push_back(rows[static_cast<std::size_t>(i)][0]);
      lat.push_back(rows[static_cast<std::size_t>(i)][1]);
      values(i) = rows[static_cast<std::size_t>(i)][2];
    }
    pts = PointSet::from_lonlat(lon, lat);
  } else {
    if (cols < 3) throw InputError("point input needs at least two coordinates and a value column");
    const int d = static_cast<int>(cols) - 2;
    if (g.sphere_dim && *g.sphere_dim != d) throw InputError("point dimension does not match --sphere-dim");
    Eigen::MatrixXd X(n, d + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& r = rows[static_cast<std::size_t>(i)];
      for (int c = 0; c <= d; ++c) X(i, c) = r[static_cast<std::size_t>(c)];
      values(i) = r[cols - 1];
    }
    pts = PointSet(d, std::move(X));
  }

  const Interpolant itp = solve_interpolation(*pts, values, k);
  const int dim = pts->dim();

  if (!residuals_path.empty()) {
    std::string body;
    for (int c = 0; c <= dim; ++c) body += fmt::format("x{},", c + 1);
    body += "value,s,residual\n";
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd x = pts->point(static_cast<std::size_t>(i));
      const double s = evaluate_interpolant(itp, x);
      for (int c = 0; c <= dim; ++c) body += num(x(c)) + ",";
      body += fmt::format("{},{},{}\n", num(values(i)), num(s), num(std::abs(s - values(i))));
    }
    write_file(residuals_path, body);
  }
  if (test_grid > 0) {
    if (grid_out.empty()) throw ArgumentError("--test-grid needs --grid-out");
    const PointSet probe = generate_points(dim, static_cast<std::size_t>(test_grid),
                                           dim == 2 ? PointScheme::fibonacci_s2 : PointScheme::random_seeded, g.seed);
    std::string body;
    for (int c = 0; c <= dim; ++c) body += fmt::format("x{},", c + 1);
    body += "s\n";
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const Eigen::VectorXd x = probe.point(i);
      for (int c = 0; c <= dim; ++c) body += num(x(c)) + ",";
      body += num(evaluate_interpolant(itp, x)) + "\n";
    }
    write_file(grid_out, body);
  }
  emit(g, itp.to_json().dump(2) + "\n", out);
  return kOk;
}

int cmd_gen_points(const Globals& g, std::size_t n, const std::string& scheme_name, std::ostream& out) {
  const int d = g.sphere_dim.value_or(2);
  const PointScheme scheme =
      scheme_name.empty() ? (d == 2 ? PointScheme::fibonacci_s2 : PointScheme::random_seeded)
                          : parse_point_scheme(scheme_name);
  const PointSet pts = generate_points(d, n, scheme, g.seed);
  if (g.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Eigen::VectorXd x = pts.point(i);
      rows.push_back(std::vector<double>(x.data(), x.data() + x.size()));
    }
    emit(g, json{{"d", d}, {"scheme", to_string(scheme)}, {"seed", g.seed}, {"points", rows}}.dump(2) + "\n", out);
  } else {
    std::string body;
    for (int c = 0; c <= d; ++c) body += fmt::format("{}x{}", c ? "," : "", c + 1);
    body += "\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Eigen::VectorXd x = pts.point(i);
      for (int c = 0; c <= d; ++c) body += (c ? "," : "") + num(x(c));
      body += "\n";
    }
    emit(g, body, out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zonal kernels on spheres: Gegenbauer expansions, dimension hopping, convolution, interpolation"};
  app.name("zonal");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  double lambda_value = 0.0;
  int sphere_dim_value = 0;
  double tol_value = 0.0;
  auto* lam_opt = app.add_option("--lambda", lambda_value, "Gegenbauer index lambda >= 0");
  auto* dim_opt = app.add_option("--sphere-dim", sphere_dim_value, "sphere dimension d (lambda = (d-1)/2)");
  lam_opt->excludes(dim_opt);
  app.add_option("--trunc", g.trunc, "truncation N of coefficient tables")->capture_default_str();
  app.add_option("--quad-order", g.quad_order, "quadrature nodes (per panel)")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for random point sets")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol_value, "tolerance override");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  std::string kernel;
  int grid = 101;
  std::string grid_var = "x";
  auto* eval = app.add_subcommand("eval", "tabulate a kernel on a grid");
  eval->add_option("--kernel", kernel, "kernel descriptor JSON, or @file")->required();
  eval->add_option("--grid", grid, "number of grid points")->capture_default_str();
  eval->add_option("--grid-var", grid_var, "uniform in x or in theta")
      ->check(CLI::IsMember({"x", "theta"}))
      ->capture_default_str();

  auto* coeffs = app.add_subcommand("coeffs", "expansion coefficients w_lambda(n) fhat_lambda(n)");
  coeffs->add_option("--kernel", kernel, "kernel descriptor JSON, or @file")->required();

  std::vector<std::string> only;
  bool list = false;
  auto* verify = app.add_subcommand("verify", "run the identity checks");
  verify->add_option("--check", only, "run only the named checks");
  verify->add_flag("--list", list, "list check names");

  std::string f_text, g_text;
  bool conv_coeffs = false;
  auto* conv = app.add_subcommand("conv", "convolution f *_lambda g (lambda = 0 or an integer)");
  conv->add_option("--f", f_text, "first kernel descriptor")->required();
  conv->add_option("--g", g_text, "second kernel descriptor")->required();
  conv->add_option("--grid", grid, "number of grid points")->capture_default_str();
  conv->add_flag("--coeffs", conv_coeffs, "emit the product coefficients instead of values");

  double cap_s = 0.0;
  auto* caps = app.add_subcommand("caps", "cap self-convolution N_d: closed form against the dimension hop");
  caps->add_option("--s", cap_s, "cap angle s in (0, pi/2)")->required();
  caps->add_option("--grid", grid, "number of grid points")->capture_default_str();

  std::string points_path, residuals_path, grid_out;
  bool lonlat = false;
  int test_grid = 0;
  auto* interp = app.add_subcommand("interp", "solve the scattered-data interpolation problem");
  interp->add_option("--points", points_path, "CSV of coordinates and a value column")->required();
  interp->add_flag("--lonlat", lonlat, "points are lon,lat in degrees on S^2");
  interp->add_option("--kernel", kernel, "kernel descriptor JSON, or @file")->required();
  interp->add_option("--residuals", residuals_path, "CSV of values and residuals at the centers");
  interp->add_option("--test-grid", test_grid, "number of probe points for --grid-out");
  interp->add_option("--grid-out", grid_out, "CSV of the interpolant on the probe points");

  std::size_t npoints = 0;
  std::string scheme;
  auto* gen = app.add_subcommand("gen-points", "generate a point set");
  gen->add_option("--n", npoints, "number of points")->required();
  gen->add_option("--scheme", scheme, "random or fibonacci");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (lam_opt->count() > 0) g.lambda = lambda_value;
  if (dim_opt->count() > 0) g.sphere_dim = sphere_dim_value;
  if (tol_opt->count() > 0) g.tol = tol_value;

  try {
    if (*eval) return cmd_eval(g, kernel, grid, grid_var, out);
    if (*coeffs) return cmd_coeffs(g, kernel, out);
    if (*verify) return cmd_verify(g, only, list, out, err);
    if (*conv) return cmd_conv(g, f_text, g_text, grid, conv_coeffs, out);
    if (*caps) return cmd_caps(g, cap_s, grid, out);
    if (*interp) return cmd_interp(g, points_path, lonlat, kernel, residuals_path, test_grid, grid_out, out);
    if (*gen) return cmd_gen_points(g, npoints, scheme, out);
  } catch (const NotPositiveDefiniteError& e) {
    err << "error: kernel not positive definite on this point set (pivot " << e.pivot() << ")\n";
    return kNumericalFailure;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const AccuracyError& e) {
    err << "error: " << e.what() << " (achieved " << num(e.achieved()) << ")\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInputError;
}

}  // namespace zonal::cli
