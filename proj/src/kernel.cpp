#include "zonal/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zonal/error.hpp"

namespace zonal {

double clamp_unit(double x) {
  if (std::isnan(x) || std::abs(x) > 1.0 + kDomainSlack) {
    throw ArgumentError("argument " + std::to_string(x) + " outside [-1,1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

struct ZonalKernel::Impl {
  Function f;
  std::vector<double> breakpoints;
  double support_start = -1.0;
  std::shared_ptr<const ZonalKernel> derivative;
  std::function<ZonalKernel()> montee;
  nlohmann::json descriptor;
};

namespace {

std::vector<double> normalise_breakpoints(std::vector<double> b) {
  for (double& x : b) x = clamp_unit(x);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](double p, double q) { return std::abs(p - q) < 1e-15; }),
          b.end());
  return b;
}

}  // namespace

ZonalKernel::ZonalKernel() : ZonalKernel([](double) { return 0.0; }) {}

ZonalKernel::ZonalKernel(Function f, std::vector<double> breakpoints) {
  auto impl = std::make_shared<Impl>();
  impl->f = std::move(f);
  impl->breakpoints = normalise_breakpoints(std::move(breakpoints));
  impl_ = std::move(impl);
}

ZonalKernel::ZonalKernel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

double ZonalKernel::operator()(double x) const { return impl_->f(clamp_unit(x)); }

const std::vector<double>& ZonalKernel::breakpoints() const { return impl_->breakpoints; }

double ZonalKernel::support_start() const { return impl_->support_start; }

const ZonalKernel* ZonalKernel::derivative() const { return impl_->derivative.get(); }

std::optional<ZonalKernel> ZonalKernel::analytic_montee() const {
  if (!impl_->montee) return std::nullopt;
  return impl_->montee();
}

const nlohmann::json& ZonalKernel::descriptor() const { return impl_->descriptor; }

ZonalKernel ZonalKernel::with_breakpoints(std::vector<double> breakpoints) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->breakpoints = normalise_breakpoints(std::move(breakpoints));
  return ZonalKernel(std::move(impl));
}

ZonalKernel ZonalKernel::with_support_start(double x0) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->support_start = clamp_unit(x0);
  return ZonalKernel(std::move(impl));
}

ZonalKernel ZonalKernel::with_derivative(ZonalKernel derivative) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->derivative = std::make_shared<const ZonalKernel>(std::move(derivative));
  return ZonalKernel(std::move(impl));
}

ZonalKernel ZonalKernel::with_montee(std::function<ZonalKernel()> factory) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->montee = std::move(factory);
  return ZonalKernel(std::move(impl));
}

ZonalKernel ZonalKernel::with_descriptor(nlohmann::json descriptor) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->descriptor = std::move(descriptor);
  return ZonalKernel(std::move(impl));
}

ZonalKernel ZonalKernel::scaled(double alpha) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->f = [f = impl_->f, alpha](double x) { return alpha * f(x); };
  if (impl_->derivative) {
    impl->derivative = std::make_shared<const ZonalKernel>(impl_->derivative->scaled(alpha));
  }
  if (impl_->montee) {
    impl->montee = [m = impl_->montee, alpha] { return m().scaled(alpha); };
  }
  if (!impl_->descriptor.is_null()) {
    const double prior = impl_->descriptor.value("scale", 1.0);
    impl->descriptor["scale"] = prior * alpha;
  }
  return ZonalKernel(std::move(impl));
}

ZonalKernel constant_kernel(double value) {
  return ZonalKernel([value](double) { return value; })
      .with_derivative(ZonalKernel())
      .with_montee([value] {
        return ZonalKernel([value](double x) { return value * (x + 1.0); })
            .with_derivative(constant_kernel(value));
      });
}

std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return normalise_breakpoints(std::move(out));
}

}  // namespace zonal
