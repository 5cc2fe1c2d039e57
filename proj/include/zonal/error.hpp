#ifndef ZONAL_ERROR_HPP
#define ZONAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zonal {

// Bad inputs: negative degrees, out-of-domain arguments, mismatched shapes.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The Gegenbauer index is outside what the routine supports (e.g. lambda = 0
// where only the w-normalisation is defined).
class UnsupportedIndexError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// A kernel produced a non-finite value during quadrature or assembly.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive refinement stopped before reaching the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Requested sizes exceed what the dense algorithms are meant for.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cholesky broke down; pivot() is the zero-based column that failed.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  NotPositiveDefiniteError(const std::string& what, std::size_t pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

}  // namespace zonal

#endif  // ZONAL_ERROR_HPP
