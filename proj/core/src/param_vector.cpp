#include "descentlab/param_vector.hpp"

#include <cmath>
#include <string>

#include "descentlab/error.hpp"

namespace descentlab {

namespace {

template <typename Op>
ParamVector zip(const ParamVector& a, const ParamVector& b, const char* what, Op op) {
  require_same_size(a.size(), b.size(), what);
  ParamVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  require_finite(out.span(), what);
  return out;
}

}  // namespace

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw NumericError(std::string(what) + ": non-finite value at index " + std::to_string(i), i);
    }
  }
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
  }
}

ParamVector add(const ParamVector& a, const ParamVector& b) {
  return zip(a, b, "add", [](double x, double y) { return x + y; });
}

ParamVector sub(const ParamVector& a, const ParamVector& b) {
  return zip(a, b, "sub", [](double x, double y) { return x - y; });
}

ParamVector hadamard(const ParamVector& a, const ParamVector& b) {
  return zip(a, b, "hadamard", [](double x, double y) { return x * y; });
}

ParamVector elementwise_divide(const ParamVector& a, const ParamVector& b) {
  return zip(a, b, "divide", [](double x, double y) { return x / y; });
}

ParamVector scale(const ParamVector& a, double factor) {
  ParamVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * factor;
  require_finite(out.span(), "scale");
  return out;
}

ParamVector elementwise_sqrt(const ParamVector& a) {
  ParamVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::sqrt(a[i]);
  require_finite(out.span(), "sqrt");
  return out;
}

double dot(const ParamVector& a, const ParamVector& b) {
  require_same_size(a.size(), b.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(std::span<const double> a) {
  double acc = 0.0;
  for (double x : a) acc += x * x;
  return std::sqrt(acc);
}

double norm(const ParamVector& a) { return norm(a.span()); }

ParamVector init_normal(std::size_t dim, double sigma, Prng& rng) {
  if (dim == 0) throw InvalidArgument("init_normal: dimension must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("init_normal: sigma must be a positive finite number");
  }
  ParamVector out(dim);
  for (auto& x : out) x = sigma * rng.normal();
  return out;
}

}  // namespace descentlab
