#include "ivx/special.hpp"

#include <cmath>
#include <limits>

#include "ivx/errors.hpp"

namespace ivx::special {

namespace {

constexpr double kAbsTol = 1e-14;
constexpr int kMaxIter = 500;

// Lower series: P(k,x) = x^k e^-x / Γ(k+1) * Σ_n x^n / ((k+1)...(k+n)).
double lower_series(double k, double x) {
  double term = 1.0 / k;
  double sum = term;
  double ap = k;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kAbsTol) break;
  }
  return sum * std::exp(-x + k * std::log(x) - std::lgamma(k));
}

// Upper continued fraction (modified Lentz): Q(k,x) = x^k e^-x / Γ(k) * CF.
double upper_cf(double k, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kAbsTol;
  double b = x + 1.0 - k;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - k);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kAbsTol) break;
  }
  return h * std::exp(-x + k * std::log(x) - std::lgamma(k));
}

}  // namespace

double reg_lower_gamma(double k, double x) {
  if (!(k > 0.0)) throw DomainError("reg_lower_gamma: shape must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < k + 1.0) return lower_series(k, x);
  return 1.0 - upper_cf(k, x);
}

}  // namespace ivx::special
