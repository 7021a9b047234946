#include "ivx/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>

#include "ivx/errors.hpp"
#include "ivx/special.hpp"

namespace ivx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || std::isinf(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

Distribution Distribution::exponential(double rate) {
  require_positive(rate, "exp rate");
  return {DistKind::exponential, rate, 0.0};
}

Distribution Distribution::pareto1(double scale, double shape) {
  require_positive(scale, "pareto1 scale a");
  require_positive(shape, "pareto1 shape b");
  return {DistKind::pareto1, scale, shape};
}

Distribution Distribution::power(double scale, double shape) {
  require_positive(scale, "power scale a");
  require_positive(shape, "power shape b");
  return {DistKind::power, scale, shape};
}

Distribution Distribution::square_cdf() { return {DistKind::square_cdf, 0.0, 0.0}; }

Distribution Distribution::example5() { return {DistKind::example5, 0.0, 0.0}; }

Distribution Distribution::uniform(double lo, double hi) {
  if (!(lo < hi) || std::isinf(lo) || std::isinf(hi)) {
    throw DomainError("uniform requires finite lo < hi");
  }
  return {DistKind::uniform, lo, hi};
}

Distribution Distribution::gamma(double shape, double rate) {
  require_positive(shape, "gamma shape");
  require_positive(rate, "gamma rate");
  return {DistKind::gamma, shape, rate};
}

Support Distribution::support() const {
  switch (kind_) {
    case DistKind::exponential: return {0.0, kInf};
    case DistKind::pareto1: return {p1_, kInf};
    case DistKind::power: return {0.0, p1_};
    case DistKind::square_cdf: return {0.0, 1.0};
    case DistKind::example5: return {0.0, 2.0};
    case DistKind::uniform: return {p1_, p2_};
    case DistKind::gamma: return {0.0, kInf};
  }
  return {0.0, 0.0};
}

std::vector<double> Distribution::interior_kinks() const {
  if (kind_ == DistKind::example5) return {1.0};
  return {};
}

double Distribution::pdf(double x) const {
  if (std::isinf(x)) return 0.0;
  switch (kind_) {
    case DistKind::exponential:
      return x < 0.0 ? 0.0 : p1_ * std::exp(-p1_ * x);
    case DistKind::pareto1:
      return x < p1_ ? 0.0 : p2_ / x * std::pow(p1_ / x, p2_);
    case DistKind::power:
      if (x <= 0.0 || x > p1_) return 0.0;
      return p2_ / x * std::pow(x / p1_, p2_);
    case DistKind::square_cdf:
      return (x <= 0.0 || x > 1.0) ? 0.0 : 2.0 * x;
    case DistKind::example5:
      if (x <= 0.0 || x > 2.0) return 0.0;
      if (x <= 1.0) return std::exp(-0.5 - 1.0 / x) / (x * x);
      return x * std::exp(-2.0 + 0.5 * x * x);
    case DistKind::uniform:
      return (x < p1_ || x > p2_) ? 0.0 : 1.0 / (p2_ - p1_);
    case DistKind::gamma:
      if (x <= 0.0) return 0.0;
      return std::exp((p1_ - 1.0) * std::log(x) - p2_ * x +
                      p1_ * std::log(p2_) - std::lgamma(p1_));
  }
  return 0.0;
}

double Distribution::pdf_derivative(double x) const {
  if (std::isinf(x)) return 0.0;
  switch (kind_) {
    case DistKind::exponential:
      return x < 0.0 ? 0.0 : -p1_ * p1_ * std::exp(-p1_ * x);
    case DistKind::pareto1:
      return x < p1_ ? 0.0 : -(p2_ + 1.0) / x * pdf(x);
    case DistKind::power:
      if (x <= 0.0 || x > p1_) return 0.0;
      return (p2_ - 1.0) / x * pdf(x);
    case DistKind::square_cdf:
      return (x <= 0.0 || x > 1.0) ? 0.0 : 2.0;
    case DistKind::example5:
      if (x <= 0.0 || x > 2.0) return 0.0;
      if (x <= 1.0) {
        double e = std::exp(-0.5 - 1.0 / x);
        return e * (1.0 / (x * x) - 2.0 / x) / (x * x);
      }
      return (1.0 + x * x) * std::exp(-2.0 + 0.5 * x * x);
    case DistKind::uniform:
      return 0.0;
    case DistKind::gamma:
      if (x <= 0.0) return 0.0;
      return ((p1_ - 1.0) / x - p2_) * pdf(x);
  }
  return 0.0;
}

double Distribution::cdf(double x) const {
  switch (kind_) {
    case DistKind::exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
    case DistKind::pareto1:
      return x <= p1_ ? 0.0 : -std::expm1(p2_ * std::log(p1_ / x));
    case DistKind::power:
      if (x <= 0.0) return 0.0;
      if (x >= p1_) return 1.0;
      return std::pow(x / p1_, p2_);
    case DistKind::square_cdf:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return x * x;
    case DistKind::example5:
      if (x <= 0.0) return 0.0;
      if (x >= 2.0) return 1.0;
      if (x <= 1.0) return std::exp(-0.5 - 1.0 / x);
      return std::exp(-2.0 + 0.5 * x * x);
    case DistKind::uniform:
      if (x <= p1_) return 0.0;
      if (x >= p2_) return 1.0;
      return (x - p1_) / (p2_ - p1_);
    case DistKind::gamma:
      if (x <= 0.0) return 0.0;
      return special::reg_lower_gamma(p1_, p2_ * x);
  }
  return 0.0;
}

double Distribution::quantile(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw DomainError("quantile argument must lie strictly inside (0,1)");
  }
  switch (kind_) {
    case DistKind::exponential:
      return -std::log1p(-u) / p1_;
    case DistKind::pareto1:
      return p1_ * std::exp(-std::log1p(-u) / p2_);
    case DistKind::power:
      return p1_ * std::pow(u, 1.0 / p2_);
    case DistKind::square_cdf:
      return std::sqrt(u);
    case DistKind::example5: {
      double lu = std::log(u);
      if (lu <= -1.5) return -1.0 / (0.5 + lu);  // lower branch, x in (0,1]
      return std::sqrt(2.0 * (2.0 + lu));        // upper branch, x in [1,2)
    }
    case DistKind::uniform:
      return p1_ + u * (p2_ - p1_);
    case DistKind::gamma:
      return gamma_quantile(u);
  }
  return 0.0;
}

// Bracketed bisection on the regularized incomplete gamma, then a guarded
// Newton polish. One call consumes nothing from any stream.
double Distribution::gamma_quantile(double u) const {
  double lo = 0.0;
  double hi = std::max(1.0, p1_ / p2_);
  for (int i = 0; i < 400 && cdf(hi) < u; ++i) hi *= 2.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-9 * std::max(1.0, mid)) break;
    (cdf(mid) < u ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 20; ++i) {
    double fx = pdf(x);
    if (!(fx > 0.0)) break;
    double step = (cdf(x) - u) / fx;
    double next = x - step;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    x = next;
    if (std::fabs(step) <= 1e-13 * std::max(1.0, std::fabs(x))) break;
  }
  return x;
}

std::string Distribution::describe() const {
  switch (kind_) {
    case DistKind::exponential: return "exp:rate=" + fmt_g(p1_);
    case DistKind::pareto1: return "pareto1:a=" + fmt_g(p1_) + ",b=" + fmt_g(p2_);
    case DistKind::power: return "power:a=" + fmt_g(p1_) + ",b=" + fmt_g(p2_);
    case DistKind::square_cdf: return "squarecdf";
    case DistKind::example5: return "example5";
    case DistKind::uniform: return "uniform:lo=" + fmt_g(p1_) + ",hi=" + fmt_g(p2_);
    case DistKind::gamma: return "gamma:shape=" + fmt_g(p1_) + ",rate=" + fmt_g(p2_);
  }
  return "?";
}

namespace {

std::map<std::string, double> parse_kv(const std::string& body,
                                       const std::string& spec) {
  std::map<std::string, double> kv;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string token = body.substr(pos, comma == std::string::npos
                                             ? std::string::npos
                                             : comma - pos);
    pos = comma == std::string::npos ? body.size() : comma + 1;
    std::size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
      throw ParseError("distribution spec '" + spec +
                       "': expected key=value, got '" + token + "'");
    }
    std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty()) {
      throw ParseError("distribution spec '" + spec +
                       "': non-numeric value in '" + token + "'");
    }
    if (!kv.emplace(key, v).second) {
      throw ParseError("distribution spec '" + spec + "': duplicate key '" +
                       key + "'");
    }
  }
  return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key,
            double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  double v = it->second;
  kv.erase(it);
  return v;
}

void reject_leftovers(const std::map<std::string, double>& kv,
                      const std::string& spec) {
  if (!kv.empty()) {
    throw ParseError("distribution spec '" + spec + "': unknown key '" +
                     kv.begin()->first + "'");
  }
}

void require_positive_param(double v, const std::string& token,
                            const std::string& spec) {
  if (!(v > 0.0)) {
    throw ParseError("distribution spec '" + spec +
                     "': parameter must be positive in '" + token + "=" +
                     fmt_g(v) + "'");
  }
}

}  // namespace

Distribution parse_distribution(const std::string& spec) {
  std::size_t colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto kv = parse_kv(body, spec);

  if (name == "exp") {
    double rate = take(kv, "rate", 1.0);
    reject_leftovers(kv, spec);
    require_positive_param(rate, "rate", spec);
    return Distribution::exponential(rate);
  }
  if (name == "pareto1") {
    double a = take(kv, "a", 1.0);
    double b = take(kv, "b", 1.0);
    reject_leftovers(kv, spec);
    require_positive_param(a, "a", spec);
    require_positive_param(b, "b", spec);
    return Distribution::pareto1(a, b);
  }
  if (name == "power") {
    double a = take(kv, "a", 1.0);
    double b = take(kv, "b", 1.0);
    reject_leftovers(kv, spec);
    require_positive_param(a, "a", spec);
    require_positive_param(b, "b", spec);
    return Distribution::power(a, b);
  }
  if (name == "squarecdf") {
    reject_leftovers(kv, spec);
    return Distribution::square_cdf();
  }
  if (name == "example5") {
    reject_leftovers(kv, spec);
    return Distribution::example5();
  }
  if (name == "uniform") {
    double lo = take(kv, "lo", 0.0);
    double hi = take(kv, "hi", 1.0);
    reject_leftovers(kv, spec);
    if (!(lo < hi)) {
      throw ParseError("distribution spec '" + spec + "': requires lo < hi");
    }
    return Distribution::uniform(lo, hi);
  }
  if (name == "gamma") {
    double shape = take(kv, "shape", 1.0);
    double rate = take(kv, "rate", 1.0);
    reject_leftovers(kv, spec);
    require_positive_param(shape, "shape", spec);
    require_positive_param(rate, "rate", spec);
    return Distribution::gamma(shape, rate);
  }
  throw ParseError("unknown distribution '" + name + "'");
}

}  // namespace ivx
