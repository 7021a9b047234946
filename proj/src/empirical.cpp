#include "ivx/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "ivx/errors.hpp"

namespace ivx {

SampleData::SampleData(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DegenerateSampleError("sample is empty");
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw DegenerateSampleError("sample contains a non-finite value");
    }
  }
  std::sort(values_.begin(), values_.end());
}

double SampleData::ecdf(double x) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double epanechnikov(double u) {
  double a = std::fabs(u);
  return a < 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

std::pair<double, double> sample_var_std(const SampleData& s) {
  if (s.size() < 2) {
    throw DegenerateSampleError("variance needs at least two observations");
  }
  double mean = 0.0;
  for (double v : s.values()) mean += v;
  mean /= s.size();
  double ss = 0.0;
  for (double v : s.values()) ss += (v - mean) * (v - mean);
  double var = ss / (s.size() - 1);
  return {var, std::sqrt(var)};
}

double bandwidth(const SampleData& s, const KdeConfig& cfg) {
  if (cfg.rule == KdeConfig::BandwidthRule::fixed) {
    if (!(cfg.fixed_h > 0.0)) {
      throw DomainError("fixed bandwidth must be positive");
    }
    return cfg.fixed_h;
  }
  auto [var, sd] = sample_var_std(s);
  (void)var;
  if (!(sd > 0.0)) {
    throw DegenerateSampleError(
        "bandwidth rule needs a positive sample standard deviation");
  }
  return cfg.rule_scale * 1.06 * sd *
         std::pow(static_cast<double>(s.size()), -0.2);
}

double kde_at(const SampleData& s, double h, double x) {
  auto vals = s.values();
  auto lo = std::lower_bound(vals.begin(), vals.end(), x - h);
  auto hi = std::upper_bound(lo, vals.end(), x + h);
  double acc = 0.0;
  for (auto it = lo; it != hi; ++it) acc += epanechnikov((x - *it) / h);
  return acc / (s.size() * h);
}

double kde(const SampleData& s, const KdeConfig& cfg, double x) {
  return kde_at(s, bandwidth(s, cfg), x);
}

int m_rule(int n) {
  if (n < 2) throw DegenerateSampleError("m rule needs n >= 2");
  int m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)) + 0.5));
  return std::clamp(m, 1, n - 1);
}

}  // namespace ivx
