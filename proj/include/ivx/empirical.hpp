#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ivx/distributions.hpp"

namespace ivx {

// Immutable sorted sample: the order statistics X_{1:n} <= ... <= X_{n:n}.
class SampleData {
 public:
  explicit SampleData(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  // 0-based order statistic.
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  // Empirical distribution function F_n(x) = (1/n) #{X_i <= x};
  // right-continuous, ties counted with multiplicity.
  double ecdf(double x) const;

 private:
  std::vector<double> values_;
};

struct KdeConfig {
  enum class BandwidthRule { silverman, fixed };

  BandwidthRule rule = BandwidthRule::silverman;
  double fixed_h = 0.0;
  // Multiplies the silverman width only. 1 keeps the literal
  // 1.06 s n^{-1/5}; sqrt(5) gives the variance-one parametrization of the
  // Epanechnikov kernel (for which 1.06 is the optimal constant).
  double rule_scale = 1.0;

  static KdeConfig silverman(double scale = 1.0) {
    KdeConfig cfg;
    cfg.rule_scale = scale;
    return cfg;
  }
  static KdeConfig fixed(double h) {
    KdeConfig cfg;
    cfg.rule = BandwidthRule::fixed;
    cfg.fixed_h = h;
    return cfg;
  }
};

// Epanechnikov kernel K(u) = (3/4)(1-u^2) on |u| < 1.
double epanechnikov(double u);

// Unbiased (n-1 divisor) variance and standard deviation; n >= 2.
std::pair<double, double> sample_var_std(const SampleData& s);

// h = 1.06 s n^{-1/5} for the silverman rule (needs n >= 2 and s > 0),
// or the configured fixed width.
double bandwidth(const SampleData& s, const KdeConfig& cfg);

// Kernel density estimate f_n(x) with a precomputed bandwidth. The sample is
// sorted, so only observations within (x-h, x+h) are touched.
double kde_at(const SampleData& s, double h, double x);

// Convenience: resolves the bandwidth from cfg on each call.
double kde(const SampleData& s, const KdeConfig& cfg, double x);

// Spacing order m = floor(sqrt(n) + 0.5), clamped to [1, n-1]; n >= 2.
int m_rule(int n);

// n inverse-CDF draws collected into a sample.
template <class UniformGen>
SampleData sample(const Distribution& d, int n, UniformGen&& u01) {
  return SampleData(d.draw(n, std::forward<UniformGen>(u01)));
}

}  // namespace ivx
