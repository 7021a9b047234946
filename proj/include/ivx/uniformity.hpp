#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ivx/empirical.hpp"
#include "ivx/estimators.hpp"

namespace ivx {

// Uniformity test statistics: the three interval-varextropy estimators
// evaluated at the fixed window (0,1), plus Kolmogorov-Smirnov.
enum class StatKind { GV, GD, GB, KS };

const char* stat_name(StatKind kind);
StatKind parse_stat(const std::string& name);

// Benchmark alternatives on [0,1]: A_k: F(x) = 1-(1-x)^k; B_k and C_k are
// the symmetric piecewise power laws glued at x = 1/2.
struct AlternativeLaw {
  enum class Family { A, B, C };
  Family family;
  double k;  // > 1

  std::string name() const;  // e.g. "B3", "A1.5"
};

AlternativeLaw parse_alternative(const std::string& name);

double alternative_cdf(const AlternativeLaw& law, double x);
double alternative_quantile(const AlternativeLaw& law, double u);

template <class UniformGen>
SampleData sample_alternative(const AlternativeLaw& law, int n,
                              UniformGen&& u01) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs.push_back(alternative_quantile(law, u01()));
  return SampleData(std::move(xs));
}

// KS = max_i max(i/n - X_(i), X_(i) - (i-1)/n); sample must live in [0,1].
double ks_statistic(const SampleData& s);

// Conventions behind the calibrated percentage points: the variance-one
// parametrization of the Epanechnikov kernel, i.e. the silverman width
// scaled by sqrt(5). The unit-support kernel with the unscaled width makes
// the KDE statistics' null quantiles roughly twice these tables.
EstimatorConfig uniformity_defaults();

// GV/GD/GB at window (0,1) under cfg's conventions, or KS.
double statistic_value(StatKind kind, const SampleData& s,
                       const EstimatorConfig& cfg = uniformity_defaults());

// Empirical (1-alpha) critical value over `reps` uniform(0,1) samples of
// size n: the ceil((1-alpha)*M)-th order statistic of the simulated null
// distribution (M = successful replications). Deterministic in (seed, reps).
double critical_value(StatKind kind, int n, double alpha, int reps,
                      std::uint64_t seed, int workers = 1);

struct CalibrationRow {
  StatKind stat;
  int n;
  double alpha;
  double critical;
};

// Critical-value table, persistable as CSV `stat,n,alpha,critical`.
class Calibration {
 public:
  void add(const CalibrationRow& row);
  // Throws CalibrationRequiredError when (kind, n, alpha) is absent.
  double lookup(StatKind kind, int n, double alpha) const;
  const std::vector<CalibrationRow>& rows() const { return rows_; }

  std::string to_csv() const;
  static Calibration from_csv_text(const std::string& text,
                                   const std::string& source);
  static Calibration from_csv_file(const std::string& path);

 private:
  std::vector<CalibrationRow> rows_;
};

struct PowerRow {
  StatKind stat;
  std::string alternative;  // law name, or "uniform" for the size check
  int n;
  double alpha;
  double power;  // rejection fraction over successful replications
  int failures;
};

struct PowerReport {
  std::vector<PowerRow> rows;
  std::uint64_t seed = 0;
  int reps = 0;
};

// Rejection rates of the calibrated tests under the given alternatives.
// Alternative draws use a stream independent of the calibration stream.
PowerReport power_study(const std::vector<StatKind>& stats,
                        const std::vector<AlternativeLaw>& laws, int n,
                        double alpha, int reps, std::uint64_t seed,
                        const Calibration& calibration, int workers = 1);

// Null rejection rate (empirical size) of the calibrated test.
double null_rejection_rate(StatKind stat, int n, double alpha, int reps,
                           std::uint64_t seed, const Calibration& calibration,
                           int workers = 1);

struct TestDecision {
  double statistic_value;
  double critical_value;
  double alpha;
  bool reject;  // statistic_value >= critical_value
};

TestDecision test_uniformity(StatKind kind, const SampleData& s, double alpha,
                             const Calibration& calibration,
                             const EstimatorConfig& cfg = uniformity_defaults());

}  // namespace ivx
