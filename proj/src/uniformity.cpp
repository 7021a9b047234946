#include "ivx/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "ivx/errors.hpp"
#include "ivx/montecarlo.hpp"
#include "ivx/rng.hpp"

namespace ivx {

namespace {
constexpr Window kUnitWindow{0.0, 1.0};
}

EstimatorConfig uniformity_defaults() {
  EstimatorConfig cfg;
  cfg.kde = KdeConfig::silverman(std::sqrt(5.0));
  return cfg;
}

const char* stat_name(StatKind kind) {
  switch (kind) {
    case StatKind::GV: return "GV";
    case StatKind::GD: return "GD";
    case StatKind::GB: return "GB";
    case StatKind::KS: return "KS";
  }
  return "?";
}

StatKind parse_stat(const std::string& name) {
  if (name == "GV") return StatKind::GV;
  if (name == "GD") return StatKind::GD;
  if (name == "GB") return StatKind::GB;
  if (name == "KS") return StatKind::KS;
  throw ParseError("unknown statistic '" + name + "'");
}

std::string AlternativeLaw::name() const {
  char buf[32];
  const char* fam = family == Family::A ? "A" : family == Family::B ? "B" : "C";
  std::snprintf(buf, sizeof(buf), "%s%g", fam, k);
  return buf;
}

AlternativeLaw parse_alternative(const std::string& name) {
  if (name.size() < 2) throw ParseError("unknown alternative '" + name + "'");
  AlternativeLaw::Family family;
  switch (name[0]) {
    case 'A': family = AlternativeLaw::Family::A; break;
    case 'B': family = AlternativeLaw::Family::B; break;
    case 'C': family = AlternativeLaw::Family::C; break;
    default: throw ParseError("unknown alternative family in '" + name + "'");
  }
  char* end = nullptr;
  double k = std::strtod(name.c_str() + 1, &end);
  if (end != name.c_str() + name.size() || !(k > 1.0)) {
    throw ParseError("alternative '" + name + "' needs a shape k > 1");
  }
  return {family, k};
}

double alternative_cdf(const AlternativeLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double k = law.k;
  double pow2 = std::pow(2.0, k - 1.0);
  switch (law.family) {
    case AlternativeLaw::Family::A:
      return 1.0 - std::pow(1.0 - x, k);
    case AlternativeLaw::Family::B:
      return x <= 0.5 ? pow2 * std::pow(x, k)
                      : 1.0 - pow2 * std::pow(1.0 - x, k);
    case AlternativeLaw::Family::C:
      return x <= 0.5 ? 0.5 - pow2 * std::pow(0.5 - x, k)
                      : 0.5 + pow2 * std::pow(x - 0.5, k);
  }
  return 0.0;
}

double alternative_quantile(const AlternativeLaw& law, double u) {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw DomainError("quantile argument must lie strictly inside (0,1)");
  }
  double k = law.k;
  double pow2 = std::pow(2.0, k - 1.0);
  switch (law.family) {
    case AlternativeLaw::Family::A:
      return 1.0 - std::pow(1.0 - u, 1.0 / k);
    case AlternativeLaw::Family::B:
      return u <= 0.5 ? std::pow(u / pow2, 1.0 / k)
                      : 1.0 - std::pow((1.0 - u) / pow2, 1.0 / k);
    case AlternativeLaw::Family::C:
      return u <= 0.5 ? 0.5 - std::pow((0.5 - u) / pow2, 1.0 / k)
                      : 0.5 + std::pow((u - 0.5) / pow2, 1.0 / k);
  }
  return 0.0;
}

double ks_statistic(const SampleData& s) {
  int n = s.size();
  if (s.min() < 0.0 || s.max() > 1.0) {
    throw DomainError("KS statistic needs all values in [0,1]");
  }
  double d = 0.0;
  for (int i = 1; i <= n; ++i) {
    double x = s[i - 1];
    d = std::max(d, static_cast<double>(i) / n - x);
    d = std::max(d, x - static_cast<double>(i - 1) / n);
  }
  return d;
}

double statistic_value(StatKind kind, const SampleData& s,
                       const EstimatorConfig& cfg) {
  if (kind == StatKind::KS) return ks_statistic(s);
  EstimatorConfig local = cfg;
  switch (kind) {
    case StatKind::GV: local.kind = EstimatorKind::spacing; break;
    case StatKind::GD: local.kind = EstimatorKind::kde_integral; break;
    case StatKind::GB: local.kind = EstimatorKind::kde_plugin; break;
    default: break;
  }
  return estimate(s, kUnitWindow, local);
}

namespace {

// Simulated null values of a statistic; failed replications dropped.
std::vector<double> simulate_null(StatKind kind, int n, int reps,
                                  std::uint64_t seed, std::uint64_t tag,
                                  int workers) {
  std::vector<double> values(static_cast<std::size_t>(reps),
                             std::numeric_limits<double>::quiet_NaN());
  parallel_for(reps, workers, [&](int r) {
    auto rng = RandomStream::derive(seed, tag, static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(r));
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (double& x : xs) x = rng.next_uniform();
    try {
      values[static_cast<std::size_t>(r)] =
          statistic_value(kind, SampleData(std::move(xs)));
    } catch (const DomainError&) {
    }
  });
  std::vector<double> ok;
  ok.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) ok.push_back(v);
  }
  return ok;
}

int quantile_rank(double alpha, int successes) {
  int rank = static_cast<int>(std::ceil((1.0 - alpha) * successes));
  return std::clamp(rank, 1, successes);
}

}  // namespace

double critical_value(StatKind kind, int n, double alpha, int reps,
                      std::uint64_t seed, int workers) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
  if (reps < 1000) throw DomainError("calibration needs reps >= 1000");
  auto values =
      simulate_null(kind, n, reps, seed, stream_tag::calibration, workers);
  if (values.empty()) throw DomainError("all calibration replications failed");
  int rank = quantile_rank(alpha, static_cast<int>(values.size()));
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[static_cast<std::size_t>(rank - 1)];
}

void Calibration::add(const CalibrationRow& row) { rows_.push_back(row); }

double Calibration::lookup(StatKind kind, int n, double alpha) const {
  for (const auto& row : rows_) {
    if (row.stat == kind && row.n == n && std::fabs(row.alpha - alpha) < 1e-12) {
      return row.critical;
    }
  }
  throw CalibrationRequiredError(
      std::string("no calibrated critical value for ") + stat_name(kind) +
      ", n=" + std::to_string(n));
}

std::string Calibration::to_csv() const {
  std::string out = "stat,n,alpha,critical\n";
  char buf[128];
  for (const auto& row : rows_) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.10g,%.10g\n", stat_name(row.stat),
                  row.n, row.alpha, row.critical);
    out += buf;
  }
  return out;
}

Calibration Calibration::from_csv_text(const std::string& text,
                                       const std::string& source) {
  Calibration cal;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (lineno == 1 && line.rfind("stat,", 0) == 0) continue;
    std::stringstream ls(line);
    std::string stat, nstr, astr, cstr;
    if (!std::getline(ls, stat, ',') || !std::getline(ls, nstr, ',') ||
        !std::getline(ls, astr, ',') || !std::getline(ls, cstr)) {
      throw ParseError(source + ":" + std::to_string(lineno) +
                       ": expected stat,n,alpha,critical");
    }
    CalibrationRow row;
    row.stat = parse_stat(stat);
    row.n = std::atoi(nstr.c_str());
    row.alpha = std::atof(astr.c_str());
    row.critical = std::atof(cstr.c_str());
    if (row.n < 1) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": bad n");
    }
    cal.add(row);
  }
  return cal;
}

Calibration Calibration::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open calibration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_csv_text(ss.str(), path);
}

namespace {

// Rejection fractions of several statistics on a common stream of samples.
std::vector<PowerRow> rejection_rates(
    const std::vector<StatKind>& stats, const std::string& label,
    const std::function<SampleData(RandomStream&)>& draw, int n, double alpha,
    int reps, std::uint64_t seed, std::uint64_t tag,
    const Calibration& calibration, int workers) {
  const int ns = static_cast<int>(stats.size());
  std::vector<double> crit(static_cast<std::size_t>(ns));
  for (int i = 0; i < ns; ++i) {
    crit[static_cast<std::size_t>(i)] =
        calibration.lookup(stats[static_cast<std::size_t>(i)], n, alpha);
  }

  // outcome: 1 reject, 0 accept, -1 failed
  std::vector<signed char> outcome(
      static_cast<std::size_t>(reps) * static_cast<std::size_t>(ns), -1);
  parallel_for(reps, workers, [&](int r) {
    auto rng = RandomStream::derive(seed, tag, static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(r));
    SampleData s = draw(rng);
    for (int i = 0; i < ns; ++i) {
      try {
        double v = statistic_value(stats[static_cast<std::size_t>(i)], s);
        outcome[static_cast<std::size_t>(r) * ns + i] =
            v >= crit[static_cast<std::size_t>(i)] ? 1 : 0;
      } catch (const DomainError&) {
      }
    }
  });

  std::vector<PowerRow> rows;
  for (int i = 0; i < ns; ++i) {
    int rejected = 0, ok = 0;
    for (int r = 0; r < reps; ++r) {
      signed char o = outcome[static_cast<std::size_t>(r) * ns + i];
      if (o < 0) continue;
      ++ok;
      rejected += o;
    }
    PowerRow row;
    row.stat = stats[static_cast<std::size_t>(i)];
    row.alternative = label;
    row.n = n;
    row.alpha = alpha;
    row.power = ok > 0 ? static_cast<double>(rejected) / ok
                       : std::numeric_limits<double>::quiet_NaN();
    row.failures = reps - ok;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

PowerReport power_study(const std::vector<StatKind>& stats,
                        const std::vector<AlternativeLaw>& laws, int n,
                        double alpha, int reps, std::uint64_t seed,
                        const Calibration& calibration, int workers) {
  if (reps < 1) throw DomainError("power study needs reps >= 1");
  PowerReport report;
  report.seed = seed;
  report.reps = reps;
  for (std::size_t li = 0; li < laws.size(); ++li) {
    const auto& law = laws[li];
    // Mix the law index into the tag so laws draw independent streams.
    std::uint64_t tag = stream_tag::power + 16 * (li + 1);
    auto rows = rejection_rates(
        stats, law.name(),
        [&law, n](RandomStream& rng) {
          return sample_alternative(law, n, rng);
        },
        n, alpha, reps, seed, tag, calibration, workers);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

double null_rejection_rate(StatKind stat, int n, double alpha, int reps,
                           std::uint64_t seed, const Calibration& calibration,
                           int workers) {
  auto rows = rejection_rates(
      {stat}, "uniform",
      [n](RandomStream& rng) {
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (double& x : xs) x = rng.next_uniform();
        return SampleData(std::move(xs));
      },
      n, alpha, reps, seed, stream_tag::size_check, calibration, workers);
  return rows.front().power;
}

TestDecision test_uniformity(StatKind kind, const SampleData& s, double alpha,
                             const Calibration& calibration,
                             const EstimatorConfig& cfg) {
  double crit = calibration.lookup(kind, s.size(), alpha);
  double value = statistic_value(kind, s, cfg);
  return {value, crit, alpha, value >= crit};
}

}  // namespace ivx
