#include "ivx/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ivx/errors.hpp"

namespace ivx {

const char* estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::spacing: return "spacing";
    case EstimatorKind::kde_integral: return "kde-integral";
    case EstimatorKind::kde_plugin: return "kde-plugin";
  }
  return "?";
}

EstimatorKind parse_estimator(const std::string& name) {
  if (name == "spacing") return EstimatorKind::spacing;
  if (name == "kde-integral") return EstimatorKind::kde_integral;
  if (name == "kde-plugin") return EstimatorKind::kde_plugin;
  throw ParseError("unknown estimator '" + name + "'");
}

double empirical_mass(const SampleData& s, const Window& w) {
  if (!w.ordered()) {
    throw DegenerateWindowError("window endpoints must satisfy t1 < t2");
  }
  // Closed on both ends, matching the indicator convention; differs from
  // F_n(t2) - F_n(t1) only when an observation sits exactly at t1.
  auto vals = s.values();
  auto lo = std::lower_bound(vals.begin(), vals.end(), w.t1);
  auto hi = std::upper_bound(lo, vals.end(), w.t2);
  double mass = static_cast<double>(hi - lo) / s.size();
  if (!(mass > 0.0)) {
    throw DegenerateWindowError("window captures no empirical mass");
  }
  return mass;
}

double estimate_spacing(const SampleData& s, const Window& w, int m) {
  int n = s.size();
  if (m < 1 || m > n - 1) {
    throw DomainError("spacing order m must satisfy 1 <= m <= n-1, got m=" +
                      std::to_string(m) + " with n=" + std::to_string(n));
  }
  double mass = empirical_mass(s, w);

  auto inside = [&](double x) { return w.t1 <= x && x <= w.t2; };

  double t_sum = 0.0;   // mean of squared proxies, indicator weighted
  double tp_sum = 0.0;  // mean of proxies, indicator weighted
  double scale = static_cast<double>(m) / (n + 1);
  for (int j = 0; j < n - m; ++j) {
    double weight = (inside(s[j]) ? 1.0 : 0.0) + (inside(s[j + m]) ? 1.0 : 0.0);
    if (weight == 0.0) continue;
    double gap = s[j + m] - s[j];
    if (!(gap > 0.0)) {
      throw TieError("tied observations: X_(" + std::to_string(j + 1) +
                     ") equals X_(" + std::to_string(j + m + 1) + ")");
    }
    double proxy = scale / gap;
    t_sum += proxy * proxy * weight;
    tp_sum += proxy * weight;
  }
  double denom = 2.0 * (n - m);
  double t_mn = t_sum / denom;
  double tp_mn = (tp_sum / denom) * (tp_sum / denom);
  double m3 = mass * mass * mass;
  return 0.25 * t_mn / m3 - 0.25 * tp_mn / (m3 * mass);
}

double estimate_kde_integral(const SampleData& s, const Window& w,
                             const EstimatorConfig& cfg) {
  int panels = cfg.quad_panels;
  if (panels < 16 || panels % 2 != 0) {
    throw DomainError("quad_panels must be even and >= 16");
  }
  double mass = empirical_mass(s, w);
  double h = bandwidth(s, cfg.kde);

  // Composite Simpson over [t1, t2]; f_n evaluated once per grid point.
  double width = w.t2 - w.t1;
  double step = width / panels;
  double sum2 = 0.0, sum3 = 0.0;
  for (int i = 0; i <= panels; ++i) {
    double x = (i == panels) ? w.t2 : w.t1 + step * i;
    double f = kde_at(s, h, x);
    double coeff = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum2 += coeff * f * f;
    sum3 += coeff * f * f * f;
  }
  double i2 = sum2 * step / 3.0;
  double i3 = sum3 * step / 3.0;
  double m3 = mass * mass * mass;
  return 0.25 * i3 / m3 - 0.25 * i2 * i2 / (m3 * mass);
}

double estimate_kde_plugin(const SampleData& s, const Window& w,
                           const EstimatorConfig& cfg) {
  double mass = empirical_mass(s, w);
  double h = bandwidth(s, cfg.kde);
  int n = s.size();
  double avg_f = 0.0, avg_f2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = s[i];
    if (x < w.t1 || x > w.t2) continue;
    double f = kde_at(s, h, x);
    avg_f += f;
    avg_f2 += f * f;
  }
  avg_f /= n;
  avg_f2 /= n;
  double m3 = mass * mass * mass;
  return 0.25 * avg_f2 / m3 - 0.25 * avg_f * avg_f / (m3 * mass);
}

double estimate(const SampleData& s, const Window& w,
                const EstimatorConfig& cfg) {
  switch (cfg.kind) {
    case EstimatorKind::spacing:
      return estimate_spacing(s, w, cfg.m_override.value_or(m_rule(s.size())));
    case EstimatorKind::kde_integral:
      return estimate_kde_integral(s, w, cfg);
    case EstimatorKind::kde_plugin:
      return estimate_kde_plugin(s, w, cfg);
  }
  throw DomainError("unreachable estimator kind");
}

}  // namespace ivx
