#pragma once

#include <optional>
#include <string>

#include "ivx/empirical.hpp"
#include "ivx/window.hpp"

namespace ivx {

enum class EstimatorKind { spacing, kde_integral, kde_plugin };

const char* estimator_name(EstimatorKind kind);
EstimatorKind parse_estimator(const std::string& name);

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::spacing;
  KdeConfig kde;
  std::optional<int> m_override;  // spacing order; defaults to m_rule(n)
  int quad_panels = 2048;         // composite Simpson panels, even, >= 16
};

// Empirical window mass F_n(t2) - F_n(t1); throws DegenerateWindowError
// when no observation separates the endpoints.
double empirical_mass(const SampleData& s, const Window& w);

// m-spacing estimator: density proxies (m/(n+1))/(X_{j+m:n}-X_{j:n}) averaged
// over j = 1..n-m with closed-indicator weights
// I(t1 <= X_{j:n} <= t2) + I(t1 <= X_{j+m:n} <= t2), combined as
// T/(4 mass^3) - T'/(4 mass^4). Zero spacings with a live indicator raise
// TieError naming the offending order-statistic index.
double estimate_spacing(const SampleData& s, const Window& w, int m);

// Integral estimator: plugs the Epanechnikov KDE into the defining integrals
// over exactly [t1, t2], composite Simpson on cfg.quad_panels panels.
double estimate_kde_integral(const SampleData& s, const Window& w,
                             const EstimatorConfig& cfg);

// Plugin estimator: Stieltjes integrals against F_n collapse to sample
// averages of f_n and f_n^2 over the in-window observations.
double estimate_kde_plugin(const SampleData& s, const Window& w,
                           const EstimatorConfig& cfg);

// Dispatch over cfg.kind.
double estimate(const SampleData& s, const Window& w,
                const EstimatorConfig& cfg);

}  // namespace ivx
