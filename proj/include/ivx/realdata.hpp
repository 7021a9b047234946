#pragma once

#include <span>
#include <vector>

#include "ivx/empirical.hpp"
#include "ivx/estimators.hpp"
#include "ivx/window.hpp"

namespace ivx {

// Remission times (months) of 128 bladder-cancer patients, in the order the
// source lists them.
std::span<const double> cancer_remission_times();

// The embedded dataset as a sorted sample.
SampleData load_cancer_dataset();

struct AnalysisRow {
  Window window;
  double spacing;
  double kde_integral;
  double kde_plugin;
  double model_iv_constant;    // rate^2/48 for the fitted exponential
  double model_iv_quadrature;  // defining integral for the same model
  int m;
  double h;
};

// Per-window estimates next to the fitted-exponential reference values.
// `base` supplies shared conventions (bandwidth rule, m override, panels).
std::vector<AnalysisRow> analyze(const SampleData& s,
                                 const std::vector<Window>& windows,
                                 double lambda,
                                 const EstimatorConfig& base = {});

}  // namespace ivx
