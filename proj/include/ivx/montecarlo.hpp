#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ivx/distributions.hpp"
#include "ivx/estimators.hpp"
#include "ivx/window.hpp"

namespace ivx {

// Runs fn(i) for i in [0, count) across `workers` threads. Work is chunked
// by index, so fn must not care about execution order; results belong in
// preallocated per-index slots.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

struct SimulationPlan {
  Distribution model;
  Window window;
  std::vector<int> sizes;
  int reps = 10000;
  std::vector<EstimatorConfig> estimators;
  std::uint64_t seed = 0;
  double true_value = 0.0;
};

struct StudyRow {
  int n;
  EstimatorKind estimator;
  double bias;
  double mse;
  int failures;
};

struct StudyReport {
  std::vector<StudyRow> rows;
  std::uint64_t seed = 0;
  int reps = 0;
};

// Bias/MSE study. Replication r of size n draws from the stream keyed by
// (seed, simulation tag, n, r), so reports are bit-identical for any worker
// count. Replications where an estimator throws (empty window mass, ties)
// are excluded from the averages and counted in `failures`.
StudyReport run_study(const SimulationPlan& plan, int workers = 1);

// Reference value for a plan: closed form when the catalogue has one,
// otherwise the quadrature oracle.
double true_iv(const Distribution& model, const Window& w);

}  // namespace ivx
