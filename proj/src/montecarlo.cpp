#include "ivx/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ivx/errors.hpp"
#include "ivx/rng.hpp"
#include "ivx/truncated_measures.hpp"

namespace ivx {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::clamp(workers, 1, count > 0 ? count : 1);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  int chunk = (count + workers - 1) / workers;
  for (int wi = 0; wi < workers; ++wi) {
    int begin = wi * chunk;
    int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const SimulationPlan& plan) {
  if (plan.reps < 1) throw DomainError("plan needs reps >= 1");
  if (plan.sizes.empty()) throw DomainError("plan needs at least one size");
  if (plan.estimators.empty()) throw DomainError("plan needs estimators");
  if (!std::isfinite(plan.true_value)) {
    throw DomainError("plan true_value must be finite");
  }
  for (int n : plan.sizes) {
    if (n < 2) throw DomainError("plan sizes must be >= 2");
  }
}

}  // namespace

StudyReport run_study(const SimulationPlan& plan, int workers) {
  validate(plan);
  StudyReport report;
  report.seed = plan.seed;
  report.reps = plan.reps;

  const int ne = static_cast<int>(plan.estimators.size());
  for (int n : plan.sizes) {
    // results[r*ne + e]; NaN marks a failed replication for that estimator.
    std::vector<double> results(
        static_cast<std::size_t>(plan.reps) * static_cast<std::size_t>(ne),
        kNaN);
    parallel_for(plan.reps, workers, [&](int r) {
      auto rng = RandomStream::derive(plan.seed, stream_tag::simulation,
                                      static_cast<std::uint64_t>(n),
                                      static_cast<std::uint64_t>(r));
      SampleData s = sample(plan.model, n, rng);
      for (int e = 0; e < ne; ++e) {
        try {
          results[static_cast<std::size_t>(r) * ne + e] =
              estimate(s, plan.window, plan.estimators[e]);
        } catch (const DomainError&) {
          // excluded-and-counted below
        }
      }
    });

    for (int e = 0; e < ne; ++e) {
      double sum_err = 0.0, sum_sq = 0.0;
      int ok = 0;
      for (int r = 0; r < plan.reps; ++r) {
        double v = results[static_cast<std::size_t>(r) * ne + e];
        if (std::isnan(v)) continue;
        double err = v - plan.true_value;
        sum_err += err;
        sum_sq += err * err;
        ++ok;
      }
      StudyRow row;
      row.n = n;
      row.estimator = plan.estimators[static_cast<std::size_t>(e)].kind;
      row.failures = plan.reps - ok;
      row.bias = ok > 0 ? sum_err / ok : kNaN;
      row.mse = ok > 0 ? sum_sq / ok : kNaN;
      report.rows.push_back(row);
    }
  }
  return report;
}

double true_iv(const Distribution& model, const Window& w) {
  try {
    return interval_varextropy_closed(model, w);
  } catch (const NoClosedFormError&) {
    return interval_varextropy_numeric(model, w);
  }
}

}  // namespace ivx
