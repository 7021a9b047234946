#pragma once

#include <functional>
#include <span>

namespace ivx {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_depth = 60;
};

// Adaptive Simpson integral of f over [a, b] (a <= b). The overload taking
// `breaks` never straddles the listed interior abscissae, so piecewise
// densities integrate at full order. Ranges spanning several decades are
// pre-split geometrically before adapting; otherwise a single starting panel
// can sample past all the mass and terminate early.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& q = {});
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> interior_breaks,
                 const QuadratureConfig& q = {});

}  // namespace ivx
