#include "ivx/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ivx/errors.hpp"

namespace ivx {

namespace {

using Fn = std::function<double(double)>;

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const Fn& f, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_segment(const Fn& f, double a, double b, double tol,
                         int max_depth) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a);
  double fm = f(m);
  double fb = f(b);
  double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Seed panels for one smooth segment: a dyadic ladder from both endpoints
// down to 2^-40 of the range. Mass concentrated near either end at any
// scale above that is guaranteed a probe, and flat far panels cost one
// accepted Simpson step each.
std::vector<double> seed_points(double a, double b) {
  constexpr int kLevels = 40;
  std::vector<double> pts;
  pts.push_back(a);
  double range = b - a;
  for (int k = kLevels; k >= 1; --k) {
    double off = std::ldexp(range, -k);
    pts.push_back(a + off);
    pts.push_back(b - off);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // collapse anything that escaped [a, b] through rounding
  pts.erase(std::remove_if(pts.begin(), pts.end(),
                           [&](double x) { return x < a || x > b; }),
            pts.end());
  return pts;
}

}  // namespace

double integrate(const Fn& f, double a, double b,
                 std::span<const double> interior_breaks,
                 const QuadratureConfig& q) {
  if (!(q.abs_tol > 0.0)) throw DomainError("integrate: abs_tol must be positive");
  if (!(a <= b)) throw DomainError("integrate: bounds out of order");
  if (a == b) return 0.0;

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double t : interior_breaks) {
    if (t > a && t < b) cuts.push_back(t);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::vector<double> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto seeded = seed_points(cuts[i], cuts[i + 1]);
    if (!panels.empty()) panels.pop_back();  // shared endpoint
    panels.insert(panels.end(), seeded.begin(), seeded.end());
  }

  double tol = q.abs_tol / static_cast<double>(panels.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    total += integrate_segment(f, panels[i], panels[i + 1], tol, q.max_depth);
  }
  return total;
}

double integrate(const Fn& f, double a, double b, const QuadratureConfig& q) {
  return integrate(f, a, b, std::span<const double>{}, q);
}

}  // namespace ivx
