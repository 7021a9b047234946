#include "ivx/truncated_measures.hpp"

#include <algorithm>
#include <cmath>

#include "ivx/errors.hpp"

namespace ivx {

namespace {

constexpr double kTailMass = 1e-12;

struct ResolvedWindow {
  double lo;    // integration range, clipped to the support
  double hi;
  double mass;  // exact F(t2) - F(t1)
};

ResolvedWindow resolve(const Distribution& model, const Window& w) {
  if (!w.ordered()) {
    throw DegenerateWindowError("window endpoints must satisfy t1 < t2");
  }
  double mass = model.cdf(w.t2) - model.cdf(w.t1);
  if (!(mass > 0.0)) {
    throw DegenerateWindowError("window carries no probability mass");
  }
  Support sup = model.support();
  double lo = std::max(w.t1, sup.lower);
  double hi = std::min(w.t2, sup.upper);
  if (std::isinf(hi)) hi = model.quantile(1.0 - kTailMass);
  return {lo, hi, mass};
}

double integral_of_pdf_power(const Distribution& model,
                             const ResolvedWindow& rw, int power,
                             const QuadratureConfig& q) {
  auto kinks = model.interior_kinks();
  return integrate(
      [&model, power](double x) {
        double f = model.pdf(x);
        double acc = f;
        for (int i = 1; i < power; ++i) acc *= f;
        return acc;
      },
      rw.lo, rw.hi, kinks, q);
}

[[noreturn]] void no_closed_form(const Distribution& model) {
  throw NoClosedFormError("no closed form for " + model.describe());
}

}  // namespace

bool window_valid(const Distribution& model, const Window& w) {
  return w.ordered() && model.cdf(w.t2) - model.cdf(w.t1) > 0.0;
}

void require_window(const Distribution& model, const Window& w) {
  resolve(model, w);
}

double interval_extropy_numeric(const Distribution& model, const Window& w,
                                const QuadratureConfig& q) {
  auto rw = resolve(model, w);
  double i2 = integral_of_pdf_power(model, rw, 2, q);
  return -0.5 * i2 / (rw.mass * rw.mass);
}

double interval_varextropy_numeric(const Distribution& model, const Window& w,
                                   const QuadratureConfig& q) {
  auto rw = resolve(model, w);
  double i2 = integral_of_pdf_power(model, rw, 2, q);
  double i3 = integral_of_pdf_power(model, rw, 3, q);
  double m3 = rw.mass * rw.mass * rw.mass;
  return 0.25 * i3 / m3 - 0.25 * (i2 * i2) / (m3 * rw.mass);
}

double interval_extropy_closed(const Distribution& model, const Window& w) {
  auto rw = resolve(model, w);
  double t1 = rw.lo;
  double t2 = std::min(w.t2, model.support().upper);  // keep +inf visible
  switch (model.kind()) {
    case DistKind::exponential: {
      double lam = model.param1();
      double a = std::exp(-lam * t1);
      double b = std::isinf(t2) ? 0.0 : std::exp(-lam * t2);
      return -0.25 * lam * (a + b) / (a - b);
    }
    case DistKind::pareto1: {
      double b = model.param2();
      if (std::isinf(t2)) return -b * b / (2.0 * (2.0 * b + 1.0) * t1);
      double num = std::pow(t1, 2.0 * b + 1.0) - std::pow(t2, 2.0 * b + 1.0);
      double den = std::pow(t2, b) - std::pow(t1, b);
      return b * b * num / (2.0 * (2.0 * b + 1.0) * t1 * t2 * den * den);
    }
    case DistKind::power: {
      double b = model.param2();
      if (std::fabs(2.0 * b - 1.0) < 1e-9) no_closed_form(model);
      double num = std::pow(t2, 2.0 * b - 1.0) - std::pow(t1, 2.0 * b - 1.0);
      double den = std::pow(t2, b) - std::pow(t1, b);
      return -b * b * num / (2.0 * (2.0 * b - 1.0) * den * den);
    }
    case DistKind::square_cdf: {
      double s = t2 * t2 + t1 * t2 + t1 * t1;
      return -2.0 * s / (3.0 * (t2 * t2 - t1 * t1) * (t2 + t1));
    }
    case DistKind::uniform:
      return -0.5 / (t2 - t1);
    default:
      no_closed_form(model);
  }
}

double interval_varextropy_closed(const Distribution& model, const Window& w) {
  auto rw = resolve(model, w);
  double t1 = rw.lo;
  double t2 = std::min(w.t2, model.support().upper);
  switch (model.kind()) {
    case DistKind::exponential: {
      // Window-free: the defining integral collapses to rate^2/48.
      double lam = model.param1();
      return lam * lam / 48.0;
    }
    case DistKind::pareto1: {
      double b = model.param2();
      if (std::isinf(t2)) {
        return 0.25 * b * b * b / (t1 * t1) *
               (1.0 / (3.0 * b + 2.0) - b / ((2.0 * b + 1.0) * (2.0 * b + 1.0)));
      }
      double dn = std::pow(t2, b) - std::pow(t1, b);
      double first =
          (std::pow(t2, 3.0 * b + 2.0) - std::pow(t1, 3.0 * b + 2.0)) /
          (3.0 * b + 2.0);
      double diff = std::pow(t1, 2.0 * b + 1.0) - std::pow(t2, 2.0 * b + 1.0);
      double second = b * diff * diff / ((2.0 * b + 1.0) * (2.0 * b + 1.0) * dn);
      return b * b * b * (first - second) /
             (4.0 * dn * dn * dn * t1 * t1 * t2 * t2);
    }
    case DistKind::power: {
      double b = model.param2();
      if (std::fabs(2.0 * b - 1.0) < 1e-9 || std::fabs(3.0 * b - 2.0) < 1e-9) {
        no_closed_form(model);
      }
      double dn = std::pow(t2, b) - std::pow(t1, b);
      double first =
          (std::pow(t2, 3.0 * b - 2.0) - std::pow(t1, 3.0 * b - 2.0)) /
          (3.0 * b - 2.0);
      double diff = std::pow(t2, 2.0 * b - 1.0) - std::pow(t1, 2.0 * b - 1.0);
      double second = b * diff * diff / ((2.0 * b - 1.0) * (2.0 * b - 1.0) * dn);
      return b * b * b * (first - second) / (4.0 * dn * dn * dn);
    }
    case DistKind::square_cdf: {
      double d2 = t2 * t2 - t1 * t1;
      double s = t2 * t2 + t1 * t2 + t1 * t1;
      double inner = 0.5 * (t2 * t2 + t1 * t1) -
                     (4.0 / 9.0) * s * s / ((t2 + t1) * (t2 + t1));
      return inner / (d2 * d2);
    }
    case DistKind::uniform:
      return 0.0;
    default:
      no_closed_form(model);
  }
}

double exponential_iv_window_formula(double rate, const Window& w) {
  double a = std::exp(-rate * std::max(w.t1, 0.0));
  double b = std::isinf(w.t2) ? 0.0 : std::exp(-rate * w.t2);
  double r = (a + b) / (a - b);
  return rate * rate / 48.0 * r * r;
}

double gfr(const Distribution& model, const Window& w, int i) {
  if (i != 1 && i != 2) throw DomainError("gfr index must be 1 or 2");
  auto rw = resolve(model, w);
  double t = i == 1 ? w.t1 : w.t2;
  return model.pdf(t) / rw.mass;
}

Moments truncated_mean_var(const Distribution& model, const Window& w,
                           const QuadratureConfig& q) {
  auto rw = resolve(model, w);
  auto kinks = model.interior_kinks();
  double m1 = integrate([&](double x) { return x * model.pdf(x); }, rw.lo,
                        rw.hi, kinks, q) /
              rw.mass;
  double m2 = integrate([&](double x) { return x * x * model.pdf(x); }, rw.lo,
                        rw.hi, kinks, q) /
              rw.mass;
  return {m1, std::max(m2 - m1 * m1, 0.0)};
}

double variance_weight_lower_bound(const Distribution& model, const Window& w,
                        const QuadratureConfig& q) {
  auto rw = resolve(model, w);
  auto kinks = model.interior_kinks();

  // W(x) has the density in its denominator; an interior zero is fatal even
  // though it cancels in the integrated form below.
  for (int j = 1; j < 200; ++j) {
    double x = rw.lo + (rw.hi - rw.lo) * j / 200.0;
    if (!(model.pdf(x) > 0.0)) {
      throw DomainError("density vanishes inside the window");
    }
  }

  auto mv = truncated_mean_var(model, w, q);
  if (!(mv.variance > 0.0)) return 0.0;

  double mass = rw.mass;
  auto centered = [&](double z) { return (mv.mean - z) * model.pdf(z) / mass; };

  // E[W f_t'] = (1/σ²) ∫ f_t'(x) G(x) dx with G(x) = ∫_{t1}^x (m-z) f_t(z) dz
  // = σ² W(x) f_t(x); the 1/f in W cancels against the outer density.
  auto integrand = [&](double x) {
    double g = integrate(centered, rw.lo, x, kinks, q);
    return model.pdf_derivative(x) / mass * g;
  };
  double expectation =
      integrate(integrand, rw.lo, rw.hi, kinks, q) / mv.variance;
  return 0.25 * mv.variance * expectation * expectation;
}

std::optional<ExpFamilySpec> exp_family_spec_for(const Distribution& model) {
  switch (model.kind()) {
    case DistKind::exponential: {
      double lam = model.param1();
      return ExpFamilySpec{-lam, [](double x) { return x; }, std::log(lam),
                           [](double) { return 0.0; }};
    }
    case DistKind::gamma: {
      double k = model.param1();
      double theta = model.param2();
      return ExpFamilySpec{-theta, [](double x) { return x; },
                           k * std::log(theta) - std::lgamma(k),
                           [k](double x) { return (k - 1.0) * std::log(x); }};
    }
    default:
      return std::nullopt;
  }
}

double exp_family_upper_bound(const ExpFamilySpec& spec, const Distribution& model,
                        const Window& w, const QuadratureConfig& q) {
  if (spec.eta == 0.0) throw DomainError("exponential-family eta must be nonzero");
  auto rw = resolve(model, w);
  if (std::isinf(w.t1) || std::isinf(w.t2)) {
    throw DomainError("the upper bound needs a finite window");
  }

  for (int j = 0; j <= 200; ++j) {
    double x = w.t1 + (w.t2 - w.t1) * j / 200.0;
    double r = spec.R(x);
    if (r < -1e-12) {
      throw DomainError("exponential-family R(x) is negative on the window");
    }
    double reproduced = std::exp(spec.eta * spec.tau(x) + spec.Q + r);
    double f = model.pdf(x);
    if (std::fabs(reproduced - f) > 1e-9 * std::max(1.0, std::fabs(f))) {
      throw InconsistentSpecError(
          "exponential-family spec does not reproduce the model density");
    }
  }

  double width = w.t2 - w.t1;
  double a_int = integrate(spec.tau, w.t1, w.t2, q);
  double b_int = integrate(spec.R, w.t1, w.t2, q);
  double m = rw.mass;
  double m3 = m * m * m;
  double bracket = 2.0 * spec.eta * a_int + 2.0 * spec.Q * width +
                   2.0 * b_int + width;
  return 0.25 / m3 - 0.25 * bracket / (m3 * m);
}

double linear_transform_iv(const Distribution& model, double a, double b,
                           const Window& w, const QuadratureConfig& q) {
  if (!(a > 0.0)) throw DomainError("linear transform needs a > 0");
  if (b < 0.0) throw DomainError("linear transform needs b >= 0");
  // Pulled-back endpoints come out descending when read as ((t2-b)/a,
  // (t1-b)/a); membership in D needs them ascending.
  double u1 = (w.t1 - b) / a;
  double u2 = (w.t2 - b) / a;
  Window pulled{std::min(u1, u2), std::max(u1, u2)};
  return interval_varextropy_numeric(model, pulled, q) / (a * a);
}

}  // namespace ivx
