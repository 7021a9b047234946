#pragma once

#include <functional>
#include <optional>

#include "ivx/distributions.hpp"
#include "ivx/quadrature.hpp"
#include "ivx/window.hpp"

namespace ivx {

// Measures of the doubly truncated variable X_{t1,t2} = (X | t1 < X < t2).
// Windows may reach past the support; probability mass between the endpoints
// must be positive. An infinite endpoint is replaced by the 1e-12 tail
// quantile for numeric work.

bool window_valid(const Distribution& model, const Window& w);
// Throws DegenerateWindowError when the window carries no mass.
void require_window(const Distribution& model, const Window& w);

// Interval extropy IJ(t1,t2) = -(1/2) (F(t2)-F(t1))^-2 ∫ f^2, by quadrature.
double interval_extropy_numeric(const Distribution& model, const Window& w,
                                const QuadratureConfig& q = {});

// Printed/derived closed forms (exponential, pareto1, power, squarecdf,
// uniform). Other kinds raise NoClosedFormError.
double interval_extropy_closed(const Distribution& model, const Window& w);

// Interval varextropy IV(t1,t2) =
//   (1/4) Δ^-3 ∫ f^3 - (1/4) Δ^-4 (∫ f^2)^2,  Δ = F(t2)-F(t1).
double interval_varextropy_numeric(const Distribution& model, const Window& w,
                                   const QuadratureConfig& q = {});
double interval_varextropy_closed(const Distribution& model, const Window& w);

// The exponential's interval varextropy is window-free: direct integration
// collapses to rate^2/48, which is also what constancy characterizations
// require. This helper evaluates the window-dependent variant sometimes
// quoted for the exponential; it does NOT satisfy the defining integral
// (more than 10x off on narrow windows) and exists only for comparison.
double exponential_iv_window_formula(double rate, const Window& w);

// Generalized failure rate h_i(t1,t2) = f(t_i) / (F(t2)-F(t1)), i in {1,2}.
double gfr(const Distribution& model, const Window& w, int i);

struct Moments {
  double mean;
  double variance;
};

// Mean and variance of X restricted to the window, by quadrature.
Moments truncated_mean_var(const Distribution& model, const Window& w,
                           const QuadratureConfig& q = {});

// Variance-weight lower bound: (1/4) σ² (E[W' f_t])² with
// σ² W(x) f_t(x) = ∫_{t1}^x (m - z) f_t(z) dz. Nested quadrature; requires a
// density that is positive on the window interior.
double variance_weight_lower_bound(const Distribution& model, const Window& w,
                        const QuadratureConfig& q = {});

// Exponential-family description f(x) = exp(eta*tau(x) + Q + R(x)).
struct ExpFamilySpec {
  double eta;                            // must be nonzero
  std::function<double(double)> tau;
  double Q;
  std::function<double(double)> R;       // must be >= 0 on the window
};

// Built-in spec for catalogue members that admit one with R >= 0 on positive
// windows (exponential; gamma with shape >= 1 needs windows at x >= 1).
std::optional<ExpFamilySpec> exp_family_spec_for(const Distribution& model);

// Upper bound for densities in the exponential family:
//   1/(4Δ³) - [2 eta A + 2 Q (t2-t1) + 2 B + (t2-t1)] / (4Δ⁴),
// A = ∫ tau, B = ∫ R over the (finite) window. The spec must reproduce the
// model density within 1e-9 on the quadrature grid.
double exp_family_upper_bound(const ExpFamilySpec& spec, const Distribution& model,
                        const Window& w, const QuadratureConfig& q = {});

// Interval varextropy of Y = a X + b (a > 0, b >= 0) from the law of X:
// (1/a²) IV_X over the pulled-back window, endpoints re-ordered ascending.
double linear_transform_iv(const Distribution& model, double a, double b,
                           const Window& w, const QuadratureConfig& q = {});

}  // namespace ivx
