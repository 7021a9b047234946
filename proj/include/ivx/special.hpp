#pragma once

namespace ivx::special {

// Regularized lower incomplete gamma P(k, x) = γ(k, x) / Γ(k), k > 0, x >= 0.
// Series expansion for x < k + 1, Lentz continued fraction for the
// complement otherwise; absolute error below 1e-14.
double reg_lower_gamma(double k, double x);

}  // namespace ivx::special
