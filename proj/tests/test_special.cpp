#include <doctest.h>

#include <cmath>

#include "ivx/errors.hpp"
#include "ivx/special.hpp"

using ivx::special::reg_lower_gamma;

TEST_CASE("P(1,x) is the exponential CDF") {
  for (double x : {0.1, 0.5, 1.0, 1.9, 2.5, 10.0}) {
    CHECK(reg_lower_gamma(1.0, x) ==
          doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));
  }
}

TEST_CASE("P(1/2,x) matches erf(sqrt(x))") {
  for (double x : {0.25, 1.0, 2.0, 4.0}) {
    CHECK(reg_lower_gamma(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
  }
}

TEST_CASE("series and continued fraction agree at the switchover") {
  double k = 2.0;
  double below = reg_lower_gamma(k, k + 1.0 - 1e-9);
  double above = reg_lower_gamma(k, k + 1.0 + 1e-9);
  CHECK(std::fabs(below - above) < 1e-8);
}

TEST_CASE("boundary values and monotonicity") {
  CHECK(reg_lower_gamma(3.0, 0.0) == 0.0);
  double prev = 0.0;
  for (double x = 0.25; x < 30.0; x += 0.25) {
    double p = reg_lower_gamma(3.0, x);
    CHECK(p >= prev);
    CHECK(p <= 1.0);
    prev = p;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), ivx::DomainError);
}
