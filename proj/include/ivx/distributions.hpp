#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ivx {

// Parametric laws used across the toolkit. square_cdf is F(x)=x^2 on (0,1);
// example5 is the fixed piecewise law F(x)=exp(-1/2-1/x) on (0,1],
// exp(-2+x^2/2) on [1,2).
enum class DistKind {
  exponential,
  pareto1,
  power,
  square_cdf,
  example5,
  uniform,
  gamma,
};

struct Support {
  double lower;
  double upper;  // +inf for unbounded tails
};

// Immutable catalogue member. pdf/cdf clamp outside the support instead of
// erroring so indicator-style probes can pass arbitrary reals; quantile is
// the exact inverse of cdf on (0,1).
class Distribution {
 public:
  static Distribution exponential(double rate);
  static Distribution pareto1(double scale, double shape);
  static Distribution power(double scale, double shape);
  static Distribution square_cdf();
  static Distribution example5();
  static Distribution uniform(double lo, double hi);
  static Distribution gamma(double shape, double rate);

  DistKind kind() const { return kind_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  Support support() const;
  // Interior abscissae where the density is not smooth (example5's x=1).
  std::vector<double> interior_kinks() const;

  double pdf(double x) const;
  // d/dx pdf, evaluated piecewise (one-sided from the left) at kinks.
  double pdf_derivative(double x) const;
  double cdf(double x) const;
  double quantile(double u) const;

  // n inverse-CDF draws in stream order, one uniform consumed per draw.
  template <class UniformGen>
  std::vector<double> draw(int n, UniformGen&& u01) const {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs.push_back(quantile(u01()));
    return xs;
  }

  // Canonical spec string, e.g. "exp:rate=1".
  std::string describe() const;

 private:
  Distribution(DistKind kind, double p1, double p2)
      : kind_(kind), p1_(p1), p2_(p2) {}

  double gamma_quantile(double u) const;

  DistKind kind_;
  double p1_;
  double p2_;
};

// Parses the CLI distribution grammar: exp:rate=1, pareto1:a=1,b=2,
// power:a=1,b=2, squarecdf, example5, uniform:lo=0,hi=1, gamma:shape=2,rate=1.
// Unknown keys and out-of-range parameters raise ParseError naming the token.
Distribution parse_distribution(const std::string& spec);

}  // namespace ivx
