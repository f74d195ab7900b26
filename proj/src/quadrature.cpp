#include "psn/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "psn/errors.hpp"

namespace psn {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

namespace {

const GaussLegendreRule& rule16() {
  static const GaussLegendreRule rule = gauss_legendre(16);
  return rule;
}

Complex apply_rule(const std::function<Complex(Complex)>& f, Complex a, Complex b) {
  const auto& rule = rule16();
  const Complex mid = 0.5 * (a + b);
  const Complex half = 0.5 * (b - a);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return acc * half;
}

Complex adapt(const std::function<Complex(Complex)>& f, Complex a, Complex b, Complex whole,
              double tolerance, int depth) {
  const Complex m = 0.5 * (a + b);
  const Complex left = apply_rule(f, a, m);
  const Complex right = apply_rule(f, m, b);
  const Complex split = left + right;
  if (depth <= 0 || std::abs(split - whole) <= tolerance * std::max(1.0, std::abs(split))) {
    return split;
  }
  return adapt(f, a, m, left, tolerance, depth - 1) + adapt(f, m, b, right, tolerance, depth - 1);
}

}  // namespace

Complex integrate_segment(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                          double tolerance, int max_depth) {
  if (a == b) return 0.0;
  const Complex result = adapt(f, a, b, apply_rule(f, a, b), tolerance, max_depth);
  if (!is_finite(result)) throw EvaluationFailure("segment quadrature produced a non-finite value");
  return result;
}

}  // namespace psn
