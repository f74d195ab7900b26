#pragma once

#include <functional>
#include <vector>

#include "psn/disk.hpp"

namespace psn {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule; nodes from Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

/// Integral of f(t) over the straight segment from a to b, by adaptive
/// bisection comparing a 16-point rule against its two halves. The
/// tolerance is relative to max(1, |panel value|) and applies per panel.
Complex integrate_segment(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                          double tolerance = 1e-14, int max_depth = 30);

}  // namespace psn
