#include "psn/sharp_bounds.hpp"

#include <cmath>
#include <sstream>

#include "psn/errors.hpp"

namespace psn {

namespace {

/// e^x - 1 - x without cancellation for small x.
double exp_minus_linear(double x) {
  if (std::abs(x) < 0.5) {
    double term = x * x / 2.0;
    double sum = term;
    for (int n = 3; n < 40 && std::abs(term) > 1e-18 * std::abs(sum); ++n) {
      term *= x / n;
      sum += term;
    }
    return sum;
  }
  return std::expm1(x) - x;
}

}  // namespace

double AlphaEquation::operator()(double r) const {
  const double k = spec_.parameter();
  const double r2 = r * r;
  if (spec_.family() == Family::Exp) {
    const double x = k * r;
    const double d = exp_minus_linear(x);
    if (spec_.variant() == Variant::Starlike) {
      return (x * x - d) + x * d - r2 * (d + 4.0 * x + x * x + x * d);
    }
    return (x * x - d) + x * d - r2 * (2.0 * x + x * x + x * d + d);
  }
  const double w = std::sqrt(1.0 - k * r);
  const double v = k * r / (1.0 + w);  // 1 - w
  if (spec_.variant() == Variant::Starlike) {
    const double w2 = w * w;
    return v * (v * (w2 * w + w2 + 2.0 * w + 1.0) -
                r2 * (3.0 * w2 * w2 + 2.0 * w2 * w + w2 + w + 1.0));
  }
  return k * r * v / (1.0 + w) + r2 * (2.0 * v - 3.0 * k * r);
}

double AlphaEquation::printed(double r) const {
  const double k = spec_.parameter();
  const double r2 = r * r;
  const double r3 = r2 * r;
  if (spec_.family() == Family::Exp) {
    const double e = std::exp(k * r);
    if (spec_.variant() == Variant::Starlike) {
      return 1.0 + r2 - 2.0 * k * r3 - e * (1.0 - k * r + r2 + k * r3);
    }
    return k * r * e * (1.0 - r2) - (1.0 + r2) * (e - 1.0);
  }
  if (spec_.variant() == Variant::Starlike) {
    return -2.0 + 4.0 * k * r - (2.0 + k * k) * r2 + 2.0 * k * r3 - k * k * r2 * r2 +
           std::pow(1.0 - k * r, 1.5) * (2.0 - k * r + 2.0 * r2 - 3.0 * k * r3);
  }
  return 2.0 * (1.0 + r2) * (1.0 - std::sqrt(1.0 - k * r)) - k * (r + 3.0 * r3);
}

double AlphaEquation::derivative_denominator(double r) const {
  const double k = spec_.parameter();
  const double r2 = r * r;
  if (spec_.family() == Family::Exp) return r2;
  if (spec_.variant() == Variant::Starlike) return 2.0 * r2 * (1.0 - k * r) * (1.0 - k * r);
  return 2.0 * r2 * std::sqrt(1.0 - k * r);
}

double corollary_equation(double r) {
  return -2.0 - r * r + (2.0 + r + 3.0 * r * r) * std::sqrt(1.0 - r);
}

double corollary_bound(double alpha) {
  return (1.0 + alpha) * (2.0 - alpha - 2.0 * std::pow(1.0 - alpha, 1.5)) / (2.0 * alpha);
}

double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                         double width) {
  if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: F(lo) = " << f(lo)
        << ", F(hi) = " << f(hi);
    throw BracketFailure(msg.str());
  }
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

int count_sign_changes(const std::function<double(double)>& f, double lo, double hi, int points) {
  int changes = 0;
  int previous = 0;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = f(x);
    const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++changes;
    previous = sign;
  }
  return changes;
}

BoundReport alpha_root(const ClassSpec& spec) {
  const AlphaEquation equation(spec);
  const auto f = [&equation](double r) { return equation(r); };

  double lo = 1e-8;
  while (!(f(lo) > 0.0)) {
    lo *= 2.0;
    if (lo > 0.5) throw BracketFailure("alpha equation is not positive near 0 for " + spec.label());
  }
  const double hi = 1.0 - 1e-6;

  BoundReport report{spec};
  report.bracket = {lo, hi};
  report.alpha = bisect_decreasing(f, lo, hi);
  report.residual = std::abs(f(report.alpha));
  if (!(report.residual <= kRootResidual)) {
    throw BracketFailure("alpha residual above 1e-10 for " + spec.label());
  }
  report.sign_changes = count_sign_changes(f, 1e-6, 1.0 - 1e-6, kSignScanPoints);
  report.bound = bound_expression(spec, report.alpha);
  return report;
}

double bound_expression(const ClassSpec& spec, double a) {
  const double k = spec.parameter();
  const double weight = 1.0 - a * a;
  if (spec.family() == Family::Exp) {
    const double em1 = std::expm1(k * a);
    if (spec.variant() == Variant::Starlike) return weight * (em1 + k * a) / a;
    return weight * em1 / a;
  }
  // (1 - sqrt(1 - c a)) / a = c / (1 + sqrt(1 - c a))
  const double radical = weight * k / (1.0 + std::sqrt(1.0 - k * a));
  if (spec.variant() == Variant::Starlike) return k * weight / (2.0 * (1.0 - k * a)) + radical;
  return radical;
}

BoundReport norm_bound(const ClassSpec& spec) {
  BoundReport report = alpha_root(spec);
  if (spec.family() == Family::Sqrt && spec.variant() == Variant::Starlike &&
      spec.parameter() == 1.0) {
    const double alt = corollary_bound(report.alpha);
    if (std::abs(alt - report.bound) > 1e-12) {
      throw BracketFailure("c = 1 bound forms disagree beyond 1e-12");
    }
  }
  return report;
}

}  // namespace psn
