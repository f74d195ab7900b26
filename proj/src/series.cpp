#include "psn/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "psn/errors.hpp"

namespace psn {

namespace {

int common_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  return std::min(a.order(), b.order());
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw InvalidArgument("truncated series needs order >= 1");
  for (const auto& c : coeffs_) {
    if (!is_finite(c)) throw InvalidArgument("truncated series has a non-finite coefficient");
  }
}

TruncatedSeries TruncatedSeries::zero(int order) {
  if (order < 1) throw InvalidArgument("truncated series needs order >= 1");
  return TruncatedSeries(std::vector<Complex>(static_cast<std::size_t>(order) + 1));
}

TruncatedSeries TruncatedSeries::constant(Complex value, int order) {
  auto s = zero(order);
  s.coeffs_[0] = value;
  return s;
}

TruncatedSeries TruncatedSeries::identity(int order) {
  auto s = zero(order);
  s.coeffs_[1] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::geometric(int order) {
  auto s = zero(order);
  std::fill(s.coeffs_.begin(), s.coeffs_.end(), Complex(1.0));
  return s;
}

TruncatedSeries TruncatedSeries::with_order(int order) const {
  auto s = zero(order);
  const int n = std::min(order, this->order());
  std::copy_n(coeffs_.begin(), n + 1, s.coeffs_.begin());
  return s;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
  auto s = zero(order());
  const int n = order();
  for (int i = 0; i <= n; ++i) {
    const int j = i + k;
    if (j >= 0 && j <= n) s.coeffs_[static_cast<std::size_t>(j)] = (*this)[i];
  }
  return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  auto s = a.with_order(common_order(a, b));
  for (int i = 0; i <= s.order(); ++i) s.coeffs_[static_cast<std::size_t>(i)] += b[i];
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  auto s = a.with_order(common_order(a, b));
  for (int i = 0; i <= s.order(); ++i) s.coeffs_[static_cast<std::size_t>(i)] -= b[i];
  return s;
}

TruncatedSeries operator*(Complex k, const TruncatedSeries& a) {
  auto s = a;
  for (auto& c : s.coeffs_) c *= k;
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_mul(a, b);
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = common_order(a, b);
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Complex acc = 0.0;
    for (int i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    c[static_cast<std::size_t>(k)] = acc;
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
  const int n = a.order();
  std::vector<Complex> e(static_cast<std::size_t>(n) + 1);
  e[0] = std::exp(a[0]);
  for (int m = 1; m <= n; ++m) {
    Complex acc = 0.0;
    for (int k = 1; k <= m; ++k) acc += static_cast<double>(k) * a[k] * e[static_cast<std::size_t>(m - k)];
    e[static_cast<std::size_t>(m)] = acc / static_cast<double>(m);
  }
  return TruncatedSeries(std::move(e));
}

TruncatedSeries series_log(const TruncatedSeries& a) {
  if (a[0] == Complex(0.0)) throw ZeroConstantTerm("log of a series with zero constant term");
  const int n = a.order();
  std::vector<Complex> l(static_cast<std::size_t>(n) + 1);
  l[0] = std::log(a[0]);
  for (int m = 1; m <= n; ++m) {
    Complex acc = static_cast<double>(m) * a[m];
    for (int k = 1; k < m; ++k) acc -= static_cast<double>(k) * l[static_cast<std::size_t>(k)] * a[m - k];
    l[static_cast<std::size_t>(m)] = acc / (static_cast<double>(m) * a[0]);
  }
  return TruncatedSeries(std::move(l));
}

TruncatedSeries series_sqrt(const TruncatedSeries& a) {
  if (a[0].imag() == 0.0 && a[0].real() <= 0.0) {
    throw BranchCut("sqrt of a series whose constant term lies on (-inf, 0]");
  }
  const int n = a.order();
  std::vector<Complex> s(static_cast<std::size_t>(n) + 1);
  s[0] = std::sqrt(a[0]);
  for (int m = 1; m <= n; ++m) {
    Complex acc = a[m];
    for (int k = 1; k < m; ++k) acc -= s[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(m - k)];
    s[static_cast<std::size_t>(m)] = acc / (2.0 * s[0]);
  }
  return TruncatedSeries(std::move(s));
}

TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  if (inner[0] != Complex(0.0)) {
    throw NonvanishingInner("composition needs an inner series vanishing at 0");
  }
  const int n = common_order(outer, inner);
  // Horner in the inner series; each step multiplies by a series with zero
  // constant term, so truncation at order n is exact.
  auto acc = TruncatedSeries::constant(outer[n], n);
  const auto w = inner.with_order(n);
  for (int k = n - 1; k >= 0; --k) {
    acc = series_mul(acc, w) + TruncatedSeries::constant(outer[k], n);
  }
  return acc;
}

TruncatedSeries series_derivative(const TruncatedSeries& a) {
  const int n = a.order();
  std::vector<Complex> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) d[static_cast<std::size_t>(k)] = static_cast<double>(k + 1) * a[k + 1];
  return TruncatedSeries(std::move(d));
}

TruncatedSeries series_integrate(const TruncatedSeries& a) {
  const int n = a.order();
  std::vector<Complex> d(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) d[static_cast<std::size_t>(k)] = a[k - 1] / static_cast<double>(k);
  return TruncatedSeries(std::move(d));
}

SeriesValue series_eval(const TruncatedSeries& a, UnitDiskPoint z, double radius) {
  const double rho = z.modulus();
  // polar(0.9, t) may land an ulp outside
  if (rho > radius * (1.0 + 1e-14)) {
    throw EvalRadiusExceeded("series evaluation at |z| = " + std::to_string(rho) +
                             " beyond radius " + std::to_string(radius));
  }
  const int n = a.order();
  Complex acc = a[n];
  for (int k = n - 1; k >= 0; --k) acc = acc * z.value() + a[k];
  const double top = std::max(std::abs(a[n]), std::abs(a[n - 1]));
  return {acc, top * std::pow(rho, n) / (1.0 - rho)};
}

}  // namespace psn
