#pragma once

#include <span>
#include <vector>

#include "psn/disk.hpp"

namespace psn {

/// Default truncation order for class-member series.
inline constexpr int kDefaultOrder = 64;
/// Largest |z| at which a truncated series may be evaluated.
inline constexpr double kSeriesEvalRadius = 0.9;
/// Evaluations whose tail estimate exceeds this are considered unreliable.
inline constexpr double kSeriesTailTolerance = 1e-9;

/// Complex Taylor coefficients a_0..a_N about the origin.
///
/// Binary operations on series of different orders truncate to the smaller
/// order. Every operation is a pure function of its arguments.
class TruncatedSeries {
 public:
  /// Takes ownership of a_0..a_N; requires N >= 1 and finite coefficients.
  explicit TruncatedSeries(std::vector<Complex> coeffs);

  static TruncatedSeries zero(int order);
  static TruncatedSeries constant(Complex value, int order);
  /// The series of z.
  static TruncatedSeries identity(int order);
  /// Coefficients 1, 1, 1, ... (the geometric series 1/(1-z)).
  static TruncatedSeries geometric(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }

  /// Drops (or zero-pads) coefficients to the requested order.
  TruncatedSeries with_order(int order) const;
  /// Multiplies by z^k (k > 0) or divides by z^{-k} (k < 0, dropped terms
  /// must be the caller's concern); the order is preserved.
  TruncatedSeries shifted(int k) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(Complex s, const TruncatedSeries& a);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::vector<Complex> coeffs_;
};

/// Cauchy product truncated to the smaller order.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// exp(a) from the recurrence n E_n = sum_k k a_k E_{n-k}; scaled by exp(a_0).
TruncatedSeries series_exp(const TruncatedSeries& a);
/// Principal logarithm. Throws ZeroConstantTerm if a_0 == 0.
TruncatedSeries series_log(const TruncatedSeries& a);
/// Principal square root. Throws BranchCut if a_0 lies on (-inf, 0].
TruncatedSeries series_sqrt(const TruncatedSeries& a);
/// Taylor coefficients of outer(inner(z)). Throws NonvanishingInner if
/// inner has a nonzero constant term.
TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner);
/// Termwise derivative; the top coefficient of the result is zero.
TruncatedSeries series_derivative(const TruncatedSeries& a);
/// Termwise antiderivative with zero constant term; a_N is dropped.
TruncatedSeries series_integrate(const TruncatedSeries& a);

struct SeriesValue {
  Complex value;
  /// max(|a_{N-1}|, |a_N|) |z|^N / (1 - |z|)
  double tail_bound;
};

/// Horner evaluation. Throws EvalRadiusExceeded if |z| > radius.
SeriesValue series_eval(const TruncatedSeries& a, UnitDiskPoint z,
                        double radius = kSeriesEvalRadius);

}  // namespace psn
