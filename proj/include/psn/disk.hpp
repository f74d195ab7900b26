#pragma once

#include <cmath>
#include <complex>

namespace psn {

using Complex = std::complex<double>;

/// A point of the open unit disk. Construction rejects |z| >= 1 and
/// non-finite components.
class UnitDiskPoint {
 public:
  explicit UnitDiskPoint(Complex z);
  UnitDiskPoint(double re, double im) : UnitDiskPoint(Complex(re, im)) {}

  static UnitDiskPoint polar(double radius, double angle);
  static UnitDiskPoint origin() { return UnitDiskPoint(Complex(0.0, 0.0)); }

  Complex value() const { return z_; }
  double modulus() const { return std::abs(z_); }

 private:
  Complex z_;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace psn
