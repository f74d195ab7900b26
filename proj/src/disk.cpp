#include "psn/disk.hpp"

#include <string>

#include "psn/errors.hpp"

namespace psn {

UnitDiskPoint::UnitDiskPoint(Complex z) : z_(z) {
  if (!is_finite(z)) throw InvalidArgument("disk point has a non-finite component");
  if (!(std::abs(z) < 1.0)) {
    throw InvalidArgument("point " + std::to_string(std::abs(z)) +
                          " away from the origin is outside the open unit disk");
  }
}

UnitDiskPoint UnitDiskPoint::polar(double radius, double angle) {
  return UnitDiskPoint(std::polar(radius, angle));
}

}  // namespace psn
