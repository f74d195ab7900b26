#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "psn/classes.hpp"
#include "psn/series.hpp"

namespace psn::testing {

// Reference values from tests/oracle/alpha_oracle.py (mpmath, 50 digits).
struct OracleRow {
  Family family;
  Variant variant;
  double param;
  double alpha;
  double bound;
};

inline constexpr double kHalfPi = std::numbers::pi / 2;

inline const std::vector<OracleRow>& oracle_rows() {
  static const std::vector<OracleRow> rows = {
      {Family::Exp, Variant::Starlike, 0.25, 0.031321319933588948, 0.50048987573857882},
      {Family::Exp, Variant::Starlike, 0.5, 0.063073219791286949, 1.0039577615017324},
      {Family::Exp, Variant::Starlike, 1.0, 0.12966606166560673, 2.0329631773557842},
      {Family::Exp, Variant::Starlike, kHalfPi, 0.21491762131557115, 3.2804131619797867},
      {Family::Sqrt, Variant::Starlike, 0.25, 0.079484418403178211, 0.25156204915971794},
      {Family::Sqrt, Variant::Starlike, 0.5, 0.1683623528215762, 0.5134948295725638},
      {Family::Sqrt, Variant::Starlike, 0.75, 0.28595267403396983, 0.80343767950440324},
      {Family::Sqrt, Variant::Starlike, 1.0, 0.56948559237694961, 1.1927323413734184},
      {Family::Exp, Variant::Convex, 0.25, 0.062418410368292663, 0.25097910728636065},
      {Family::Exp, Variant::Convex, 0.5, 0.12434249449257544, 0.50789409175124862},
      {Family::Exp, Variant::Convex, 1.0, 0.24461385443022923, 1.0651311792972291},
      {Family::Exp, Variant::Convex, kHalfPi, 0.3712879684936181, 1.8385785303661711},
      {Family::Sqrt, Variant::Convex, 0.25, 0.031404219113004114, 0.12512279228155672},
      {Family::Sqrt, Variant::Convex, 0.5, 0.063775140329334166, 0.25100034146870273},
      {Family::Sqrt, Variant::Convex, 0.75, 0.098315620457242556, 0.37848593092928806},
      {Family::Sqrt, Variant::Convex, 1.0, 0.13688288533704274, 0.50867923154641102},
  };
  return rows;
}

inline std::vector<ClassSpec> acceptance_specs() {
  std::vector<ClassSpec> specs;
  for (const auto& row : oracle_rows()) specs.emplace_back(row.family, row.param, row.variant);
  return specs;
}

/// Random series with coefficients in the unit square, scaled by decay^n.
inline TruncatedSeries random_series(std::mt19937_64& rng, int order, double decay = 0.8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(order + 1));
  double scale = 1.0;
  for (auto& x : c) {
    x = Complex(u(rng), u(rng)) * scale;
    scale *= decay;
  }
  return TruncatedSeries(std::move(c));
}

inline double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = std::min(a.order(), b.order());
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

inline double max_abs(const TruncatedSeries& a) {
  double worst = 0.0;
  for (const auto& x : a.coeffs()) worst = std::max(worst, std::abs(x));
  return worst;
}

}  // namespace psn::testing
