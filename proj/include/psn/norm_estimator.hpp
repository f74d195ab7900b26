#pragma once

#include <cstdint>
#include <vector>

#include "psn/classes.hpp"
#include "psn/sharp_bounds.hpp"

namespace psn {

/// Largest radius the estimator evaluates at is 1 - kEvaluationCap.
inline constexpr double kEvaluationCap = 1e-3;
inline constexpr double kSharpnessTolerance = 1e-4;  // relative to the bound
inline constexpr double kBoundTolerance = 1e-6;

/// P_f = f''/f'. Extremals use their closed forms; class members use the
/// evaluators' quotient with the common factor exp(int_0^z (p-1)/t dt)
/// cancelled, i.e. p'/p + (p-1)/z (starlike) or (p-1)/z (convex).
/// Throws LocalUnivalenceViolation where |f'| < 1e-14.
Complex pre_schwarzian(const AnalyticFunction& f, UnitDiskPoint z);

/// (1 - |z|^2) |P_f(z)|
double weighted_field(const AnalyticFunction& f, UnitDiskPoint z);

struct EstimatorOptions {
  int radial = 256;
  int angular = 512;
  int refine = 3;
  double cap = kEvaluationCap;
  /// 0 selects worker_threads()
  int threads = 0;
};

struct NormEstimate {
  double value = 0.0;
  UnitDiskPoint argmax = UnitDiskPoint::origin();
  int radial = 0;
  int angular = 0;
  int refine = 0;
  double cap = kEvaluationCap;
  /// argmax within one radial cell of the cap
  bool boundary_limited = false;
  /// best value on the coarse grid, before refinement
  double coarse_value = 0.0;
};

/// Coarse maximum of the weighted field on the polar grid
/// r_i = i (1 - cap)/(radial - 1), theta_j = 2 pi j / angular, followed by
/// `refine` rounds of golden-section search in r then theta, each over one
/// grid cell around the incumbent. Ties on the grid go to the smaller radius,
/// then the smaller angle, so the result does not depend on thread count.
NormEstimate estimate_norm(const AnalyticFunction& f, const EstimatorOptions& options = {});

/// True when arg(argmax) is within one angular cell of 0.
bool on_positive_real_axis(const NormEstimate& estimate);

struct ProfileSample {
  double r = 0.0;
  double value = 0.0;
};

/// Weighted field at r_k = k (1 - cap)/n, k = 1..n.
std::vector<ProfileSample> radial_profile(const AnalyticFunction& f, int n,
                                          double cap = kEvaluationCap);

struct MemberMargin {
  int index = 0;
  std::uint64_t seed = 0;
  int degree = 0;
  double estimate = 0.0;
  /// bound + tol_bound - estimate; the member passes when >= 0
  double margin = 0.0;
  bool passed = false;
};

struct VerifyReport {
  BoundReport bound;
  NormEstimate sharpness;
  double sharpness_error = 0.0;
  bool sharpness_on_axis = false;
  bool sharpness_passed = false;
  std::vector<MemberMargin> members;
  double tol_sharp = 0.0;
  double tol_bound = kBoundTolerance;
  bool passed() const;
};

/// Seed of the index-th sampled member of a verify run.
std::uint64_t member_seed(std::uint64_t seed, int index);

/// (a) the extremal's estimated norm matches the closed-form bound within
/// 1e-4 bound with its argmax on the positive axis; (b) `member_count`
/// sampled members (degree index mod 5) stay below bound + 1e-6.
VerifyReport verify_spec(const ClassSpec& spec, int member_count, std::uint64_t seed,
                         const EstimatorOptions& options = {});

}  // namespace psn
