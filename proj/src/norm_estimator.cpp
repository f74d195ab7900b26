#include "psn/norm_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "psn/errors.hpp"
#include "psn/parallel.hpp"

namespace psn {

namespace {

constexpr double kUnivalenceFloor = 1e-14;

/// (e^{k z} - 1)/z with its limit k at 0.
Complex expm1_ratio(double k, Complex z) {
  const Complex x = k * z;
  if (std::abs(x) < 0.5) {
    Complex term = k;
    Complex sum = term;
    for (int n = 2; n < 40; ++n) {
      term *= x / static_cast<double>(n);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(x) - 1.0) / z;
}

/// (1 - sqrt(1 - c z))/z = c/(1 + sqrt(1 - c z))
Complex sqrt_ratio(double c, Complex z) { return c / (1.0 + std::sqrt(1.0 - c * z)); }

}  // namespace

Complex pre_schwarzian(const AnalyticFunction& f, UnitDiskPoint point) {
  const Complex z = point.value();
  switch (f.tag()) {
    case FunctionTag::Identity:
      return 0.0;
    case FunctionTag::Koebe:
      return (4.0 + 2.0 * z) / (1.0 - z * z);
    case FunctionTag::F1: {
      const double k = f.spec()->parameter();
      return expm1_ratio(k, z) + k;
    }
    case FunctionTag::F2: {
      const double c = f.spec()->parameter();
      return -c / (2.0 * (1.0 - c * z)) - sqrt_ratio(c, z);
    }
    case FunctionTag::F3:
      return expm1_ratio(f.spec()->parameter(), z);
    case FunctionTag::F4:
      return -sqrt_ratio(f.spec()->parameter(), z);
    case FunctionTag::Member: {
      const auto sub = f.subordinate(z);
      if (f.spec()->variant() == Variant::Convex) return sub.q;
      if (std::abs(sub.p) < kUnivalenceFloor) {
        throw LocalUnivalenceViolation("f' vanishes: zf'/f = 0");
      }
      return sub.dp / sub.p + sub.q;
    }
    case FunctionTag::Series:
      break;
  }
  const Jet j = f.jet(point);
  if (std::abs(j.df) < kUnivalenceFloor) throw LocalUnivalenceViolation("f' vanishes");
  return j.d2f / j.df;
}

double weighted_field(const AnalyticFunction& f, UnitDiskPoint z) {
  const double rho2 = std::norm(z.value());
  const double value = (1.0 - rho2) * std::abs(pre_schwarzian(f, z));
  if (!std::isfinite(value)) throw EvaluationFailure("weighted field is not finite");
  return value;
}

namespace {

struct Candidate {
  double value = -1.0;
  double r = 0.0;
  double theta = 0.0;
  Complex z = 0.0;
};

struct GridBest {
  double value = -1.0;
  int i = 0;
  int j = 0;
};

/// Larger value wins; ties go to the smaller radius, then the smaller angle.
bool better(const GridBest& a, const GridBest& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

Candidate evaluate(const AnalyticFunction& f, double r, double theta) {
  const Complex z = std::polar(r, theta);
  return {weighted_field(f, UnitDiskPoint(z)), r, theta, z};
}

/// Golden-section maximisation of g over [a, b]; returns the best point seen,
/// endpoints included.
template <class G>
Candidate golden_max(G&& g, double a, double b, double tolerance) {
  constexpr double kInvPhi = 0.6180339887498949;
  Candidate best = g(a);
  if (const auto cb = g(b); cb.value > best.value) best = cb;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  Candidate c1 = g(x1);
  Candidate c2 = g(x2);
  for (int iter = 0; iter < 200 && (b - a) > tolerance; ++iter) {
    if (c1.value >= c2.value) {
      b = x2;
      x2 = x1;
      c2 = c1;
      x1 = b - kInvPhi * (b - a);
      c1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      c1 = c2;
      x2 = a + kInvPhi * (b - a);
      c2 = g(x2);
    }
    if (c1.value > best.value) best = c1;
    if (c2.value > best.value) best = c2;
  }
  return best;
}

}  // namespace

NormEstimate estimate_norm(const AnalyticFunction& f, const EstimatorOptions& options) {
  if (options.radial < 64 || options.angular < 128) {
    throw InvalidArgument("estimator grid needs radial >= 64 and angular >= 128");
  }
  if (options.refine < 0) throw InvalidArgument("refinement depth must be >= 0");
  if (!(options.cap > 0.0 && options.cap < 1.0)) throw InvalidArgument("cap must lie in (0, 1)");

  const int radial = options.radial;
  const int angular = options.angular;
  const double rmax = 1.0 - options.cap;
  const double dr = rmax / (radial - 1);
  const double dtheta = 2.0 * std::numbers::pi / angular;
  const auto radius = [&](int i) { return i == radial - 1 ? rmax : rmax * i / (radial - 1); };
  const auto angle = [&](int j) { return dtheta * j; };

  const int workers = options.threads > 0 ? options.threads : worker_threads();
  std::vector<GridBest> partial(static_cast<std::size_t>(std::max(1, std::min(workers, radial))));
  parallel_blocks(radial, workers, [&](int w, int begin, int end) {
    GridBest best;
    for (int i = begin; i < end; ++i) {
      const int count = i == 0 ? 1 : angular;
      for (int j = 0; j < count; ++j) {
        const GridBest here{evaluate(f, radius(i), angle(j)).value, i, j};
        if (better(here, best)) best = here;
      }
    }
    partial[static_cast<std::size_t>(w)] = best;
  });
  GridBest grid_best = partial.front();
  for (const auto& p : partial) {
    if (better(p, grid_best)) grid_best = p;
  }

  Candidate best = evaluate(f, radius(grid_best.i), angle(grid_best.j));
  const double coarse = best.value;
  for (int round = 0; round < options.refine; ++round) {
    const double theta = best.theta;
    const auto along_r = [&](double r) { return evaluate(f, r, theta); };
    const auto by_r = golden_max(along_r, std::max(0.0, best.r - dr), std::min(rmax, best.r + dr), 1e-12);
    if (by_r.value > best.value) best = by_r;

    const double r = best.r;
    const auto along_theta = [&](double t) { return evaluate(f, r, t); };
    const auto by_theta = golden_max(along_theta, best.theta - dtheta, best.theta + dtheta, 1e-12);
    if (by_theta.value > best.value) best = by_theta;
  }

  NormEstimate estimate;
  estimate.value = best.value;
  estimate.argmax = UnitDiskPoint(best.z);
  estimate.radial = radial;
  estimate.angular = angular;
  estimate.refine = options.refine;
  estimate.cap = options.cap;
  estimate.boundary_limited = best.r >= rmax - dr;
  estimate.coarse_value = coarse;
  return estimate;
}

bool on_positive_real_axis(const NormEstimate& estimate) {
  const double dtheta = 2.0 * std::numbers::pi / estimate.angular;
  const Complex z = estimate.argmax.value();
  if (z == Complex(0.0)) return true;
  return std::abs(std::arg(z)) <= dtheta;
}

std::vector<ProfileSample> radial_profile(const AnalyticFunction& f, int n, double cap) {
  if (n < 2) throw InvalidArgument("radial profile needs n >= 2");
  std::vector<ProfileSample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double r = k == n ? 1.0 - cap : (1.0 - cap) * k / n;
    samples.push_back({r, weighted_field(f, UnitDiskPoint(r, 0.0))});
  }
  return samples;
}

bool VerifyReport::passed() const {
  return sharpness_passed &&
         std::all_of(members.begin(), members.end(), [](const auto& m) { return m.passed; });
}

std::uint64_t member_seed(std::uint64_t seed, int index) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

VerifyReport verify_spec(const ClassSpec& spec, int member_count, std::uint64_t seed,
                         const EstimatorOptions& options) {
  if (member_count < 0) throw InvalidArgument("member count must be >= 0");
  VerifyReport report{norm_bound(spec)};
  const double bound = report.bound.bound;
  report.tol_sharp = kSharpnessTolerance * bound;

  report.sharpness = estimate_norm(extremal(spec), options);
  report.sharpness_error = std::abs(report.sharpness.value - bound);
  report.sharpness_on_axis = on_positive_real_axis(report.sharpness);
  report.sharpness_passed = report.sharpness_error <= report.tol_sharp && report.sharpness_on_axis;

  report.members.reserve(static_cast<std::size_t>(member_count));
  for (int i = 0; i < member_count; ++i) {
    MemberMargin m;
    m.index = i;
    m.seed = member_seed(seed, i);
    m.degree = i % (kSamplerMaxDegree + 1);
    const auto f = member_from_schwarz(spec, sample_schwarz(m.seed, m.degree));
    m.estimate = estimate_norm(f, options).value;
    m.margin = bound + report.tol_bound - m.estimate;
    m.passed = m.margin >= 0.0;
    report.members.push_back(m);
  }
  return report;
}

}  // namespace psn
