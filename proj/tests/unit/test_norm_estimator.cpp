#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psn/errors.hpp"
#include "psn/norm_estimator.hpp"
#include "support.hpp"

using namespace psn;

namespace {

constexpr double kPi = std::numbers::pi;

Complex jet_quotient(const Jet& j) { return j.d2f / j.df; }

EstimatorOptions small_grid() {
  EstimatorOptions o;
  o.radial = 64;
  o.angular = 128;
  o.refine = 3;
  return o;
}

}  // namespace

TEST_CASE("pre-schwarzian examples") {
  const auto id = AnalyticFunction::identity();
  const auto k = AnalyticFunction::koebe();
  const auto f1 = extremal(ClassSpec(Family::Exp, 1.0, Variant::Starlike));
  CHECK(std::abs(pre_schwarzian(id, UnitDiskPoint(0.3, 0.4))) == 0.0);
  CHECK(std::abs(pre_schwarzian(k, UnitDiskPoint::origin()) - 4.0) < 1e-15);
  CHECK(std::abs(pre_schwarzian(f1, UnitDiskPoint::origin()) - 2.0) < 1e-15);
  CHECK(std::abs(weighted_field(f1, UnitDiskPoint::origin()) - 2.0) < 1e-15);
  CHECK(weighted_field(id, UnitDiskPoint(-0.7, 0.1)) == 0.0);
  for (double r : {0.1, 0.5, 0.9, 0.999}) {
    CHECK(std::abs(weighted_field(k, UnitDiskPoint(r, 0.0)) - (4 + 2 * r)) < 1e-9);
  }
}

TEST_CASE("closed forms of the extremals") {
  for (double c : {0.3, 1.0}) {
    const auto f2 = extremal(ClassSpec(Family::Sqrt, c, Variant::Starlike));
    for (double r : {0.2, 0.6, 0.95}) {
      const double expected = -c / (2 * (1 - c * r)) - (1 - std::sqrt(1 - c * r)) / r;
      CHECK(std::abs(pre_schwarzian(f2, UnitDiskPoint(r, 0.0)) - expected) < 1e-13);
    }
  }
  const double lambda = 1.3;
  const auto f1 = extremal(ClassSpec(Family::Exp, lambda, Variant::Starlike));
  const auto f3 = extremal(ClassSpec(Family::Exp, lambda, Variant::Convex));
  for (const auto& p : polar_grid(9, 16, 0.999)) {
    const Complex z = p.value();
    CHECK(std::abs(pre_schwarzian(f1, p) - (std::exp(lambda * z) + lambda * z - 1.0) / z) < 1e-12);
    CHECK(std::abs(pre_schwarzian(f3, p) - (std::exp(lambda * z) - 1.0) / z) < 1e-12);
  }
}

TEST_CASE("series-backed pre-schwarzian of f1 matches its closed form") {
  for (double lambda : {0.25, 1.0, kPi / 2}) {
    const auto f1 = extremal(ClassSpec(Family::Exp, lambda, Variant::Starlike));
    for (const auto& p : polar_grid(9, 32, 0.9)) {
      const Complex z = p.value();
      const Complex closed = (std::exp(lambda * z) + lambda * z - 1.0) / z;
      CHECK(std::abs(jet_quotient(f1.series_jet(p)) - closed) < 1e-9);
    }
  }
}

TEST_CASE("fast member pre-schwarzian agrees with the jet quotient") {
  for (auto fam : {Family::Exp, Family::Sqrt}) {
    for (auto var : {Variant::Starlike, Variant::Convex}) {
      const ClassSpec spec(fam, fam == Family::Exp ? 1.2 : 0.9, var);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto f = member_from_schwarz(spec, sample_schwarz(seed, static_cast<int>(seed)));
        for (const auto& p : polar_grid(9, 16, 0.9)) {
          const Complex fast = pre_schwarzian(f, p);
          const Complex slow = jet_quotient(f.jet(p));
          CHECK(std::abs(fast - slow) <= 1e-9 * (1.0 + std::abs(slow)));
        }
        // and beyond the series radius, against the quadrature route
        const UnitDiskPoint outer = UnitDiskPoint::polar(0.97, 1.0);
        const Complex slow = jet_quotient(f.quadrature_jet(outer));
        CHECK(std::abs(pre_schwarzian(f, outer) - slow) <= 1e-9 * (1.0 + std::abs(slow)));
      }
    }
  }
}

TEST_CASE("vanishing derivative is reported") {
  std::vector<Complex> c(6, 0.0);
  c[1] = 1.0;
  c[2] = -1.0;
  const auto f = AnalyticFunction::from_series(TruncatedSeries(c));
  CHECK_THROWS_AS(pre_schwarzian(f, UnitDiskPoint(0.5, 0.0)), LocalUnivalenceViolation);
  CHECK_NOTHROW(pre_schwarzian(f, UnitDiskPoint(0.25, 0.0)));
}

TEST_CASE("weighted field is conjugation symmetric for real-coefficient members") {
  const auto w = SchwarzFunction::blaschke(0.0, {Complex(0.3, 0.0), Complex(-0.5, 0.0)});
  for (auto var : {Variant::Starlike, Variant::Convex}) {
    const auto f = member_from_schwarz(ClassSpec(Family::Sqrt, 0.8, var), w);
    for (const auto& p : polar_grid(10, 24, 0.99)) {
      const UnitDiskPoint q(std::conj(p.value()));
      CHECK(std::abs(weighted_field(f, p) - weighted_field(f, q)) <= 1e-12);
    }
  }
}

TEST_CASE("estimate examples") {
  const auto id = estimate_norm(AnalyticFunction::identity(), small_grid());
  CHECK(id.value == 0.0);

  const auto k = estimate_norm(AnalyticFunction::koebe());
  CHECK(std::abs(k.value - (6.0 - 2 * kEvaluationCap)) <= 1e-6);
  CHECK(k.boundary_limited);

  const ClassSpec spec(Family::Exp, 1.0, Variant::Starlike);
  const auto e = estimate_norm(extremal(spec));
  const auto b = norm_bound(spec);
  CHECK(std::abs(e.value - b.bound) <= 1e-4 * b.bound);
  CHECK(std::abs(e.value - 2.0330) <= 1e-3);
  CHECK(on_positive_real_axis(e));
  CHECK(std::abs(e.argmax.modulus() - b.alpha) < 1e-3);
  CHECK_FALSE(e.boundary_limited);
  CHECK(e.radial == 256);
  CHECK(e.angular == 512);
  CHECK(e.refine == 3);
}

TEST_CASE("estimate is self-consistent and monotone in refinement and density") {
  const ClassSpec spec(Family::Sqrt, 0.7, Variant::Convex);
  const auto f = member_from_schwarz(spec, sample_schwarz(31, 3));
  double previous = -1.0;
  for (int refine = 0; refine <= 3; ++refine) {
    EstimatorOptions o = small_grid();
    o.refine = refine;
    const auto e = estimate_norm(f, o);
    CHECK(std::abs(weighted_field(f, e.argmax) - e.value) <= 1e-12);
    CHECK(e.value >= e.coarse_value);
    CHECK(e.value >= previous - 1e-12);
    previous = e.value;
  }
  // nested grids: every coarse node is a fine node
  EstimatorOptions coarse{65, 128, 0};
  EstimatorOptions fine{129, 256, 0};
  CHECK(estimate_norm(f, fine).value >= estimate_norm(f, coarse).value - 1e-12);
}

TEST_CASE("estimate does not depend on the thread count") {
  const auto f = member_from_schwarz(ClassSpec(Family::Exp, 1.0, Variant::Starlike), sample_schwarz(8, 4));
  EstimatorOptions one = small_grid();
  one.threads = 1;
  EstimatorOptions many = small_grid();
  many.threads = 3;
  const auto a = estimate_norm(f, one);
  const auto b = estimate_norm(f, many);
  CHECK(a.value == b.value);
  CHECK(a.argmax.value() == b.argmax.value());
}

TEST_CASE("estimator rejects small grids") {
  const auto f = AnalyticFunction::koebe();
  CHECK_THROWS_AS(estimate_norm(f, EstimatorOptions{63, 128, 0}), InvalidArgument);
  CHECK_THROWS_AS(estimate_norm(f, EstimatorOptions{64, 127, 0}), InvalidArgument);
  CHECK_THROWS_AS(estimate_norm(f, EstimatorOptions{64, 128, -1}), InvalidArgument);
}

TEST_CASE("extremal profiles coincide with the radial majorants") {
  for (const auto& spec : psn::testing::acceptance_specs()) {
    CAPTURE(spec.label());
    const auto samples = radial_profile(extremal(spec), 200);
    const AuxId h = profile_reference(spec);
    CHECK(samples.size() == 200);
    CHECK(std::abs(samples.back().r - (1 - kEvaluationCap)) < 1e-15);
    for (const auto& s : samples) CHECK(std::abs(s.value - aux_eval(h, spec, s.r)) <= 1e-9);
  }
  const auto sqrt1 = ClassSpec(Family::Sqrt, 1.0, Variant::Starlike);
  CHECK(profile_reference(sqrt1) == AuxId::G1Sqrt);
  CHECK(profile_reference(ClassSpec(Family::Exp, 1.0, Variant::Starlike)) == AuxId::HExpStar);
  for (const auto& s : radial_profile(AnalyticFunction::identity(), 10)) CHECK(s.value == 0.0);
  CHECK_THROWS_AS(radial_profile(AnalyticFunction::identity(), 1), InvalidArgument);
}

TEST_CASE("verify examples") {
  const auto a = verify_spec(ClassSpec(Family::Exp, 1.0, Variant::Starlike), 0, 1);
  CHECK(a.sharpness_passed);
  CHECK(a.passed());
  CHECK(std::abs(a.sharpness.value - 2.0330) <= 1e-3);
  CHECK(a.members.empty());

  const auto b = verify_spec(ClassSpec(Family::Sqrt, 1.0, Variant::Convex), 0, 1);
  CHECK(b.passed());
  CHECK(std::abs(b.sharpness.value - 0.5087) <= 1e-3);
  CHECK(b.tol_sharp == doctest::Approx(1e-4 * b.bound.bound));

  const ClassSpec spec(Family::Sqrt, 0.5, Variant::Starlike);
  const auto zero = member_from_schwarz(spec, SchwarzFunction::zero());
  CHECK(estimate_norm(zero, small_grid()).value <= 1e-15);
  CHECK_THROWS_AS(verify_spec(spec, -1, 0), InvalidArgument);
}

TEST_CASE("verify runs are deterministic and members stay below the bound") {
  const ClassSpec spec(Family::Exp, kPi / 2, Variant::Convex);
  const auto r1 = verify_spec(spec, 10, 42, small_grid());
  const auto r2 = verify_spec(spec, 10, 42, small_grid());
  REQUIRE(r1.members.size() == 10);
  for (std::size_t i = 0; i < r1.members.size(); ++i) {
    const auto& m = r1.members[i];
    CHECK(m.seed == r2.members[i].seed);
    CHECK(m.estimate == r2.members[i].estimate);
    CHECK(m.degree == static_cast<int>(i % 5));
    CHECK(m.passed);
    CHECK(m.margin == doctest::Approx(r1.bound.bound + kBoundTolerance - m.estimate));
  }
  CHECK(r1.passed());
  CHECK(member_seed(42, 0) != member_seed(42, 1));
  CHECK(member_seed(42, 0) != member_seed(43, 0));
}

TEST_CASE("sampled members obey the bound in every class") {
  for (const auto& spec : psn::testing::acceptance_specs()) {
    const double bound = norm_bound(spec).bound;
    for (int i = 0; i < 5; ++i) {
      const auto f = member_from_schwarz(spec, sample_schwarz(member_seed(7, i), i));
      CHECK(estimate_norm(f, small_grid()).value <= bound + kBoundTolerance);
    }
  }
}
