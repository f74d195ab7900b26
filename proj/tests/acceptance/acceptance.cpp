// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "psn/errors.hpp"
#include "psn/norm_estimator.hpp"
#include "psn/sharp_bounds.hpp"
#include "support.hpp"

#ifndef PSN_CLI_PATH
#error "PSN_CLI_PATH must name the psn executable"
#endif

using namespace psn;
using psn::testing::acceptance_specs;
using psn::testing::oracle_rows;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << " exception: " << e.what();
  }
  if (!o.passed) ++failures;
  std::printf("criterion %d [%s] %s:%s\n", id, o.passed ? "PASS" : "FAIL", title.c_str(),
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  status = pclose(pipe.release());
  return out;
}

}  // namespace

int main() {
  const auto specs = acceptance_specs();

  report(1, "root residuals and unique sign change", [&](Outcome& o) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int bad_scans = 0;
    for (const auto& spec : specs) {
      const auto r = alpha_root(spec);
      worst = std::max(worst, r.residual);
      const int changes = count_sign_changes(AlphaEquation(spec), 1e-6, 1 - 1e-6, kSignScanPoints);
      if (changes != 1 || r.sign_changes != 1) ++bad_scans;
    }
    const double elapsed = seconds_since(t0);
    o.passed = worst <= 1e-10 && bad_scans == 0 && elapsed < 1.0;
    o.detail << " 16 specs, max |F(alpha)| = " << worst << ", scans without exactly one change = "
             << bad_scans << ", " << elapsed << " s (limit 1 s)";
  });

  report(2, "canonical constants against the oracle", [&](Outcome& o) {
    double worst = 0.0;
    int guide_misses = 0;
    const struct {
      Family f;
      Variant v;
      double alpha, bound;
    } guides[] = {{Family::Exp, Variant::Starlike, 0.1297, 2.0330},
                  {Family::Sqrt, Variant::Starlike, 0.5695, 1.1927},
                  {Family::Exp, Variant::Convex, 0.2448, 1.0651},
                  {Family::Sqrt, Variant::Convex, 0.1362, 0.5087}};
    for (const auto& row : oracle_rows()) {
      const auto r = norm_bound(ClassSpec(row.family, row.param, row.variant));
      worst = std::max({worst, std::abs(r.alpha - row.alpha), std::abs(r.bound - row.bound)});
    }
    for (const auto& g : guides) {
      const auto r = norm_bound(ClassSpec(g.f, 1.0, g.v));
      if (std::abs(r.alpha - g.alpha) > 1e-3 || std::abs(r.bound - g.bound) > 1e-3) ++guide_misses;
      o.detail << " " << ClassSpec(g.f, 1.0, g.v).label() << " alpha=" << r.alpha
               << " bound=" << r.bound << ";";
    }
    o.passed = worst <= 1e-9 && guide_misses == 0;
    o.detail << " max deviation from oracle " << worst << " (tol 1e-9), guide misses " << guide_misses;
  });

  report(3, "sharpness of the extremals", [&](Outcome& o) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int off_axis = 0;
    for (const auto& spec : specs) {
      const double bound = norm_bound(spec).bound;
      const auto e = estimate_norm(extremal(spec));
      worst = std::max(worst, std::abs(e.value - bound) / bound);
      if (!on_positive_real_axis(e)) ++off_axis;
    }
    const double elapsed = seconds_since(t0);
    o.passed = worst <= 1e-4 && off_axis == 0 && elapsed < 30.0;
    o.detail << " 16 specs at 256x512 refine 3, max relative error " << worst
             << " (tol 1e-4), off-axis argmax " << off_axis << ", " << elapsed << " s (limit 30 s)";
  });

  report(4, "sampled members stay below the bound", [&](Outcome& o) {
    const auto t0 = Clock::now();
    double worst = INFINITY;
    int violations = 0;
    int members = 0;
    for (const auto& spec : specs) {
      const auto r = verify_spec(spec, 50, 20240601);
      for (const auto& m : r.members) {
        ++members;
        worst = std::min(worst, m.margin);
        if (!m.passed) ++violations;
      }
    }
    const double elapsed = seconds_since(t0);
    o.passed = members == 800 && violations == 0 && elapsed < 120.0;
    o.detail << " " << members << " members, violations " << violations
             << ", smallest bound + 1e-6 - estimate " << worst << ", " << elapsed
             << " s (limit 120 s)";
  });

  report(5, "lemma certificate", [&](Outcome& o) {
    double worst_k = INFINITY;
    double worst_at_c = 0.0;
    int failed = 0;
    for (int i = 1; i <= 10; ++i) {
      const double c = i / 10.0;
      const ClassSpec spec(Family::Sqrt, c, Variant::Starlike);
      const auto k = sign_certificate(AuxId::LemmaK, spec, Claim::Negative, 10000);
      if (!k.passed) ++failed;
      if (k.worst_margin < worst_k) {
        worst_k = k.worst_margin;
        worst_at_c = c;
      }
      if (!sign_certificate(AuxId::LemmaK3, spec, Claim::Increasing, 10000).passed) ++failed;
      if (c < 1.0 && !sign_certificate(AuxId::LemmaK4, spec, Claim::Increasing, 10000).passed) ++failed;
    }
    const ClassSpec any(Family::Sqrt, 0.5, Variant::Starlike);
    const auto l1 = sign_certificate(AuxId::LemmaL1, any, Claim::Negative, 10000);
    if (!l1.passed) ++failed;
    o.passed = failed == 0;
    o.detail << " k < 0 for c = 0.1..1.0 on 1e4 points, worst margin " << worst_k << " at c = "
             << worst_at_c << "; k3, k4 increasing; l1 < 0 (worst margin " << l1.worst_margin
             << "); failed certificates " << failed;
  });

  report(6, "proof-step certificates and endpoint signs", [&](Outcome& o) {
    int certificates = 0;
    int endpoints = 0;
    int failed = 0;
    for (const auto& spec : specs) {
      const auto r = certify(spec, 10000);
      for (const auto& c : r.certificates) {
        ++certificates;
        if (!c.passed) {
          ++failed;
          o.detail << " failed " << spec.label() << ":" << to_string(c.id) << ":" << to_string(c.claim) << ";";
        }
      }
      for (const auto& e : r.endpoints) {
        ++endpoints;
        if (!e.passed) {
          ++failed;
          o.detail << " failed " << spec.label() << ":" << e.name << ";";
        }
        if (e.name == "g1'(1)" && e.value != -1.5) ++failed;
        if (e.name == "h'(0+)" && spec.family() == Family::Sqrt && spec.variant() == Variant::Starlike) {
          const double c = spec.parameter();
          if (std::abs(e.value - 5 * c * c / 8) > 1e-15 || std::abs(e.numeric - e.value) > 1e-6) ++failed;
        }
      }
    }
    o.passed = failed == 0;
    o.detail << " " << certificates << " sign certificates on 1e4-point grids and " << endpoints
             << " endpoint checks over 16 specs, failures " << failed;
  });

  report(7, "consistency laws", [&](Outcome& o) {
    const double corollary_root = bisect_decreasing(corollary_equation, 0.1, 0.9);
    const double r80 = alpha_root(ClassSpec(Family::Sqrt, 1.0, Variant::Starlike)).alpha;
    const double root_gap = std::abs(corollary_root - r80);

    double coeff_gap = 0.0;
    for (double lambda : {0.25, 0.5, 1.0, psn::testing::kHalfPi}) {
      const auto j = alexander_transform(extremal(ClassSpec(Family::Exp, lambda, Variant::Starlike)));
      const auto f3 = extremal(ClassSpec(Family::Exp, lambda, Variant::Convex));
      for (int n = 0; n <= f3.series().order(); ++n) {
        coeff_gap = std::max(coeff_gap, std::abs(j.series()[n] - f3.series()[n]));
      }
    }

    const auto grid = polar_grid(32, 64, 0.9);
    double residual = 0.0;
    int built = 0;
    for (const auto& spec : specs) {
      residual = std::max(residual, membership_residual(spec, extremal(spec), grid));
      ++built;
      for (int i = 0; i < 10; ++i) {
        const auto f = member_from_schwarz(spec, sample_schwarz(member_seed(99, i), i % 5));
        residual = std::max(residual, membership_residual(spec, f, grid));
        ++built;
      }
    }

    const auto k = estimate_norm(AnalyticFunction::koebe());
    const double koebe_gap = std::abs(k.value - (6.0 - 2.0 * kEvaluationCap));

    o.passed = root_gap <= 1e-10 && coeff_gap <= 1e-12 && residual <= 1e-9 && koebe_gap <= 1e-6 &&
               k.boundary_limited;
    o.detail << " corollary root gap " << root_gap << " (tol 1e-10); J[f1] vs f3 coefficients "
             << coeff_gap << " (tol 1e-12); membership residual over " << built << " members "
             << residual << " (tol 1e-9); Koebe " << k.value << " gap " << koebe_gap
             << " (tol 1e-6), boundary-limited " << (k.boundary_limited ? "yes" : "no");
  });

  report(8, "deterministic verify output", [&](Outcome& o) {
    const std::string cmd = std::string("\"") + PSN_CLI_PATH +
                            "\" verify --family exp --param 1.0 --variant starlike --samples 10 "
                            "--seed 42 --format json";
    int s1 = 0;
    int s2 = 0;
    const auto a = run_command(cmd, s1);
    const auto b = run_command(cmd, s2);
    o.passed = s1 == 0 && s2 == 0 && !a.empty() && a == b;
    o.detail << " two CLI runs, exit statuses " << s1 << "/" << s2 << ", " << a.size()
             << " bytes, identical " << (a == b ? "yes" : "no");
  });

  std::printf("acceptance: %d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
