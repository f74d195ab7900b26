#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psn/disk.hpp"
#include "psn/series.hpp"

namespace psn {

/// phi(z) = exp(lambda z) or sqrt(1 + c z).
enum class Family { Exp, Sqrt };
/// zf'/f (starlike) or 1 + zf''/f' (convex) is subordinate to phi.
enum class Variant { Starlike, Convex };

std::string_view to_string(Family family);
std::string_view to_string(Variant variant);
/// Accepts "exp"/"sqrt" and "starlike"/"convex"; throws InvalidArgument.
Family parse_family(std::string_view text);
Variant parse_variant(std::string_view text);

/// Largest admissible parameter: pi/2 for Exp, 1 for Sqrt.
double max_parameter(Family family);

/// Selects one of the four classes. Only constructible with a parameter in
/// (0, max_parameter(family)].
class ClassSpec {
 public:
  ClassSpec(Family family, double parameter, Variant variant);

  Family family() const { return family_; }
  double parameter() const { return parameter_; }
  Variant variant() const { return variant_; }

  ClassSpec with_variant(Variant v) const { return {family_, parameter_, v}; }
  std::string label() const;

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;

 private:
  Family family_;
  double parameter_;
  Variant variant_;
};

/// phi at an arbitrary point of the closed disk (principal branch).
Complex phi_value(const ClassSpec& spec, Complex w);
Complex phi_derivative(const ClassSpec& spec, Complex w);
Complex phi_eval(const ClassSpec& spec, UnitDiskPoint z);
/// Taylor coefficients of phi: lambda^n/n! or binom(1/2, n) c^n.
TruncatedSeries phi_series(const ClassSpec& spec, int order);

/// Analytic self-map of the disk fixing 0: the canonical maps z, -z, 0, or
/// e^{i theta} z prod_j (z - zeta_j)/(1 - conj(zeta_j) z).
class SchwarzFunction {
 public:
  enum class Kind { Identity, Negation, Zero, Blaschke };

  static SchwarzFunction identity();
  static SchwarzFunction negation();
  static SchwarzFunction zero();
  /// Requires |zeta_j| < 1 for every zero.
  static SchwarzFunction blaschke(double rotation, std::vector<Complex> zeros);

  Kind kind() const { return kind_; }
  double rotation() const { return rotation_; }
  std::span<const Complex> zeros() const { return zeros_; }

  Complex value(Complex z) const;
  Complex derivative(Complex z) const;
  TruncatedSeries series(int order) const;

 private:
  SchwarzFunction(Kind kind, double rotation, std::vector<Complex> zeros)
      : kind_(kind), rotation_(rotation), zeros_(std::move(zeros)) {}

  Kind kind_;
  double rotation_;
  std::vector<Complex> zeros_;
};

/// Largest modulus of a sampled Blaschke zero.
inline constexpr double kSamplerZeroCap = 0.8;
inline constexpr int kSamplerMaxDegree = 4;

/// Deterministic pseudorandom Schwarz function with `degree` Blaschke factors
/// (0 <= degree <= 4), rotation uniform in [0, 2 pi), zeros uniform in the
/// disk of radius 0.8.
SchwarzFunction sample_schwarz(std::uint64_t seed, int degree);

/// f1..f4 are the sharpness functions of the four classes (exp starlike,
/// sqrt starlike, exp convex, sqrt convex). Member is a class member built
/// from a Schwarz function; Series is backed by coefficients only.
enum class FunctionTag { Identity, Koebe, F1, F2, F3, F4, Member, Series };
std::string_view to_string(FunctionTag tag);

/// f, f', f'' at one point.
struct Jet {
  Complex f;
  Complex df;
  Complex d2f;
};

/// How a jet was evaluated.
enum class Route { ClosedForm, Series, Quadrature };

/// p = phi o omega and its derivative, plus (p - 1)/z (limit p'(0) at 0).
struct Subordinate {
  Complex p;
  Complex dp;
  Complex q;
};

/// A normalized analytic function f(0) = 0, f'(0) = 1.
///
/// Class members carry their subordinate function p = phi o omega. For a
/// starlike member zf'/f = p, so f = z exp(I) with I(z) = int_0^z (p-1)/t dt;
/// for a convex member f' = exp(I). Jets come from the Taylor series inside
/// |z| <= 0.9 when its tail estimate is below 1e-9, and otherwise from the
/// closed-form structure with I computed by quadrature along [0, z].
class AnalyticFunction {
 public:
  static AnalyticFunction identity(int order = kDefaultOrder);
  static AnalyticFunction koebe(int order = kDefaultOrder);
  /// Series-backed only; jets are available inside the series radius.
  static AnalyticFunction from_series(TruncatedSeries series);

  FunctionTag tag() const { return tag_; }
  const std::optional<ClassSpec>& spec() const { return spec_; }
  const std::optional<SchwarzFunction>& schwarz() const { return omega_; }
  const TruncatedSeries& series() const { return series_; }
  bool is_class_member() const { return spec_.has_value(); }

  Route route_at(UnitDiskPoint z) const;
  Jet jet(UnitDiskPoint z) const;
  Jet series_jet(UnitDiskPoint z) const;
  /// Members only.
  Jet quadrature_jet(UnitDiskPoint z) const;
  /// Members only.
  Subordinate subordinate(Complex z) const;
  /// I(z) = int_0^z (p(t) - 1)/t dt along the segment; members only.
  Complex inner_integral(Complex z) const;

  Complex value(UnitDiskPoint z) const { return jet(z).f; }
  Complex derivative(UnitDiskPoint z) const { return jet(z).df; }
  Complex second_derivative(UnitDiskPoint z) const { return jet(z).d2f; }

 private:
  AnalyticFunction(FunctionTag tag, TruncatedSeries series)
      : tag_(tag),
        series_(std::move(series)),
        d1_(series_derivative(series_)),
        d2_(series_derivative(d1_)) {}

  friend AnalyticFunction member_from_schwarz(const ClassSpec&, const SchwarzFunction&, int);
  friend AnalyticFunction alexander_transform(const AnalyticFunction&);
  friend AnalyticFunction extremal(const ClassSpec&, int);

  FunctionTag tag_;
  TruncatedSeries series_;
  TruncatedSeries d1_;
  TruncatedSeries d2_;
  std::optional<ClassSpec> spec_;
  std::optional<SchwarzFunction> omega_;
  // (p - 1)/z as a series, used near the origin
  std::optional<TruncatedSeries> q_series_;
};

/// The member of spec's class with subordinate p = phi o omega.
AnalyticFunction member_from_schwarz(const ClassSpec& spec, const SchwarzFunction& omega,
                                     int order = kDefaultOrder);

/// Sharpness function of spec's class: f1 (exp, starlike), f2 with
/// sqrt(1 - ct) (sqrt, starlike), f3 = J[f1], f4 = J[f2].
AnalyticFunction extremal(const ClassSpec& spec, int order = kDefaultOrder);

/// J[f](z) = int_0^z f(t)/t dt, coefficientwise b_n = a_n / n. Starlike
/// members map to the convex member with the same Schwarz function.
AnalyticFunction alexander_transform(const AnalyticFunction& f);

/// Max over the grid of (|log w| - lambda)_+ or (|w^2 - 1| - c)_+ where
/// w = zf'/f (starlike) or 1 + zf''/f' (convex); w = 1 at z = 0.
/// Throws EvalRadiusExceeded for points beyond 0.9 and EvaluationFailure if
/// f or f' vanishes away from the origin.
double membership_residual(const ClassSpec& spec, const AnalyticFunction& f,
                           std::span<const UnitDiskPoint> grid);

/// radial x angular polar grid with radii (i + 1) max_radius / radial.
std::vector<UnitDiskPoint> polar_grid(int radial, int angular, double max_radius);

}  // namespace psn
