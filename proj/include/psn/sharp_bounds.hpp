#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psn/classes.hpp"

namespace psn {

/// The equation h'(r) = 0 (up to a positive factor) whose unique interior
/// root alpha locates the supremum of the radial majorant h.
///
/// Every one of the four equations vanishes at r = 0 and is positive just to
/// the right of it. operator() evaluates a rearranged form free of the
/// cancellation the printed polynomial/exponential form suffers near r = 0;
/// printed() keeps the original form.
class AlphaEquation {
 public:
  explicit AlphaEquation(ClassSpec spec) : spec_(spec) {}

  const ClassSpec& spec() const { return spec_; }
  double operator()(double r) const;
  double printed(double r) const;
  /// h'(r) = F(r) / denominator(r).
  double derivative_denominator(double r) const;

 private:
  ClassSpec spec_;
};

/// Sqrt/starlike c = 1: -2 - r^2 + (2 + r + 3r^2) sqrt(1 - r).
double corollary_equation(double r);
/// Sqrt/starlike c = 1: (1 + a)(2 - a - 2(1 - a)^{3/2}) / (2a).
double corollary_bound(double alpha);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct BoundReport {
  ClassSpec spec;
  double alpha = 0.0;
  double bound = 0.0;
  /// |F(alpha)|
  double residual = 0.0;
  Bracket bracket;
  /// sign changes of F over a 10^4-point scan of [1e-6, 1 - 1e-6]
  int sign_changes = 0;
};

inline constexpr double kRootWidth = 1e-13;
inline constexpr double kRootResidual = 1e-10;
inline constexpr int kSignScanPoints = 10000;

/// Bisection of f on [lo, hi]; requires f(lo) > 0 > f(hi) (BracketFailure
/// otherwise). Stops at width `width`.
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                         double width = kRootWidth);

/// Sign changes of f over `points` uniform samples of [lo, hi]; exact zeros
/// are skipped.
int count_sign_changes(const std::function<double(double)>& f, double lo, double hi, int points);

/// alpha in (0, 1) for the class. The left bracket end grows geometrically
/// from 1e-8 until F > 0; the right end is 1 - 1e-6. Throws BracketFailure
/// if either sign condition fails or the residual exceeds 1e-10.
BoundReport alpha_root(const ClassSpec& spec);

/// The closed-form sharp bound at alpha_root(spec). For sqrt/starlike at
/// c = 1 the alternative closed form is checked to 1e-12.
BoundReport norm_bound(const ClassSpec& spec);

/// Closed-form bound expression evaluated at an arbitrary alpha.
double bound_expression(const ClassSpec& spec, double alpha);

// ---------------------------------------------------------------------------
// Auxiliary functions of the proofs

enum class AuxId {
  HExpStar,
  GExpStar,
  HSqrtStar,
  GSqrtStar,
  G1Sqrt,
  G2Sqrt,
  H1Sqrt,
  H2Sqrt,
  LemmaK,
  LemmaK1,
  LemmaK2,
  LemmaK3,
  LemmaK4,
  LemmaL,
  LemmaL1,
  HExpConvex,
  KExpConvex,
  HSqrtConvex,
  KSqrtConvex,
  K1SqrtConvex,
};

std::string_view to_string(AuxId id);
AuxId parse_aux_id(std::string_view text);
std::span<const AuxId> aux_catalog();
/// 2 for the functions g(r, s) on {0 <= s <= r < 1}, 1 otherwise.
int aux_arity(AuxId id);
/// Family whose parameter the function reads.
Family aux_family(AuxId id);
/// LemmaL and LemmaL1 are functions of c itself; their point is c.
bool aux_parameter_variable(AuxId id);

/// Univariate evaluation on [0, 1]; removable singularities at 0 use their
/// limits. Throws DomainViolation outside the domain or where the formula is
/// not finite, InvalidArgument for the wrong family or arity.
double aux_eval(AuxId id, const ClassSpec& spec, double x);
/// Bivariate evaluation on {0 <= s <= r < 1, r > 0}.
double aux_eval(AuxId id, const ClassSpec& spec, double r, double s);

/// The radial majorant whose values the extremal's weighted field takes on
/// the positive axis (g1 for sqrt/starlike at c = 1).
AuxId profile_reference(const ClassSpec& spec);

// ---------------------------------------------------------------------------
// Numerical sign certificates

enum class Claim { Negative, Positive, Increasing, Decreasing, Concave, SingleSignChange };
enum class Axis { R, S };

std::string_view to_string(Claim claim);
Claim parse_claim(std::string_view text);

inline constexpr double kCertificateDelta = 1e-3;
inline constexpr double kFirstDifferenceStep = 1e-5;
inline constexpr double kSecondDifferenceStep = 1e-4;
inline constexpr int kMinCertificateGrid = 1000;

struct SignCertificate {
  AuxId id;
  ClassSpec spec;
  Claim claim;
  Axis axis = Axis::R;
  int grid_size = 0;
  bool passed = false;
  /// Smallest signed margin (positive when the claim holds at that point).
  double worst_margin = 0.0;
  double worst_r = 0.0;
  /// NaN for univariate functions.
  double worst_s = 0.0;
  /// SingleSignChange only: sign changes of the derivative.
  int sign_changes = 0;
  std::string note;
};

/// Evaluates the claim on a uniform grid over [1e-3, 1 - 1e-3] (a triangular
/// grid of about grid_size points over Omega for bivariate functions).
/// Derivatives are central differences: step 1e-5 for first, 1e-4 for
/// second. Monotonicity claims on g(r, s) follow `axis`. Failure is data.
SignCertificate sign_certificate(AuxId id, const ClassSpec& spec, Claim claim, int grid_size,
                                 Axis axis = Axis::R);

enum class Expectation { Negative, Positive, NonNegative, NonPositive, Equals };
std::string_view to_string(Expectation e);

struct EndpointCheck {
  std::string name;
  /// the closed-form endpoint value
  double value = 0.0;
  /// independent evaluation from the alpha equation; NaN when unavailable
  double numeric = 0.0;
  Expectation expectation = Expectation::Negative;
  double expected_value = 0.0;
  bool passed = false;
  std::string note;
};

/// Closed-form endpoint values of h' (or g1') and of the lemma auxiliaries,
/// each checked for its sign and against the alpha equation.
std::vector<EndpointCheck> endpoint_signs(const ClassSpec& spec);

struct CertificationReport {
  ClassSpec spec;
  std::vector<SignCertificate> certificates;
  std::vector<EndpointCheck> endpoints;
  bool passed() const;
};

/// Every sign certificate the proofs rely on for this spec, plus endpoints.
CertificationReport certify(const ClassSpec& spec, int grid_size = kSignScanPoints);

}  // namespace psn
