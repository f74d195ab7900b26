#include "psn/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "psn/errors.hpp"
#include "psn/quadrature.hpp"

namespace psn {

std::string_view to_string(Family family) { return family == Family::Exp ? "exp" : "sqrt"; }

std::string_view to_string(Variant variant) {
  return variant == Variant::Starlike ? "starlike" : "convex";
}

Family parse_family(std::string_view text) {
  if (text == "exp") return Family::Exp;
  if (text == "sqrt") return Family::Sqrt;
  throw InvalidArgument("unknown family '" + std::string(text) + "' (expected exp or sqrt)");
}

Variant parse_variant(std::string_view text) {
  if (text == "starlike") return Variant::Starlike;
  if (text == "convex") return Variant::Convex;
  throw InvalidArgument("unknown variant '" + std::string(text) +
                        "' (expected starlike or convex)");
}

double max_parameter(Family family) {
  return family == Family::Exp ? std::numbers::pi / 2.0 : 1.0;
}

ClassSpec::ClassSpec(Family family, double parameter, Variant variant)
    : family_(family), parameter_(parameter), variant_(variant) {
  // pi/2 is accepted up to one ulp so that callers may pass a rounded literal
  const double hi = max_parameter(family) * (1.0 + 4e-16);
  if (!(parameter > 0.0 && parameter <= hi)) {
    std::ostringstream msg;
    msg << "parameter " << parameter << " outside (0, " << max_parameter(family) << "] for family "
        << to_string(family);
    throw InvalidArgument(msg.str());
  }
  parameter_ = std::min(parameter, max_parameter(family));
}

std::string ClassSpec::label() const {
  std::ostringstream out;
  out << to_string(family_) << '/' << to_string(variant_) << '/' << parameter_;
  return out.str();
}

Complex phi_value(const ClassSpec& spec, Complex w) {
  const double k = spec.parameter();
  if (spec.family() == Family::Exp) return std::exp(k * w);
  return std::sqrt(1.0 + k * w);
}

Complex phi_derivative(const ClassSpec& spec, Complex w) {
  const double k = spec.parameter();
  if (spec.family() == Family::Exp) return k * std::exp(k * w);
  return k / (2.0 * std::sqrt(1.0 + k * w));
}

Complex phi_eval(const ClassSpec& spec, UnitDiskPoint z) { return phi_value(spec, z.value()); }

TruncatedSeries phi_series(const ClassSpec& spec, int order) {
  const double k = spec.parameter();
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  c[0] = 1.0;
  for (int n = 1; n <= order; ++n) {
    const double prev = c[static_cast<std::size_t>(n - 1)].real();
    const double step = spec.family() == Family::Exp ? k / n : k * (0.5 - (n - 1)) / n;
    c[static_cast<std::size_t>(n)] = prev * step;
  }
  return TruncatedSeries(std::move(c));
}

// ---------------------------------------------------------------------------
// Schwarz functions

SchwarzFunction SchwarzFunction::identity() { return {Kind::Identity, 0.0, {}}; }
SchwarzFunction SchwarzFunction::negation() { return {Kind::Negation, 0.0, {}}; }
SchwarzFunction SchwarzFunction::zero() { return {Kind::Zero, 0.0, {}}; }

SchwarzFunction SchwarzFunction::blaschke(double rotation, std::vector<Complex> zeros) {
  for (const auto& zeta : zeros) {
    if (!(std::abs(zeta) < 1.0)) throw InvalidArgument("Blaschke zero outside the open disk");
  }
  return {Kind::Blaschke, rotation, std::move(zeros)};
}

Complex SchwarzFunction::value(Complex z) const {
  switch (kind_) {
    case Kind::Identity:
      return z;
    case Kind::Negation:
      return -z;
    case Kind::Zero:
      return 0.0;
    case Kind::Blaschke:
      break;
  }
  Complex acc = std::polar(1.0, rotation_) * z;
  for (const auto& zeta : zeros_) acc *= (z - zeta) / (1.0 - std::conj(zeta) * z);
  return acc;
}

Complex SchwarzFunction::derivative(Complex z) const {
  switch (kind_) {
    case Kind::Identity:
      return 1.0;
    case Kind::Negation:
      return -1.0;
    case Kind::Zero:
      return 0.0;
    case Kind::Blaschke:
      break;
  }
  // omega = e^{i theta} z B, omega' = e^{i theta} (B + z B'); B' by the
  // product rule so that zeros of B need no special casing.
  Complex product = 1.0;
  Complex dproduct = 0.0;
  for (const auto& zeta : zeros_) {
    const Complex den = 1.0 - std::conj(zeta) * z;
    const Complex factor = (z - zeta) / den;
    const Complex dfactor = (1.0 - std::norm(zeta)) / (den * den);
    dproduct = dproduct * factor + product * dfactor;
    product *= factor;
  }
  return std::polar(1.0, rotation_) * (product + z * dproduct);
}

TruncatedSeries SchwarzFunction::series(int order) const {
  switch (kind_) {
    case Kind::Identity:
      return TruncatedSeries::identity(order);
    case Kind::Negation:
      return Complex(-1.0) * TruncatedSeries::identity(order);
    case Kind::Zero:
      return TruncatedSeries::zero(order);
    case Kind::Blaschke:
      break;
  }
  auto acc = std::polar(1.0, rotation_) * TruncatedSeries::identity(order);
  for (const auto& zeta : zeros_) {
    // (z - zeta)/(1 - conj(zeta) z) = -zeta + sum_{n>=1} conj(zeta)^{n-1} (1 - |zeta|^2) z^n
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    c[0] = -zeta;
    Complex power = 1.0;
    for (int n = 1; n <= order; ++n) {
      c[static_cast<std::size_t>(n)] = power * (1.0 - std::norm(zeta));
      power *= std::conj(zeta);
    }
    acc = series_mul(acc, TruncatedSeries(std::move(c)));
  }
  return acc;
}

SchwarzFunction sample_schwarz(std::uint64_t seed, int degree) {
  if (degree < 0 || degree > kSamplerMaxDegree) {
    throw InvalidArgument("Schwarz sampler degree must lie in [0, 4]");
  }
  std::mt19937_64 engine(seed);
  // 53-bit uniform in [0, 1); fixed arithmetic, unlike std distributions
  auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  const double rotation = 2.0 * std::numbers::pi * uniform();
  std::vector<Complex> zeros;
  zeros.reserve(static_cast<std::size_t>(degree));
  for (int j = 0; j < degree; ++j) {
    const double radius = kSamplerZeroCap * std::sqrt(uniform());
    const double angle = 2.0 * std::numbers::pi * uniform();
    zeros.push_back(std::polar(radius, angle));
  }
  return SchwarzFunction::blaschke(rotation, std::move(zeros));
}

// ---------------------------------------------------------------------------
// Analytic functions

std::string_view to_string(FunctionTag tag) {
  switch (tag) {
    case FunctionTag::Identity:
      return "identity";
    case FunctionTag::Koebe:
      return "koebe";
    case FunctionTag::F1:
      return "f1";
    case FunctionTag::F2:
      return "f2";
    case FunctionTag::F3:
      return "f3";
    case FunctionTag::F4:
      return "f4";
    case FunctionTag::Member:
      return "member";
    case FunctionTag::Series:
      return "series";
  }
  return "unknown";
}

AnalyticFunction AnalyticFunction::identity(int order) {
  return {FunctionTag::Identity, TruncatedSeries::identity(order)};
}

AnalyticFunction AnalyticFunction::koebe(int order) {
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  for (int n = 1; n <= order; ++n) c[static_cast<std::size_t>(n)] = static_cast<double>(n);
  return {FunctionTag::Koebe, TruncatedSeries(std::move(c))};
}

AnalyticFunction AnalyticFunction::from_series(TruncatedSeries series) {
  return {FunctionTag::Series, std::move(series)};
}

namespace {

// Tail estimate for the k-th derivative series s, whose top k coefficients
// are zero fill; differentiation raises the coefficient ratio by ~(1 + k/n).
double tail_at(const TruncatedSeries& s, int k, double rho) {
  const int n = s.order() - k;
  if (n < 1) return std::numeric_limits<double>::infinity();
  const double top = std::max(std::abs(s[n]), std::abs(s[n - 1]));
  const double ratio = rho * (1.0 + (k + 1.0) / n);
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return top * std::pow(rho, n) / (1.0 - ratio);
}

Complex horner(const TruncatedSeries& s, Complex z) {
  const int n = s.order();
  Complex acc = s[n];
  for (int k = n - 1; k >= 0; --k) acc = acc * z + s[k];
  return acc;
}

constexpr double kSmallArgument = 0.05;

}  // namespace

Route AnalyticFunction::route_at(UnitDiskPoint z) const {
  if (tag_ == FunctionTag::Identity || tag_ == FunctionTag::Koebe) return Route::ClosedForm;
  if (tag_ == FunctionTag::Series) return Route::Series;
  const double rho = z.modulus();
  if (rho <= kSeriesEvalRadius * (1.0 + 1e-14)) {
    const double tail = std::max({tail_at(series_, 0, rho), tail_at(d1_, 1, rho), tail_at(d2_, 2, rho)});
    if (tail <= kSeriesTailTolerance) return Route::Series;
  }
  return Route::Quadrature;
}

Jet AnalyticFunction::series_jet(UnitDiskPoint z) const {
  return {series_eval(series_, z).value, series_eval(d1_, z).value, series_eval(d2_, z).value};
}

Subordinate AnalyticFunction::subordinate(Complex z) const {
  if (!omega_ || !spec_) throw InvalidArgument("subordinate function needs a class member");
  const Complex w = omega_->value(z);
  const Complex dw = omega_->derivative(z);
  const Complex p = phi_value(*spec_, w);
  const Complex dp = phi_derivative(*spec_, w) * dw;
  const Complex q = std::abs(z) < kSmallArgument ? horner(*q_series_, z) : (p - 1.0) / z;
  return {p, dp, q};
}

Complex AnalyticFunction::inner_integral(Complex z) const {
  if (!omega_ || !spec_) throw InvalidArgument("inner integral needs a class member");
  if (z == Complex(0.0)) return 0.0;
  return integrate_segment([this](Complex t) { return subordinate(t).q; }, 0.0, z);
}

Jet AnalyticFunction::quadrature_jet(UnitDiskPoint point) const {
  if (!omega_ || !spec_) throw InvalidArgument("quadrature jet needs a class member");
  const Complex z = point.value();
  const Complex e = std::exp(inner_integral(z));
  const auto sub = subordinate(z);
  if (spec_->variant() == Variant::Starlike) {
    return {z * e, e * sub.p, e * (sub.dp + sub.p * sub.q)};
  }
  const Complex f =
      integrate_segment([this](Complex u) { return std::exp(inner_integral(u)); }, 0.0, z);
  return {f, e, e * sub.q};
}

Jet AnalyticFunction::jet(UnitDiskPoint point) const {
  const Complex z = point.value();
  switch (route_at(point)) {
    case Route::ClosedForm:
      if (tag_ == FunctionTag::Identity) return {z, 1.0, 0.0};
      {
        const Complex u = 1.0 - z;
        const Complex u2 = u * u;
        return {z / u2, (1.0 + z) / (u2 * u), (2.0 * z + 4.0) / (u2 * u2)};
      }
    case Route::Series:
      return series_jet(point);
    case Route::Quadrature:
      return quadrature_jet(point);
  }
  return series_jet(point);
}

AnalyticFunction member_from_schwarz(const ClassSpec& spec, const SchwarzFunction& omega,
                                     int order) {
  const int m = order + 1;
  const auto w = omega.series(m);
  const auto p = spec.family() == Family::Exp
                     ? series_exp(Complex(spec.parameter()) * w)
                     : series_sqrt(TruncatedSeries::constant(1.0, m) + Complex(spec.parameter()) * w);
  // p(0) = 1, so (p - 1)/z is a plain shift
  const auto q = (p - TruncatedSeries::constant(1.0, m)).shifted(-1).with_order(order);
  const auto e = series_exp(series_integrate(q));
  const auto f = spec.variant() == Variant::Starlike ? e.shifted(1) : series_integrate(e);

  AnalyticFunction result(FunctionTag::Member, f);
  result.spec_ = spec;
  result.omega_ = omega;
  result.q_series_ = q;
  return result;
}

AnalyticFunction extremal(const ClassSpec& spec, int order) {
  const bool exp = spec.family() == Family::Exp;
  auto f = member_from_schwarz(spec, exp ? SchwarzFunction::identity() : SchwarzFunction::negation(),
                               order);
  if (spec.variant() == Variant::Starlike) {
    f.tag_ = exp ? FunctionTag::F1 : FunctionTag::F2;
  } else {
    f.tag_ = exp ? FunctionTag::F3 : FunctionTag::F4;
  }
  return f;
}

AnalyticFunction alexander_transform(const AnalyticFunction& f) {
  const auto& a = f.series();
  if (std::abs(a[0]) > 1e-14 || std::abs(a[1] - 1.0) > 1e-12) {
    throw InvalidArgument("Alexander transform needs a normalized function");
  }
  std::vector<Complex> b(static_cast<std::size_t>(a.order()) + 1);
  for (int n = 1; n <= a.order(); ++n) b[static_cast<std::size_t>(n)] = a[n] / static_cast<double>(n);
  TruncatedSeries series(std::move(b));

  if (f.tag() == FunctionTag::Identity) return AnalyticFunction::identity(a.order());
  const bool starlike_member = f.is_class_member() && f.spec()->variant() == Variant::Starlike;
  if (!starlike_member) return AnalyticFunction::from_series(std::move(series));

  FunctionTag tag = FunctionTag::Member;
  if (f.tag() == FunctionTag::F1) tag = FunctionTag::F3;
  if (f.tag() == FunctionTag::F2) tag = FunctionTag::F4;
  AnalyticFunction result(tag, std::move(series));
  result.spec_ = f.spec()->with_variant(Variant::Convex);
  result.omega_ = f.omega_;
  result.q_series_ = f.q_series_;
  return result;
}

double membership_residual(const ClassSpec& spec, const AnalyticFunction& f,
                           std::span<const UnitDiskPoint> grid) {
  double worst = 0.0;
  for (const auto& point : grid) {
    if (point.modulus() > kSeriesEvalRadius * (1.0 + 1e-14)) {
      throw EvalRadiusExceeded("membership grid point beyond |z| = 0.9");
    }
    const Complex z = point.value();
    Complex w = 1.0;
    if (z != Complex(0.0)) {
      const Jet j = f.jet(point);
      if (spec.variant() == Variant::Starlike) {
        if (std::abs(j.f) < 1e-300) throw EvaluationFailure("f vanishes away from the origin");
        w = z * j.df / j.f;
      } else {
        if (std::abs(j.df) < 1e-300) throw EvaluationFailure("f' vanishes in the disk");
        w = 1.0 + z * j.d2f / j.df;
      }
    }
    if (!is_finite(w)) throw EvaluationFailure("non-finite membership quantity");
    const double excess = spec.family() == Family::Exp
                              ? std::abs(std::log(w)) - spec.parameter()
                              : std::abs(w * w - 1.0) - spec.parameter();
    worst = std::max(worst, excess);
  }
  return worst;
}

std::vector<UnitDiskPoint> polar_grid(int radial, int angular, double max_radius) {
  if (radial < 1 || angular < 1) throw InvalidArgument("polar grid needs positive sizes");
  std::vector<UnitDiskPoint> grid;
  grid.reserve(static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular));
  for (int i = 0; i < radial; ++i) {
    const double r = max_radius * (i + 1) / radial;
    for (int j = 0; j < angular; ++j) {
      grid.push_back(UnitDiskPoint::polar(r, 2.0 * std::numbers::pi * j / angular));
    }
  }
  return grid;
}

}  // namespace psn
