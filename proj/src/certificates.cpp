#include "psn/sharp_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "psn/errors.hpp"

namespace psn {

namespace {

struct AuxEntry {
  AuxId id;
  std::string_view name;
  int arity;
  Family family;
};

constexpr std::array<AuxEntry, 20> kCatalog{{
    {AuxId::HExpStar, "h_exp_star", 1, Family::Exp},
    {AuxId::GExpStar, "g_exp_star", 2, Family::Exp},
    {AuxId::HSqrtStar, "h_sqrt_star", 1, Family::Sqrt},
    {AuxId::GSqrtStar, "g_sqrt_star", 2, Family::Sqrt},
    {AuxId::G1Sqrt, "g1_sqrt", 1, Family::Sqrt},
    {AuxId::G2Sqrt, "g2_sqrt", 1, Family::Sqrt},
    {AuxId::H1Sqrt, "h1_sqrt", 1, Family::Sqrt},
    {AuxId::H2Sqrt, "h2_sqrt", 1, Family::Sqrt},
    {AuxId::LemmaK, "lemma_k", 1, Family::Sqrt},
    {AuxId::LemmaK1, "lemma_k1", 1, Family::Sqrt},
    {AuxId::LemmaK2, "lemma_k2", 1, Family::Sqrt},
    {AuxId::LemmaK3, "lemma_k3", 1, Family::Sqrt},
    {AuxId::LemmaK4, "lemma_k4", 1, Family::Sqrt},
    {AuxId::LemmaL, "lemma_l", 1, Family::Sqrt},
    {AuxId::LemmaL1, "lemma_l1", 1, Family::Sqrt},
    {AuxId::HExpConvex, "h_exp_convex", 1, Family::Exp},
    {AuxId::KExpConvex, "k_exp_convex", 1, Family::Exp},
    {AuxId::HSqrtConvex, "h_sqrt_convex", 1, Family::Sqrt},
    {AuxId::KSqrtConvex, "k_sqrt_convex", 1, Family::Sqrt},
    {AuxId::K1SqrtConvex, "k1_sqrt_convex", 1, Family::Sqrt},
}};

constexpr std::array<AuxId, 20> kIds = [] {
  std::array<AuxId, 20> ids{};
  for (std::size_t i = 0; i < kCatalog.size(); ++i) ids[i] = kCatalog[i].id;
  return ids;
}();

const AuxEntry& entry(AuxId id) {
  for (const auto& e : kCatalog) {
    if (e.id == id) return e;
  }
  throw InvalidArgument("unknown auxiliary function");
}

void check_family(AuxId id, const ClassSpec& spec) {
  if (entry(id).family != spec.family()) {
    throw InvalidArgument(std::string(to_string(id)) + " needs the " +
                          std::string(to_string(entry(id).family)) + " family");
  }
}

double finite_or_throw(AuxId id, double value) {
  if (!std::isfinite(value)) {
    throw DomainViolation(std::string(to_string(id)) + " is not finite at the requested point");
  }
  return value;
}

// Univariate formulas as displayed; x is s, r, or c depending on the function.
double univariate(AuxId id, double k, double x) {
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double x4 = x2 * x2;
  switch (id) {
    case AuxId::HExpStar:
      if (x == 0.0) return 2.0 * k;
      return (1.0 - x2) * (std::expm1(k * x) + k * x) / x;
    case AuxId::HSqrtStar:
      if (x == 0.0) return k;
      return k * (1.0 - x2) / (2.0 * (1.0 - k * x)) + (1.0 - x2) * (1.0 - std::sqrt(1.0 - k * x)) / x;
    case AuxId::G1Sqrt:
      if (x == 0.0) return 1.0;
      return (1.0 + x) * (2.0 - x - 2.0 * std::pow(1.0 - x, 1.5)) / (2.0 * x);
    case AuxId::G2Sqrt:
      return -8.0 + 4.0 * x + x2 - 3.0 * x3 + 8.0 * std::sqrt(1.0 - x);
    case AuxId::H1Sqrt:
      return -2.0 + 4.0 * k * x - (2.0 + k * k) * x2 + 2.0 * k * x3 - k * k * x4;
    case AuxId::H2Sqrt:
      return std::pow(1.0 - k * x, 1.5) * (2.0 - k * x + 2.0 * x2 - 3.0 * k * x3);
    case AuxId::LemmaK1:
      return (1.0 - k * x) * (1.0 - k * x) *
             (-8.0 + 12.0 * k * x - 3.0 * k * k * x2 - 4.0 * k * x3 + 3.0 * k * k * x4);
    case AuxId::LemmaK2:
      return -4.0 * std::sqrt(1.0 - k * x) *
             (-2.0 + 6.0 * k * x - 6.0 * k * k * x2 + k * x3 + k * k * k * x3);
    case AuxId::LemmaK:
      return (univariate(AuxId::LemmaK1, k, x) + univariate(AuxId::LemmaK2, k, x)) /
             std::pow(1.0 - k * x, 3.5);
    case AuxId::LemmaK3:
      return (1.0 - k * x) * (1.0 - k * x) * (-8.0 + k * k + 12.0 * k * x - 5.0 * k * k * x2);
    case AuxId::LemmaK4:
      return -8.0 * (1.0 - k * k) * std::sqrt(1.0 - k * x);
    case AuxId::LemmaL:
      return -37.0 + 66.0 * x - 29.0 * x2;
    case AuxId::LemmaL1:
      return (1.0 - x) * (1.0 - x) * (-8.0 + 12.0 * x - 4.0 * x2) -
             8.0 * (1.0 - x2) * std::sqrt(1.0 - x);
    case AuxId::HExpConvex:
      if (x == 0.0) return k;
      return (1.0 - x2) * std::expm1(k * x) / x;
    case AuxId::KExpConvex: {
      const double e = std::exp(k * x);
      return 2.0 * (1.0 + e) + k * x * e * (2.0 + 2.0 * x2 + k * x3 - k * x);
    }
    case AuxId::HSqrtConvex:
      if (x == 0.0) return k / 2.0;
      return (1.0 - x2) * (1.0 - std::sqrt(1.0 - k * x)) / x;
    case AuxId::KSqrtConvex: {
      const double root3 = std::pow(1.0 - k * x, 1.5);
      return (-8.0 + 12.0 * k * x - 3.0 * k * k * x2 - 4.0 * k * x3 + 3.0 * k * k * x4 +
              8.0 * root3) /
             root3;
    }
    case AuxId::K1SqrtConvex:
      return -8.0 + k * k + 12.0 * k * x - 5.0 * k * k * x2;
    case AuxId::GExpStar:
    case AuxId::GSqrtStar:
      break;
  }
  throw InvalidArgument(std::string(to_string(id)) + " takes a point (r, s)");
}

double bivariate(AuxId id, double k, double r, double s) {
  if (id == AuxId::GExpStar) {
    return k * (1.0 - s * s) + (1.0 - r * r) * std::expm1(k * s) / r;
  }
  if (id == AuxId::GSqrtStar) {
    return k * (1.0 - s * s) / (2.0 * (1.0 - k * s)) + (1.0 - r * r) * (1.0 - std::sqrt(1.0 - k * s)) / r;
  }
  throw InvalidArgument(std::string(to_string(id)) + " takes a single point");
}

}  // namespace

std::string_view to_string(AuxId id) { return entry(id).name; }

AuxId parse_aux_id(std::string_view text) {
  for (const auto& e : kCatalog) {
    if (e.name == text) return e.id;
  }
  throw InvalidArgument("unknown auxiliary function '" + std::string(text) + "'");
}

std::span<const AuxId> aux_catalog() { return kIds; }
int aux_arity(AuxId id) { return entry(id).arity; }
Family aux_family(AuxId id) { return entry(id).family; }
bool aux_parameter_variable(AuxId id) { return id == AuxId::LemmaL || id == AuxId::LemmaL1; }

double aux_eval(AuxId id, const ClassSpec& spec, double x) {
  check_family(id, spec);
  if (aux_arity(id) != 1) throw InvalidArgument(std::string(to_string(id)) + " takes a point (r, s)");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainViolation(std::string(to_string(id)) + " is defined on [0, 1] only");
  }
  if (aux_parameter_variable(id) && x == 0.0) {
    throw DomainViolation(std::string(to_string(id)) + " is a function of c in (0, 1]");
  }
  return finite_or_throw(id, univariate(id, spec.parameter(), x));
}

double aux_eval(AuxId id, const ClassSpec& spec, double r, double s) {
  check_family(id, spec);
  if (aux_arity(id) != 2) throw InvalidArgument(std::string(to_string(id)) + " takes a single point");
  if (!(r > 0.0 && r < 1.0 && s >= 0.0 && s <= r)) {
    throw DomainViolation(std::string(to_string(id)) + " is defined on 0 <= s <= r < 1, r > 0");
  }
  return finite_or_throw(id, bivariate(id, spec.parameter(), r, s));
}

AuxId profile_reference(const ClassSpec& spec) {
  if (spec.family() == Family::Exp) {
    return spec.variant() == Variant::Starlike ? AuxId::HExpStar : AuxId::HExpConvex;
  }
  if (spec.variant() == Variant::Convex) return AuxId::HSqrtConvex;
  return spec.parameter() == 1.0 ? AuxId::G1Sqrt : AuxId::HSqrtStar;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Claim claim) {
  switch (claim) {
    case Claim::Negative:
      return "negative";
    case Claim::Positive:
      return "positive";
    case Claim::Increasing:
      return "increasing";
    case Claim::Decreasing:
      return "decreasing";
    case Claim::Concave:
      return "concave";
    case Claim::SingleSignChange:
      return "single-sign-change";
  }
  return "unknown";
}

Claim parse_claim(std::string_view text) {
  for (Claim c : {Claim::Negative, Claim::Positive, Claim::Increasing, Claim::Decreasing,
                  Claim::Concave, Claim::SingleSignChange}) {
    if (to_string(c) == text) return c;
  }
  throw InvalidArgument("unknown claim '" + std::string(text) + "'");
}

std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::Negative:
      return "negative";
    case Expectation::Positive:
      return "positive";
    case Expectation::NonNegative:
      return "nonnegative";
    case Expectation::NonPositive:
      return "nonpositive";
    case Expectation::Equals:
      return "equals";
  }
  return "unknown";
}

namespace {

std::string claim_note(AuxId id) {
  if (id == AuxId::KExpConvex) {
    return "printed companion identity h'' = -k/r^3 does not hold; concavity of h_exp_convex is "
           "certified directly";
  }
  return {};
}

SignCertificate bivariate_certificate(AuxId id, const ClassSpec& spec, Claim claim, int grid_size,
                                      Axis axis) {
  SignCertificate cert{id, spec, claim, axis, grid_size};
  if (claim == Claim::Concave || claim == Claim::SingleSignChange) {
    throw InvalidArgument(std::string(to_string(claim)) + " is a univariate claim");
  }
  const double k = spec.parameter();
  const double h = kFirstDifferenceStep;
  const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(grid_size))));
  const double lo = kCertificateDelta;
  const double hi = 1.0 - kCertificateDelta;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const double r = lo + (hi - lo) * i / (m - 1);
    for (int j = 0; j < m; ++j) {
      const double s = lo + (r - lo) * j / (m - 1);
      double margin = 0.0;
      switch (claim) {
        case Claim::Negative:
          margin = -bivariate(id, k, r, s);
          break;
        case Claim::Positive:
          margin = bivariate(id, k, r, s);
          break;
        case Claim::Increasing:
        case Claim::Decreasing: {
          const double d = axis == Axis::R
                               ? (bivariate(id, k, r + h, s) - bivariate(id, k, r - h, s)) / (2 * h)
                               : (bivariate(id, k, r, s + h) - bivariate(id, k, r, s - h)) / (2 * h);
          margin = claim == Claim::Increasing ? d : -d;
          break;
        }
        default:
          break;
      }
      if (std::isnan(margin) || margin < worst) {
        worst = margin;
        cert.worst_r = r;
        cert.worst_s = s;
      }
    }
  }
  cert.worst_margin = worst;
  cert.passed = worst > 0.0;
  return cert;
}

}  // namespace

SignCertificate sign_certificate(AuxId id, const ClassSpec& spec, Claim claim, int grid_size,
                                 Axis axis) {
  check_family(id, spec);
  if (grid_size < kMinCertificateGrid) throw InvalidArgument("certificate grid needs >= 1000 points");
  if (aux_arity(id) == 2) return bivariate_certificate(id, spec, claim, grid_size, axis);

  SignCertificate cert{id, spec, claim, axis, grid_size};
  cert.worst_s = std::numeric_limits<double>::quiet_NaN();
  cert.note = claim_note(id);
  const double k = spec.parameter();
  const auto f = [id, k](double x) { return univariate(id, k, x); };
  const auto d1 = [&f](double x) {
    const double h = kFirstDifferenceStep;
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  const auto d2 = [&f](double x) {
    const double h = kSecondDifferenceStep;
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  };
  const double lo = kCertificateDelta;
  const double hi = 1.0 - kCertificateDelta;
  const auto at = [&](int i) { return lo + (hi - lo) * i / (grid_size - 1); };

  if (claim == Claim::SingleSignChange) {
    int previous = 0;
    for (int i = 0; i < grid_size; ++i) {
      const double v = d1(at(i));
      const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
      if (sign == 0) continue;
      if (previous != 0 && sign != previous) {
        ++cert.sign_changes;
        cert.worst_r = at(i);
      }
      previous = sign;
    }
    const double first = d1(lo);
    const double last = d1(hi);
    cert.worst_margin = std::min(first, -last);
    cert.passed = cert.sign_changes == 1 && first > 0.0 && last < 0.0;
    return cert;
  }

  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    const double x = at(i);
    double margin = 0.0;
    switch (claim) {
      case Claim::Negative:
        margin = -f(x);
        break;
      case Claim::Positive:
        margin = f(x);
        break;
      case Claim::Increasing:
        margin = d1(x);
        break;
      case Claim::Decreasing:
        margin = -d1(x);
        break;
      case Claim::Concave:
        margin = -d2(x);
        break;
      case Claim::SingleSignChange:
        break;
    }
    if (std::isnan(margin) || margin < worst) {
      worst = margin;
      cert.worst_r = x;
      if (std::isnan(margin)) break;
    }
  }
  cert.worst_margin = worst;
  cert.passed = worst > 0.0;
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

EndpointCheck make_check(std::string name, double value, double numeric, Expectation expectation,
                         double expected_value = 0.0, std::string note = {}) {
  EndpointCheck c{std::move(name), value, numeric, expectation, expected_value, false, std::move(note)};
  bool sign_ok = false;
  switch (expectation) {
    case Expectation::Negative:
      sign_ok = value < 0.0;
      break;
    case Expectation::Positive:
      sign_ok = value > 0.0;
      break;
    case Expectation::NonNegative:
      sign_ok = value >= -1e-14;
      break;
    case Expectation::NonPositive:
      sign_ok = value <= 1e-14;
      break;
    case Expectation::Equals:
      sign_ok = std::abs(value - expected_value) <= 1e-12 * (1.0 + std::abs(expected_value));
      break;
  }
  const bool numeric_ok =
      std::isnan(numeric) || std::abs(numeric - value) <= 1e-6 * (1.0 + std::abs(value));
  c.passed = sign_ok && numeric_ok;
  return c;
}

/// h'(0+) from the alpha equation, Richardson-extrapolated.
double derivative_at_zero(const AlphaEquation& eq) {
  const auto hp = [&eq](double r) { return eq(r) / eq.derivative_denominator(r); };
  const double eps = 1e-5;
  return 2.0 * hp(eps) - hp(2.0 * eps);
}

double derivative_at_one(const AlphaEquation& eq) {
  const double den = eq.derivative_denominator(1.0);
  if (!(den > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return eq(1.0) / den;
}

}  // namespace

std::vector<EndpointCheck> endpoint_signs(const ClassSpec& spec) {
  const double k = spec.parameter();
  const AlphaEquation eq(spec);
  std::vector<EndpointCheck> checks;
  const double at0 = derivative_at_zero(eq);
  const double at1 = derivative_at_one(eq);

  if (spec.family() == Family::Exp) {
    if (spec.variant() == Variant::Starlike) {
      checks.push_back(make_check("h'(1)", -2.0 * std::expm1(k) - 2.0 * k, at1, Expectation::Negative));
      checks.push_back(make_check(
          "h'(0+)", k * k / 2.0, at0, Expectation::Positive, 0.0,
          "printed limit lambda^2 = " + std::to_string(k * k) +
              " differs from the expansion lambda^2/2; sign agrees"));
    } else {
      checks.push_back(make_check("h'(1)", -2.0 * std::expm1(k), at1, Expectation::Negative));
      checks.push_back(make_check("h'(0+)", k * k / 2.0, at0, Expectation::Positive));
    }
    return checks;
  }

  if (spec.variant() == Variant::Starlike) {
    if (k < 1.0) {
      checks.push_back(make_check("h'(1)", -2.0 * (1.0 - std::sqrt(1.0 - k)) - k / (1.0 - k), at1,
                                  Expectation::Negative));
    } else {
      checks.push_back(make_check("g1'(1)", corollary_equation(1.0) / 2.0,
                                  std::numeric_limits<double>::quiet_NaN(), Expectation::Equals, -1.5));
    }
    checks.push_back(make_check("h'(0+)", 5.0 * k * k / 8.0, at0, Expectation::Positive));
    // lemma endpoints
    checks.push_back(make_check("l(1)", univariate(AuxId::LemmaL, k, 1.0),
                                std::numeric_limits<double>::quiet_NaN(), Expectation::Equals, 0.0));
    checks.push_back(make_check("l1(1)", univariate(AuxId::LemmaL1, k, 1.0),
                                std::numeric_limits<double>::quiet_NaN(), Expectation::Equals, 0.0));
    const double h = kFirstDifferenceStep;
    const double k3_slope = (univariate(AuxId::LemmaK3, k, 1.0 + h) -
                             univariate(AuxId::LemmaK3, k, 1.0 - h)) / (2.0 * h);
    checks.push_back(make_check("k3'(1)", 2.0 * k * (1.0 - k) * (1.0 - k) * (14.0 - 9.0 * k),
                                k3_slope, Expectation::NonNegative));
    return checks;
  }

  checks.push_back(make_check("h'(1)", -2.0 * (1.0 - std::sqrt(1.0 - k)), at1, Expectation::Negative));
  checks.push_back(make_check("h'(0+)", k * k / 8.0, at0, Expectation::Positive));
  checks.push_back(make_check("k1(1)", 4.0 * (1.0 - k) * (k - 2.0),
                              univariate(AuxId::K1SqrtConvex, k, 1.0), Expectation::NonPositive));
  return checks;
}

bool CertificationReport::passed() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const auto& c) { return c.passed; }) &&
         std::all_of(endpoints.begin(), endpoints.end(), [](const auto& c) { return c.passed; });
}

CertificationReport certify(const ClassSpec& spec, int grid_size) {
  CertificationReport report{spec};
  auto add = [&](AuxId id, Claim claim, Axis axis = Axis::R) {
    report.certificates.push_back(sign_certificate(id, spec, claim, grid_size, axis));
  };
  const bool c_is_one = spec.family() == Family::Sqrt && spec.parameter() == 1.0;

  if (spec.family() == Family::Exp && spec.variant() == Variant::Starlike) {
    add(AuxId::GExpStar, Claim::Decreasing);
    add(AuxId::HExpStar, Claim::Concave);
    add(AuxId::HExpStar, Claim::SingleSignChange);
  } else if (spec.family() == Family::Sqrt && spec.variant() == Variant::Starlike) {
    add(AuxId::GSqrtStar, Claim::Decreasing);
    add(AuxId::HSqrtStar, Claim::Concave);
    add(AuxId::HSqrtStar, Claim::SingleSignChange);
    add(AuxId::LemmaK, Claim::Negative);
    add(AuxId::LemmaK3, Claim::Increasing);
    if (!c_is_one) add(AuxId::LemmaK4, Claim::Increasing);
    add(AuxId::LemmaL, Claim::Negative);
    add(AuxId::LemmaL, Claim::Increasing);
    add(AuxId::LemmaL1, Claim::Negative);
    add(AuxId::LemmaL1, Claim::Increasing);
    if (c_is_one) {
      add(AuxId::GSqrtStar, Claim::Increasing, Axis::S);
      add(AuxId::G1Sqrt, Claim::Concave);
      add(AuxId::G1Sqrt, Claim::SingleSignChange);
      add(AuxId::G2Sqrt, Claim::Negative);
    }
  } else if (spec.family() == Family::Exp) {
    add(AuxId::HExpConvex, Claim::Concave);
    add(AuxId::HExpConvex, Claim::SingleSignChange);
    add(AuxId::KExpConvex, Claim::Positive);
  } else {
    add(AuxId::HSqrtConvex, Claim::Concave);
    add(AuxId::HSqrtConvex, Claim::SingleSignChange);
    add(AuxId::KSqrtConvex, Claim::Negative);
    add(AuxId::KSqrtConvex, Claim::Decreasing);
    add(AuxId::K1SqrtConvex, Claim::Negative);
    add(AuxId::K1SqrtConvex, Claim::Increasing);
  }
  report.endpoints = endpoint_signs(spec);
  return report;
}

}  // namespace psn
