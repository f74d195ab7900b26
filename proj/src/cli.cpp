#include "psn/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "psn/errors.hpp"
#include "psn/norm_estimator.hpp"
#include "psn/parallel.hpp"
#include "psn/sharp_bounds.hpp"

namespace psn::cli {

using Json = nlohmann::ordered_json;

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Bound: return "bound";
    case Command::Alpha: return "alpha";
    case Command::Profile: return "profile";
    case Command::Verify: return "verify";
    case Command::Certify: return "certify";
    case Command::Table: return "table";
  }
  return "?";
}

std::string_view to_string(Format format) { return format == Format::Json ? "json" : "csv"; }

Command parse_command(std::string_view text) {
  for (auto c : {Command::Bound, Command::Alpha, Command::Profile, Command::Verify,
                 Command::Certify, Command::Table}) {
    if (text == to_string(c)) return c;
  }
  throw InvalidArgument("unknown command '" + std::string(text) + "'");
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw InvalidArgument("unknown format '" + std::string(text) + "' (expected json or csv)");
}

namespace {

int parse_positive(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value <= 0) {
    throw InvalidArgument("grid must be two positive integers RxA");
  }
  return value;
}

}  // namespace

GridSize parse_grid(std::string_view text) {
  constexpr std::string_view kTimes = "\xC3\x97";
  std::size_t split = text.find_first_of("xX");
  std::size_t width = 1;
  if (split == std::string_view::npos) {
    split = text.find(kTimes);
    width = kTimes.size();
  }
  if (split == std::string_view::npos) throw InvalidArgument("grid must be two positive integers RxA");
  return {parse_positive(text.substr(0, split)), parse_positive(text.substr(split + width))};
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return {buf, res.ptr};
}

namespace {

Json num(double v) { return std::isfinite(v) ? Json(round12(v)) : Json(nullptr); }

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((write_field(fields, first)), ...);
    out_ << '\n';
  }

 private:
  void separator(bool& first) {
    if (!first) out_ << ',';
    first = false;
  }
  void write_field(double v, bool& first) {
    separator(first);
    out_ << format_number(v);
  }
  void write_field(int v, bool& first) {
    separator(first);
    out_ << v;
  }
  void write_field(std::uint64_t v, bool& first) {
    separator(first);
    out_ << v;
  }
  void write_field(bool v, bool& first) {
    separator(first);
    out_ << (v ? "true" : "false");
  }
  void write_field(std::string_view v, bool& first) {
    separator(first);
    if (v.find_first_of(",\"\n") == std::string_view::npos) {
      out_ << v;
      return;
    }
    out_ << '"';
    for (char ch : v) {
      if (ch == '"') out_ << '"';
      out_ << ch;
    }
    out_ << '"';
  }
  void write_field(const char* v, bool& first) { write_field(std::string_view(v), first); }
  void write_field(const std::string& v, bool& first) { write_field(std::string_view(v), first); }

  std::ostream& out_;
};

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["family"] = to_string(c.family);
  j["param"] = c.param ? num(*c.param) : Json(nullptr);
  j["variant"] = to_string(c.variant);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["grid"] = c.grid;
  j["refine"] = c.refine;
  j["format"] = to_string(c.format);
  j["output"] = c.output.empty() ? Json(nullptr) : Json(c.output);
  j["points"] = c.points ? Json(*c.points) : Json(nullptr);
  j["aux"] = c.aux ? Json(*c.aux) : Json(nullptr);
  j["s"] = num(c.s);
  j["count"] = c.count;
  return j;
}

ClassSpec spec_of(const RunConfig& c) {
  if (!c.param) throw InvalidArgument("--param is required for " + std::string(to_string(c.command)));
  return ClassSpec(c.family, *c.param, c.variant);
}

EstimatorOptions estimator_options(const RunConfig& c) {
  if (c.refine < 0) throw InvalidArgument("--refine must be >= 0");
  const auto grid = parse_grid(c.grid);
  EstimatorOptions o;
  o.radial = grid.radial;
  o.angular = grid.angular;
  o.refine = c.refine;
  if (o.radial < 64 || o.angular < 128) {
    throw InvalidArgument("--grid needs at least 64 radial and 128 angular points");
  }
  return o;
}

int emit_bound(const RunConfig& c, std::ostream& out) {
  const auto r = norm_bound(spec_of(c));
  if (c.format == Format::Json) {
    Json j;
    j["config"] = config_json(c);
    j["family"] = to_string(r.spec.family());
    j["param"] = num(r.spec.parameter());
    j["variant"] = to_string(r.spec.variant());
    j["alpha"] = num(r.alpha);
    j["bound"] = num(r.bound);
    j["residual"] = num(r.residual);
    j["bracket"] = Json::array({num(r.bracket.lo), num(r.bracket.hi)});
    j["sign_changes"] = r.sign_changes;
    out << j.dump(2) << '\n';
  } else {
    CsvWriter w(out);
    w.row("family", "param", "variant", "alpha", "bound", "residual");
    w.row(to_string(r.spec.family()), r.spec.parameter(), to_string(r.spec.variant()), r.alpha,
          r.bound, r.residual);
  }
  return 0;
}

int emit_profile(const RunConfig& c, std::ostream& out) {
  const ClassSpec spec = spec_of(c);
  const int n = c.points.value_or(kDefaultProfilePoints);
  if (n < 2) throw InvalidArgument("--points must be >= 2 for profile");
  const double rmax = 1.0 - kEvaluationCap;

  std::string source;
  std::vector<ProfileSample> samples;
  if (c.aux) {
    const AuxId id = parse_aux_id(*c.aux);
    source = std::string(to_string(id));
    if (aux_arity(id) == 2) {
      if (!(c.s >= 0.0 && c.s < rmax)) throw InvalidArgument("--s must lie in [0, 1 - 1e-3)");
      for (int k = 1; k <= n; ++k) {
        const double r = k == n ? rmax : c.s + (rmax - c.s) * k / n;
        samples.push_back({r, aux_eval(id, spec, r, c.s)});
      }
    } else {
      for (int k = 1; k <= n; ++k) {
        const double r = k == n ? rmax : rmax * k / n;
        samples.push_back({r, aux_eval(id, spec, r)});
      }
    }
  } else {
    const auto f = extremal(spec);
    source = std::string(to_string(f.tag()));
    samples = radial_profile(f, n);
  }

  if (c.format == Format::Json) {
    Json j;
    j["config"] = config_json(c);
    j["source"] = source;
    Json rows = Json::array();
    for (const auto& s : samples) rows.push_back({{"r", num(s.r)}, {"value", num(s.value)}});
    j["samples"] = std::move(rows);
    out << j.dump(2) << '\n';
  } else {
    CsvWriter w(out);
    w.row("r", "value");
    for (const auto& s : samples) w.row(s.r, s.value);
  }
  return 0;
}

int emit_verify(const RunConfig& c, std::ostream& out) {
  const ClassSpec spec = spec_of(c);
  if (c.samples < 0) throw InvalidArgument("--samples must be >= 0");
  const auto report = verify_spec(spec, c.samples, c.seed, estimator_options(c));
  const double bound = report.bound.bound;
  const double sharp_margin = report.tol_sharp - report.sharpness_error;

  if (c.format == Format::Json) {
    Json j;
    j["config"] = config_json(c);
    j["bound"] = {{"alpha", num(report.bound.alpha)},
                  {"bound", num(bound)},
                  {"residual", num(report.bound.residual)}};
    const auto z = report.sharpness.argmax.value();
    j["sharpness"] = {{"estimate", num(report.sharpness.value)},
                      {"coarse", num(report.sharpness.coarse_value)},
                      {"error", num(report.sharpness_error)},
                      {"tolerance", num(report.tol_sharp)},
                      {"argmax", {{"re", num(z.real())}, {"im", num(z.imag())}}},
                      {"on_axis", report.sharpness_on_axis},
                      {"boundary_limited", report.sharpness.boundary_limited},
                      {"passed", report.sharpness_passed}};
    Json members = Json::array();
    for (const auto& m : report.members) {
      members.push_back({{"index", m.index},
                         {"seed", m.seed},
                         {"degree", m.degree},
                         {"estimate", num(m.estimate)},
                         {"margin", num(m.margin)},
                         {"passed", m.passed}});
    }
    j["tol_bound"] = num(report.tol_bound);
    j["members"] = std::move(members);
    j["passed"] = report.passed();
    out << j.dump(2) << '\n';
  } else {
    CsvWriter w(out);
    w.row("kind", "index", "seed", "degree", "estimate", "bound", "margin", "passed");
    w.row("sharpness", "", "", "", report.sharpness.value, bound, sharp_margin,
          report.sharpness_passed);
    for (const auto& m : report.members) {
      w.row("member", m.index, m.seed, m.degree, m.estimate, bound, m.margin, m.passed);
    }
  }
  return report.passed() ? 0 : 1;
}

int emit_certify(const RunConfig& c, std::ostream& out) {
  const ClassSpec spec = spec_of(c);
  const int grid = c.points.value_or(kSignScanPoints);
  if (grid < kMinCertificateGrid) throw InvalidArgument("--points must be >= 1000 for certify");
  const auto report = certify(spec, grid);

  if (c.format == Format::Json) {
    Json j;
    j["config"] = config_json(c);
    Json certs = Json::array();
    for (const auto& s : report.certificates) {
      certs.push_back({{"id", to_string(s.id)},
                       {"claim", to_string(s.claim)},
                       {"axis", s.axis == Axis::R ? "r" : "s"},
                       {"grid", s.grid_size},
                       {"passed", s.passed},
                       {"worst_margin", num(s.worst_margin)},
                       {"worst_r", num(s.worst_r)},
                       {"worst_s", num(s.worst_s)},
                       {"sign_changes", s.sign_changes},
                       {"note", s.note}});
    }
    Json ends = Json::array();
    for (const auto& e : report.endpoints) {
      ends.push_back({{"name", e.name},
                      {"value", num(e.value)},
                      {"numeric", num(e.numeric)},
                      {"expectation", to_string(e.expectation)},
                      {"expected", num(e.expected_value)},
                      {"passed", e.passed},
                      {"note", e.note}});
    }
    j["certificates"] = std::move(certs);
    j["endpoints"] = std::move(ends);
    j["passed"] = report.passed();
    out << j.dump(2) << '\n';
  } else {
    CsvWriter w(out);
    w.row("kind", "name", "claim", "axis", "grid", "passed", "worst_margin", "worst_r", "worst_s",
          "sign_changes", "value", "numeric", "expected", "note");
    const double nan = std::nan("");
    for (const auto& s : report.certificates) {
      w.row("certificate", to_string(s.id), to_string(s.claim), s.axis == Axis::R ? "r" : "s",
            s.grid_size, s.passed, s.worst_margin, s.worst_r, s.worst_s, s.sign_changes, nan, nan,
            nan, s.note);
    }
    for (const auto& e : report.endpoints) {
      w.row("endpoint", e.name, to_string(e.expectation), "", 0, e.passed, nan, nan, nan, 0,
            e.value, e.numeric, e.expected_value, e.note);
    }
  }
  return report.passed() ? 0 : 1;
}

int emit_table(const RunConfig& c, std::ostream& out) {
  if (c.count < 1) throw InvalidArgument("--count must be >= 1");
  const double top = max_parameter(c.family);
  std::vector<BoundReport> rows;
  rows.reserve(static_cast<std::size_t>(c.count));
  for (int k = 1; k <= c.count; ++k) {
    const double p = k == c.count ? top : top * k / c.count;
    rows.push_back(norm_bound(ClassSpec(c.family, p, c.variant)));
  }

  if (c.format == Format::Json) {
    Json j;
    j["config"] = config_json(c);
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"param", num(r.spec.parameter())},
                     {"alpha", num(r.alpha)},
                     {"bound", num(r.bound)},
                     {"residual", num(r.residual)},
                     {"sign_changes", r.sign_changes}});
    }
    j["rows"] = std::move(arr);
    out << j.dump(2) << '\n';
  } else {
    CsvWriter w(out);
    w.row("family", "variant", "param", "alpha", "bound", "residual", "sign_changes");
    for (const auto& r : rows) {
      w.row(to_string(c.family), to_string(c.variant), r.spec.parameter(), r.alpha, r.bound,
            r.residual, r.sign_changes);
    }
  }
  return 0;
}

std::string one_line(std::string text) {
  for (char& ch : text) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return text;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream doc;
  int status = 0;
  try {
    worker_threads();
    parse_grid(config.grid);
    switch (config.command) {
      case Command::Bound:
      case Command::Alpha: status = emit_bound(config, doc); break;
      case Command::Profile: status = emit_profile(config, doc); break;
      case Command::Verify: status = emit_verify(config, doc); break;
      case Command::Certify: status = emit_certify(config, doc); break;
      case Command::Table: status = emit_table(config, doc); break;
    }
  } catch (const InvalidArgument& e) {
    err << "psn: error: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const DomainViolation& e) {
    err << "psn: error: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const Error& e) {
    err << "psn: failure: " << one_line(e.what()) << '\n';
    return 1;
  }

  if (config.output.empty()) {
    out << doc.str();
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "psn: error: cannot open output file '" << config.output << "'\n";
      return 2;
    }
    file << doc.str();
    if (!file.flush()) {
      err << "psn: error: cannot write output file '" << config.output << "'\n";
      return 2;
    }
  }
  return status;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp pre-Schwarzian norm bounds for exponential and lemniscate-type classes",
               "psn"};
  RunConfig config;
  std::string command;
  std::string family = "exp";
  std::string variant = "starlike";
  std::string format = "json";
  double param = 0.0;
  int points = 0;
  std::string aux;

  app.add_option("command", command, "bound | alpha | profile | verify | certify | table")
      ->required();
  auto* param_opt = app.add_option("--param", param, "lambda in (0, pi/2] or c in (0, 1]");
  app.add_option("--family", family, "exp | sqrt");
  app.add_option("--variant", variant, "starlike | convex");
  app.add_option("--samples", config.samples, "verify: sampled members");
  app.add_option("--seed", config.seed, "verify: sampler seed");
  app.add_option("--grid", config.grid, "estimator grid RxA");
  app.add_option("--refine", config.refine, "estimator refinement rounds");
  app.add_option("--format", format, "json | csv");
  app.add_option("--output,-o", config.output, "output path (default: standard output)");
  auto* points_opt =
      app.add_option("--points", points, "profile: samples; certify: grid size");
  auto* aux_opt = app.add_option("--aux", aux, "profile: auxiliary function id");
  app.add_option("--s", config.s, "profile: fixed s for a bivariate auxiliary");
  app.add_option("--count", config.count, "table: number of parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "psn: error: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    config.command = parse_command(command);
    config.family = parse_family(family);
    config.variant = parse_variant(variant);
    config.format = parse_format(format);
  } catch (const InvalidArgument& e) {
    err << "psn: error: " << one_line(e.what()) << '\n';
    return 2;
  }
  if (param_opt->count() > 0) config.param = param;
  if (points_opt->count() > 0) config.points = points;
  if (aux_opt->count() > 0) config.aux = aux;
  return run(config, out, err);
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"psn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace psn::cli
