#include "sdnls/cli_io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sdnls/error.hpp"

namespace sdnls {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kVersion = "0.1.0";

struct PresetSpec {
  std::string_view figure;
  std::string_view description;
  int eta;
  double shift;
  /// (modulus, angle / pi, order)
  std::vector<std::tuple<double, double, int>> eigenvalues;
};

const std::vector<PresetSpec>& preset_table() {
  static const std::vector<PresetSpec> table = {
      {"fig1", "three simple eigenvalues: three-soliton", 1, 15.0,
       {{1.0, 5.0 / 24.0, 1}, {1.0, 9.0 / 24.0, 1}, {1.0, 10.0 / 24.0, 1}}},
      {"fig2", "four simple eigenvalues: breather and two solitons", 1, 8.0,
       {{2.0, 1.0 / 8.0, 1}, {0.5, 1.0 / 8.0, 1}, {1.0, 1.0 / 3.0, 1}, {1.0, 5.0 / 12.0, 1}}},
      {"fig3", "two simple and one double eigenvalue", 1, 10.0,
       {{2.0, 1.0 / 8.0, 1}, {0.5, 1.0 / 8.0, 1}, {1.0, 1.0 / 8.0, 2}}},
      {"fig4", "two double eigenvalues: two-breather", 1, 7.0, {{2.0, 1.0 / 8.0, 2}, {0.5, 1.0 / 8.0, 2}}},
      {"fig5", "two triple eigenvalues: three-breather", 1, 5.0, {{2.0, 1.0 / 6.0, 3}, {0.5, 1.0 / 6.0, 3}}},
      {"fig6", "three simple eigenvalues, eta = -1: a breather and a bright soliton", -1, 7.0,
       {{2.0, 1.0 / 3.0, 1}, {0.5, 1.0 / 3.0, 1}, {1.0, 1.0 / 12.0, 1}}},
      {"fig7", "one triple eigenvalue, eta = -1", -1, 15.0, {{1.0, 1.0 / 4.0, 3}}},
  };
  return table;
}

std::pair<double, double> variant_shift(char variant, double s) {
  switch (variant) {
    case 'a':
      return {0.0, -s};
    case 'b':
      return {0.0, 0.0};
    case 'c':
      return {s, 0.0};
    case 'd':
      return {s, s};
    default:
      throw Error(Errc::UnknownPreset, std::string("unknown shift variant '") + variant + "'");
  }
}

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(Errc::InvalidConfig, field + ": " + why);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad_field(field, "must be finite");
  return v;
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) bad_field(field, "expected an integer");
  return j.get<int>();
}

int get_sign(const json& j, const std::string& field) {
  const int v = get_int(j, field);
  if (v != 1 && v != -1) bad_field(field, "must be +1 or -1");
  return v;
}

cplx get_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {get_number(j, field), 0.0};
  if (!j.is_object()) bad_field(field, "expected {\"re\", \"im\"} or a number");
  for (const auto& [key, value] : j.items()) {
    if (key != "re" && key != "im") bad_field(field + "." + key, "unknown field");
  }
  const double re = j.contains("re") ? get_number(j["re"], field + ".re") : 0.0;
  const double im = j.contains("im") ? get_number(j["im"], field + ".im") : 0.0;
  return {re, im};
}

void check_keys(const json& j, const std::string& field, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) bad_field(field, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) bad_field(field.empty() ? key : field + "." + key, "unknown field");
  }
}

EigenvalueEntry parse_eigenvalue(const json& j, const std::string& field) {
  check_keys(j, field, {"re", "im", "modulus", "angle", "order", "b", "d", "h"});
  EigenvalueEntry e;
  const bool cartesian = j.contains("re") || j.contains("im");
  const bool polar = j.contains("modulus") || j.contains("angle");
  if (cartesian == polar) bad_field(field, "give either re/im or modulus/angle");
  if (cartesian) {
    e.xi = {j.contains("re") ? get_number(j["re"], field + ".re") : 0.0,
            j.contains("im") ? get_number(j["im"], field + ".im") : 0.0};
  } else {
    if (!j.contains("modulus") || !j.contains("angle")) bad_field(field, "polar form needs modulus and angle");
    e.xi = std::polar(get_number(j["modulus"], field + ".modulus"), get_number(j["angle"], field + ".angle"));
  }
  if (j.contains("order")) {
    e.order = get_int(j["order"], field + ".order");
    if (e.order < 1 || e.order > 3) bad_field(field + ".order", "must be 1, 2 or 3");
  }
  if (j.contains("b")) e.b = get_complex(j["b"], field + ".b");
  if (j.contains("d")) {
    if (e.order < 2) bad_field(field + ".d", "only meaningful for double and triple poles");
    e.d = get_complex(j["d"], field + ".d");
  }
  if (j.contains("h")) {
    if (e.order < 3) bad_field(field + ".h", "only meaningful for triple poles");
    e.h = get_complex(j["h"], field + ".h");
  }
  return e;
}

ordered_json complex_json(cplx z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

ordered_json config_json(const ScenarioConfig& c) {
  const auto& bg = c.background;
  ordered_json eig = ordered_json::array();
  for (const auto& e : c.eigenvalues) {
    ordered_json j;
    j["re"] = e.xi.real();
    j["im"] = e.xi.imag();
    j["order"] = e.order;
    const cplx b_default = c.frame == NormingFrame::Centered ? default_centered_b(bg.sigma) : cplx(1.0);
    j["b"] = complex_json(e.b.value_or(b_default));
    if (e.order >= 2) j["d"] = complex_json(e.d.value_or(cplx{}));
    if (e.order >= 3) j["h"] = complex_json(e.h.value_or(cplx{}));
    eig.push_back(j);
  }
  ordered_json out;
  out["name"] = c.name;
  out["sigma"] = bg.sigma;
  out["eta"] = bg.eta;
  out["q_minus"] = complex_json(bg.q_minus);
  out["x0"] = bg.x0;
  out["t0"] = bg.t0;
  out["norming_frame"] = c.frame == NormingFrame::Centered ? "centered" : "raw";
  out["eigenvalues"] = eig;
  out["grid"] = ordered_json{{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"nx", c.grid.nx},
                             {"t_min", c.grid.t_min}, {"t_max", c.grid.t_max}, {"nt", c.grid.nt}};
  out["tolerances"] = ordered_json{
      {"quadrature", c.tolerances.quadrature}, {"tail", c.tolerances.tail}, {"residual_h", c.tolerances.residual_h}};
  out["output"] =
      ordered_json{{"path", c.output.path}, {"format", c.output.format == OutputFormat::Csv ? "csv" : "json"}};
  return out;
}

std::string default_output_path(const ScenarioConfig& c) {
  return c.name + (c.output.format == OutputFormat::Csv ? ".csv" : ".json");
}

ordered_json metadata_json(const ScenarioConfig& config, const DiscreteSpectrum& spectrum,
                           const std::vector<SolutionSample>& samples, int singular) {
  ordered_json singular_at = ordered_json::array();
  for (const auto& s : samples) {
    if (s.singular) singular_at.push_back(ordered_json::array({s.x, s.t}));
  }
  ordered_json m;
  m["tool"] = "sdnls";
  m["version"] = std::string(kVersion);
  m["mbar"] = complex_json(spectrum.mbar());
  m["exp2imbar"] = complex_json(spectrum.exp2imbar());
  m["branch_convention"] =
      "mbar = Log(exp(2 i mbar)) / (2 i) with the principal logarithm; exp(i mbar) is the principal square root; "
      "q = exp(2 i m_-) P with m_- integrated from the left far field";
  m["pole_counts"] = ordered_json::array({spectrum.n1(), spectrum.n2(), spectrum.n3()});
  m["singular_count"] = singular;
  m["singular_at"] = singular_at;
  m["config"] = config_json(config);
  return m;
}

std::string render_csv(const ordered_json& meta, const std::vector<SolutionSample>& samples) {
  std::string out;
  out.reserve(samples.size() * 96 + 4096);
  for (const auto& [key, value] : meta.items()) {
    out += "# ";
    out += key;
    out += ": ";
    out += value.is_string() ? value.get<std::string>() : value.dump();
    out += '\n';
  }
  out += "x,t,re_q,im_q,abs_q,singular\n";
  for (const auto& s : samples) {
    out += format_double(s.x);
    out += ',';
    out += format_double(s.t);
    out += ',';
    if (s.singular) {
      out += "nan,nan,nan,1\n";
      continue;
    }
    out += format_double(s.q.real());
    out += ',';
    out += format_double(s.q.imag());
    out += ',';
    out += format_double(std::abs(s.q));
    out += ",0\n";
  }
  return out;
}

std::string render_json(const ordered_json& meta, const std::vector<SolutionSample>& samples) {
  ordered_json x = ordered_json::array(), t = ordered_json::array(), re = ordered_json::array(),
               im = ordered_json::array(), ab = ordered_json::array(), sg = ordered_json::array();
  for (const auto& s : samples) {
    x.push_back(s.x);
    t.push_back(s.t);
    sg.push_back(s.singular ? 1 : 0);
    if (s.singular) {
      re.push_back(nullptr);
      im.push_back(nullptr);
      ab.push_back(nullptr);
    } else {
      re.push_back(s.q.real());
      im.push_back(s.q.imag());
      ab.push_back(std::abs(s.q));
    }
  }
  ordered_json doc;
  doc["metadata"] = meta;
  doc["samples"] = ordered_json{{"x", x}, {"t", t}, {"re_q", re}, {"im_q", im}, {"abs_q", ab}, {"singular", sg}};
  return doc.dump(1) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

ordered_json check_json(const std::string& name, bool pass, double value, double limit, ordered_json extra = {}) {
  ordered_json j{{"name", name}, {"pass", pass}, {"value", value}, {"limit", limit}};
  if (extra.is_object()) {
    for (auto& [k, v] : extra.items()) j[k] = v;
  }
  return j;
}

}  // namespace

std::string_view version() noexcept { return kVersion; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

GridSpec default_grid(const BackgroundParams& bg) {
  GridSpec g;
  g.x_min = -40.0 + 0.5 * bg.x0;
  g.x_max = 40.0 + 0.5 * bg.x0;
  g.t_min = -25.0 + 0.5 * bg.t0;
  g.t_max = 25.0 + 0.5 * bg.t0;
  return g;
}

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& p : preset_table()) {
    for (char v : {'a', 'b', 'c', 'd'}) {
      const auto [x0, t0] = variant_shift(v, p.shift);
      std::ostringstream d;
      d << p.description << " (x0 = " << x0 << ", t0 = " << t0 << ")";
      out.push_back({std::string(p.figure) + v, d.str()});
    }
  }
  return out;
}

ScenarioConfig preset(std::string_view name) {
  for (const auto& p : preset_table()) {
    if (name.substr(0, p.figure.size()) != p.figure) continue;
    const std::string_view rest = name.substr(p.figure.size());
    if (rest.size() > 1) break;
    const char variant = rest.empty() ? 'b' : rest[0];
    if (variant < 'a' || variant > 'd') break;
    ScenarioConfig c;
    c.name = std::string(p.figure) + variant;
    c.background.sigma = -1;
    c.background.eta = p.eta;
    c.background.q_minus = 1.0;
    std::tie(c.background.x0, c.background.t0) = variant_shift(variant, p.shift);
    for (const auto& [modulus, angle, order] : p.eigenvalues) {
      EigenvalueEntry e;
      e.xi = std::polar(modulus, angle * std::numbers::pi);
      e.order = order;
      c.eigenvalues.push_back(e);
    }
    c.grid = default_grid(c.background);
    c.output.path = default_output_path(c);
    return c;
  }
  throw Error(Errc::UnknownPreset, "no preset named '" + std::string(name) + "'");
}

ScenarioConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidConfig, std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, "", {"name", "preset", "sigma", "eta", "q_minus", "x0", "t0", "norming_frame", "eigenvalues", "grid",
                     "tolerances", "output"});
  ScenarioConfig c;
  bool grid_from_base = false;
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) bad_field("preset", "expected a string");
    c = preset(j["preset"].get<std::string>());
    grid_from_base = true;
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) bad_field("name", "expected a string");
    c.name = j["name"].get<std::string>();
  }
  auto& bg = c.background;
  if (j.contains("sigma")) bg.sigma = get_sign(j["sigma"], "sigma");
  if (j.contains("eta")) bg.eta = get_sign(j["eta"], "eta");
  if (j.contains("q_minus")) bg.q_minus = get_complex(j["q_minus"], "q_minus");
  if (j.contains("x0")) bg.x0 = get_number(j["x0"], "x0");
  if (j.contains("t0")) bg.t0 = get_number(j["t0"], "t0");
  if (!(bg.q0() > 0.0)) bad_field("q_minus", "must be nonzero");
  if (j.contains("norming_frame")) {
    const auto& f = j["norming_frame"];
    if (f == "centered") {
      c.frame = NormingFrame::Centered;
    } else if (f == "raw") {
      c.frame = NormingFrame::Raw;
    } else {
      bad_field("norming_frame", "expected \"centered\" or \"raw\"");
    }
  }
  if (j.contains("eigenvalues")) {
    const auto& list = j["eigenvalues"];
    if (!list.is_array()) bad_field("eigenvalues", "expected an array");
    c.eigenvalues.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      c.eigenvalues.push_back(parse_eigenvalue(list[i], "eigenvalues[" + std::to_string(i) + "]"));
    }
  }

  const bool shift_given = j.contains("x0") || j.contains("t0");
  if (!grid_from_base || shift_given) c.grid = default_grid(bg);
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    check_keys(g, "grid", {"x_min", "x_max", "nx", "t_min", "t_max", "nt"});
    if (g.contains("x_min")) c.grid.x_min = get_number(g["x_min"], "grid.x_min");
    if (g.contains("x_max")) c.grid.x_max = get_number(g["x_max"], "grid.x_max");
    if (g.contains("t_min")) c.grid.t_min = get_number(g["t_min"], "grid.t_min");
    if (g.contains("t_max")) c.grid.t_max = get_number(g["t_max"], "grid.t_max");
    if (g.contains("nx")) c.grid.nx = get_int(g["nx"], "grid.nx");
    if (g.contains("nt")) c.grid.nt = get_int(g["nt"], "grid.nt");
  }
  try {
    c.grid.validate();
  } catch (const Error& e) {
    bad_field("grid", e.what());
  }

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    check_keys(t, "tolerances", {"quadrature", "tail", "residual_h"});
    if (t.contains("quadrature")) c.tolerances.quadrature = get_number(t["quadrature"], "tolerances.quadrature");
    if (t.contains("tail")) c.tolerances.tail = get_number(t["tail"], "tolerances.tail");
    if (t.contains("residual_h")) c.tolerances.residual_h = get_number(t["residual_h"], "tolerances.residual_h");
  }
  if (!(c.tolerances.quadrature > 0.0)) bad_field("tolerances.quadrature", "must be positive");
  if (!(c.tolerances.tail > 0.0 && c.tolerances.tail < 1.0)) bad_field("tolerances.tail", "must lie in (0, 1)");
  if (!(c.tolerances.residual_h > 0.0)) bad_field("tolerances.residual_h", "must be positive");

  bool path_given = false;
  if (j.contains("output")) {
    const auto& o = j["output"];
    check_keys(o, "output", {"path", "format"});
    if (o.contains("format")) {
      if (o["format"] == "csv") {
        c.output.format = OutputFormat::Csv;
      } else if (o["format"] == "json") {
        c.output.format = OutputFormat::Json;
      } else {
        bad_field("output.format", "expected \"csv\" or \"json\"");
      }
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) bad_field("output.path", "expected a string");
      c.output.path = o["path"].get<std::string>();
      path_given = true;
    }
  }
  if (!path_given) c.output.path = default_output_path(c);

  try {
    bg.validate();
  } catch (const Error& e) {
    bad_field("sigma/eta/q_minus", e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::InvalidConfig, "cannot read config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string resolved_config_json(const ScenarioConfig& config, int indent) { return config_json(config).dump(indent); }

DiscreteSpectrum build_spectrum(const ScenarioConfig& config) {
  try {
    return validate_spectrum(config.background, config.eigenvalues, config.frame);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("eigenvalues: ") + e.what());
  }
}

SolverOptions solver_options(const ScenarioConfig& config) {
  SolverOptions o;
  o.quad_tol = config.tolerances.quadrature;
  o.tail_tol = config.tolerances.tail;
  return o;
}

EvaluationOutput render_evaluation(const ScenarioConfig& config, unsigned workers) {
  config.grid.validate();
  DiscreteSpectrum spectrum = build_spectrum(config);
  const Solution solution(spectrum, solver_options(config));
  EvaluationOutput out;
  out.samples = solution.evaluate_grid(config.grid, workers);
  for (const auto& s : out.samples) out.singular_count += s.singular ? 1 : 0;
  const ordered_json meta = metadata_json(config, spectrum, out.samples, out.singular_count);
  out.text = config.output.format == OutputFormat::Csv ? render_csv(meta, out.samples) : render_json(meta, out.samples);
  return out;
}

EvaluationOutput run_evaluate(const ScenarioConfig& config, unsigned workers) {
  EvaluationOutput out = render_evaluation(config, workers);
  write_file(config.output.path, out.text);
  return out;
}

std::vector<SolutionSample> read_json_samples(std::string_view json_text) {
  const json doc = json::parse(json_text);
  const auto& s = doc.at("samples");
  const auto& x = s.at("x");
  std::vector<SolutionSample> out(x.size());
  auto value = [](const json& v) { return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>(); };
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].x = x[i].get<double>();
    out[i].t = s.at("t")[i].get<double>();
    out[i].singular = s.at("singular")[i].get<int>() != 0;
    out[i].q = {value(s.at("re_q")[i]), value(s.at("im_q")[i])};
  }
  return out;
}

VerifyResult run_verify(const ScenarioConfig& config, const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  DiscreteSpectrum spectrum = build_spectrum(config);
  if (opts.inject_fault) inject_norming_fault(spectrum, 0.01);
  const Solution solution(spectrum, solver_options(config));

  VerifyResult result;
  ordered_json checks = ordered_json::array();
  auto record = [&](ordered_json c) {
    result.pass = result.pass && c["pass"].get<bool>();
    checks.push_back(std::move(c));
  };

  IdentityOptions iopts;
  iopts.region = config.grid;
  const IdentityReport ident = identity_suite(solution, iopts);
  for (const auto& c : ident.checks) {
    record(check_json("identity." + c.name, c.pass, c.error, c.tolerance, ordered_json{{"detail", c.detail}}));
  }

  const TraceZeroReport tz = trace_zero_check(spectrum);
  for (const auto& e : tz.entries) {
    record(check_json("trace_zero", e.pass, e.max_below_relative, 1e-10,
                      ordered_json{{"xi", complex_json(e.xi)}, {"order", e.order}, {"leading", e.leading}}));
  }

  const GridSpec& g = config.grid;
  for (double t : {g.t_min, 0.5 * (g.t_min + g.t_max), g.t_max}) {
    try {
      const BoundaryReport b = boundary_check(solution, t, opts.boundary_tol);
      const double err = std::max(b.err_minus, b.err_plus);
      record(check_json("boundary", err <= opts.boundary_tol, err, opts.boundary_tol,
                        ordered_json{{"t", t},
                                     {"x_minus", b.x_minus},
                                     {"x_plus", b.x_plus},
                                     {"err_minus", b.err_minus},
                                     {"err_plus", b.err_plus},
                                     {"q_plus_far", complex_json(b.q_plus_far)}}));
      record(check_json("mbar_limit", b.err_mbar <= opts.boundary_tol, b.err_mbar, opts.boundary_tol,
                        ordered_json{{"t", t}, {"branch", b.mbar_branch}}));
    } catch (const Error& e) {
      record(check_json("boundary", false, INFINITY, opts.boundary_tol, ordered_json{{"t", t}, {"error", e.what()}}));
    }
  }

  ResidualSurveyOptions ropts;
  ropts.points = opts.residual_points;
  ropts.h = config.tolerances.residual_h;
  ropts.workers = opts.workers;
  const ResidualReport rr = residual_survey(solution, config.grid, ropts);
  int over = 0;
  const ResidualPair* worst = nullptr;
  for (const auto& p : rr.samples) {
    over += std::abs(p.coarse) > opts.residual_limit ? 1 : 0;
    if (!worst || std::abs(p.coarse) > std::abs(worst->coarse)) worst = &p;
  }
  ordered_json worst_json;
  if (worst) {
    worst_json = ordered_json{{"x", worst->x},
                              {"t", worst->t},
                              {"residual_h", std::abs(worst->coarse)},
                              {"residual_half_h", std::abs(worst->fine)}};
  }
  const bool enough = static_cast<int>(rr.samples.size()) >= opts.residual_points;
  record(check_json("residual_max", enough && rr.max_abs_residual <= opts.residual_limit, rr.max_abs_residual,
                    opts.residual_limit,
                    ordered_json{{"h", rr.h},
                                 {"samples", rr.samples.size()},
                                 {"over_limit", over},
                                 {"worst", worst_json},
                                 {"skipped_singular", rr.skipped_singular}}));
  double rms = 0.0;
  for (const auto& p : rr.samples) rms += std::norm(p.coarse);
  rms = rr.samples.empty() ? 0.0 : std::sqrt(rms / static_cast<double>(rr.samples.size()));
  if (rms < 1e-10) {
    record(check_json("residual_order", true, rr.richardson_order, opts.order_tolerance,
                      ordered_json{{"detail", "residual at rounding level; order not measurable"}}));
  } else {
    record(check_json("residual_order", std::abs(rr.richardson_order - 2.0) <= opts.order_tolerance,
                      rr.richardson_order, opts.order_tolerance, ordered_json{{"expected", 2.0}}));
  }

  ordered_json report;
  report["tool"] = "sdnls";
  report["version"] = std::string(kVersion);
  report["inject_fault"] = opts.inject_fault;
  report["pass"] = result.pass;
  report["mbar"] = complex_json(spectrum.mbar());
  report["checks"] = checks;
  report["config"] = config_json(config);
  result.report = report.dump(1) + "\n";
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

unsigned workers_from_env() {
  if (const char* v = std::getenv("SDNLS_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n >= 1) return static_cast<unsigned>(std::min(n, 1024L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace sdnls
