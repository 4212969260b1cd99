#pragma once

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "output.hpp"
#include "specasym.hpp"
#include "specasym/spectrum_spec.hpp"
#include "verify.hpp"

namespace specasym::cli {

enum ExitCode { kPass = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

inline Kernel parse_kernel(const std::string& k) {
  if (k == "heat") return Kernel::heat;
  if (k == "cylinder") return Kernel::cylinder;
  if (k == "dcylinder") return Kernel::cylinder_derivative;
  throw InvalidInput("kernel must be heat, cylinder or dcylinder");
}

struct GridOptions {
  std::optional<double> min, max;
  std::size_t points = 0;
};

inline std::vector<double> resolve_grid(const GridOptions& g, double lo, double hi, const char* what,
                                        RunConfig& cfg) {
  const double a = g.min.value_or(lo), b = g.max.value_or(hi);
  if (!(a > 0)) throw InvalidInput(std::string(what) + " minimum must be positive");
  if (!(a < b)) throw InvalidInput(std::string(what) + " minimum must be below maximum");
  if (g.points < 4) throw InvalidInput("--points must be at least 4");
  cfg.set(std::string(what) + "_min", a);
  cfg.set(std::string(what) + "_max", b);
  cfg.set("points", std::to_string(g.points));
  return geometric_grid(a, b, g.points);
}

inline void check_tol(double tol) {
  if (!(tol > 0)) throw InvalidInput("--tol must be positive");
}

inline double first_omega(const Spectrum& s) { return s.first_positive_omega().value_or(1.0); }

inline void maybe_svg(const std::string& path, const std::string& title, const std::string& xl, const std::string& yl,
                      const std::vector<double>& xs, const std::vector<double>& ys, bool logx, bool logy) {
  if (!path.empty()) emit(path, svg_plot(title, xl, yl, xs, ys, logx, logy));
}

// ---------------------------------------------------------------- trace

struct TraceOptions {
  std::string spectrum, kernel = "heat", out, format = "csv", svg;
  GridOptions grid{std::nullopt, std::nullopt, 40};
  double tol = 1e-12;
  double budget = static_cast<double>(kDefaultTermBudget);
};

inline int cmd_trace(const TraceOptions& o) {
  RunConfig cfg;
  cfg.set("command", "trace");
  const Spectrum s = parse_spectrum_spec(o.spectrum);
  const Kernel k = parse_kernel(o.kernel);
  check_tol(o.tol);
  if (!(o.budget >= 1)) throw InvalidInput("--budget must be at least 1");
  cfg.set("spectrum", s.label());
  cfg.set("dim", std::to_string(s.dim()));
  cfg.set("kernel", kernel_name(k));
  const double w1 = first_omega(s);
  const double scale = k == Kernel::heat ? w1 * w1 : w1;
  const auto ts = resolve_grid(o.grid, 1e-3 / scale, 1.0 / scale, "t", cfg);
  cfg.set("tol", o.tol);
  cfg.set("budget", num(o.budget));
  const auto samples = trace_grid(k, s, ts, o.tol, static_cast<std::uint64_t>(o.budget));
  const bool uncertified = std::any_of(samples.begin(), samples.end(),
                                       [](const TraceSample& x) { return x.status == Certification::uncertified; });
  if (uncertified) {
    std::cerr << "warning: spectrum has no envelope; tail bounds are uncertified (NaN)\n";
  }
  cfg.set("certified", uncertified ? "no" : "yes");

  std::vector<double> xs, ys;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = cfg.json();
    j["samples"] = nlohmann::ordered_json::array();
    for (const auto& x : samples) {
      j["samples"].push_back({{"t", x.t},
                              {"value", x.value},
                              {"tail_bound", std::isnan(x.tail_bound) ? nlohmann::ordered_json(nullptr)
                                                                      : nlohmann::ordered_json(x.tail_bound)},
                              {"terms_used", x.terms_used}});
    }
    emit(o.out, json_text(j));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& x : samples) {
      rows.push_back({num(x.t), num(x.value), num(x.tail_bound), std::to_string(x.terms_used)});
    }
    emit(o.out, csv_table(cfg, {}, "t,value,tail_bound,terms_used", rows));
  }
  for (const auto& x : samples) {
    xs.push_back(x.t);
    ys.push_back(std::abs(x.value));
  }
  maybe_svg(o.svg, std::string(kernel_name(k)) + " trace, " + s.label(), "t", "|trace|", xs, ys, true, true);
  return kPass;
}

// ---------------------------------------------------------------- coeffs

struct CoeffsOptions {
  std::string spectrum, kernel = "cylinder", out, format = "json";
  GridOptions grid{std::nullopt, std::nullopt, 64};
  std::optional<int> orders;
  std::optional<double> anchor;
  bool logs = false;
  double tol = 1e-12;
};

inline int cmd_coeffs(const CoeffsOptions& o) {
  RunConfig cfg;
  cfg.set("command", "coeffs");
  const Spectrum s = parse_spectrum_spec(o.spectrum);
  const Kernel k = parse_kernel(o.kernel);
  check_tol(o.tol);
  const int d = s.dim();
  cfg.set("spectrum", s.label());
  cfg.set("dim", std::to_string(d));
  cfg.set("kernel", kernel_name(k));
  const int orders = o.orders.value_or(k == Kernel::heat ? d + 2 : d + 4);
  if (orders < 0) throw InvalidInput("--orders must be nonnegative");
  cfg.set("orders", std::to_string(orders));
  cfg.set("logs", o.logs ? "yes" : "no");

  double lo, hi;
  if (k == Kernel::heat) {
    std::tie(lo, hi) = default_heat_window(s);
  } else {
    std::tie(lo, hi) = default_cylinder_window(s);
  }
  const auto ts = resolve_grid(o.grid, lo, hi, "t", cfg);
  cfg.set("tol", o.tol);

  AsymptoticBasis basis;
  switch (k) {
    case Kernel::heat: basis = heat_basis(d, orders); break;
    case Kernel::cylinder: basis = cylinder_basis(d, orders, o.logs); break;
    case Kernel::cylinder_derivative: basis = cylinder_derivative_basis(d, orders); break;
  }
  if (o.anchor) {
    basis = AsymptoticBasis(basis.terms(), *o.anchor);
    cfg.set("scale_anchor", *o.anchor);
  }
  const auto report = fit_expansion(trace_samples(k, cached_spectrum(s), ts, o.tol), basis);

  if (o.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      rows.push_back({rational_to_string(basis.terms()[i].exponent), std::to_string(basis.terms()[i].log_power),
                      num(report.coefficients[i]), num(report.stability[i])});
    }
    emit(o.out, csv_table(cfg,
                          {"residual_rms = " + num(report.residual_rms),
                           "condition_estimate = " + num(report.condition_estimate)},
                          "p,q,coefficient,spread", rows));
  } else {
    nlohmann::ordered_json j;
    j["config"] = cfg.json();
    j["fit"] = nlohmann::ordered_json::parse(report.to_json().dump());
    emit(o.out, json_text(j));
  }
  return kPass;
}

// ---------------------------------------------------------------- riesz

struct RieszOptions {
  std::string spectrum, variable = "lambda", out, format, svg, remainder;
  int alpha = 0;
  GridOptions grid{std::nullopt, std::nullopt, 64};
  std::optional<int> orders;
  bool fit = false;
  bool no_logs = false;
};

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidInput("malformed number list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("empty number list");
  return out;
}

inline int cmd_riesz(const RieszOptions& o) {
  RunConfig cfg;
  cfg.set("command", "riesz");
  const Spectrum s = parse_spectrum_spec(o.spectrum);
  if (o.alpha < 0) throw InvalidInput("--alpha must be a nonnegative integer");
  const MeanVariable var = parse_variable(o.variable);
  const int d = s.dim();
  cfg.set("spectrum", s.label());
  cfg.set("dim", std::to_string(d));
  const double w1 = first_omega(s);

  if (!o.remainder.empty()) {
    const auto g = parse_list(o.remainder);
    cfg.set("mode", "weyl_remainder");
    cfg.set("weyl_coefficients", o.remainder);
    const auto grid = resolve_grid(o.grid, 10 * w1, 1000 * w1, "omega", cfg);
    const auto rem = weyl_remainder(s, static_cast<int>(g.size()) - 1, g, grid);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> xs, ys;
    double sup = 0;
    for (const auto& [w, e] : rem) {
      rows.push_back({num(w), num(e)});
      xs.push_back(w);
      ys.push_back(e);
      sup = std::max(sup, std::abs(e));
    }
    emit(o.out, csv_table(cfg, {"sup |E_M| = " + num(sup)}, "x,value", rows));
    maybe_svg(o.svg, "Weyl remainder, " + s.label(), "omega", "E_M", xs, ys, true, false);
    return kPass;
  }

  cfg.set("alpha", std::to_string(o.alpha));
  cfg.set("variable", variable_name(var));
  const auto grid = var == MeanVariable::lambda ? resolve_grid(o.grid, 1e2 * w1 * w1, 1e4 * w1 * w1, "x", cfg)
                                                : resolve_grid(o.grid, 10 * w1, 100 * w1, "x", cfg);
  if (o.fit) {
    const int orders = o.orders.value_or(o.alpha);
    if (orders < 0) throw InvalidInput("--orders must be nonnegative");
    cfg.set("orders", std::to_string(orders));
    cfg.set("logs", (var == MeanVariable::omega && !o.no_logs) ? "yes" : "no");
    const auto basis = riesz_basis(d, var, orders, !o.no_logs);
    const auto report = extract_riesz_coeffs(s, o.alpha, var, grid, basis);
    nlohmann::ordered_json j;
    j["config"] = cfg.json();
    j["fit"] = nlohmann::ordered_json::parse(report.to_json().dump());
    // Only s == alpha carries new information; lower s are reported for completeness.
    nlohmann::ordered_json roles = nlohmann::ordered_json::array();
    for (const auto& t : basis.terms()) {
      const Rational s_index = var == MeanVariable::lambda ? Rational(d) - 2 * t.exponent : Rational(d) - t.exponent;
      roles.push_back(s_index == o.alpha ? "principal" : "informational");
    }
    j["roles"] = roles;
    emit(o.out, json_text(j));
    return kPass;
  }

  const auto means = riesz_means(s, o.alpha, var, grid);
  std::vector<double> xs, ys;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = cfg.json();
    j["means"] = nlohmann::ordered_json::array();
    for (const auto& m : means) j["means"].push_back({{"x", m.x}, {"value", m.value}});
    emit(o.out, json_text(j));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : means) rows.push_back({num(m.x), num(m.value)});
    emit(o.out, csv_table(cfg, {}, "x,value", rows));
  }
  for (const auto& m : means) {
    xs.push_back(m.x);
    ys.push_back(m.value);
  }
  maybe_svg(o.svg, "Riesz mean, " + s.label(), "x", "R^alpha N", xs, ys, true, true);
  return kPass;
}

// ---------------------------------------------------------------- moments

struct MomentsOptions {
  std::string comb = "linear", fn = "expdecay", eps_decades = "1e-3:1e-1", out, format = "csv", svg;
  int orders = 3;
  std::size_t points = 9;
  int digits = 50;
  double bump_lo = 0, bump_hi = 1;
};

struct MomentRow {
  double eps, lhs, rhs, err;
};

template <typename Real>
std::vector<MomentRow> moment_rows(const MomentsOptions& o, const std::vector<double>& eps_grid) {
  TestFunction<Real> g = o.fn == "bump" ? TestFunction<Real>::bump(o.bump_lo, o.bump_hi)
                                        : TestFunction<Real>::from_name(o.fn);
  const Real tol = Real(std::numeric_limits<Real>::epsilon()) * 4;
  std::vector<MomentRow> rows;
  for (double e : eps_grid) {
    MomentExpansionResult<Real> r;
    if (o.comb == "linear") {
      r = euler_maclaurin_expansion(g, Real(e), o.orders, tol);
    } else if (o.comb == "squares") {
      r = squares_comb_expansion(g, Real(e), tol);
    } else {
      r = omega_comb_expansion(g, Real(e), o.orders, tol);
    }
    rows.push_back({e, static_cast<double>(r.lhs), static_cast<double>(r.rhs), static_cast<double>(r.error())});
  }
  return rows;
}

// Exponent of eps in the first omitted term that does not vanish identically.
inline std::optional<double> predicted_slope(const MomentsOptions& o) {
  const auto g = o.fn == "bump" ? TestFunction<double>::bump(o.bump_lo, o.bump_hi)
                                : TestFunction<double>::from_name(o.fn);
  if (o.comb == "linear") {
    for (int n = o.orders + 1; n <= kMaxDerivativeOrder; ++n) {
      if (zeta_neg_int(n) != 0 && g.base_derivative_exact(n) != 0) return n;
    }
  } else if (o.comb == "omega") {
    for (int n = o.orders + 1; n + 1 <= kMaxDerivativeOrder; ++n) {
      if (zeta_neg_int(n) != 0 && g.base_derivative_exact(n + 1) != 0) return 0.5 * (n + 1);
    }
  }
  return std::nullopt;
}

inline int cmd_moments(const MomentsOptions& o) {
  RunConfig cfg;
  cfg.set("command", "moments");
  if (o.comb != "linear" && o.comb != "squares" && o.comb != "omega") {
    throw InvalidInput("--comb must be linear, squares or omega");
  }
  if (o.fn == "bump") {
    (void)TestFunction<double>::bump(o.bump_lo, o.bump_hi);
  } else {
    (void)TestFunction<double>::from_name(o.fn);
  }
  if (o.digits != 16 && o.digits != 50) throw InvalidInput("--digits must be 16 or 50");
  if (o.points < 2) throw InvalidInput("--points must be at least 2");
  const auto sep = o.eps_decades.find(':');
  if (sep == std::string::npos) throw InvalidInput("--eps-decades expects lo:hi");
  const auto bounds = parse_list(o.eps_decades.substr(0, sep) + "," + o.eps_decades.substr(sep + 1));
  if (!(bounds[0] > 0 && bounds[0] < bounds[1])) throw InvalidInput("--eps-decades needs 0 < lo < hi");
  cfg.set("comb", o.comb);
  cfg.set("fn", o.fn);
  if (o.fn == "bump") {
    cfg.set("bump_lo", o.bump_lo);
    cfg.set("bump_hi", o.bump_hi);
  }
  cfg.set("orders", std::to_string(o.orders));
  cfg.set("eps_min", bounds[0]);
  cfg.set("eps_max", bounds[1]);
  cfg.set("points", std::to_string(o.points));
  cfg.set("digits", std::to_string(o.digits));
  const auto eps = geometric_grid(bounds[0], bounds[1], o.points);

  const auto rows = o.digits == 50 ? moment_rows<boost::multiprecision::cpp_bin_float_50>(o, eps)
                                   : moment_rows<double>(o, eps);
  std::vector<std::string> notes;
  std::string mu = "moments mu_k (k = 0.." + std::to_string(std::max(o.orders, 0)) + ") =";
  const CombKind mk = o.comb == "squares" ? CombKind::squares : CombKind::linear;
  for (int k = 0; k <= std::max(o.orders, 0); ++k) mu += " " + rational_to_string(moment(mk, k));
  notes.push_back(mu);
  if (o.comb == "squares") notes.push_back("abs_error = |lhs - rhs + g(0)/2| (boundary constant from summing n >= 1)");

  std::vector<double> xs, errs;
  bool all_positive = true;
  for (const auto& r : rows) {
    xs.push_back(r.eps);
    errs.push_back(r.err);
    all_positive = all_positive && r.err > 0;
  }
  std::optional<double> slope;
  if (all_positive) slope = loglog_slope(xs, errs);
  notes.push_back("error_slope = " + (slope ? num(*slope) : std::string("n/a")));
  const auto predicted = predicted_slope(o);
  notes.push_back("predicted_slope = " + (predicted ? num(*predicted) : std::string("none (faster than any power)")));

  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = cfg.json();
    j["notes"] = notes;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) j["rows"].push_back({{"epsilon", r.eps}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"abs_error", r.err}});
    emit(o.out, json_text(j));
  } else {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) table.push_back({num(r.eps), num(r.lhs), num(r.rhs), num(r.err)});
    emit(o.out, csv_table(cfg, notes, "epsilon,lhs,rhs,abs_error", table));
  }
  maybe_svg(o.svg, o.comb + " comb, " + o.fn, "epsilon", "abs_error", xs, errs, true, true);
  return kPass;
}

// ---------------------------------------------------------------- verify

struct VerifyCliOptions {
  std::string spectrum, out, format = "table";
  VerifyOptions opt;
};

inline std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

inline std::string render_table(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-58s %-24s %-24s %-11s %-11s %s\n", "check", "value", "reference", "discrepancy",
                "tolerance", "verdict");
  os << line;
  for (const auto& r : rows) {
    const bool is_info = r.verdict == "info";
    const std::string reference = is_info ? "-" : num(r.reference);
    const std::string discrepancy = is_info ? "-" : sci(r.discrepancy());
    const std::string tolerance = is_info || std::isnan(r.tolerance) ? "-" : sci(r.tolerance);
    const char* verdict = is_info ? "INFO" : (r.verdict == "pass" ? "PASS" : "FAIL");
    const std::string note = r.note.empty() ? "" : "  (" + r.note + ")";
    std::snprintf(line, sizeof line, "%-58s %-24s %-24s %-11s %-11s %s%s\n", r.name.c_str(), num(r.value).c_str(),
                  reference.c_str(), discrepancy.c_str(), tolerance.c_str(), verdict, note.c_str());
    os << line;
  }
  return os.str();
}

inline int cmd_verify(const VerifyCliOptions& o) {
  RunConfig cfg;
  cfg.set("command", "verify");
  const Spectrum s = parse_spectrum_spec(o.spectrum);
  check_tol(o.opt.tol);
  if (o.opt.points < 4) throw InvalidInput("--points must be at least 4");
  cfg.set("spectrum", s.label());
  cfg.set("dim", std::to_string(s.dim()));
  cfg.set("tol", o.opt.tol);
  cfg.set("points", std::to_string(o.opt.points));
  const auto rows = run_verification(s, o.opt);
  const bool ok = std::none_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.verdict == "fail"; });
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = cfg.json();
    j["checks"] = nlohmann::ordered_json::array();
    auto val = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr); };
    for (const auto& r : rows) {
      j["checks"].push_back({{"check", r.name},
                             {"value", val(r.value)},
                             {"reference", val(r.reference)},
                             {"tolerance", val(r.tolerance)},
                             {"verdict", r.verdict},
                             {"note", r.note}});
    }
    j["result"] = ok ? "pass" : "fail";
    emit(o.out, json_text(j));
  } else if (o.format == "csv") {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) {
      table.push_back({"\"" + r.name + "\"", num(r.value), num(r.reference), num(r.tolerance), r.verdict});
    }
    emit(o.out, csv_table(cfg, {std::string("result = ") + (ok ? "pass" : "fail")},
                          "check,value,reference,tolerance,verdict", table));
  } else {
    emit(o.out, cfg.csv_header() + render_table(rows) + (ok ? "result: PASS\n" : "result: FAIL\n"));
  }
  return ok ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------- wiring

inline void add_output(CLI::App* sub, std::string& out, std::string& format, std::vector<std::string> formats) {
  sub->add_option("--out", out, "Output file (default stdout)");
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember(std::move(formats)));
}

inline int run(int argc, char** argv) {
  CLI::App app{"Heat and cylinder trace asymptotics for enumerable spectra"};
  app.require_subcommand(1);
  const std::string spec_help =
      "interval:length=<L>[:bc=dirichlet|neumann], torus:circumference=<C>, product:(<spec>)x(<spec>) or file:<path>";

  TraceOptions tr;
  auto* trace = app.add_subcommand("trace", "Sample a kernel trace on a geometric t grid");
  trace->add_option("--spectrum", tr.spectrum, spec_help)->required();
  trace->add_option("--kernel", tr.kernel, "heat, cylinder or dcylinder")
      ->check(CLI::IsMember({"heat", "cylinder", "dcylinder"}));
  trace->add_option("--tmin", tr.grid.min, "Smallest t");
  trace->add_option("--tmax", tr.grid.max, "Largest t");
  trace->add_option("--points", tr.grid.points, "Grid points");
  trace->add_option("--tol", tr.tol, "Certified truncation tolerance");
  trace->add_option("--budget", tr.budget, "Term budget per point");
  trace->add_option("--svg", tr.svg, "Also write an SVG plot");
  add_output(trace, tr.out, tr.format, {"csv", "json"});

  CoeffsOptions co;
  auto* coeffs = app.add_subcommand("coeffs", "Fit the small-t expansion of a trace");
  coeffs->add_option("--spectrum", co.spectrum, spec_help)->required();
  coeffs->add_option("--kernel", co.kernel, "heat, cylinder or dcylinder")
      ->check(CLI::IsMember({"heat", "cylinder", "dcylinder"}));
  coeffs->add_option("--orders", co.orders, "Largest index s in the basis");
  coeffs->add_flag("--logs", co.logs, "Include t^{s-d} log t where s-d is odd and positive");
  coeffs->add_option("--tmin", co.grid.min, "Smallest t");
  coeffs->add_option("--tmax", co.grid.max, "Largest t");
  coeffs->add_option("--points", co.grid.points, "Grid points");
  coeffs->add_option("--anchor", co.anchor, "Basis normalization point t0");
  coeffs->add_option("--tol", co.tol, "Trace truncation tolerance");
  add_output(coeffs, co.out, co.format, {"json", "csv"});

  VerifyCliOptions ve;
  auto* verify = app.add_subcommand("verify", "Check the coefficient relations on a spectrum");
  verify->add_option("--spectrum", ve.spectrum, spec_help)->required();
  verify->add_option("--tol", ve.opt.tol, "Tolerance for fit comparisons");
  verify->add_option("--points", ve.opt.points, "Grid points for trace fits");
  verify->add_option("--tmin", ve.opt.cyl_tmin, "Smallest t for cylinder fits");
  verify->add_option("--tmax", ve.opt.cyl_tmax, "Largest t for cylinder fits");
  verify->add_option("--heat-tmin", ve.opt.heat_tmin, "Smallest t for heat fits");
  verify->add_option("--heat-tmax", ve.opt.heat_tmax, "Largest t for heat fits");
  add_output(verify, ve.out, ve.format, {"table", "csv", "json"});

  MomentsOptions mo;
  auto* moments = app.add_subcommand("moments", "Comb pairings against their moment expansions");
  moments->add_option("--comb", mo.comb, "linear, squares or omega");
  moments->add_option("--fn", mo.fn, "gaussian, expdecay, odd_gaussian, linear_exp or bump");
  moments->add_option("--orders", mo.orders, "Expansion order M");
  moments->add_option("--eps-decades", mo.eps_decades, "Epsilon range lo:hi");
  moments->add_option("--points", mo.points, "Epsilon grid points");
  moments->add_option("--digits", mo.digits, "Working precision: 16 or 50 digits");
  moments->add_option("--bump-lo", mo.bump_lo, "Bump support start");
  moments->add_option("--bump-hi", mo.bump_hi, "Bump support end");
  moments->add_option("--svg", mo.svg, "Also write an SVG plot of the error");
  add_output(moments, mo.out, mo.format, {"csv", "json"});

  RieszOptions ri;
  auto* riesz = app.add_subcommand("riesz", "Riesz means of N, their fits, or the Weyl remainder");
  riesz->add_option("--spectrum", ri.spectrum, spec_help)->required();
  riesz->add_option("--alpha", ri.alpha, "Averaging order");
  riesz->add_option("--variable", ri.variable, "lambda or omega");
  riesz->add_option("--xmin", ri.grid.min, "Smallest x");
  riesz->add_option("--xmax", ri.grid.max, "Largest x");
  riesz->add_option("--points", ri.grid.points, "Grid points");
  riesz->add_flag("--fit", ri.fit, "Fit the expansion instead of listing means");
  riesz->add_option("--orders", ri.orders, "Largest index s in the fit basis (default alpha)");
  riesz->add_flag("--no-logs", ri.no_logs, "Omit log terms from omega fits");
  riesz->add_option("--remainder", ri.remainder, "Weyl coefficients g_0,...,g_M: emit E_M(omega)");
  riesz->add_option("--svg", ri.svg, "Also write an SVG plot");
  add_output(riesz, ri.out, ri.format, {"csv", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*trace) return cmd_trace(tr);
    if (*coeffs) return cmd_coeffs(co);
    if (*verify) return cmd_verify(ve);
    if (*moments) return cmd_moments(mo);
    if (*riesz) return cmd_riesz(ri);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace specasym::cli
