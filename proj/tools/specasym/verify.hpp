#pragma once

// The relation-verification pipeline behind `specasym verify`.

#include <cmath>
#include <string>
#include <vector>

#include "specasym.hpp"

namespace specasym::cli {

struct CheckRow {
  std::string name;
  double value = 0;
  double reference = 0;
  double tolerance = 0;
  /// "pass", "fail" or "info".
  std::string verdict;
  std::string note;

  double discrepancy() const { return std::abs(value - reference); }
};

struct VerifyOptions {
  double tol = 1e-5;
  double riesz_tol = 1e-3;
  double riesz_top_tol = 2e-2;
  double trace_tol = 1e-12;
  std::size_t points = 64;
  std::optional<double> heat_tmin, heat_tmax, cyl_tmin, cyl_tmax;
};

/// Heat window [1e-3, 1e-1] / omega_1^2.
inline std::pair<double, double> default_heat_window(const Spectrum& s) {
  const double w1 = s.first_positive_omega().value_or(1.0);
  return {1e-3 / (w1 * w1), 1e-1 / (w1 * w1)};
}

/// Cylinder window [1e-3, 1e-1] / omega_1 in one dimension; shifted to [3e-2, 3e-1] / omega_1 above,
/// where the number of terms needed grows like t^{-d}.
inline std::pair<double, double> default_cylinder_window(const Spectrum& s) {
  const double w1 = s.first_positive_omega().value_or(1.0);
  if (s.dim() <= 1) return {1e-3 / w1, 1e-1 / w1};
  return {3e-2 / w1, 3e-1 / w1};
}

inline std::vector<Sample> trace_samples(Kernel k, const Spectrum& s, const std::vector<double>& ts, double tol) {
  std::vector<double> ys;
  for (const auto& smp : trace_grid(k, s, ts, tol)) ys.push_back(smp.value);
  return relative_samples(ts, ys);
}

/*!
  Fits the heat and cylinder expansions, pushes the heat coefficients and the
  Riesz coefficients through the relation theorems, and compares with the
  direct cylinder fit. Also checks the index-term statements and reads the
  Casimir energy two ways.
*/
inline std::vector<CheckRow> run_verification(const Spectrum& s, const VerifyOptions& opt) {
  if (!s.certifiable()) {
    throw InvalidInput("spectrum '" + s.label() +
                       "' carries no envelope, so trace truncation errors cannot be certified and the relations "
                       "cannot be verified; add an 'envelope <C1> <C2>' line (or 'complete') to the file");
  }
  const int d = s.dim();
  const Spectrum shared = cached_spectrum(s);
  std::vector<CheckRow> rows;
  auto check = [&](std::string name, double value, double reference, double tol, std::string note = {}) {
    const bool ok = std::abs(value - reference) <= tol;
    rows.push_back({std::move(name), value, reference, tol, ok ? "pass" : "fail", std::move(note)});
  };
  auto info = [&](std::string name, double value, std::string note = {}) {
    rows.push_back({std::move(name), value, std::nan(""), std::nan(""), "info", std::move(note)});
  };
  auto scaled = [&](double ref) { return opt.tol * std::max(1.0, std::abs(ref)); };

  auto [hlo, hhi] = default_heat_window(s);
  auto [clo, chi] = default_cylinder_window(s);
  const auto heat_ts = geometric_grid(opt.heat_tmin.value_or(hlo), opt.heat_tmax.value_or(hhi), opt.points);
  const auto cyl_ts = geometric_grid(opt.cyl_tmin.value_or(clo), opt.cyl_tmax.value_or(chi), opt.points);

  const int top = d + 1;
  const auto heat_fit = fit_expansion(trace_samples(Kernel::heat, shared, heat_ts, opt.trace_tol), heat_basis(d, d + 2));
  const auto cyl_samples = trace_samples(Kernel::cylinder, shared, cyl_ts, opt.trace_tol);
  const auto cyl_fit = fit_expansion(cyl_samples, cylinder_basis(d, d + 4));
  const auto cyl_log_fit = fit_expansion(cyl_samples, cylinder_basis(d, d + 4, true));

  for (int s_idx = 0; s_idx <= top; ++s_idx) {
    info("b_" + std::to_string(s_idx) + " (heat fit)", heat_fit.coefficient(heat_exponent(s_idx, d)));
  }

  // Heat side -> cylinder side.
  AsymptoticExpansion heat_exp(d);
  for (int s_idx = 0; s_idx <= top; ++s_idx) {
    heat_exp.add(heat_exponent(s_idx, d), 0, Coefficient(heat_fit.coefficient(heat_exponent(s_idx, d))),
                 CoefficientStatus::fitted);
  }
  const auto predicted = heat_to_cylinder(heat_exp);
  for (int s_idx = 0; s_idx <= top; ++s_idx) {
    const Rational p = cylinder_exponent(s_idx, d);
    const std::string tag = std::to_string(s_idx);
    if (!odd_negative(d, s_idx)) {
      const double direct = cyl_fit.coefficient(p);
      check("e_" + tag + " from b_" + tag + " vs cylinder fit", predicted.find(p, 0)->coefficient.value(), direct,
            scaled(direct));
    } else {
      const double direct = cyl_log_fit.coefficient(p, 1);
      check("f_" + tag + " from b_" + tag + " vs log-term fit", predicted.find(p, 1)->coefficient.value(), direct,
            scaled(direct));
      info("e_" + tag + " (cylinder fit)", cyl_fit.coefficient(p), "undetermined by the heat coefficients");
    }
  }

  // Riesz side.
  const double w1 = s.first_positive_omega().value_or(1.0);
  {
    const auto grid = geometric_grid(1e2 * w1 * w1, 1e6 * w1 * w1, 256);
    const auto fit = extract_riesz_coeffs(shared, 0, MeanVariable::lambda, grid, riesz_basis(d, MeanVariable::lambda, 1));
    const std::vector<Coefficient> a{Coefficient(fit.coefficient(Rational(d, 2)))};
    const double b0 = riesz_to_heat(a, d).terms()[0].coefficient.value();
    const double ref = heat_fit.coefficient(heat_exponent(0, d));
    check("b_0 from a_00 vs heat fit", b0, ref, opt.riesz_tol * std::abs(ref), "oscillatory remainder in N");
  }
  {
    const auto grid = geometric_grid(10 * w1, 1e3 * w1, 256);
    const auto fit = extract_riesz_coeffs(shared, 0, MeanVariable::omega, grid, riesz_basis(d, MeanVariable::omega, 1));
    const std::vector<Coefficient> c{Coefficient(fit.coefficient(Rational(d)))};
    const double e0 = riesz_to_cylinder(c, {}, {}, d).terms()[0].coefficient.value();
    const double ref = cyl_fit.coefficient(cylinder_exponent(0, d));
    check("e_0 from c_00 vs cylinder fit", e0, ref, opt.riesz_tol * std::abs(ref), "oscillatory remainder in N");
  }
  {
    const auto grid = geometric_grid(10 * w1, 100 * w1, opt.points);
    const auto fit =
        extract_riesz_coeffs(shared, top, MeanVariable::omega, grid, riesz_basis(d, MeanVariable::omega, top));
    const Rational p = Rational(d - top);
    std::vector<Coefficient> c(static_cast<std::size_t>(top) + 1, Coefficient(0.0));
    std::vector<Coefficient> dd = c, ee = c;
    dd.back() = Coefficient(fit.coefficient(p, 1));
    ee.back() = Coefficient(fit.coefficient(p, 0));
    const auto cyl = riesz_to_cylinder(c, dd, ee, d);
    const double e_top = cyl.find(cylinder_exponent(top, d), 0)->coefficient.value();
    const double ref = cyl_fit.coefficient(cylinder_exponent(top, d));
    check("e_" + std::to_string(top) + " from Riesz omega-mean coefficients vs cylinder fit", e_top, ref,
          opt.riesz_top_tol * std::abs(ref), "oscillatory remainder");
  }

  // Index term: no log at t^0, no t^{-1} in dT/dt; Casimir energy two ways.
  {
    const auto verdict = detect_log_term(cyl_samples, cylinder_basis(d, d + 4), Rational(0));
    rows.push_back({"log t term at t^0 in cylinder trace", verdict.magnitude, 0.0, std::nan(""),
                    verdict.present ? "fail" : "pass", verdict.present ? "detected" : "absent"});
  }
  const auto dcyl_samples = trace_samples(Kernel::cylinder_derivative, shared, cyl_ts, opt.trace_tol);
  {
    const auto basis = cylinder_derivative_basis(d, d + 4).with_term({Rational(-1), 0});
    const auto fit = fit_expansion(dcyl_samples, basis);
    const double e0 = cyl_fit.coefficient(cylinder_exponent(0, d));
    check("t^-1 coefficient of dT/dt", fit.coefficient(Rational(-1)), 0.0, 1e-8 * std::max(1.0, std::abs(e0)));
  }
  {
    const double from_cyl = casimir_energy(cyl_fit.to_expansion(d));
    const auto fit = fit_expansion(dcyl_samples, cylinder_derivative_basis(d, d + 4));
    const double from_derivative = -0.5 * fit.coefficient(Rational(0));
    check("Casimir energy: cylinder fit vs dT/dt fit", from_cyl, from_derivative, scaled(from_derivative));
  }
  return rows;
}

}  // namespace specasym::cli
