#pragma once

// Riesz means of the counting function in lambda ("old") or omega ("new"),
// coefficient extraction by least squares, and the Weyl remainder.

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specasym/compensated_sum.hpp"
#include "specasym/errors.hpp"
#include "specasym/fitkit.hpp"
#include "specasym/spectra.hpp"
#include "specasym/traces.hpp"

namespace specasym {

enum class MeanVariable { lambda, omega };

inline const char* variable_name(MeanVariable v) { return v == MeanVariable::lambda ? "lambda" : "omega"; }

inline MeanVariable parse_variable(const std::string& s) {
  if (s == "lambda") return MeanVariable::lambda;
  if (s == "omega") return MeanVariable::omega;
  throw InvalidInput("variable must be lambda or omega, got '" + s + "'");
}

struct RieszMeanValue {
  int alpha = 0;
  MeanVariable variable = MeanVariable::lambda;
  double x = 0;
  double value = 0;
};

namespace detail {

inline double riesz_sum(std::span<const SpectralTerm> terms, int alpha, MeanVariable var, double x) {
  CompensatedSum<long double> acc;
  const long double lx = x;
  for (const auto& t : terms) {
    const long double v = var == MeanVariable::lambda ? static_cast<long double>(t.omega) * t.omega : t.omega;
    if (v > lx) break;
    acc += static_cast<long double>(t.multiplicity) * std::pow((lx - v) / lx, alpha);
  }
  return static_cast<double>(acc.value());
}

inline void check_mean_args(int alpha, double x) {
  if (alpha < 0) throw InvalidInput("alpha must be a nonnegative integer");
  if (!(x > 0) || !std::isfinite(x)) throw InvalidInput("Riesz mean needs x > 0");
}

}  // namespace detail

/*!
  R^alpha N(x) = x^{-alpha} sum_{v_n <= x} mult (x - v_n)^alpha with v_n = lambda_n
  or omega_n. Computed from the closed form of the iterated integral of the
  staircase; alpha = 0 is N itself.
*/
inline RieszMeanValue riesz_mean(const Spectrum& s, int alpha, MeanVariable var, double x) {
  detail::check_mean_args(alpha, x);
  const auto terms = var == MeanVariable::lambda ? s.enumerate_to_lambda(x) : s.enumerate_to_omega(x);
  return {alpha, var, x, detail::riesz_sum(terms, alpha, var, x)};
}

/// Means on a whole grid, enumerating the spectrum once.
inline std::vector<RieszMeanValue> riesz_means(const Spectrum& s, int alpha, MeanVariable var,
                                               std::span<const double> xs) {
  double xmax = 0;
  for (double x : xs) {
    detail::check_mean_args(alpha, x);
    xmax = std::max(xmax, x);
  }
  const auto terms = var == MeanVariable::lambda ? s.enumerate_to_lambda(xmax) : s.enumerate_to_omega(xmax);
  std::vector<RieszMeanValue> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({alpha, var, x, detail::riesz_sum(terms, alpha, var, x)});
  return out;
}

/*!
  Fit shape of R^alpha N for s = 0..max_s: x^{d-s} in omega, x^{(d-s)/2} in
  lambda; in omega, x^{d-s} log x is added where s-d is odd and positive.
*/
inline AsymptoticBasis riesz_basis(int dim, MeanVariable var, int max_s, bool with_logs = true) {
  std::vector<BasisTerm> terms;
  for (int s = 0; s <= max_s; ++s) {
    if (var == MeanVariable::lambda) {
      terms.push_back({Rational(dim - s, 2), 0});
    } else {
      terms.push_back({Rational(dim - s), 0});
      if (with_logs && s - dim > 0 && (s - dim) % 2 != 0) terms.push_back({Rational(dim - s), 1});
    }
  }
  return AsymptoticBasis(std::move(terms));
}

/// Default fitting window: [1e2, 1e4] in lambda, [10, 100] in omega, 64 geometric points.
inline std::vector<double> riesz_default_grid(MeanVariable var, std::size_t points = 64) {
  return var == MeanVariable::lambda ? geometric_grid(1e2, 1e4, points) : geometric_grid(10, 100, points);
}

inline FitReport extract_riesz_coeffs(const Spectrum& s, int alpha, MeanVariable var, std::span<const double> grid,
                                      const AsymptoticBasis& basis) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidInput("Riesz grid must be strictly increasing");
  }
  const auto means = riesz_means(s, alpha, var, grid);
  std::vector<Sample> samples;
  samples.reserve(means.size());
  for (const auto& m : means) samples.push_back({m.x, m.value});
  return fit_expansion(samples, basis);
}

/// E_M(omega) = N(omega^2) - sum_{s<=M} g_s omega^{d-s} on the grid.
inline std::vector<std::pair<double, double>> weyl_remainder(const Spectrum& s, int max_order,
                                                             std::span<const double> weyl_coeffs,
                                                             std::span<const double> grid) {
  if (max_order < 0 || weyl_coeffs.size() < static_cast<std::size_t>(max_order) + 1) {
    throw InvalidInput("weyl_remainder needs coefficients g_0..g_M");
  }
  double wmax = 0;
  for (double w : grid) wmax = std::max(wmax, w);
  const auto terms = s.enumerate_to_omega(wmax);
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double w : grid) {
    if (!(w > 0)) throw InvalidInput("weyl_remainder grid must be positive");
    std::uint64_t n = 0;
    for (const auto& t : terms) {
      if (t.omega > w) break;
      n += t.multiplicity;
    }
    double weyl = 0;
    for (int k = 0; k <= max_order; ++k) weyl += weyl_coeffs[static_cast<std::size_t>(k)] * std::pow(w, s.dim() - k);
    out.emplace_back(w, static_cast<double>(n) - weyl);
  }
  return out;
}

}  // namespace specasym
