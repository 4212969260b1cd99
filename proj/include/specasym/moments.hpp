#pragma once

// Dirac-comb pairings with test functions and their moment expansions:
// the linear comb (zeta moments, Euler-Maclaurin form), the squares comb
// (all moments vanish) and the omega-variable comb (half-power ladder).

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "specasym/compensated_sum.hpp"
#include "specasym/errors.hpp"
#include "specasym/exact.hpp"
#include "specasym/test_functions.hpp"

namespace specasym {

enum class CombKind { linear, squares };

inline const char* comb_name(CombKind k) { return k == CombKind::linear ? "linear" : "squares"; }

inline constexpr int kMaxMomentIndex = 30;
inline constexpr int kMaxExpansionOrder = 10;
inline constexpr std::uint64_t kCombTermBudget = 100'000'000;

template <typename Real>
struct MomentExpansionResult {
  Real epsilon{};
  int order = 0;
  Real lhs{};
  Real rhs{};
  /// terms[0] is the integral term, terms[k >= 1] the moment terms.
  std::vector<Real> terms;
  /// Constant not carried by the expansion (squares comb: -g(0)/2 from summing n >= 1).
  Real boundary_correction{0};

  Real error() const {
    using std::abs;
    return abs(lhs - rhs - boundary_correction);
  }
};

/// Moment mu_k of the comb: zeta(-k) for the linear comb, 0 for the squares comb.
inline Rational moment(CombKind kind, int k) {
  if (k < 0 || k > kMaxMomentIndex) {
    throw InvalidInput("moment index must be in 0.." + std::to_string(kMaxMomentIndex));
  }
  return kind == CombKind::linear ? zeta_neg_int(k) : Rational(0);
}

namespace detail {

inline void check_eps(double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw InvalidInput("epsilon must be positive");
}

/*!
  sum_{n>=1} g(x_n) until the remaining sum is bounded by tol, using an
  integral test once g is non-increasing; `tail(n)` bounds sum_{m>n}.
*/
template <typename Real, typename Point, typename Term, typename Tail>
Real certified_comb_sum(const TestFunction<Real>& g, Point point, Term term, Tail tail, const Real& tol) {
  CompensatedSum<Real> acc;
  const Real mono = g.monotone_from();
  const Real end = g.support_end();
  for (std::uint64_t n = 1; n <= kCombTermBudget; ++n) {
    const Real x = point(n);
    if (x >= end) return acc.value();
    acc += term(n, x);
    if (x >= mono && tail(n, x) <= tol) return acc.value();
  }
  throw NumericalFailure("comb sum did not reach tolerance within the term budget");
}

template <typename Real>
Real default_tol() {
  return Real(std::numeric_limits<Real>::epsilon()) * 4;
}

}  // namespace detail

/// sum_{n>=1} g(n eps) (linear) or sum_{n>=1} g(eps n^2) (squares), to absolute tolerance tol.
template <typename Real>
Real comb_pairing(CombKind kind, const Real& eps, const TestFunction<Real>& g, const Real& tol) {
  using std::sqrt;
  detail::check_eps(static_cast<double>(eps));
  if (kind == CombKind::linear) {
    return detail::certified_comb_sum(
        g, [&](std::uint64_t n) { return Real(n) * eps; }, [&](std::uint64_t, const Real& x) { return g(x); },
        [&](std::uint64_t, const Real& x) { return g.tail_integral(x) / eps; }, tol);
  }
  const Real inv_2sqrt = Real(1) / (2 * sqrt(eps));
  return detail::certified_comb_sum(
      g, [&](std::uint64_t n) { return eps * Real(n) * Real(n); }, [&](std::uint64_t, const Real& x) { return g(x); },
      [&](std::uint64_t, const Real& x) { return inv_2sqrt * g.tail_integral_over_sqrt(x); }, tol);
}

template <typename Real>
Real comb_pairing(CombKind kind, const Real& eps, const TestFunction<Real>& g) {
  return comb_pairing(kind, eps, g, detail::default_tol<Real>());
}

/*!
  sum_{n>=1} g(n eps) ~ (1/eps) int_0^inf g + sum_{n=0}^{M} zeta(-n) g^{(n)}(0) eps^n / n!
*/
template <typename Real>
MomentExpansionResult<Real> euler_maclaurin_expansion(const TestFunction<Real>& g, const Real& eps, int order,
                                                      const Real& tol) {
  using std::pow;
  if (order < 0 || order > kMaxExpansionOrder) {
    throw InvalidInput("expansion order must be in 0.." + std::to_string(kMaxExpansionOrder));
  }
  MomentExpansionResult<Real> r;
  r.epsilon = eps;
  r.order = order;
  r.lhs = comb_pairing(CombKind::linear, eps, g, tol);
  r.terms.push_back(g.integral() / eps);
  for (int n = 0; n <= order; ++n) {
    const Rational c = zeta_neg_int(n) / Rational(factorial(n));
    r.terms.push_back(c == 0 ? Real(0) : c.convert_to<Real>() * g.derivative_at_zero(n) * Real(pow(eps, n)));
  }
  CompensatedSum<Real> rhs;
  for (const auto& t : r.terms) rhs += t;
  r.rhs = rhs.value();
  return r;
}

template <typename Real>
MomentExpansionResult<Real> euler_maclaurin_expansion(const TestFunction<Real>& g, const Real& eps, int order) {
  return euler_maclaurin_expansion(g, eps, order, detail::default_tol<Real>());
}

/*!
  sum_{n>=1} g(eps n^2) against (2 sqrt(eps))^{-1} int_0^inf g(x)/sqrt(x) dx.
  Every moment vanishes, so the only finite-order discrepancy is the
  boundary constant -g(0)/2 (the n = 0 point is excluded from the sum).
*/
template <typename Real>
MomentExpansionResult<Real> squares_comb_expansion(const TestFunction<Real>& g, const Real& eps, const Real& tol) {
  using std::sqrt;
  MomentExpansionResult<Real> r;
  r.epsilon = eps;
  r.order = 0;
  r.lhs = comb_pairing(CombKind::squares, eps, g, tol);
  r.terms.push_back(g.integral_over_sqrt() / (2 * sqrt(eps)));
  r.rhs = r.terms[0];
  r.boundary_correction = -g(Real(0)) / 2;
  return r;
}

template <typename Real>
MomentExpansionResult<Real> squares_comb_expansion(const TestFunction<Real>& g, const Real& eps) {
  return squares_comb_expansion(g, eps, detail::default_tol<Real>());
}

/*!
  Pairing of the comb in omega with phi, phi(0) = 0:
    sum_{n>=1} phi(sqrt(eps) n) / (2n)
      ~ (1/2) int_0^inf phi(w)/w dw + sum_{n=0}^{M} zeta(-n) eps^{(n+1)/2} phi^{(n+1)}(0) / (2 (n+1)!)
*/
template <typename Real>
MomentExpansionResult<Real> omega_comb_expansion(const TestFunction<Real>& phi, const Real& eps, int order,
                                                 const Real& tol) {
  using std::pow;
  using std::sqrt;
  detail::check_eps(static_cast<double>(eps));
  if (!phi.vanishes_at_zero()) throw InvalidInput("omega comb needs phi(0) = 0");
  if (order < 0 || order + 1 > kMaxDerivativeOrder) {
    throw InvalidInput("expansion order must be in 0.." + std::to_string(kMaxDerivativeOrder - 1));
  }
  const Real h = sqrt(eps);
  MomentExpansionResult<Real> r;
  r.epsilon = eps;
  r.order = order;
  r.lhs = detail::certified_comb_sum(
      phi, [&](std::uint64_t n) { return Real(n) * h; },
      [&](std::uint64_t n, const Real& w) { return phi(w) / (2 * Real(n)); },
      [&](std::uint64_t, const Real& w) { return phi.tail_integral_over_x(w) / 2; }, tol);
  r.terms.push_back(phi.integral_over_x() / 2);
  for (int n = 0; n <= order; ++n) {
    const Rational c = zeta_neg_int(n) / Rational(2 * factorial(n + 1));
    r.terms.push_back(c == 0 ? Real(0) : c.convert_to<Real>() * phi.derivative_at_zero(n + 1) * Real(pow(h, n + 1)));
  }
  CompensatedSum<Real> rhs;
  for (const auto& t : r.terms) rhs += t;
  r.rhs = rhs.value();
  return r;
}

template <typename Real>
MomentExpansionResult<Real> omega_comb_expansion(const TestFunction<Real>& phi, const Real& eps, int order) {
  return omega_comb_expansion(phi, eps, order, detail::default_tol<Real>());
}

/// Least-squares slope of log|error| against log eps.
inline double loglog_slope(std::span<const double> eps, std::span<const double> err) {
  if (eps.size() != err.size() || eps.size() < 2) throw InvalidInput("slope needs at least two matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0) || !(err[i] > 0)) throw InvalidInput("slope needs positive eps and nonzero errors");
    const double x = std::log(eps[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Error slope of the order-M linear-comb expansion over an eps grid.
template <typename Real>
double error_slope(const TestFunction<Real>& g, int order, std::span<const double> eps_grid, const Real& tol) {
  std::vector<double> errs;
  for (double e : eps_grid) errs.push_back(static_cast<double>(euler_maclaurin_expansion(g, Real(e), order, tol).error()));
  return loglog_slope(eps_grid, errs);
}

}  // namespace specasym
