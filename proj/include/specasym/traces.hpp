#pragma once

// Heat and cylinder kernel traces summed in ascending omega with a
// certified bound on the truncated tail.

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "specasym/compensated_sum.hpp"
#include "specasym/errors.hpp"
#include "specasym/spectra.hpp"

namespace specasym {

enum class Kernel {
  heat,                 ///< sum e^{-t omega^2}
  cylinder,             ///< sum e^{-t omega}
  cylinder_derivative,  ///< d/dt sum e^{-t omega} = -sum omega e^{-t omega}
};

inline const char* kernel_name(Kernel k) {
  switch (k) {
    case Kernel::heat: return "heat";
    case Kernel::cylinder: return "cylinder";
    case Kernel::cylinder_derivative: return "dcylinder";
  }
  return "?";
}

inline constexpr std::uint64_t kDefaultTermBudget = 10'000'000;

enum class Certification { certified, uncertified };

struct TraceSample {
  double t = 0;
  double value = 0;
  /// Bound on |value - full sum| from truncation; NaN when uncertified.
  double tail_bound = 0;
  std::uint64_t terms_used = 0;
  Certification status = Certification::certified;
};

namespace detail {

/*!
  Per-kernel data for the tail bound. With f >= 0 non-increasing on
  [W, inf) and N(omega^2) <= sum_k c_k omega^k, Stieltjes integration by
  parts gives

      sum_{omega_n > W} f(omega_n) <= sum_k c_k (W^k f(W) + k I_k(W)),
      I_k(W) = int_W^inf f(omega) omega^{k-1} d omega.
*/
struct KernelProfile {
  Kernel kernel;
  double t;

  /// Magnitude |f(omega)| of the summand.
  double magnitude(double omega) const {
    switch (kernel) {
      case Kernel::heat: return std::exp(-t * omega * omega);
      case Kernel::cylinder: return std::exp(-t * omega);
      case Kernel::cylinder_derivative: return omega * std::exp(-t * omega);
    }
    return 0;
  }

  double sign() const { return kernel == Kernel::cylinder_derivative ? -1.0 : 1.0; }

  /// f is non-increasing on [monotone_from, inf).
  double monotone_from() const { return kernel == Kernel::cylinder_derivative ? 1.0 / t : 0.0; }

  double tail_integral(int k, double w) const {
    using boost::math::tgamma;
    switch (kernel) {
      case Kernel::heat:
        return 0.5 * std::pow(t, -0.5 * k) * tgamma(0.5 * k, t * w * w);
      case Kernel::cylinder:
        return std::pow(t, -static_cast<double>(k)) * tgamma(static_cast<double>(k), t * w);
      case Kernel::cylinder_derivative:
        return std::pow(t, -static_cast<double>(k) - 1) * tgamma(static_cast<double>(k) + 1, t * w);
    }
    return 0;
  }

  double tail_bound(const Envelope& env, double w) const {
    const auto& c = env.coefficients();
    const double fw = magnitude(w);
    double bound = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      bound += c[k] * std::pow(w, static_cast<double>(k)) * fw;
      if (k > 0) bound += c[k] * static_cast<double>(k) * tail_integral(static_cast<int>(k), w);
    }
    return bound;
  }
};

}  // namespace detail

/*!
  Evaluates the kernel trace at time t, stopping once the certified tail
  bound drops to `tol`. Spectra that are neither complete nor enveloped are
  summed over every listed term and reported uncertified (NaN bound).
*/
inline TraceSample kernel_trace(Kernel kernel, const Spectrum& s, double t, double tol,
                                std::uint64_t term_budget = kDefaultTermBudget) {
  if (!(t > 0) || !std::isfinite(t)) throw InvalidInput("kernel time t must be positive");
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  const detail::KernelProfile profile{kernel, t};
  const auto& env = s.envelope();

  CompensatedSum<double> sum;
  TraceSample out;
  out.t = t;
  double w = 0;
  bool any = false;
  auto cursor = s.cursor();
  while (auto term = cursor->next()) {
    if (out.terms_used >= term_budget) {
      const double achieved = env ? profile.tail_bound(*env, w) : std::numeric_limits<double>::quiet_NaN();
      throw NumericalFailure(std::string(kernel_name(kernel)) + " trace: tolerance unreachable within term budget " +
                                 std::to_string(term_budget) + "; achieved bound " + detail::format_real(achieved),
                             achieved);
    }
    w = term->omega;
    any = true;
    sum.add(static_cast<double>(term->multiplicity) * profile.magnitude(w));
    ++out.terms_used;
    if (env && !s.complete() && w >= profile.monotone_from()) {
      // The bound is at least E(W) f(W); skip the incomplete gammas until that is small.
      if ((*env)(w)*profile.magnitude(w) <= tol) {
        const double bound = profile.tail_bound(*env, w);
        if (bound <= tol) {
          out.value = profile.sign() * sum.value();
          out.tail_bound = bound;
          return out;
        }
      }
    }
  }
  out.value = profile.sign() * sum.value();
  if (s.complete()) {
    out.tail_bound = 0;
  } else if (env) {
    const double start = any ? w : 0.0;
    const double bound = start >= profile.monotone_from() ? profile.tail_bound(*env, start)
                                                           : std::numeric_limits<double>::infinity();
    if (!(bound <= tol)) {
      throw NumericalFailure(std::string(kernel_name(kernel)) +
                                 " trace: listed spectrum exhausted before tolerance; achieved bound " +
                                 detail::format_real(bound),
                             bound);
    }
    out.tail_bound = bound;
  } else {
    out.tail_bound = std::numeric_limits<double>::quiet_NaN();
    out.status = Certification::uncertified;
  }
  return out;
}

inline TraceSample heat_trace(const Spectrum& s, double t, double tol, std::uint64_t budget = kDefaultTermBudget) {
  return kernel_trace(Kernel::heat, s, t, tol, budget);
}

inline TraceSample cylinder_trace(const Spectrum& s, double t, double tol, std::uint64_t budget = kDefaultTermBudget) {
  return kernel_trace(Kernel::cylinder, s, t, tol, budget);
}

/// Term-by-term analytic derivative -sum omega e^{-t omega}.
inline TraceSample cylinder_trace_derivative(const Spectrum& s, double t, double tol,
                                             std::uint64_t budget = kDefaultTermBudget) {
  return kernel_trace(Kernel::cylinder_derivative, s, t, tol, budget);
}

/// Trace samples on a grid, in grid order. The spectrum is enumerated once and shared across points.
inline std::vector<TraceSample> trace_grid(Kernel kernel, const Spectrum& s, std::span<const double> ts, double tol,
                                           std::uint64_t budget = kDefaultTermBudget) {
  const Spectrum shared = cached_spectrum(s);
  std::vector<TraceSample> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(kernel_trace(kernel, shared, t, tol, budget));
  return out;
}

/// `points` geometrically spaced values from lo to hi inclusive.
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0) || !(hi > lo)) throw InvalidInput("geometric grid needs 0 < lo < hi");
  if (points < 2) throw InvalidInput("geometric grid needs at least 2 points");
  std::vector<double> g(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/*!
  Diagonal of the Dirichlet heat kernel on [0, pi]:
      K(t, x, x) = (2/pi) sum_{n>=1} sin^2(n x) e^{-t n^2}.
  The tail after n = M is at most (2/pi) int_M^inf e^{-t u^2} du.
*/
inline double heat_diagonal_interval(double t, double x, double tol) {
  if (!(t > 0)) throw InvalidInput("kernel time t must be positive");
  if (!(x > 0 && x < std::numbers::pi)) throw InvalidInput("x must lie in (0, pi)");
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  const double prefactor = 2 / std::numbers::pi;
  const double root_t = std::sqrt(t);
  CompensatedSum<double> sum;
  for (std::uint64_t n = 1;; ++n) {
    const double dn = static_cast<double>(n);
    const double s = std::sin(dn * x);
    sum.add(s * s * std::exp(-t * dn * dn));
    const double tail = prefactor * 0.5 * std::sqrt(std::numbers::pi / t) * boost::math::erfc(dn * root_t);
    if (tail <= tol) break;
    if (n >= kDefaultTermBudget) throw NumericalFailure("heat diagonal: term budget exhausted", tail);
  }
  return prefactor * sum.value();
}

}  // namespace specasym
