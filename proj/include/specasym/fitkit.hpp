#pragma once

// Weighted linear least squares on power / power-log bases, with column
// equilibration, a condition diagnostic and a contiguous-quarter jackknife.

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specasym/errors.hpp"
#include "specasym/exact.hpp"
#include "specasym/expansion.hpp"

namespace specasym {

/// One basis function x^p (log x)^q.
struct BasisTerm {
  Rational exponent;
  int log_power = 0;

  double p() const { return to_double(exponent); }
  friend bool operator==(const BasisTerm& a, const BasisTerm& b) {
    return a.exponent == b.exponent && a.log_power == b.log_power;
  }
};

class AsymptoticBasis {
 public:
  AsymptoticBasis() = default;

  /// scale_anchor t0 > 0; if omitted the fit uses the geometric centre of the samples.
  explicit AsymptoticBasis(std::vector<BasisTerm> terms, std::optional<double> scale_anchor = std::nullopt)
      : terms_(std::move(terms)), anchor_(scale_anchor) {
    if (terms_.empty()) throw InvalidInput("basis needs at least one term");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      if (t.log_power != 0 && t.log_power != 1) throw InvalidInput("basis log power must be 0 or 1");
      for (std::size_t j = 0; j < i; ++j) {
        if (terms_[j] == t) throw InvalidInput("duplicate basis term " + rational_to_string(t.exponent));
      }
    }
    for (const auto& t : terms_) {
      if (t.log_power == 1 && !index_of(t.exponent, 0)) {
        throw InvalidInput("log term at exponent " + rational_to_string(t.exponent) +
                           " needs the plain power in the basis too");
      }
    }
    if (anchor_ && !(*anchor_ > 0 && std::isfinite(*anchor_))) throw InvalidInput("scale anchor must be positive");
  }

  static AsymptoticBasis powers(std::span<const Rational> exponents, std::optional<double> anchor = std::nullopt) {
    std::vector<BasisTerm> terms;
    for (const auto& p : exponents) terms.push_back({p, 0});
    return AsymptoticBasis(std::move(terms), anchor);
  }

  const std::vector<BasisTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const std::optional<double>& scale_anchor() const { return anchor_; }

  std::optional<std::size_t> index_of(const Rational& p, int q) const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].exponent == p && terms_[i].log_power == q) return i;
    }
    return std::nullopt;
  }

  AsymptoticBasis with_term(BasisTerm term) const {
    auto terms = terms_;
    terms.push_back(std::move(term));
    return AsymptoticBasis(std::move(terms), anchor_);
  }

 private:
  std::vector<BasisTerm> terms_;
  std::optional<double> anchor_;
};

/// Heat shape: t^{(s-d)/2}, s = 0..max_s.
inline AsymptoticBasis heat_basis(int dim, int max_s) {
  std::vector<BasisTerm> terms;
  for (int s = 0; s <= max_s; ++s) terms.push_back({Rational(s - dim, 2), 0});
  return AsymptoticBasis(std::move(terms));
}

/// Cylinder shape: t^{s-d}, s = 0..max_s, optionally with t^{s-d} log t for s-d odd positive.
inline AsymptoticBasis cylinder_basis(int dim, int max_s, bool with_logs = false) {
  std::vector<BasisTerm> terms;
  for (int s = 0; s <= max_s; ++s) {
    terms.push_back({Rational(s - dim), 0});
    if (with_logs && s - dim > 0 && (s - dim) % 2 != 0) terms.push_back({Rational(s - dim), 1});
  }
  return AsymptoticBasis(std::move(terms));
}

/// d/dt of the cylinder shape: t^{s-d-1}, s = 0..max_s, s != d (that term differentiates away).
inline AsymptoticBasis cylinder_derivative_basis(int dim, int max_s) {
  std::vector<BasisTerm> terms;
  for (int s = 0; s <= max_s; ++s) {
    if (s != dim) terms.push_back({Rational(s - dim - 1), 0});
  }
  return AsymptoticBasis(std::move(terms));
}

struct Sample {
  double x = 0;
  double y = 0;
  /// NaN selects the default relative weight 1/y^2 (1 when y == 0).
  double weight = std::numeric_limits<double>::quiet_NaN();
};

inline std::vector<Sample> relative_samples(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidInput("x and y lengths differ");
  std::vector<Sample> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({xs[i], ys[i]});
  return out;
}

struct FitReport {
  AsymptoticBasis basis;
  std::vector<double> coefficients;
  double residual_rms = 0;
  double condition_estimate = 0;
  /// Jackknife spread per coefficient (NaN when the quarters are too small to refit).
  std::vector<double> stability;
  double scale_anchor = 1;

  double coefficient(const Rational& p, int q = 0) const {
    auto i = basis.index_of(p, q);
    if (!i) throw InvalidInput("no basis term at exponent " + rational_to_string(p));
    return coefficients[*i];
  }
  double spread(const Rational& p, int q = 0) const {
    auto i = basis.index_of(p, q);
    if (!i) throw InvalidInput("no basis term at exponent " + rational_to_string(p));
    return stability[*i];
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : basis.terms()) terms.push_back({{"p", rational_to_string(t.exponent)}, {"q", t.log_power}});
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    nlohmann::json stab = nlohmann::json::array();
    for (double s : stability) stab.push_back(num(s));
    return {{"basis", terms},
            {"coefficients", coefficients},
            {"residual_rms", residual_rms},
            {"condition_estimate", num(condition_estimate)},
            {"stability", stab},
            {"scale_anchor", scale_anchor}};
  }

  /// Fitted terms as an expansion (status fitted).
  AsymptoticExpansion to_expansion(int dim) const {
    AsymptoticExpansion e(dim);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      e.add(basis.terms()[i].exponent, basis.terms()[i].log_power, Coefficient(coefficients[i]),
            CoefficientStatus::fitted);
    }
    return e;
  }
};

namespace detail {

using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

inline double effective_weight(const Sample& s) {
  if (!std::isnan(s.weight)) return s.weight;
  return s.y == 0 ? 1.0 : 1.0 / (s.y * s.y);
}

struct RawSolve {
  std::vector<double> coefficients;
  double residual_rms = 0;
  double condition = 0;
};

// Solves on the normalized basis and maps back to raw coefficients.
inline RawSolve solve(std::span<const Sample> samples, const AsymptoticBasis& basis, double t0, bool want_condition) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto m = static_cast<Eigen::Index>(basis.size());
  const long double log_t0 = std::log(static_cast<long double>(t0));
  Mat a(n, m);
  Vec b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    const long double sw = std::sqrt(static_cast<long double>(effective_weight(s)));
    const long double lx = std::log(static_cast<long double>(s.x)) - log_t0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& term = basis.terms()[static_cast<std::size_t>(j)];
      long double v = std::exp(static_cast<long double>(term.p()) * lx);
      if (term.log_power == 1) v *= lx;
      a(i, j) = sw * v;
    }
    b(i) = sw * static_cast<long double>(s.y);
  }
  Vec scale(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const long double norm = a.col(j).norm();
    scale(j) = norm > 0 ? norm : 1;
    a.col(j) /= scale(j);
  }
  RawSolve out;
  if (want_condition) {
    Eigen::JacobiSVD<Mat> svd(a);
    const auto& sv = svd.singularValues();
    const long double smin = sv(sv.size() - 1);
    out.condition = smin > 0 ? static_cast<double>(sv(0) / smin) : std::numeric_limits<double>::infinity();
  }
  const Vec beta = a.colPivHouseholderQr().solve(b);
  const Vec resid = a * beta - b;
  out.residual_rms = static_cast<double>(std::sqrt(resid.squaredNorm() / static_cast<long double>(n)));

  std::vector<long double> raw(static_cast<std::size_t>(m), 0.0L);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& term = basis.terms()[static_cast<std::size_t>(j)];
    const long double alpha = beta(j) / scale(j) * std::exp(-static_cast<long double>(term.p()) * log_t0);
    raw[static_cast<std::size_t>(j)] += alpha;
    if (term.log_power == 1) raw[*basis.index_of(term.exponent, 0)] -= alpha * log_t0;
  }
  out.coefficients.assign(raw.begin(), raw.end());
  return out;
}

}  // namespace detail

/*!
  Weighted least squares of y against the basis, evaluated on the normalized
  variable x/t0 and reported in the raw basis x^p (log x)^q. Stability is
  the jackknife spread over leave-one-quarter-out refits on contiguous
  quarters of the (x-sorted) samples.
*/
inline FitReport fit_expansion(std::span<const Sample> samples, const AsymptoticBasis& basis,
                               double max_condition = 1e12) {
  if (samples.size() < basis.size() + 2) {
    throw InvalidInput("need at least " + std::to_string(basis.size() + 2) + " samples for a " +
                       std::to_string(basis.size()) + "-term basis, got " + std::to_string(samples.size()));
  }
  std::vector<Sample> sorted(samples.begin(), samples.end());
  for (const auto& s : sorted) {
    if (!(s.x > 0) || !std::isfinite(s.x)) throw InvalidInput("sample abscissae must be positive and finite");
    if (!std::isfinite(s.y)) throw InvalidInput("sample values must be finite");
    if (!std::isnan(s.weight) && !(s.weight >= 0)) throw InvalidInput("sample weights must be nonnegative");
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Sample& a, const Sample& b) { return a.x < b.x; });

  FitReport report;
  report.basis = basis;
  report.scale_anchor = basis.scale_anchor().value_or(std::sqrt(sorted.front().x * sorted.back().x));

  auto full = detail::solve(sorted, basis, report.scale_anchor, true);
  report.condition_estimate = full.condition;
  if (!(full.condition <= max_condition)) throw IllConditioned(full.condition);
  report.coefficients = std::move(full.coefficients);
  report.residual_rms = full.residual_rms;

  constexpr std::size_t folds = 4;
  const std::size_t n = sorted.size();
  const std::size_t m = basis.size();
  report.stability.assign(m, std::numeric_limits<double>::quiet_NaN());
  if (n - (n + folds - 1) / folds >= m) {
    std::vector<std::vector<double>> theta;
    for (std::size_t k = 0; k < folds; ++k) {
      const std::size_t lo = k * n / folds, hi = (k + 1) * n / folds;
      std::vector<Sample> kept;
      for (std::size_t i = 0; i < n; ++i) {
        if (i < lo || i >= hi) kept.push_back(sorted[i]);
      }
      theta.push_back(detail::solve(kept, basis, report.scale_anchor, false).coefficients);
    }
    for (std::size_t j = 0; j < m; ++j) {
      double mean = 0;
      for (const auto& th : theta) mean += th[j];
      mean /= folds;
      double ss = 0;
      for (const auto& th : theta) ss += (th[j] - mean) * (th[j] - mean);
      report.stability[j] = std::sqrt((folds - 1.0) / folds * ss);
    }
  }
  return report;
}

struct LogTermVerdict {
  bool present = false;
  double magnitude = 0;  // fitted coefficient of x^p log x
  double spread = 0;
  double residual_without = 0;
  double residual_with = 0;
};

/// Fits with and without x^p log x; present when the residual drops 10x and the coefficient clears 10x its spread.
inline LogTermVerdict detect_log_term(std::span<const Sample> samples, const AsymptoticBasis& base, const Rational& p) {
  if (base.index_of(p, 1)) throw InvalidInput("base basis already contains the log term");
  AsymptoticBasis plain = base.index_of(p, 0) ? base : base.with_term({p, 0});
  const FitReport without = fit_expansion(samples, plain);
  const FitReport with = fit_expansion(samples, plain.with_term({p, 1}));
  LogTermVerdict v;
  v.magnitude = with.coefficient(p, 1);
  v.spread = with.spread(p, 1);
  v.residual_without = without.residual_rms;
  v.residual_with = with.residual_rms;
  const bool improves = v.residual_with * 10 <= v.residual_without;
  const bool stable = std::abs(v.magnitude) > 10 * v.spread;
  v.present = improves && stable;
  return v;
}

}  // namespace specasym
