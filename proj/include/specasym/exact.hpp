#pragma once

// Exact scalars for the coefficient-relation formulas: arbitrary-precision
// rationals, optionally multiplied by a half-integer power of pi, plus the
// special values those formulas need (Bernoulli numbers, zeta at negative
// integers, Gamma at half-integers).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "specasym/errors.hpp"

namespace specasym {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p", "p/q" or "-p/q" (integers of any size).
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_int = [&](std::string_view s) -> BigInt {
    s = trim(s);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw InvalidInput("malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw InvalidInput("malformed rational '" + std::string(text) + "'");
    }
    std::string digits(s);
    if (digits[0] == '+') digits.erase(0, 1);
    return BigInt(digits);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/*!
  An exact value coeff * pi^(half_pi_power / 2).

  Gamma at half-integers, the theta-function heat coefficients (sqrt(pi)/2)
  and their products all live in this set, so the relation theorems can be
  checked as identities rather than to a tolerance.
*/
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(Rational coeff, int half_pi_power = 0) : coeff_(std::move(coeff)), half_pi_power_(half_pi_power) {
    normalize();
  }
  ExactScalar(long long n) : ExactScalar(Rational(n)) {}

  static ExactScalar sqrt_pi() { return ExactScalar(Rational(1), 1); }
  static ExactScalar pi() { return ExactScalar(Rational(1), 2); }

  const Rational& coefficient() const { return coeff_; }
  int half_pi_power() const { return half_pi_power_; }
  bool is_zero() const { return coeff_ == 0; }

  double to_double() const {
    return specasym::to_double(coeff_) * std::pow(std::numbers::pi, 0.5 * half_pi_power_);
  }

  /// "p/q", "p/q*sqrt(pi)", "p/q/sqrt(pi)", "p/q*pi^k" or "p/q*pi^(h/2)".
  std::string to_string() const {
    std::string s = rational_to_string(coeff_);
    const int h = half_pi_power_;
    if (h == 0) return s;
    if (h == 1) return s + "*sqrt(pi)";
    if (h == -1) return s + "/sqrt(pi)";
    if (h == 2) return s + "*pi";
    if (h % 2 == 0) return s + "*pi^" + std::to_string(h / 2);
    return s + "*pi^(" + std::to_string(h) + "/2)";
  }

  static ExactScalar parse(std::string_view text) {
    auto split_at = [&](std::string_view marker) { return text.find(marker); };
    if (auto pos = split_at("*sqrt(pi)"); pos != std::string_view::npos) {
      return ExactScalar(parse_rational(text.substr(0, pos)), 1);
    }
    if (auto pos = split_at("/sqrt(pi)"); pos != std::string_view::npos) {
      return ExactScalar(parse_rational(text.substr(0, pos)), -1);
    }
    if (auto pos = split_at("*pi^("); pos != std::string_view::npos) {
      auto rest = text.substr(pos + 5);
      auto slash = rest.find("/2)");
      if (slash == std::string_view::npos) throw InvalidInput("malformed exact scalar '" + std::string(text) + "'");
      return ExactScalar(parse_rational(text.substr(0, pos)), std::stoi(std::string(rest.substr(0, slash))));
    }
    if (auto pos = split_at("*pi^"); pos != std::string_view::npos) {
      return ExactScalar(parse_rational(text.substr(0, pos)), 2 * std::stoi(std::string(text.substr(pos + 4))));
    }
    if (auto pos = split_at("*pi"); pos != std::string_view::npos && pos + 3 == text.size()) {
      return ExactScalar(parse_rational(text.substr(0, pos)), 2);
    }
    return ExactScalar(parse_rational(text), 0);
  }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.coeff_ * b.coeff_, a.half_pi_power_ + b.half_pi_power_);
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    if (b.is_zero()) throw InvalidInput("division by exact zero");
    return ExactScalar(a.coeff_ / b.coeff_, a.half_pi_power_ - b.half_pi_power_);
  }
  friend ExactScalar operator-(const ExactScalar& a) { return ExactScalar(-a.coeff_, a.half_pi_power_); }

  /// Sums stay exact only when the pi powers agree (or one side is zero).
  static bool can_add(const ExactScalar& a, const ExactScalar& b) {
    return a.is_zero() || b.is_zero() || a.half_pi_power_ == b.half_pi_power_;
  }
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    if (!can_add(a, b)) throw InvalidInput("exact sum of unlike powers of pi: " + a.to_string() + " + " + b.to_string());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return ExactScalar(a.coeff_ + b.coeff_, a.half_pi_power_);
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.coeff_ == b.coeff_ && a.half_pi_power_ == b.half_pi_power_;
  }

 private:
  void normalize() {
    if (coeff_ == 0) half_pi_power_ = 0;
  }

  Rational coeff_{0};
  int half_pi_power_ = 0;
};

inline ExactScalar pow2(int exponent) {
  BigInt p = 1;
  p <<= std::abs(exponent);
  return exponent >= 0 ? ExactScalar(Rational(p)) : ExactScalar(Rational(BigInt(1), p));
}

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

/// Largest Bernoulli index kept in the cached table.
inline constexpr int kMaxBernoulli = 64;

/*!
  Bernoulli number B_n with the B_1 = +1/2 convention, so that
  zeta(-n) = -B_{n+1}/(n+1) holds for every n >= 0.
  Built once from  sum_{k<m+1} C(m+1,k) B_k = 0  (B_1 = -1/2 form).
*/
inline const Rational& bernoulli(int n) {
  static const std::vector<Rational> table = [] {
    std::vector<Rational> b(kMaxBernoulli + 1);
    b[0] = 1;
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      Rational acc = 0;
      for (int k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * b[k];
      b[m] = -acc / (m + 1);
    }
    b[1] = Rational(1, 2);
    return b;
  }();
  if (n < 0 || n > kMaxBernoulli) throw InvalidInput("Bernoulli index out of range: " + std::to_string(n));
  return table[static_cast<std::size_t>(n)];
}

inline constexpr int kMaxZetaNegInt = 60;

/// zeta(-n) for 0 <= n <= 60 as an exact rational.
inline Rational zeta_neg_int(int n) {
  if (n < 0 || n > kMaxZetaNegInt) {
    throw InvalidInput("zeta(-n) supported for 0 <= n <= " + std::to_string(kMaxZetaNegInt) + ", got " +
                       std::to_string(n));
  }
  return -bernoulli(n + 1) / (n + 1);
}

/*!
  Gamma(k2 / 2) exactly. Integers give factorials; half-integers give a
  rational multiple of sqrt(pi). Negative half-integers are allowed (the
  heat/cylinder relation needs Gamma(-1/2) etc.); poles are rejected.
*/
inline ExactScalar gamma_half(int k2) {
  if (k2 <= 0 && k2 % 2 == 0) throw InvalidInput("Gamma has a pole at " + std::to_string(k2) + "/2");
  if (k2 % 2 == 0) return ExactScalar(Rational(factorial(k2 / 2 - 1)));
  // Walk from Gamma(1/2) = sqrt(pi) with Gamma(x+1) = x Gamma(x).
  Rational value = 1;
  Rational x(1, 2);
  const Rational target(k2, 2);
  while (x < target) {
    value *= x;
    x += 1;
  }
  while (x > target) {
    x -= 1;
    value /= x;
  }
  return ExactScalar(value, 1);
}

/// Gamma(n) for a positive integer n.
inline ExactScalar gamma_int(int n) { return gamma_half(2 * n); }

/// Euler-Mascheroni constant, 30 significant digits.
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082L;

/// Digamma at a positive integer: psi(n) = -gamma + H_{n-1}.
inline double digamma_int(int n) {
  if (n < 1) throw InvalidInput("digamma_int needs n >= 1");
  long double h = 0;
  for (int k = 1; k < n; ++k) h += 1.0L / k;
  return static_cast<double>(h - kEulerGamma);
}

}  // namespace specasym
