#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "specasym/errors.hpp"
#include "specasym/exact.hpp"

namespace specasym {

enum class CoefficientStatus { known, fitted, undetermined };

inline const char* status_name(CoefficientStatus s) {
  switch (s) {
    case CoefficientStatus::known: return "known";
    case CoefficientStatus::fitted: return "fitted";
    case CoefficientStatus::undetermined: return "undetermined";
  }
  return "?";
}

inline CoefficientStatus parse_status(const std::string& s) {
  if (s == "known") return CoefficientStatus::known;
  if (s == "fitted") return CoefficientStatus::fitted;
  if (s == "undetermined") return CoefficientStatus::undetermined;
  throw InvalidInput("unknown coefficient status '" + s + "'");
}

/*!
  A coefficient that is either exact (rational times a power of sqrt(pi))
  or a plain floating value. Arithmetic stays exact while both sides are.
*/
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(ExactScalar exact) : exact_(std::move(exact)), value_(exact_->to_double()) {}
  Coefficient(double value) : value_(value) {}

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<ExactScalar>& exact() const { return exact_; }
  double value() const { return value_; }

  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    if (a.exact_ && b.exact_) return Coefficient(*a.exact_ * *b.exact_);
    return Coefficient(a.value_ * b.value_);
  }
  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    if (a.exact_ && b.exact_ && ExactScalar::can_add(*a.exact_, *b.exact_)) return Coefficient(*a.exact_ + *b.exact_);
    return Coefficient(a.value_ + b.value_);
  }
  friend Coefficient operator-(const Coefficient& a) {
    if (a.exact_) return Coefficient(-*a.exact_);
    return Coefficient(-a.value_);
  }

  nlohmann::json to_json() const {
    if (exact_) return exact_->to_string();
    return value_;
  }
  static Coefficient from_json(const nlohmann::json& j) {
    if (j.is_string()) return Coefficient(ExactScalar::parse(j.get<std::string>()));
    if (j.is_number()) return Coefficient(j.get<double>());
    throw InvalidInput("coefficient must be a number or an exact string");
  }

 private:
  std::optional<ExactScalar> exact_;
  double value_ = 0;
};

/// One term c * t^p * (log t)^q.
struct ExpansionTerm {
  Rational exponent;
  int log_power = 0;
  Coefficient coefficient;
  CoefficientStatus status = CoefficientStatus::known;
};

/*!
  Finite asymptotic expansion sum c t^p (log t)^q in a small parameter t.
  Terms are kept sorted by (p, q) with at most one term per pair.
*/
class AsymptoticExpansion {
 public:
  AsymptoticExpansion() = default;
  explicit AsymptoticExpansion(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<ExpansionTerm>& terms() const { return terms_; }

  /// True when every term beyond those listed vanishes (a closed-form expansion).
  bool terminating() const { return terminating_; }
  void set_terminating(bool v) { terminating_ = v; }

  void add_term(ExpansionTerm term) {
    if (term.log_power != 0 && term.log_power != 1) throw InvalidInput("log power must be 0 or 1");
    auto key_less = [](const ExpansionTerm& a, const ExpansionTerm& b) {
      return a.exponent < b.exponent || (a.exponent == b.exponent && a.log_power < b.log_power);
    };
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term, key_less);
    if (it != terms_.end() && it->exponent == term.exponent && it->log_power == term.log_power) {
      throw InvalidInput("duplicate expansion term at exponent " + rational_to_string(term.exponent));
    }
    terms_.insert(it, std::move(term));
  }

  void add(const Rational& p, int q, Coefficient c, CoefficientStatus status = CoefficientStatus::known) {
    add_term({p, q, std::move(c), status});
  }

  const ExpansionTerm* find(const Rational& p, int q = 0) const {
    for (const auto& t : terms_) {
      if (t.exponent == p && t.log_power == q) return &t;
    }
    return nullptr;
  }

  bool has_log_terms() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const ExpansionTerm& t) { return t.log_power != 0; });
  }

  /// Sum of determined terms at t > 0.
  double evaluate(double t) const {
    double sum = 0;
    for (const auto& term : terms_) {
      if (term.status == CoefficientStatus::undetermined) continue;
      double v = term.coefficient.value() * std::pow(t, to_double(term.exponent));
      if (term.log_power == 1) v *= std::log(t);
      sum += v;
    }
    return sum;
  }

  /// {dim, terms: [{p: "r/s", q, c, status}]}; exact c as "a/b" or "a/b*sqrt(pi)", undetermined c as null.
  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_) {
      terms.push_back({{"p", rational_to_string(t.exponent)},
                       {"q", t.log_power},
                       {"c", t.status == CoefficientStatus::undetermined ? nlohmann::json(nullptr)
                                                                         : t.coefficient.to_json()},
                       {"status", status_name(t.status)}});
    }
    nlohmann::json j = {{"dim", dim_}, {"terms", terms}};
    if (terminating_) j["terminating"] = true;
    return j;
  }

  static AsymptoticExpansion from_json(const nlohmann::json& j) {
    try {
      AsymptoticExpansion e(j.at("dim").get<int>());
      e.set_terminating(j.value("terminating", false));
      for (const auto& t : j.at("terms")) {
        const auto status = parse_status(t.at("status").get<std::string>());
        Coefficient c = t.at("c").is_null() ? Coefficient() : Coefficient::from_json(t.at("c"));
        e.add(parse_rational(t.at("p").get<std::string>()), t.at("q").get<int>(), std::move(c), status);
      }
      return e;
    } catch (const nlohmann::json::exception& ex) {
      throw InvalidInput(std::string("malformed expansion JSON: ") + ex.what());
    }
  }

 private:
  int dim_ = 0;
  std::vector<ExpansionTerm> terms_;
  bool terminating_ = false;
};

}  // namespace specasym
