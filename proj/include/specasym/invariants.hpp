#pragma once

// Relations among heat-trace coefficients b_s, cylinder-trace coefficients
// e_s / f_s and the Riesz-mean coefficients a_ss, c_ss, d_ss, together with
// expansion arithmetic and the Casimir-energy read-out.
//
// Conventions (d = dimension):
//   heat      Tr K ~ sum_s b_s t^{(s-d)/2}
//   cylinder  Tr T ~ sum_s e_s t^{s-d} + sum_{s-d odd > 0} f_s t^{s-d} log t

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specasym/errors.hpp"
#include "specasym/exact.hpp"
#include "specasym/expansion.hpp"

namespace specasym {

/// Index s of a heat term t^p: s = 2p + d.
inline int heat_index(const Rational& p, int dim) {
  const Rational s = 2 * p + dim;
  if (denominator(s) != 1 || s < 0) {
    throw InvalidInput("exponent " + rational_to_string(p) + " is not of heat form (s-d)/2");
  }
  return numerator(s).convert_to<int>();
}

/// Index s of a cylinder term t^p: s = p + d.
inline int cylinder_index(const Rational& p, int dim) {
  const Rational s = p + dim;
  if (denominator(s) != 1 || s < 0) {
    throw InvalidInput("exponent " + rational_to_string(p) + " is not of cylinder form s-d");
  }
  return numerator(s).convert_to<int>();
}

inline Rational heat_exponent(int s, int dim) { return Rational(s - dim, 2); }
inline Rational cylinder_exponent(int s, int dim) { return Rational(s - dim); }

/// d - s odd and negative: the branch where log terms and new invariants appear.
inline bool odd_negative(int dim, int s) {
  const int k = dim - s;
  return k < 0 && (k % 2 != 0);
}

inline CoefficientStatus status_of(const Coefficient& c) {
  return c.is_exact() ? CoefficientStatus::known : CoefficientStatus::fitted;
}

/*!
  Cylinder coefficients from heat coefficients:
    d-s even or positive:  e_s = pi^{-1/2} 2^{d-s} Gamma((d-s+1)/2) b_s
    d-s odd and negative:  f_s = (-1)^{(s-d+1)/2} 2^{d-s+1} b_s / (sqrt(pi) Gamma((s-d+1)/2)),
                           e_s undetermined by the b_r.
*/
inline AsymptoticExpansion heat_to_cylinder(const AsymptoticExpansion& heat) {
  if (heat.has_log_terms()) throw InvalidInput("heat expansions carry no log terms");
  const int d = heat.dim();
  AsymptoticExpansion cyl(d);
  for (const auto& term : heat.terms()) {
    const int s = heat_index(term.exponent, d);
    const int k = d - s;
    const Rational p = cylinder_exponent(s, d);
    if (!odd_negative(d, s)) {
      const ExactScalar factor = ExactScalar(Rational(1), -1) * pow2(k) * gamma_half(k + 1);
      cyl.add(p, 0, Coefficient(factor) * term.coefficient, term.status);
    } else {
      const int m = (1 - k) / 2;  // (s-d+1)/2
      const ExactScalar sign = (m % 2 == 0) ? ExactScalar(1) : ExactScalar(-1);
      const ExactScalar factor = sign * pow2(k + 1) / (ExactScalar::sqrt_pi() * gamma_int(m));
      cyl.add(p, 1, Coefficient(factor) * term.coefficient, term.status);
      cyl.add(p, 0, Coefficient(), CoefficientStatus::undetermined);
    }
  }
  return cyl;
}

/// b_s = Gamma((d+s)/2 + 1) / Gamma(s+1) * a_ss, for s = 0 .. a_ss.size()-1.
inline AsymptoticExpansion riesz_to_heat(std::span<const Coefficient> a_ss, int dim) {
  AsymptoticExpansion heat(dim);
  for (std::size_t i = 0; i < a_ss.size(); ++i) {
    const int s = static_cast<int>(i);
    const ExactScalar factor = gamma_half(dim + s + 2) / gamma_int(s + 1);
    heat.add(heat_exponent(s, dim), 0, Coefficient(factor) * a_ss[i], status_of(a_ss[i]));
  }
  return heat;
}

/*!
  Cylinder coefficients from the omega-Riesz-mean coefficients:
    d-s even or positive:  e_s = Gamma(d+1)/Gamma(s+1) c_ss
    d-s odd and negative:  f_s = -Gamma(d+1)/Gamma(s+1) d_ss,
                           e_s = Gamma(d+1)/Gamma(s+1) [e_ss + psi(d+1) d_ss].
  c_ss covers every s; d_ss and e_ss are read only on the odd-negative
  branch, where e_ss is the non-log coefficient at omega^{d-s}.
  psi(d+1) = -gamma + H_d is the one non-exact factor.
*/
inline AsymptoticExpansion riesz_to_cylinder(std::span<const Coefficient> c_ss, std::span<const Coefficient> d_ss,
                                             std::span<const Coefficient> e_ss, int dim) {
  AsymptoticExpansion cyl(dim);
  for (std::size_t i = 0; i < c_ss.size(); ++i) {
    const int s = static_cast<int>(i);
    const ExactScalar factor = gamma_int(dim + 1) / gamma_int(s + 1);
    const Rational p = cylinder_exponent(s, dim);
    if (!odd_negative(dim, s)) {
      cyl.add(p, 0, Coefficient(factor) * c_ss[i], status_of(c_ss[i]));
      continue;
    }
    if (i >= d_ss.size() || i >= e_ss.size()) {
      throw InvalidInput("d_ss and e_ss required at s = " + std::to_string(s));
    }
    const Coefficient& dv = d_ss[i];
    cyl.add(p, 1, Coefficient(-factor) * dv, status_of(dv));
    Coefficient inner = e_ss[i];
    const bool log_free = dv.is_exact() && dv.exact()->is_zero();
    if (!log_free) inner = Coefficient(e_ss[i].value() + digamma_int(dim + 1) * dv.value());
    const Coefficient e = Coefficient(factor) * inner;
    cyl.add(p, 0, e, log_free ? status_of(e_ss[i]) : CoefficientStatus::fitted);
  }
  return cyl;
}

/*!
  Formal product of two heat-type expansions (exponents add, coefficients
  convolve, dimensions add). The result is kept only through the order
  where every contributing pair is known: min of the factors' orders,
  ignoring terminating factors.
*/
inline AsymptoticExpansion expansion_product(const AsymptoticExpansion& a, const AsymptoticExpansion& b) {
  if (a.has_log_terms() || b.has_log_terms()) {
    throw InvalidInput("expansion_product is defined for log-free (heat-type) expansions only");
  }
  struct Indexed {
    std::map<int, const ExpansionTerm*> by_s;
    int max_s = -1;
  };
  auto index = [](const AsymptoticExpansion& e) {
    Indexed ix;
    for (const auto& t : e.terms()) {
      const int s = heat_index(t.exponent, e.dim());
      ix.by_s[s] = &t;
      ix.max_s = std::max(ix.max_s, s);
    }
    return ix;
  };
  const Indexed ia = index(a), ib = index(b);
  const int d = a.dim() + b.dim();
  AsymptoticExpansion out(d);
  if (ia.max_s < 0 || ib.max_s < 0) {
    out.set_terminating(a.terminating() || b.terminating());
    return out;
  }
  int order;
  if (a.terminating() && b.terminating()) {
    order = ia.max_s + ib.max_s;
    out.set_terminating(true);
  } else if (a.terminating()) {
    order = ib.max_s;
  } else if (b.terminating()) {
    order = ia.max_s;
  } else {
    order = std::min(ia.max_s, ib.max_s);
  }
  for (int s = 0; s <= order; ++s) {
    Coefficient acc(ExactScalar(0));
    bool any = false;
    bool undetermined = false;
    bool fitted = false;
    for (int i = 0; i <= s; ++i) {
      auto ta = ia.by_s.find(i);
      auto tb = ib.by_s.find(s - i);
      if (ta == ia.by_s.end() || tb == ib.by_s.end()) continue;  // absent terms are zero
      any = true;
      if (ta->second->status == CoefficientStatus::undetermined ||
          tb->second->status == CoefficientStatus::undetermined) {
        undetermined = true;
        continue;
      }
      fitted = fitted || ta->second->status == CoefficientStatus::fitted ||
               tb->second->status == CoefficientStatus::fitted;
      acc = acc + ta->second->coefficient * tb->second->coefficient;
    }
    if (!any) continue;
    const Rational p = heat_exponent(s, d);
    if (undetermined) {
      out.add(p, 0, Coefficient(), CoefficientStatus::undetermined);
    } else {
      out.add(p, 0, acc, fitted ? CoefficientStatus::fitted : CoefficientStatus::known);
    }
  }
  return out;
}

/// Term-wise d/dt:  c t^p -> p c t^{p-1};  c t^p log t -> p c t^{p-1} log t + c t^{p-1}.
inline AsymptoticExpansion differentiate(const AsymptoticExpansion& e) {
  struct Slot {
    Coefficient c{ExactScalar(0)};
    bool undetermined = false;
    bool fitted = false;
  };
  std::map<std::pair<Rational, int>, Slot> acc;
  auto contribute = [&](const Rational& p, int q, const ExpansionTerm& src, const ExactScalar& factor) {
    Slot& slot = acc[{p, q}];
    if (src.status == CoefficientStatus::undetermined) {
      if (!factor.is_zero()) slot.undetermined = true;
      return;
    }
    slot.fitted = slot.fitted || src.status == CoefficientStatus::fitted;
    slot.c = slot.c + Coefficient(factor) * src.coefficient;
  };
  for (const auto& t : e.terms()) {
    const Rational p = t.exponent - 1;
    contribute(p, t.log_power, t, ExactScalar(t.exponent));
    if (t.log_power == 1) contribute(p, 0, t, ExactScalar(1));
  }
  AsymptoticExpansion out(e.dim());
  out.set_terminating(e.terminating());
  for (auto& [key, slot] : acc) {
    if (slot.undetermined) {
      out.add(key.first, key.second, Coefficient(), CoefficientStatus::undetermined);
    } else {
      out.add(key.first, key.second, slot.c, slot.fitted ? CoefficientStatus::fitted : CoefficientStatus::known);
    }
  }
  return out;
}

/*!
  Renormalized vacuum energy -e_{d+1}/2 from a cylinder expansion: the t^0
  coefficient of dTr T/dt is (s-d) e_s at s = d+1, i.e. e_{d+1}, and the
  energy is -1/2 of it.
*/
inline double casimir_energy(const AsymptoticExpansion& cyl) {
  const ExpansionTerm* term = cyl.find(Rational(1), 0);
  if (term == nullptr || term->status == CoefficientStatus::undetermined) {
    throw InvalidInput("casimir energy requires fitted cylinder expansion (no determined t^1 term)");
  }
  return -0.5 * term->coefficient.value();
}

}  // namespace specasym
