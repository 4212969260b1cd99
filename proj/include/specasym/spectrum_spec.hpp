#pragma once

#include <map>
#include <string>
#include <string_view>

#include "specasym/errors.hpp"
#include "specasym/spectra.hpp"

namespace specasym {

namespace detail {

inline double parse_positive(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw InvalidInput("'" + key + "' expects a number, got '" + text + "'");
  if (!(v > 0) || !std::isfinite(v)) throw InvalidInput("'" + key + "' must be positive, got '" + text + "'");
  return v;
}

// "key=value:key=value" after the recipe name.
inline std::map<std::string, std::string> parse_fields(std::string_view rest, std::string_view recipe) {
  std::map<std::string, std::string> fields;
  while (!rest.empty()) {
    const auto colon = rest.find(':');
    const std::string_view item = rest.substr(0, colon);
    rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw InvalidInput(std::string(recipe) + ": expected key=value, got '" + std::string(item) + "'");
    }
    auto [it, fresh] = fields.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (!fresh) throw InvalidInput(std::string(recipe) + ": repeated key '" + it->first + "'");
  }
  return fields;
}

// Index just past the ')' matching the '(' at `open`.
inline std::size_t matching_paren(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i + 1;
  }
  throw InvalidInput("unbalanced parentheses in '" + std::string(s) + "'");
}

}  // namespace detail

/*!
  Builds a spectrum from a description string:

      interval:length=<L>[:bc=dirichlet|neumann]
      torus:circumference=<C>
      product:(<spec>)x(<spec>)
      file:<path>
*/
inline Spectrum parse_spectrum_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string recipe(spec.substr(0, colon));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (recipe == "file") {
    if (rest.empty()) throw InvalidInput("file: needs a path");
    return load_spectrum(std::string(rest));
  }
  if (recipe == "product") {
    if (rest.empty() || rest.front() != '(') throw InvalidInput("product: expected '(<spec>)x(<spec>)'");
    const std::size_t end_a = detail::matching_paren(rest, 0);
    if (end_a + 1 >= rest.size() || rest[end_a] != 'x' || rest[end_a + 1] != '(') {
      throw InvalidInput("product: expected '(<spec>)x(<spec>)'");
    }
    const std::size_t end_b = detail::matching_paren(rest, end_a + 1);
    if (end_b != rest.size()) throw InvalidInput("product: trailing text after second factor");
    return product_spectrum(parse_spectrum_spec(rest.substr(1, end_a - 2)),
                            parse_spectrum_spec(rest.substr(end_a + 2, end_b - end_a - 3)));
  }

  auto fields = detail::parse_fields(rest, recipe);
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    std::string v = it->second;
    fields.erase(it);
    return v;
  };
  auto finish = [&](Spectrum s) {
    if (!fields.empty()) throw InvalidInput(recipe + ": unknown key '" + fields.begin()->first + "'");
    return s;
  };

  if (recipe == "interval") {
    const auto length = take("length");
    if (!length) throw InvalidInput("interval: missing length=<L>");
    const std::string bc = take("bc").value_or("dirichlet");
    BoundaryCondition cond;
    if (bc == "dirichlet") {
      cond = BoundaryCondition::dirichlet;
    } else if (bc == "neumann") {
      cond = BoundaryCondition::neumann;
    } else {
      throw InvalidInput("interval: bc must be dirichlet or neumann, got '" + bc + "'");
    }
    return finish(interval_spectrum(detail::parse_positive("length", *length), cond));
  }
  if (recipe == "torus") {
    const auto c = take("circumference");
    if (!c) throw InvalidInput("torus: missing circumference=<C>");
    return finish(torus_spectrum(detail::parse_positive("circumference", *c)));
  }
  throw InvalidInput("unknown spectrum recipe '" + recipe + "' (expected interval, torus, product or file)");
}

}  // namespace specasym
