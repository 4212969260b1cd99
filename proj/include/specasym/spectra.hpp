#pragma once

// Eigenvalue spectra as lazy, strictly increasing streams of
// (omega, multiplicity) with lambda = omega^2, plus the counting function.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "specasym/errors.hpp"

namespace specasym {

struct SpectralTerm {
  double omega = 0;
  std::uint64_t multiplicity = 1;

  double lambda() const { return omega * omega; }
  friend bool operator==(const SpectralTerm&, const SpectralTerm&) = default;
};

/*!
  Polynomial upper bound on the counting function in omega:
      N(omega^2) <= sum_k coeffs[k] * omega^k   for all omega >= 0.
  Model spectra derive it from their recipe; loaded spectra must supply it
  for traces to be certified.
*/
class Envelope {
 public:
  Envelope() = default;
  explicit Envelope(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_) {
      if (!(c >= 0) || !std::isfinite(c)) throw InvalidInput("envelope coefficients must be finite and >= 0");
    }
  }

  /// N(omega^2) <= c1 + c2 * omega^dim.
  static Envelope weyl_type(double c1, double c2, int dim) {
    std::vector<double> coeffs(static_cast<std::size_t>(std::max(dim, 0)) + 1, 0.0);
    coeffs[0] += c1;
    coeffs.back() += c2;
    return Envelope(std::move(coeffs));
  }

  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(double omega) const {
    double value = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) value = value * omega + coeffs_[k];
    return value;
  }

  /// N_{a x b}(w^2) <= N_a(w^2) * max_{mu<=w} N_b(mu^2), so envelopes multiply.
  friend Envelope operator*(const Envelope& a, const Envelope& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Envelope();
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Envelope(std::move(c));
  }

 private:
  std::vector<double> coeffs_;
};

/// Pull-based enumeration in strictly increasing omega.
class TermCursor {
 public:
  virtual ~TermCursor() = default;
  virtual std::optional<SpectralTerm> next() = 0;
};

class SpectrumSource {
 public:
  virtual ~SpectrumSource() = default;
  virtual std::unique_ptr<TermCursor> cursor() const = 0;
};

/*!
  Immutable spectrum value. Copies share the (immutable) source, so a
  Spectrum can be read concurrently from several threads.

  A spectrum is `complete` when its stream is the whole spectrum (finite
  model spectra); otherwise the stream is either infinite (model recipes) or
  a prefix (loaded files), and the envelope certifies what lies beyond.
*/
class Spectrum {
 public:
  Spectrum(int dim, std::shared_ptr<const SpectrumSource> source, std::string label,
           std::optional<Envelope> envelope, bool complete)
      : dim_(dim),
        source_(std::move(source)),
        label_(std::move(label)),
        envelope_(std::move(envelope)),
        complete_(complete) {
    if (dim_ < 0) throw InvalidInput("spectrum dimension must be >= 0");
  }

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const std::optional<Envelope>& envelope() const { return envelope_; }
  bool complete() const { return complete_; }
  /// True when truncation errors of traces can be bounded.
  bool certifiable() const { return complete_ || envelope_.has_value(); }

  std::unique_ptr<TermCursor> cursor() const { return source_->cursor(); }

  /// All terms with omega <= omega_max.
  std::vector<SpectralTerm> enumerate_to_omega(double omega_max) const {
    std::vector<SpectralTerm> out;
    auto c = cursor();
    while (auto term = c->next()) {
      if (term->omega > omega_max) break;
      out.push_back(*term);
    }
    return out;
  }

  /// All terms with lambda = omega^2 <= lambda_max.
  std::vector<SpectralTerm> enumerate_to_lambda(double lambda_max) const {
    std::vector<SpectralTerm> out;
    if (lambda_max < 0) return out;
    auto c = cursor();
    while (auto term = c->next()) {
      if (term->lambda() > lambda_max) break;
      out.push_back(*term);
    }
    return out;
  }

  /// The first `count` distinct terms (fewer if the stream ends).
  std::vector<SpectralTerm> first(std::size_t count) const {
    std::vector<SpectralTerm> out;
    auto c = cursor();
    while (out.size() < count) {
      auto term = c->next();
      if (!term) break;
      out.push_back(*term);
    }
    return out;
  }

  /// Smallest strictly positive omega, if any; sets natural scales for grids.
  std::optional<double> first_positive_omega() const {
    auto c = cursor();
    while (auto term = c->next()) {
      if (term->omega > 0) return term->omega;
    }
    return std::nullopt;
  }

 private:
  int dim_;
  std::shared_ptr<const SpectrumSource> source_;
  std::string label_;
  std::optional<Envelope> envelope_;
  bool complete_;
};

namespace detail {

/// omega_n = (n0 + k) * step with constant multiplicity per index class.
class LatticeSource final : public SpectrumSource {
 public:
  LatticeSource(double step, bool zero_mode, std::uint64_t multiplicity)
      : step_(step), zero_mode_(zero_mode), multiplicity_(multiplicity) {}

  std::unique_ptr<TermCursor> cursor() const override {
    struct Cursor final : TermCursor {
      const LatticeSource* src;
      std::uint64_t n;
      explicit Cursor(const LatticeSource* s) : src(s), n(s->zero_mode_ ? 0 : 1) {}
      std::optional<SpectralTerm> next() override {
        const std::uint64_t k = n++;
        if (k == 0) return SpectralTerm{0.0, 1};
        return SpectralTerm{static_cast<double>(k) * src->step_, src->multiplicity_};
      }
    };
    return std::make_unique<Cursor>(this);
  }

 private:
  double step_;
  bool zero_mode_;
  std::uint64_t multiplicity_;
};

class FiniteSource final : public SpectrumSource {
 public:
  explicit FiniteSource(std::vector<SpectralTerm> terms) : terms_(std::move(terms)) {}

  std::unique_ptr<TermCursor> cursor() const override {
    struct Cursor final : TermCursor {
      const std::vector<SpectralTerm>* terms;
      std::size_t i = 0;
      explicit Cursor(const std::vector<SpectralTerm>* t) : terms(t) {}
      std::optional<SpectralTerm> next() override {
        if (i >= terms->size()) return std::nullopt;
        return (*terms)[i++];
      }
    };
    return std::make_unique<Cursor>(&terms_);
  }

 private:
  std::vector<SpectralTerm> terms_;
};

/// Lazily materialized prefix of another spectrum's stream.
class TermCache {
 public:
  explicit TermCache(const Spectrum& s) : cursor_(s.cursor()) {}

  /// Ensures index i is available; false when the stream ends before it.
  bool has(std::size_t i) {
    while (terms_.size() <= i && !exhausted_) {
      auto t = cursor_->next();
      if (!t) {
        exhausted_ = true;
        break;
      }
      terms_.push_back(*t);
    }
    return i < terms_.size();
  }
  const SpectralTerm& operator[](std::size_t i) const { return terms_[i]; }

 private:
  std::unique_ptr<TermCursor> cursor_;
  std::vector<SpectralTerm> terms_;
  bool exhausted_ = false;
};

/*!
  Sorted lazy merge of lambda_a + lambda_b over all index pairs. The heap
  holds one frontier entry per active row i; popping (i, j) pushes (i, j+1),
  and (i+1, 0) when j == 0, so each pair is visited exactly once.
*/
class ProductSource final : public SpectrumSource {
 public:
  ProductSource(Spectrum a, Spectrum b) : a_(std::move(a)), b_(std::move(b)) {}

  std::unique_ptr<TermCursor> cursor() const override {
    struct Entry {
      double lambda;
      std::size_t i, j;
      bool operator>(const Entry& o) const {
        if (lambda != o.lambda) return lambda > o.lambda;
        if (i != o.i) return i > o.i;
        return j > o.j;
      }
    };
    struct Cursor final : TermCursor {
      TermCache a, b;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

      Cursor(const Spectrum& sa, const Spectrum& sb) : a(sa), b(sb) {
        if (a.has(0) && b.has(0)) heap.push(make(0, 0));
      }
      Entry make(std::size_t i, std::size_t j) const { return {a[i].lambda() + b[j].lambda(), i, j}; }

      void advance(const Entry& e) {
        if (b.has(e.j + 1)) heap.push(make(e.i, e.j + 1));
        if (e.j == 0 && a.has(e.i + 1)) heap.push(make(e.i + 1, 0));
      }

      std::optional<SpectralTerm> next() override {
        if (heap.empty()) return std::nullopt;
        Entry e = heap.top();
        heap.pop();
        advance(e);
        const double omega = std::sqrt(e.lambda);
        std::uint64_t mult = a[e.i].multiplicity * b[e.j].multiplicity;
        // Coalesce exact ties in computed omega.
        while (!heap.empty() && std::sqrt(heap.top().lambda) == omega) {
          Entry f = heap.top();
          heap.pop();
          advance(f);
          mult += a[f.i].multiplicity * b[f.j].multiplicity;
        }
        return SpectralTerm{omega, mult};
      }
    };
    return std::make_unique<Cursor>(a_, b_);
  }

 private:
  Spectrum a_, b_;
};

/// Shares one materialized stream among all cursors, so repeated sweeps enumerate once.
class CachedSource final : public SpectrumSource {
 public:
  explicit CachedSource(const Spectrum& s) : base_(s), cache_(base_) {}

  std::unique_ptr<TermCursor> cursor() const override {
    struct Cursor final : TermCursor {
      const CachedSource* src;
      std::size_t i = 0;
      explicit Cursor(const CachedSource* s) : src(s) {}
      std::optional<SpectralTerm> next() override {
        std::lock_guard lock(src->mutex_);
        if (!src->cache_.has(i)) return std::nullopt;
        return src->cache_[i++];
      }
    };
    return std::make_unique<Cursor>(this);
  }

 private:
  Spectrum base_;
  mutable std::mutex mutex_;
  mutable TermCache cache_;
};

/// Shortest round-trip decimal form.
inline std::string format_real(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

enum class BoundaryCondition { dirichlet, neumann };

/// -d^2/dx^2 on [0, length]: omega_n = n pi / length (n >= 1; Neumann adds omega = 0).
inline Spectrum interval_spectrum(double length, BoundaryCondition bc) {
  if (!(length > 0) || !std::isfinite(length)) throw InvalidInput("interval length must be positive");
  // n * (pi / L) keeps omega_n = n exact for L = pi.
  const double step = std::numbers::pi / length;
  const bool neumann = bc == BoundaryCondition::neumann;
  // floor(omega / step) <= omega / step, padded for rounding in n * step.
  auto envelope = Envelope::weyl_type(neumann ? 1.0 : 0.0, (1.0 + 1e-12) / step, 1);
  std::string label = "interval:length=" + detail::format_real(length) + ":bc=" + (neumann ? "neumann" : "dirichlet");
  return Spectrum(1, std::make_shared<detail::LatticeSource>(step, neumann, 1), std::move(label), std::move(envelope),
                  false);
}

/// Circle of the given circumference: omega = 0 once, then 2 pi n / C twice.
inline Spectrum torus_spectrum(double circumference) {
  if (!(circumference > 0) || !std::isfinite(circumference)) {
    throw InvalidInput("torus circumference must be positive");
  }
  const double step = 2 * std::numbers::pi / circumference;
  auto envelope = Envelope::weyl_type(1.0, 2 * (1.0 + 1e-12) / step, 1);
  return Spectrum(1, std::make_shared<detail::LatticeSource>(step, true, 2),
                  "torus:circumference=" + detail::format_real(circumference), std::move(envelope), false);
}

/// Coalesces equal omegas and validates ordering; used by finite and loaded spectra.
inline std::vector<SpectralTerm> normalized_terms(std::vector<SpectralTerm> terms) {
  std::vector<SpectralTerm> out;
  for (const auto& t : terms) {
    if (!(t.omega >= 0) || !std::isfinite(t.omega)) throw InvalidInput("omega must be finite and >= 0");
    if (t.multiplicity < 1) throw InvalidInput("multiplicity must be >= 1");
    if (!out.empty() && t.omega < out.back().omega) throw InvalidInput("omegas must be non-decreasing");
    if (!out.empty() && t.omega == out.back().omega) {
      out.back().multiplicity += t.multiplicity;
    } else {
      out.push_back(t);
    }
  }
  return out;
}

/*!
  Spectrum from an explicit term list. With `complete` the list is the
  whole spectrum and its envelope is the total multiplicity.
*/
inline Spectrum finite_spectrum(int dim, std::vector<SpectralTerm> terms, std::string label = "finite",
                                std::optional<Envelope> envelope = std::nullopt, bool complete = true) {
  terms = normalized_terms(std::move(terms));
  if (complete && !envelope) {
    double total = 0;
    for (const auto& t : terms) total += static_cast<double>(t.multiplicity);
    envelope = Envelope({total});
  }
  return Spectrum(dim, std::make_shared<detail::FiniteSource>(std::move(terms)), std::move(label), std::move(envelope),
                  complete);
}

/// Spectrum of the direct product: dims add, lambdas add, multiplicities multiply.
inline Spectrum product_spectrum(const Spectrum& a, const Spectrum& b) {
  std::optional<Envelope> envelope;
  if (a.envelope() && b.envelope()) envelope = *a.envelope() * *b.envelope();
  return Spectrum(a.dim() + b.dim(), std::make_shared<detail::ProductSource>(a, b),
                  "product:(" + a.label() + ")x(" + b.label() + ")", std::move(envelope),
                  a.complete() && b.complete());
}

/// Same spectrum, with the stream materialized once and shared by every cursor.
inline Spectrum cached_spectrum(const Spectrum& s) {
  return Spectrum(s.dim(), std::make_shared<detail::CachedSource>(s), s.label(), s.envelope(), s.complete());
}

/*!
  Spectrum file grammar (UTF-8 text, '#' starts a comment):

      dim <d>                  first non-comment line
      envelope <C1> <C2>       optional: N(omega^2) <= C1 + C2 omega^d
      complete                 optional: the listed terms are the whole spectrum
      <omega> <multiplicity>   one per line, omega ascending

  Errors name the offending line.
*/
inline Spectrum parse_spectrum(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_no = 0;
  std::optional<int> dim;
  std::optional<Envelope> envelope;
  bool complete = false;
  std::vector<SpectralTerm> terms;
  auto fail = [&](const std::string& msg) {
    throw InvalidInput(source_name + ": " + msg + " at line " + std::to_string(line_no));
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;
    std::string extra;
    if (!dim) {
      if (head != "dim") fail("missing 'dim <d>' header");
      int d = -1;
      if (!(fields >> d) || d < 0 || (fields >> extra)) fail("malformed dim header");
      dim = d;
      continue;
    }
    if (head == "envelope") {
      double c1 = 0, c2 = 0;
      if (!terms.empty()) fail("envelope must precede the eigenvalue lines");
      if (!(fields >> c1 >> c2) || (fields >> extra)) fail("malformed envelope line");
      try {
        envelope = Envelope::weyl_type(c1, c2, *dim);
      } catch (const InvalidInput& e) {
        fail(e.what());
      }
      continue;
    }
    if (head == "complete") {
      if (!terms.empty()) fail("'complete' must precede the eigenvalue lines");
      complete = true;
      continue;
    }
    double omega = 0;
    long long mult = 0;
    {
      std::istringstream num(head);
      if (!(num >> omega) || !num.eof()) fail("cannot parse omega '" + head + "'");
    }
    if (!(fields >> mult) || (fields >> extra)) fail("expected '<omega> <multiplicity>'");
    if (!(omega >= 0) || !std::isfinite(omega)) fail("omega must be finite and >= 0");
    if (mult < 1) fail("multiplicity must be >= 1");
    if (!terms.empty() && omega < terms.back().omega) fail("non-monotone");
    if (!terms.empty() && omega == terms.back().omega) {
      terms.back().multiplicity += static_cast<std::uint64_t>(mult);
    } else {
      terms.push_back({omega, static_cast<std::uint64_t>(mult)});
    }
  }
  if (!dim) throw InvalidInput(source_name + ": missing 'dim <d>' header");
  return finite_spectrum(*dim, std::move(terms), "file:" + source_name, std::move(envelope), complete);
}

inline Spectrum load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open spectrum file '" + path + "'");
  return parse_spectrum(in, path);
}

/// N(x) = sum of multiplicities with lambda_n <= x (right-continuous staircase).
class CountingFunction {
 public:
  explicit CountingFunction(Spectrum s) : spectrum_(std::move(s)) {}

  std::uint64_t operator()(double x) const {
    if (x < 0) return 0;
    std::uint64_t n = 0;
    auto c = spectrum_.cursor();
    while (auto t = c->next()) {
      if (t->lambda() > x) break;
      n += t->multiplicity;
    }
    return n;
  }

  /// N evaluated at lambda = omega^2, comparing in omega directly.
  std::uint64_t at_omega(double omega) const {
    if (omega < 0) return 0;
    std::uint64_t n = 0;
    auto c = spectrum_.cursor();
    while (auto t = c->next()) {
      if (t->omega > omega) break;
      n += t->multiplicity;
    }
    return n;
  }

  const Spectrum& spectrum() const { return spectrum_; }

 private:
  Spectrum spectrum_;
};

inline std::uint64_t counting(const CountingFunction& n, double x) { return n(x); }

}  // namespace specasym
