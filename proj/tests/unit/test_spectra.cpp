#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "specasym/spectra.hpp"
#include "specasym/spectrum_spec.hpp"

using namespace specasym;

namespace {

const double kPi = std::numbers::pi;

std::vector<double> omegas(const Spectrum& s, std::size_t n) {
  std::vector<double> out;
  for (const auto& t : s.first(n)) out.push_back(t.omega);
  return out;
}

// Expands multiplicities into a flat sorted list of lambdas.
std::vector<double> lambda_multiset(const Spectrum& s, double lambda_max) {
  std::vector<double> out;
  for (const auto& t : s.enumerate_to_lambda(lambda_max)) out.insert(out.end(), t.multiplicity, t.lambda());
  return out;
}

Spectrum parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_spectrum(in, "test");
}

}  // namespace

TEST(Interval, DirichletPi) {
  const auto s = interval_spectrum(kPi, BoundaryCondition::dirichlet);
  EXPECT_EQ(omegas(s, 4), (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(s.dim(), 1);
  for (const auto& t : s.first(100)) EXPECT_EQ(t.multiplicity, 1u);
}

TEST(Interval, NeumannAddsZeroMode) {
  const auto s = interval_spectrum(kPi, BoundaryCondition::neumann);
  EXPECT_EQ(omegas(s, 4), (std::vector<double>{0, 1, 2, 3}));
}

TEST(Interval, UnitLength) {
  const auto w = omegas(interval_spectrum(1, BoundaryCondition::dirichlet), 3);
  EXPECT_DOUBLE_EQ(w[0], kPi);
  EXPECT_DOUBLE_EQ(w[1], 2 * kPi);
  EXPECT_DOUBLE_EQ(w[2], 3 * kPi);
}

TEST(Interval, RejectsBadLength) {
  EXPECT_THROW(interval_spectrum(0, BoundaryCondition::dirichlet), InvalidInput);
  EXPECT_THROW(interval_spectrum(-1, BoundaryCondition::neumann), InvalidInput);
}

TEST(Torus, TwoPi) {
  const auto terms = torus_spectrum(2 * kPi).first(3);
  EXPECT_EQ(terms[0].omega, 0);
  EXPECT_EQ(terms[0].multiplicity, 1u);
  EXPECT_DOUBLE_EQ(terms[1].omega, 1);
  EXPECT_EQ(terms[1].multiplicity, 2u);
  EXPECT_DOUBLE_EQ(terms[2].omega, 2);
  EXPECT_EQ(terms[2].multiplicity, 2u);
  EXPECT_EQ(counting(CountingFunction(torus_spectrum(2 * kPi)), 4.5), 5u);
}

TEST(Torus, UnitCircumference) {
  const auto w = omegas(torus_spectrum(1), 3);
  EXPECT_DOUBLE_EQ(w[1], 2 * kPi);
  EXPECT_DOUBLE_EQ(w[2], 4 * kPi);
  EXPECT_THROW(torus_spectrum(0), InvalidInput);
}

TEST(Product, IntervalSquareMatchesDoubleLoop) {
  const auto a = interval_spectrum(kPi, BoundaryCondition::dirichlet);
  const auto p = product_spectrum(a, a);
  EXPECT_EQ(p.dim(), 2);
  const double cutoff = 400;
  std::vector<double> oracle;
  for (int m = 1; m * m <= cutoff; ++m) {
    for (int n = 1; m * m + n * n <= cutoff; ++n) oracle.push_back(m * m + n * n);
  }
  std::sort(oracle.begin(), oracle.end());
  const auto got = lambda_multiset(p, cutoff);
  ASSERT_EQ(got.size(), oracle.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], oracle[i], 1e-9) << i;
  const std::vector<double> head{2, 5, 5, 8};
  for (std::size_t i = 0; i < head.size(); ++i) EXPECT_NEAR(got[i], head[i], 1e-12);
}

TEST(Product, TorusCount) {
  const auto t = torus_spectrum(2 * kPi);
  EXPECT_EQ(counting(CountingFunction(product_spectrum(t, t)), 1.5), 5u);
}

TEST(Product, ZeroModeFactorIsIdentityOnEigenvalues) {
  const auto a = interval_spectrum(1.7, BoundaryCondition::neumann);
  const auto p = product_spectrum(a, finite_spectrum(0, {{0.0, 1}}));
  EXPECT_EQ(p.dim(), 1);
  const auto x = a.first(50), y = p.first(50);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_DOUBLE_EQ(x[i].omega, y[i].omega);
    EXPECT_EQ(x[i].multiplicity, y[i].multiplicity);
  }
}

TEST(Product, Commutes) {
  const auto a = interval_spectrum(1.3, BoundaryCondition::dirichlet);
  const auto b = torus_spectrum(2.9);
  EXPECT_EQ(lambda_multiset(product_spectrum(a, b), 900), lambda_multiset(product_spectrum(b, a), 900));
}

TEST(Product, CoalescesExactTies) {
  const auto a = interval_spectrum(kPi, BoundaryCondition::dirichlet);
  const auto terms = product_spectrum(a, a).first(3);
  EXPECT_DOUBLE_EQ(terms[1].lambda(), 5);
  EXPECT_EQ(terms[1].multiplicity, 2u);
}

TEST(Product, EnvelopeBoundsCount) {
  const auto a = interval_spectrum(kPi, BoundaryCondition::neumann);
  const auto p = product_spectrum(a, torus_spectrum(3.0));
  const CountingFunction n(p);
  for (double w : {0.5, 1.0, 3.3, 10.0, 31.7}) EXPECT_LE(static_cast<double>(n.at_omega(w)), (*p.envelope())(w)) << w;
}

TEST(Counting, IntervalExamples) {
  const CountingFunction n(interval_spectrum(kPi, BoundaryCondition::dirichlet));
  EXPECT_EQ(n(10), 3u);
  EXPECT_EQ(n(9), 3u);
  EXPECT_EQ(n(0.5), 0u);
  EXPECT_EQ(n(-3), 0u);
  EXPECT_EQ(counting(CountingFunction(torus_spectrum(2 * kPi)), 4), 5u);
}

TEST(Counting, StepsEqualMultiplicities) {
  const auto s = product_spectrum(torus_spectrum(2 * kPi), torus_spectrum(2 * kPi));
  const CountingFunction n(s);
  std::uint64_t prev = 0;
  for (double x = 0; x <= 60; x += 0.25) {
    const auto v = n(x);
    EXPECT_GE(v, prev);
    prev = v;
  }
  for (const auto& t : s.enumerate_to_lambda(50)) {
    EXPECT_EQ(n(t.lambda()) - n(t.lambda() - 1e-9), t.multiplicity) << t.lambda();
  }
}

TEST(Counting, WeylLawForInterval) {
  const CountingFunction n(interval_spectrum(kPi, BoundaryCondition::dirichlet));
  for (double w = 10; w <= 2000; w *= 1.37) {
    const double ratio = static_cast<double>(n.at_omega(w)) / w;
    EXPECT_GE(ratio, 1 - 2 / w);
    EXPECT_LE(ratio, 1.0);
  }
}

TEST(SpectrumFile, RoundTripPrefix) {
  const auto s = parse_text("dim 1\n1 1\n2 1\n3 1\n");
  EXPECT_EQ(omegas(s, 10), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(s.dim(), 1);
  EXPECT_FALSE(s.certifiable());
}

TEST(SpectrumFile, NonMonotoneNamesLine) {
  try {
    parse_text("dim 1\n2 1\n1 1\n");
    FAIL() << "expected a parse error";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("non-monotone at line 3"), std::string::npos) << e.what();
  }
}

TEST(SpectrumFile, EmptyBody) {
  const auto s = parse_text("# nothing\ndim 2\n");
  EXPECT_TRUE(s.first(5).empty());
  EXPECT_EQ(counting(CountingFunction(s), 1e9), 0u);
}

TEST(SpectrumFile, Errors) {
  EXPECT_THROW(parse_text("1 1\n"), InvalidInput);
  EXPECT_THROW(parse_text(""), InvalidInput);
  EXPECT_THROW(parse_text("dim 1\n1 0\n"), InvalidInput);
  EXPECT_THROW(parse_text("dim 1\nabc 1\n"), InvalidInput);
  EXPECT_THROW(parse_text("dim 1\n1 1 7\n"), InvalidInput);
  EXPECT_THROW(parse_text("dim 1\n1 1\nenvelope 1 1\n"), InvalidInput);
}

TEST(SpectrumFile, EnvelopeAndComplete) {
  const auto s = parse_text("dim 1\nenvelope 0 1.5\n1e0 1\n2.0 2 # comment\n");
  ASSERT_TRUE(s.envelope());
  EXPECT_FALSE(s.complete());
  EXPECT_TRUE(s.certifiable());
  EXPECT_EQ(s.first(5)[1].multiplicity, 2u);
  EXPECT_TRUE(parse_text("dim 0\ncomplete\n0 3\n").complete());
}

TEST(SpectrumSpec, Recipes) {
  EXPECT_EQ(omegas(parse_spectrum_spec("interval:length=3.141592653589793:bc=neumann"), 2), (std::vector<double>{0, 1}));
  EXPECT_EQ(omegas(parse_spectrum_spec("interval:length=3.141592653589793"), 1), (std::vector<double>{1}));
  EXPECT_EQ(parse_spectrum_spec("torus:circumference=6.283185307179586").first(2)[1].multiplicity, 2u);
  const auto p = parse_spectrum_spec(
      "product:(interval:length=3.141592653589793:bc=dirichlet)x(product:(torus:circumference=1)x(torus:circumference=2))");
  EXPECT_EQ(p.dim(), 3);
  EXPECT_DOUBLE_EQ(p.first(1)[0].lambda(), 1);
}

TEST(SpectrumSpec, Errors) {
  EXPECT_THROW(parse_spectrum_spec("interval:bc=dirichlet"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("interval:length=-1"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("interval:length=1:bc=robin"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("interval:length=1:colour=red"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("torus:circumference=abc"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("sphere:radius=1"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("product:(torus:circumference=1)"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("product:(torus:circumference=1x(torus:circumference=1)"), InvalidInput);
  EXPECT_THROW(parse_spectrum_spec("file:/nonexistent/spectrum.txt"), InvalidInput);
}

TEST(CachedSpectrum, SameStreamAsSource) {
  const auto a = interval_spectrum(kPi, BoundaryCondition::dirichlet);
  const auto p = product_spectrum(a, torus_spectrum(5.0));
  const auto c = cached_spectrum(p);
  EXPECT_EQ(lambda_multiset(c, 300), lambda_multiset(p, 300));
  EXPECT_EQ(lambda_multiset(c, 300), lambda_multiset(c, 300));
}
