#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace pisg;

namespace {

using Poly = std::vector<Rational>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void add_to(Poly& a, const Poly& b, int sign) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
}

// det of a matrix with polynomial entries by expansion along the first row.
Poly cofactor_det(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly out{Rational(0)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    add_to(out, mul(m[0][j], cofactor_det(minor)), j % 2 == 0 ? 1 : -1);
  }
  return out;
}

Poly det_q_minus_z(const RationalMatrix& q) {
  const std::size_t n = q.size();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = i == j ? Poly{q(i, j), Rational(-1)} : Poly{q(i, j)};
  Poly p = cofactor_det(m);
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// Closed communicating classes, from boolean reachability.
int recurrent_classes(const RationalMatrix& q) {
  const std::size_t n = q.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    reach[i][i] = true;
    for (std::size_t j = 0; j < n; ++j)
      if (q(i, j) > 0) reach[i][j] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<bool> seen(n, false);
  int classes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool closed = true;
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j] && !reach[j][i]) closed = false;
    if (!closed || seen[i]) continue;
    ++classes;
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j]) seen[j] = true;
  }
  return classes;
}

RationalMatrix q_f1() {
  return build_chain(reduce(pisg::testing::example1()), pisg::testing::labels({1, 1, 1, 1, 1})).q;
}

void expect_cesaro_properties(const RationalMatrix& q) {
  const RationalMatrix s = cesaro_limit(q);
  EXPECT_EQ(s * q, s);
  EXPECT_EQ(q * s, s);
  EXPECT_EQ(s * s, s);
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_EQ(s.row_sum(i), 1);
    for (std::size_t j = 0; j < q.size(); ++j) {
      EXPECT_GE(s(i, j), 0);
      EXPECT_LE(s(i, j), 1);
    }
  }
}

double max_gap(const RationalMatrix& s, const std::vector<std::vector<double>>& avg) {
  double gap = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) gap = std::max(gap, std::abs(to_double(s(i, j)) - avg[i][j]));
  return gap;
}

}  // namespace

TEST(CharPoly, Identity) {
  const auto p = char_poly(RationalMatrix::identity(2));
  EXPECT_EQ(p.coeffs, (std::vector<Rational>{1, -2, 1}));
}

TEST(CharPoly, Swap) {
  const RationalMatrix q{{0, 1}, {1, 0}};
  EXPECT_EQ(char_poly(q).coeffs, (std::vector<Rational>{-1, 0, 1}));
}

TEST(CharPoly, ExampleChainMatchesCofactorExpansion) {
  const auto q = q_f1();
  const auto p = char_poly(q);
  EXPECT_EQ(p.degree(), 5);
  EXPECT_EQ(p.coeffs, det_q_minus_z(q));
}

TEST(CharPoly, RandomMatricesMatchCofactorExpansion) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = pisg::testing::uniform(rng, 1, 6);
    RationalMatrix m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
            Rational(pisg::testing::uniform(rng, -6, 6), pisg::testing::uniform(rng, 1, 5));
    EXPECT_EQ(char_poly(m).coeffs, det_q_minus_z(m));
  }
}

TEST(UnitMultiplicity, Examples) {
  EXPECT_EQ(unit_multiplicity(RationalPolynomial({1, -2, 1})), 2);
  EXPECT_EQ(unit_multiplicity(RationalPolynomial({-1, 0, 1})), 1);
  EXPECT_EQ(unit_multiplicity(RationalPolynomial({3})), 0);
  EXPECT_THROW(unit_multiplicity(RationalPolynomial(std::vector<Rational>{})), std::invalid_argument);
  const auto q = q_f1();
  EXPECT_EQ(recurrent_classes(q), 2);
  EXPECT_EQ(unit_multiplicity(char_poly(q)), 2);
}

TEST(UnitMultiplicity, EqualsRecurrentClassCount) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto q = pisg::testing::random_stochastic(rng, pisg::testing::uniform(rng, 1, 8));
    EXPECT_EQ(unit_multiplicity(char_poly(q)), recurrent_classes(q));
  }
}

TEST(StripUnitRoot, Quotient) {
  const RationalPolynomial p({-1, 0, 1});
  EXPECT_EQ(strip_unit_root(p).coeffs, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(strip_unit_root(RationalPolynomial({1, -2, 1})).coeffs, (std::vector<Rational>{1}));
}

TEST(Cesaro, Identity) {
  EXPECT_EQ(cesaro_limit(RationalMatrix::identity(3)), RationalMatrix::identity(3));
}

TEST(Cesaro, Swap) {
  const RationalMatrix q{{0, 1}, {1, 0}};
  const RationalMatrix half{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
  EXPECT_EQ(cesaro_limit(q), half);
}

TEST(Cesaro, ExampleChainF1) {
  const RationalMatrix expected{{1, 0, 0, 0, 0},
                                {0, 1, 0, 0, 0},
                                {Rational(1, 3), Rational(2, 3), 0, 0, 0},
                                {1, 0, 0, 0, 0},
                                {Rational(1, 3), Rational(2, 3), 0, 0, 0}};
  EXPECT_EQ(cesaro_limit(q_f1()), expected);
}

TEST(Cesaro, NonStochasticInputIsRejected) {
  const RationalMatrix q{{1, 0}, {0, 0}};
  EXPECT_THROW(cesaro_limit(q), DegenerateRowSum);
}

TEST(Cesaro, DimensionCap) {
  EXPECT_THROW(RationalMatrix(kMaxMatrixDim + 1), DimensionLimit);
}

TEST(Cesaro, RandomChainProperties) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial)
    expect_cesaro_properties(pisg::testing::random_stochastic(rng, pisg::testing::uniform(rng, 1, 8)));
  for (int trial = 0; trial < 20; ++trial)
    expect_cesaro_properties(pisg::testing::random_multichain(rng, pisg::testing::uniform(rng, 1, 8)));
}

TEST(Cesaro, PeriodicChainProperties) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = pisg::testing::uniform(rng, 2, 8);
    expect_cesaro_properties(pisg::testing::random_periodic(rng, n, pisg::testing::uniform(rng, 2, n)));
  }
}

TEST(Cesaro, AgreesWithAveragedPowers) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const auto q = trial % 3 == 0   ? pisg::testing::random_dense(rng, 5)
                   : trial % 3 == 1 ? pisg::testing::random_multichain(rng, 5)
                                    : pisg::testing::random_periodic(rng, 5, 2 + trial % 3);
    EXPECT_LT(max_gap(cesaro_limit(q), pisg::testing::averaged_powers(q, 10000)), 1e-3);
  }
}
