#include <gtest/gtest.h>

#include <set>

#include "chevflag/coefficient_field.hpp"
#include "chevflag/finite_field.hpp"

using namespace chevflag;
using Elem = FiniteField::Elem;

namespace {

// Naive polynomial arithmetic mod (p, f), independent of the table code.
std::vector<unsigned> naive_mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                const std::vector<unsigned>& f, unsigned p) {
  const std::size_t k = f.size() - 1;
  std::vector<long> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] += static_cast<long>(a[i]) * b[j];
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    long c = prod[d] % p;
    prod[d] = 0;
    for (std::size_t i = 0; i < k; ++i) prod[d - k + i] -= c * f[i];
    if (d == k) break;
  }
  std::vector<unsigned> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<unsigned>(((prod[i] % p) + p) % p);
  return out;
}

}  // namespace

class FieldOrders : public ::testing::TestWithParam<unsigned> {};

TEST_P(FieldOrders, AxiomsHoldExhaustively) {
  auto F = FiniteField::of_order(GetParam());
  const unsigned q = F.q();
  for (unsigned a = 0; a < q; ++a) {
    EXPECT_EQ(F.add(a, F.neg(a)), 0);
    EXPECT_EQ(F.mul(a, 1), a);
    if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1);
    for (unsigned b = 0; b < q; ++b) {
      EXPECT_EQ(F.add(a, b), F.add(b, a));
      EXPECT_EQ(F.mul(a, b), F.mul(b, a));
      for (unsigned c = 0; c < q; c += 3) {
        EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
        EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
      }
    }
  }
}

TEST_P(FieldOrders, MultiplicationMatchesNaivePolynomialArithmetic) {
  auto F = FiniteField::of_order(GetParam());
  for (unsigned a = 0; a < F.q(); ++a)
    for (unsigned b = 0; b < F.q(); ++b)
      if (F.k() == 1)
        EXPECT_EQ(F.mul(a, b), a * b % F.p());
      else
        EXPECT_EQ(F.coordinates(F.mul(a, b)), naive_mul(F.coordinates(a), F.coordinates(b), F.modulus(), F.p()));
}

TEST_P(FieldOrders, PrimitiveElementGeneratesUnits) {
  auto F = FiniteField::of_order(GetParam());
  std::set<unsigned> seen;
  Elem x = 1;
  for (unsigned i = 0; i + 1 < F.q(); ++i, x = F.mul(x, F.primitive())) seen.insert(x);
  EXPECT_EQ(seen.size(), F.q() - 1);
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldOrders, ::testing::Values(2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u));

TEST(FiniteField, ConwayModuliAreUsed) {
  EXPECT_TRUE(FiniteField(2, 4).conway_modulus());
  EXPECT_EQ(FiniteField(2, 2).modulus(), (std::vector<unsigned>{1, 1, 1}));
  EXPECT_EQ(FiniteField(3, 2).modulus(), (std::vector<unsigned>{2, 2, 1}));
}

TEST(FiniteField, SubfieldExistsExactlyForDivisors) {
  FiniteField F(2, 4);
  EXPECT_EQ(F.subfield(1).size(), 2u);
  EXPECT_EQ(F.subfield(2).size(), 4u);
  EXPECT_EQ(F.subfield(4).size(), 16u);
  EXPECT_THROW(F.subfield(3), DomainError);
  auto sub = F.subfield(2);
  std::set<Elem> s(sub.begin(), sub.end());
  for (Elem a : sub)
    for (Elem b : sub) {
      EXPECT_TRUE(s.count(F.add(a, b)));
      EXPECT_TRUE(s.count(F.mul(a, b)));
    }
}

TEST(FiniteField, AdditiveSpan) {
  FiniteField F(3, 2);
  EXPECT_EQ(F.additive_span({}).size(), 1u);
  EXPECT_EQ(F.additive_span({1}).size(), 3u);
  EXPECT_EQ(F.additive_span(F.additive_basis()).size(), 9u);
}

TEST(FiniteField, RejectsBadOrders) {
  EXPECT_THROW(FiniteField::of_order(6), ConfigError);
  EXPECT_THROW(FiniteField::of_order(1), ConfigError);
  EXPECT_THROW(FiniteField(2, 9), ConfigError);
  EXPECT_THROW(FiniteField(4, 1), ConfigError);
  EXPECT_THROW(FiniteField(3).inv(0), DomainError);
}

TEST(CoefficientFields, PrimeAndRational) {
  PrimeField f(5);
  EXPECT_EQ(f.mul(f.inv(3), 3), 1u);
  EXPECT_EQ(f.from_int(-1), 4u);
  EXPECT_THROW(PrimeField(6), ConfigError);
  RationalField Q;
  auto h = Q.inv(Q.from_int(2));
  EXPECT_EQ(Q.add(h, h), Q.one());
  EXPECT_EQ(Q.characteristic(), 0u);
}
