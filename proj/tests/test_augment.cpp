#include <gtest/gtest.h>

#include <random>

#include "chevflag/augment.hpp"

using namespace chevflag;

namespace {

Vec<PrimeField> random_nonzero(const EJModule<PrimeField>& E, std::mt19937_64& rng) {
  const auto l = E.field().order();
  while (true) {
    auto v = E.zero();
    // sparse vectors reach deeper cells more often than dense ones
    const std::size_t terms = 1 + rng() % 3;
    for (std::size_t t = 0; t < terms; ++t) v[rng() % v.size()] = static_cast<std::uint32_t>(rng() % l);
    if (!is_zero_vec(E.field(), v)) return v;
  }
}

}  // namespace

class AugmentA2 : public ::testing::Test {
 protected:
  Chevalley G{RootSystem::parse("A2"), FiniteField::of_order(2)};
};

TEST_F(AugmentA2, ProjectionsArePairwiseOrthogonalIdempotentsSummingToIdentity) {
  std::mt19937_64 rng(4);
  EJModule<PrimeField> E(G, 0b01, PrimeField(5));
  for (int t = 0; t < 20; ++t) {
    auto xi = random_nonzero(E, rng);
    auto sum = E.zero();
    for (auto w : E.basis().cells()) {
      auto p = project(E, w, xi);
      EXPECT_EQ(project(E, w, p), p);
      for (auto v : E.basis().cells())
        if (v != w) EXPECT_TRUE(is_zero_vec(E.field(), project(E, v, p)));
      axpy(E.field(), sum, 1u, p);
    }
    EXPECT_EQ(sum, xi);
  }
  EXPECT_THROW(project(E, G.weyl().from_word({0}), E.generator()), DomainError);
}

TEST_F(AugmentA2, AugmentationOfGeneratorAndGroupSums) {
  for (Subset J : all_subsets(2)) {
    EJModule<PrimeField> E(G, J, PrimeField(5));
    auto p = augmentation(E, E.generator());
    EXPECT_EQ(p[0], 1u);
    for (std::size_t c = 1; c < p.size(); ++c) EXPECT_EQ(p[c], 0u);
    // the full cell group sum at each w has augmentation |U_{w_J w^{-1}}| mod 5
    for (std::size_t c = 0; c < E.basis().num_cells(); ++c) {
      auto v = E.zero();
      const auto n = E.basis().cell_size(c);
      for (std::size_t k = 0; k < n; ++k) v[E.basis().cell_offset(c) + k] = 1;
      EXPECT_EQ(augmentation(E, v)[c], n % 5);
    }
  }
}

TEST_F(AugmentA2, AugmentationInvariantUnderCellTranslation) {
  std::mt19937_64 rng(9);
  EJModule<PrimeField> E(G, 0, PrimeField(5));
  for (int t = 0; t < 30; ++t) {
    auto xi = random_nonzero(E, rng);
    Unipotent u = G.identity();
    for (auto& c : u) c = static_cast<Elem>(rng() % 2);
    EXPECT_EQ(augmentation(E, E.act_unipotent(u, xi)), augmentation(E, xi));
  }
}

TEST_F(AugmentA2, HeartConditionExamples) {
  EJModule<PrimeField> E(G, 0b11, PrimeField(5));
  const auto& W = G.weyl();
  for (WeylGroup::Index h = 0; h < W.size(); ++h) EXPECT_TRUE(heart_condition(E, E.generator(), h));
  // two cancelling terms x C_J - y C_J in the e-cell, both in U'_e = U
  auto v = E.basis_vector(0, G.root_element(0, 1));
  axpy(E.field(), v, 4u, E.basis_vector(0, G.root_element(1, 1)));
  EXPECT_FALSE(heart_condition(E, v, 0));
  // for h = w_J only x = 1 counts, so heart_{w_J} reads a_{e,1}
  auto w0 = E.parabolic().w_J;
  EXPECT_FALSE(heart_condition(E, v, w0));
  axpy(E.field(), v, 2u, E.generator());
  EXPECT_TRUE(heart_condition(E, v, w0));
  EJModule<PrimeField> E1(G, 0b01, PrimeField(5));
  EXPECT_THROW(heart_condition(E1, E1.generator(), G.weyl().from_word({1})), DomainError);
}

TEST(Augment, GeneratorNeedsNoMove) {
  Chevalley G(RootSystem::parse("A2"), FiniteField::of_order(2));
  EJModule<PrimeField> E(G, 0b10, PrimeField(5));
  NonvanishingSearch<PrimeField> S(E);
  auto r = S.run(E.generator());
  EXPECT_TRUE(r.success);
  EXPECT_TRUE(r.g.empty());
}

TEST(Augment, RankOneDifferenceFindsWordConfirmedByExhaustiveShortWords) {
  Chevalley G(RootSystem::parse("A1"), FiniteField::of_order(3));
  EJModule<PrimeField> E(G, 1, PrimeField(5));
  auto xi = E.basis_vector(0, G.root_element(0, 1));
  axpy(E.field(), xi, 4u, E.generator());
  EXPECT_FALSE(profile_nonzero(E.field(), augmentation(E, xi)));
  // independent oracle: some word of length <= 2 in the generators works
  auto gens = G.generators();
  bool exists = false;
  for (const auto& a : gens) {
    if (profile_nonzero(E.field(), augmentation(E, E.act(a, xi)))) exists = true;
    for (const auto& b : gens)
      if (profile_nonzero(E.field(), augmentation(E, E.act(GroupWord{a, b}, xi)))) exists = true;
  }
  EXPECT_TRUE(exists);
  NonvanishingSearch<PrimeField> S(E, 10000, 3);
  auto r = S.run(xi);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(augmentation(E, E.act(r.g, xi)), r.profile);
}

TEST(Augment, SeededBatchA2AllJ) {
  Chevalley G(RootSystem::parse("A2"), FiniteField::of_order(2));
  for (Subset J : all_subsets(2)) {
    EJModule<PrimeField> E(G, J, PrimeField(5));
    std::mt19937_64 rng(1000 + J);
    NonvanishingSearch<PrimeField> S(E, 10000, 17 + J);
    for (int t = 0; t < 25; ++t) {
      auto xi = random_nonzero(E, rng);
      auto r = S.run(xi);
      ASSERT_TRUE(r.success) << "J=" << J << " trial " << t;
      EXPECT_LE(r.moves, 10000u);
      EXPECT_EQ(augmentation(E, E.act(r.g, xi)), r.profile);
    }
  }
}

TEST(Augment, SearchIsDeterministicForSeed) {
  Chevalley G(RootSystem::parse("A2"), FiniteField::of_order(3));
  EJModule<PrimeField> E(G, 0, PrimeField(5));
  std::mt19937_64 rng(2);
  auto xi = random_nonzero(E, rng);
  NonvanishingSearch<PrimeField> A(E, 10000, 5), B(E, 10000, 5);
  auto ra = A.run(xi), rb = B.run(xi);
  EXPECT_EQ(ra.moves, rb.moves);
  EXPECT_EQ(ra.trace, rb.trace);
  EXPECT_EQ(ra.profile, rb.profile);
}

TEST(Augment, ZeroInputRejected) {
  Chevalley G(RootSystem::parse("A1"), FiniteField::of_order(2));
  EJModule<PrimeField> E(G, 0, PrimeField(5));
  NonvanishingSearch<PrimeField> S(E);
  EXPECT_THROW(S.run(E.zero()), PreconditionError);
}
