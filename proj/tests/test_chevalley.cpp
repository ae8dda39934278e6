#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "chevflag/chevalley.hpp"
#include "chevflag/matrix_model.hpp"

using namespace chevflag;

namespace {

Unipotent random_unipotent(const Chevalley& G, std::mt19937_64& rng) {
  Unipotent u = G.identity();
  for (auto& c : u) c = static_cast<Elem>(rng() % G.field().q());
  return u;
}

struct Setting {
  const char* type;
  unsigned q;
};

}  // namespace

TEST(LieAlgebra, JacobiIdentityHolds) {
  for (auto label : {"A2", "A3", "D4"}) {
    auto rs = RootSystem::parse(label);
    LieAlgebra L(rs);
    const std::size_t d = L.dim();
    auto br = [&](const std::vector<long long>& x, const std::vector<long long>& y) {
      std::vector<long long> out(d, 0);
      for (std::size_t i = 0; i < d; ++i)
        if (x[i])
          for (std::size_t j = 0; j < d; ++j)
            if (y[j]) {
              auto b = L.bracket(i, j);
              for (std::size_t k = 0; k < d; ++k) out[k] += x[i] * y[j] * b[k];
            }
      return out;
    };
    auto unit = [&](std::size_t i) {
      std::vector<long long> v(d, 0);
      v[i] = 1;
      return v;
    };
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; c += (d > 30 ? 3 : 1)) {
          auto t1 = br(unit(a), L.bracket(b, c));
          auto t2 = br(unit(b), L.bracket(c, a));
          auto t3 = br(unit(c), L.bracket(a, b));
          for (std::size_t k = 0; k < d; ++k) ASSERT_EQ(t1[k] + t2[k] + t3[k], 0) << label;
        }
  }
}

TEST(Chevalley, CollectionMatchesMatrixProducts) {
  std::mt19937_64 rng(7);
  for (Setting s : {Setting{"A2", 2}, Setting{"A2", 3}, Setting{"A2", 4}, Setting{"A3", 2}, Setting{"A3", 3},
                    Setting{"A3", 4}}) {
    Chevalley G(RootSystem::parse(s.type), FiniteField::of_order(s.q));
    MatrixModel M(G);
    for (int t = 0; t < 1000; ++t) {
      auto u = random_unipotent(G, rng), v = random_unipotent(G, rng);
      ASSERT_EQ(M.unipotent_matrix(G.mul(u, v)), M.mul(M.unipotent_matrix(u), M.unipotent_matrix(v)));
      if (t % 10 == 0) {
        EXPECT_EQ(M.unipotent_matrix(G.inverse(u)), M.to_matrix(G.inverse_word(G.unipotent_word(u))));
        EXPECT_EQ(M.from_matrix(M.unipotent_matrix(u)), u);
      }
    }
  }
}

TEST(Chevalley, A2CommutatorSign) {
  Chevalley G(RootSystem::build('A', 2), FiniteField::of_order(5));
  MatrixModel M(G);
  for (Elem a = 1; a < 5; ++a)
    for (Elem b = 1; b < 5; ++b) {
      auto x = G.root_element(0, a), y = G.root_element(1, b);
      auto c = G.mul(G.mul(G.mul(x, y), G.inverse(x)), G.inverse(y));
      EXPECT_EQ(c, G.root_element(2, G.field().mul(a, b)));
      auto m = M.mul(M.mul(M.mul(M.unipotent_matrix(x), M.unipotent_matrix(y)), M.unipotent_matrix(G.inverse(x))),
                     M.unipotent_matrix(G.inverse(y)));
      EXPECT_EQ(M.from_matrix(m), c);
    }
}

TEST(Chevalley, OneParameterSubgroupsAndIdentity) {
  Chevalley G(RootSystem::build('D', 4), FiniteField::of_order(3));
  std::mt19937_64 rng(3);
  auto v = random_unipotent(G, rng);
  EXPECT_EQ(G.mul(G.identity(), v), v);
  EXPECT_EQ(G.mul(G.root_element(0, 1), G.root_element(0, 1)), G.root_element(0, 2));
  EXPECT_TRUE(G.is_identity(G.mul(v, G.inverse(v))));
}

TEST(Chevalley, CollectionIsAssociativeInDAndE) {
  std::mt19937_64 rng(11);
  for (auto label : {"D4", "D5", "E6"}) {
    Chevalley G(RootSystem::parse(label), FiniteField::of_order(3));
    for (int t = 0; t < 30; ++t) {
      auto a = random_unipotent(G, rng), b = random_unipotent(G, rng), c = random_unipotent(G, rng);
      ASSERT_EQ(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c))) << label;
    }
  }
}

TEST(Chevalley, WeylConjugationMatchesMatrices) {
  for (unsigned q : {2u, 3u, 4u}) {
    Chevalley G(RootSystem::build('A', 3), FiniteField::of_order(q));
    MatrixModel M(G);
    const auto& rs = G.roots();
    for (unsigned i = 0; i < rs.rank(); ++i) {
      auto s = M.atom_matrix(Atom::weyl(i)), sinv = M.atom_matrix(Atom::weyl(i, -1));
      EXPECT_EQ(M.mul(s, sinv), M.identity());
      for (int b = 0; b < rs.num_positive(); ++b)
        for (Elem c = 1; c < q; ++c) {
          auto lhs = M.mul(M.mul(s, M.root_matrix(b, c)), sinv);
          if (b == rs.simple(i)) {
            EXPECT_THROW(G.conj_simple(i, G.root_element(b, c)), DomainError);
            EXPECT_EQ(lhs, M.root_matrix(rs.negate(b), G.field().neg(c)));
          } else {
            EXPECT_EQ(lhs, M.unipotent_matrix(G.conj_simple(i, G.root_element(b, c))));
          }
        }
    }
  }
}

TEST(Chevalley, WeylConjugationExampleA2) {
  Chevalley G(RootSystem::build('A', 2), FiniteField::of_order(3));
  auto u = G.conj_simple(1, G.root_element(0, 1));
  ASSERT_EQ(u[2] != 0, true);
  EXPECT_EQ(u[0], 0);
  EXPECT_EQ(u[1], 0);
  EXPECT_EQ(G.conj_weyl(G.weyl().identity(), u), u);
}

TEST(Chevalley, ConjugationIndependentOfReducedWord) {
  // Tits: the representative does not depend on the reduced word
  for (auto label : {"A3", "D4"}) {
    Chevalley G(RootSystem::parse(label), FiniteField::of_order(3));
    const auto& W = G.weyl();
    const auto& rs = G.roots();
    for (WeylGroup::Index w = 0; w < W.size(); ++w) {
      // second reduced word: some descent s_i of w from the left, then canonical word of s_i w
      Subset L = W.left_descents(w);
      for (unsigned i = 0; i < rs.rank(); ++i) {
        if (!(L >> i & 1u)) continue;
        auto rest = W.mul_simple_left(i, w);
        for (int b = 0; b < rs.num_positive(); ++b) {
          if (!rs.is_positive(W.act(w, b))) continue;
          auto u = G.root_element(b, 1);
          auto direct = G.conj_weyl(w, u);
          auto via = G.conj_simple(i, G.conj_weyl(rest, u));
          ASSERT_EQ(direct, via) << label;
        }
      }
    }
  }
}

TEST(Chevalley, TorusCharacterAndAutomorphism) {
  Chevalley G(RootSystem::build('A', 2), FiniteField::of_order(4));
  MatrixModel M(G);
  const auto& F = G.field();
  std::mt19937_64 rng(5);
  Torus t{{F.primitive(), F.mul(F.primitive(), F.primitive())}};
  const auto& rs = G.roots();
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) {
      int s = rs.sum(a, b);
      if (s >= 0) EXPECT_EQ(F.mul(G.character(a, t), G.character(b, t)), G.character(s, t));
    }
  auto tm = M.atom_matrix(Atom::torus(t)), tinv = M.atom_matrix(Atom::torus(G.torus_inverse(t)));
  for (int k = 0; k < 50; ++k) {
    auto u = random_unipotent(G, rng), v = random_unipotent(G, rng);
    EXPECT_EQ(G.conj_torus(t, G.mul(u, v)), G.mul(G.conj_torus(t, u), G.conj_torus(t, v)));
    EXPECT_EQ(M.mul(M.mul(tm, M.unipotent_matrix(u)), tinv), M.unipotent_matrix(G.conj_torus(t, u)));
  }
  Torus g{{F.primitive(), 1}};
  EXPECT_EQ(G.conj_torus(G.coroot(0, 1), G.root_element(0, 1)), G.root_element(0, 1));
  auto tg = G.conj_torus(Torus{{F.primitive(), F.primitive()}}, G.root_element(0, 1));
  EXPECT_EQ(tg, G.root_element(0, F.primitive()));
  (void)g;
  // s_i t s_i^{-1}
  for (unsigned i = 0; i < 2; ++i) {
    auto s = M.atom_matrix(Atom::weyl(i)), sinv = M.atom_matrix(Atom::weyl(i, -1));
    EXPECT_EQ(M.mul(M.mul(s, tm), sinv), M.atom_matrix(Atom::torus(G.conj_torus_by_simple(i, t))));
  }
}

TEST(Chevalley, Sl2DecompositionIdentityExhaustive) {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    for (auto label : {"A1", "A2"}) {
      Chevalley G(RootSystem::parse(label), FiniteField::of_order(q));
      MatrixModel M(G);
      for (unsigned i = 0; i < G.rank(); ++i) {
        std::set<Elem> fs;
        const int a = G.roots().simple(i);
        for (Elem c = 1; c < q; ++c) {
          auto d = G.sl2_decompose(i, c);
          EXPECT_NE(d.f, 0);
          EXPECT_NE(d.g, 0);
          auto lhs = M.to_matrix({Atom::weyl(i), Atom::root_element(a, c), Atom::weyl(i, -1)});
          auto rhs = M.to_matrix({Atom::root_element(a, d.f), Atom::weyl(i), Atom::torus(d.h), Atom::root_element(a, d.g)});
          EXPECT_EQ(lhs, rhs) << label << " q=" << q << " c=" << c;
          fs.insert(d.f);
        }
        EXPECT_EQ(fs.size(), q - 1);
      }
      EXPECT_THROW(G.sl2_decompose(0, 0), DomainError);
    }
  }
}

TEST(Chevalley, Sl2OverF2IsTrivialTorus) {
  Chevalley G(RootSystem::build('A', 1), FiniteField::of_order(2));
  auto d = G.sl2_decompose(0, 1);
  EXPECT_EQ(d.f, 1);
  EXPECT_EQ(d.g, 1);
  EXPECT_EQ(d.h, G.torus_identity());
}

TEST(Chevalley, ReorderingRoundTripsAndSimpleComponents) {
  std::mt19937_64 rng(9);
  for (auto label : {"A2", "A3", "D4"}) {
    Chevalley G(RootSystem::parse(label), FiniteField::of_order(4));
    std::vector<int> order(G.num_positive());
    for (int r = 0; r < G.num_positive(); ++r) order[r] = r;
    for (int t = 0; t < 40; ++t) {
      std::shuffle(order.begin(), order.end(), rng);
      auto u = random_unipotent(G, rng);
      auto c = G.coords_in_order(u, order);
      EXPECT_EQ(G.from_ordered(order, c), u);
      for (unsigned i = 0; i < G.rank(); ++i) EXPECT_EQ(c[G.roots().simple(i)], G.simple_component(u, i));
    }
  }
}

TEST(Chevalley, FactorRelRoundTrip) {
  Chevalley G(RootSystem::build('A', 2), FiniteField::of_order(4));
  std::mt19937_64 rng(4);
  const std::vector<int> V{1, 2};
  for (int t = 0; t < 100; ++t) {
    auto u = random_unipotent(G, rng);
    auto f = G.factor_rel(u, V);
    EXPECT_EQ(G.mul(f.left_outer, f.left_inner), u);
    EXPECT_EQ(G.mul(f.right_inner, f.right_outer), u);
    EXPECT_EQ(f.left_inner[0], 0);
    EXPECT_EQ(f.right_inner[0], 0);
  }
  auto inside = G.root_element(2, 3);
  EXPECT_TRUE(G.is_identity(G.factor_rel(inside, V).left_outer));
  EXPECT_THROW(G.factor_rel(inside, {0, 1}), DomainError);
  // U'_{s_1} = U_{a2} U_{a1+a2}; the outer part carries the U_{a1}-component
  auto u = G.mul(G.root_element(0, 2), G.root_element(1, 1));
  EXPECT_EQ(G.factor_rel(u, V).left_outer, G.root_element(0, 2));
}

TEST(MatrixModel, BasicsAndHomomorphism) {
  Chevalley G(RootSystem::build('A', 2), FiniteField::of_order(3));
  MatrixModel M(G);
  EXPECT_EQ(M.to_matrix({}), M.identity());
  Chevalley G1(RootSystem::build('A', 1), FiniteField::of_order(3));
  MatrixModel M1(G1);
  auto x = M1.to_matrix({Atom::root_element(0, 2)});
  EXPECT_EQ(x, (FqMatrix{{1, 2}, {0, 1}}));
  std::mt19937_64 rng(1);
  auto gens = G.generators();
  for (int t = 0; t < 50; ++t) {
    GroupWord a, b;
    for (int k = 0; k < 4; ++k) a.push_back(gens[rng() % gens.size()]);
    for (int k = 0; k < 4; ++k) b.push_back(gens[rng() % gens.size()]);
    GroupWord ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_EQ(M.to_matrix(ab), M.mul(M.to_matrix(a), M.to_matrix(b)));
    EXPECT_EQ(M.determinant(M.to_matrix(ab)), 1);
    EXPECT_EQ(M.mul(M.to_matrix(a), M.to_matrix(G.inverse_word(a))), M.identity());
  }
  Chevalley D(RootSystem::build('D', 4), FiniteField::of_order(2));
  EXPECT_THROW(MatrixModel{D}, UnsupportedError);
}

TEST(StructureConstants, CacheRoundTrip) {
  auto rs = RootSystem::build('D', 4);
  auto dir = ::testing::TempDir() + "/chevflag_cache_test";
  auto a = cached_structure_constants(rs, dir);
  auto b = cached_structure_constants(rs, dir);
  EXPECT_EQ(a.N, b.N);
  EXPECT_EQ(a.eta, b.eta);
  EXPECT_EQ(StructureConstants::from_json(a.to_json()).N, a.N);
  EXPECT_EQ(a.N, compute_structure_constants(rs).N);
}
