#include <gtest/gtest.h>

#include <map>
#include <set>

#include "chevflag/rootsys.hpp"

using namespace chevflag;

namespace {

// Independent root enumeration for type A_n: e_i - e_j, i < j.
std::set<std::vector<int>> type_a_positive_roots(unsigned n) {
  std::set<std::vector<int>> out;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) {
      std::vector<int> v(n, 0);
      for (unsigned k = i; k <= j; ++k) v[k] = 1;
      out.insert(v);
    }
  return out;
}

std::vector<std::uint8_t> word(std::initializer_list<int> one_based) {
  std::vector<std::uint8_t> w;
  for (int i : one_based) w.push_back(static_cast<std::uint8_t>(i - 1));
  return w;
}

Subset subset(std::initializer_list<int> one_based) {
  Subset J = 0;
  for (int i : one_based) J |= 1u << (i - 1);
  return J;
}

}  // namespace

TEST(RootSystem, A1AndA2Roots) {
  auto a1 = RootSystem::build('A', 1);
  EXPECT_EQ(a1.num_positive(), 1);
  auto a2 = RootSystem::build('A', 2);
  ASSERT_EQ(a2.num_positive(), 3);
  EXPECT_EQ(a2.coords(0), (std::vector<int>{1, 0}));
  EXPECT_EQ(a2.coords(1), (std::vector<int>{0, 1}));
  EXPECT_EQ(a2.coords(2), (std::vector<int>{1, 1}));
  EXPECT_EQ(a2.height(0), 1);
  EXPECT_EQ(a2.height(2), 2);
}

TEST(RootSystem, TypeAMatchesIndependentEnumeration) {
  for (unsigned n = 1; n <= 6; ++n) {
    auto rs = RootSystem::build('A', n);
    std::set<std::vector<int>> got;
    for (int r = 0; r < rs.num_positive(); ++r) got.insert(rs.coords(r));
    EXPECT_EQ(got, type_a_positive_roots(n)) << "A" << n;
  }
}

TEST(RootSystem, ClassicalCountsAndInvariants) {
  const std::vector<std::pair<char, unsigned>> types{{'A', 1}, {'A', 3}, {'A', 6}, {'D', 4},
                                                     {'D', 5}, {'D', 6}, {'E', 6}};
  const std::map<std::string, int> count{{"A1", 1}, {"A3", 6}, {"A6", 21}, {"D4", 12},
                                         {"D5", 20}, {"D6", 30}, {"E6", 36}};
  for (auto [t, n] : types) {
    auto rs = RootSystem::build(t, n);
    EXPECT_EQ(rs.num_positive(), count.at(rs.label()));
    int height_one = 0;
    for (int r = 0; r < rs.num_positive(); ++r) {
      for (int c : rs.coords(r)) EXPECT_GE(c, 0);
      if (rs.height(r) == 1) ++height_one;
      if (r > 0) EXPECT_LE(rs.height(r - 1), rs.height(r));
    }
    EXPECT_EQ(height_one, static_cast<int>(n));
    for (unsigned i = 0; i < n; ++i)
      for (int r = 0; r < rs.num_roots(); ++r) EXPECT_GE(rs.reflect(i, r), 0);
  }
}

TEST(RootSystem, RejectsUnsupported) {
  EXPECT_THROW(RootSystem::build('B', 2), ConfigError);
  EXPECT_THROW(RootSystem::build('A', 7), ConfigError);
  EXPECT_THROW(RootSystem::build('D', 3), ConfigError);
  EXPECT_THROW(RootSystem::build('E', 7), ConfigError);
  EXPECT_THROW(RootSystem::parse("A"), ConfigError);
  EXPECT_EQ(RootSystem::parse("D4").label(), "D4");
}

TEST(WeylGroup, OrdersMatchClassicalFormulas) {
  EXPECT_EQ(WeylGroup(RootSystem::build('A', 3)).size(), 24u);
  EXPECT_EQ(WeylGroup(RootSystem::build('A', 5)).size(), 720u);
  EXPECT_EQ(WeylGroup(RootSystem::build('D', 4)).size(), 192u);
  EXPECT_EQ(WeylGroup(RootSystem::build('E', 6)).size(), 51840u);
  auto a6 = RootSystem::build('A', 6);
  EXPECT_THROW(WeylGroup(a6, 1000), ResourceError);
}

TEST(WeylGroup, ActionExamplesInA2) {
  auto rs = RootSystem::build('A', 2);
  WeylGroup W(rs);
  auto s1 = W.from_word(word({1}));
  EXPECT_EQ(W.act(W.identity(), 0), 0);
  EXPECT_EQ(W.act(s1, 0), rs.negate(0));
  EXPECT_EQ(W.act(s1, 1), 2);
  EXPECT_EQ(W.right_descents(W.identity()), 0u);
  EXPECT_EQ(W.right_descents(W.longest()), subset({1, 2}));
  EXPECT_EQ(W.right_descents(W.from_word(word({2, 1}))), subset({1}));
  EXPECT_EQ(W.inversion_set(s1), (std::vector<int>{0}));
  EXPECT_EQ(W.inversion_set(W.longest()).size(), 3u);
  EXPECT_TRUE(W.non_inversion_set(W.longest()).empty());
  EXPECT_EQ(W.format(W.longest()), "s1s2s1");
}

TEST(WeylGroup, StructuralInvariants) {
  for (auto label : {"A1", "A2", "A3", "D4"}) {
    auto rs = RootSystem::parse(label);
    WeylGroup W(rs);
    for (WeylGroup::Index w = 0; w < W.size(); ++w) {
      EXPECT_EQ(W.length(w), W.inversion_set(w).size());
      EXPECT_EQ(W.from_word(W.word(w)), w);
      EXPECT_EQ(W.length(W.inverse(w)), W.length(w));
      EXPECT_EQ(W.mul(w, W.inverse(w)), W.identity());
      for (unsigned i = 0; i < rs.rank(); ++i) {
        const int d = static_cast<int>(W.length(W.mul_simple_left(i, w))) - static_cast<int>(W.length(w));
        EXPECT_TRUE(d == 1 || d == -1);
        EXPECT_EQ((W.right_descents(w) >> i) & 1u, W.length(W.mul_simple_right(w, i)) < W.length(w) ? 1u : 0u);
      }
      // root action is a group action
      for (WeylGroup::Index v = 0; v < W.size(); v += 5)
        for (int r = 0; r < rs.num_roots(); ++r) EXPECT_EQ(W.act(W.mul(w, v), r), W.act(w, W.act(v, r)));
    }
  }
}

TEST(WeylGroup, CanonicalWordsAreLexLeastReduced) {
  auto rs = RootSystem::build('A', 3);
  WeylGroup W(rs);
  // brute force: all words of length l(w) over {0,1,2} evaluating to w; the stored one is least
  for (WeylGroup::Index w = 0; w < W.size(); ++w) {
    const unsigned l = W.length(w);
    std::vector<std::uint8_t> best;
    std::vector<std::uint8_t> cur(l, 0);
    bool found = false;
    while (true) {
      if (W.from_word(cur) == w) {
        best = cur;
        found = true;
        break;
      }
      std::size_t k = l;
      while (k > 0 && cur[k - 1] == 2) cur[--k] = 0;
      if (k == 0) break;
      ++cur[k - 1];
    }
    ASSERT_TRUE(found || l == 0);
    if (l) EXPECT_EQ(W.word(w), best);
  }
}

TEST(Parabolic, A2Examples) {
  auto rs = RootSystem::build('A', 2);
  WeylGroup W(rs);
  auto P0 = parabolic_data(W, 0);
  EXPECT_EQ(P0.X.size(), 6u);
  EXPECT_EQ(P0.Y, std::vector<WeylGroup::Index>{W.identity()});
  EXPECT_EQ(P0.w_J, W.identity());
  auto P1 = parabolic_data(W, subset({1}));
  std::vector<WeylGroup::Index> X1{W.identity(), W.from_word(word({2})), W.from_word(word({1, 2}))};
  std::vector<WeylGroup::Index> Y1{W.identity(), W.from_word(word({2}))};
  EXPECT_EQ(P1.X, X1);
  EXPECT_EQ(P1.Y, Y1);
  auto PI = parabolic_data(W, subset({1, 2}));
  EXPECT_EQ(PI.X, std::vector<WeylGroup::Index>{W.identity()});
  EXPECT_EQ(PI.Y, std::vector<WeylGroup::Index>{W.identity()});
  EXPECT_EQ(PI.w_J, W.from_word(word({1, 2, 1})));
}

TEST(Parabolic, DecompositionIsBijectionAndPoincareIdentity) {
  for (auto label : {"A1", "A2", "A3", "D4"}) {
    auto rs = RootSystem::parse(label);
    WeylGroup W(rs);
    std::vector<int> hits(W.size(), 0);
    std::vector<long> lhs(rs.num_positive() + 1, 0), rhs(rs.num_positive() + 1, 0);
    for (Subset J : all_subsets(rs.rank())) {
      auto P = parabolic_data(W, J);
      for (auto x : P.X) {
        for (unsigned j = 0; j < rs.rank(); ++j)
          if (J >> j & 1u) EXPECT_GT(W.length(W.mul_simple_right(x, j)), W.length(x));
        EXPECT_EQ(W.length(W.mul(x, P.w_J)), W.length(x) + W.length(P.w_J));
      }
      for (auto y : P.Y) {
        ++hits[W.mul(y, P.w_J)];
        EXPECT_EQ(W.length(W.mul(P.w_J, W.inverse(y))), W.length(W.mul(y, P.w_J)));
        ++lhs[W.length(W.mul(P.w_J, W.inverse(y)))];
      }
    }
    for (WeylGroup::Index v = 0; v < W.size(); ++v) {
      EXPECT_EQ(hits[v], 1) << label;
      ++rhs[W.length(v)];
    }
    EXPECT_EQ(lhs, rhs) << label;
  }
}
