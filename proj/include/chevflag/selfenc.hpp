#pragma once

// Finite subgroups of U stored as explicit element sets: slices under a root
// order, self-enclosedness, the height-order closure, root factorization,
// coset projections and subfield towers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chevflag/chevalley.hpp"
#include "chevflag/errors.hpp"

namespace chevflag {

inline constexpr std::size_t kDefaultSubgroupCap = 1u << 16;

using ElementSet = std::set<Unipotent>;
using RootOrder = std::vector<int>;  // RootOrder[k] = delta_{k+1}

inline RootOrder height_order(const Chevalley& G) {
  RootOrder o(G.num_positive());
  for (int r = 0; r < G.num_positive(); ++r) o[r] = r;
  return o;
}

inline bool is_height_compatible(const Chevalley& G, const RootOrder& o) {
  for (std::size_t k = 1; k < o.size(); ++k)
    if (G.roots().height(o[k - 1]) > G.roots().height(o[k])) return false;
  return true;
}

inline std::string format_order(const Chevalley& G, const RootOrder& o) {
  std::string s;
  for (std::size_t k = 0; k < o.size(); ++k) s += (k ? "," : "") + G.roots().format_root(o[k]);
  return s;
}

/// The height order, then every order when m! <= 720, else `samples` seeded
/// random orders.
inline std::vector<RootOrder> sampled_orders(const Chevalley& G, std::size_t samples = 50, std::uint64_t seed = 1) {
  const int m = G.num_positive();
  std::uint64_t fact = 1;
  for (int k = 2; k <= m && fact <= 720; ++k) fact *= k;
  std::vector<RootOrder> out{height_order(G)};
  if (fact <= 720) {
    RootOrder o = height_order(G);
    while (std::next_permutation(o.begin(), o.end())) out.push_back(o);
    return out;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    RootOrder o = height_order(G);
    for (std::size_t i = o.size(); i-- > 1;) std::swap(o[i], o[rng() % (i + 1)]);
    out.push_back(o);
  }
  return out;
}

/// X cap_order U_{delta_k}: the k-th factors of the elements of X.
inline std::set<Elem> slice(const Chevalley& G, const ElementSet& X, const RootOrder& order, std::size_t k) {
  std::set<Elem> s;
  for (const auto& x : X) s.insert(G.coords_in_order(x, order)[order[k]]);
  return s;
}

/// {c : x_r(c) in H}
inline std::set<Elem> root_part(const Chevalley& G, const ElementSet& H, int r) {
  std::set<Elem> s;
  for (const auto& h : H) {
    bool single = true;
    for (int t = 0; t < G.num_positive(); ++t)
      if (t != r && h[t] != 0) single = false;
    if (single) s.insert(h[r]);
  }
  return s;
}

inline bool is_subgroup(const Chevalley& G, const ElementSet& H) {
  if (!H.count(G.identity())) return false;
  for (const auto& a : H)
    for (const auto& b : H)
      if (!H.count(G.mul(a, b))) return false;
  return true;
}

/// The subgroup generated by gens, by closing under right multiplication.
inline ElementSet generate(const Chevalley& G, const std::vector<Unipotent>& gens,
                           std::size_t cap = kDefaultSubgroupCap) {
  ElementSet H{G.identity()};
  std::vector<Unipotent> todo{G.identity()};
  std::vector<Unipotent> g;
  for (const auto& x : gens)
    if (!G.is_identity(x)) g.push_back(x);
  while (!todo.empty()) {
    auto h = std::move(todo.back());
    todo.pop_back();
    for (const auto& x : g) {
      auto y = G.mul(h, x);
      if (H.insert(y).second) {
        if (H.size() > cap) throw ResourceError("subgroup exceeds cap " + std::to_string(cap));
        todo.push_back(std::move(y));
      }
    }
  }
  return H;
}

/// Root elements x_r(b) for an F_p-basis b of the additive group S.
inline std::vector<Unipotent> root_generators(const Chevalley& G, int r, const std::set<Elem>& S) {
  std::vector<Elem> v(S.begin(), S.end());
  std::vector<Unipotent> out;
  const auto& F = G.field();
  std::vector<Elem> span{0};
  for (Elem c : v) {
    if (std::find(span.begin(), span.end(), c) != span.end()) continue;
    out.push_back(G.root_element(r, c));
    span = F.additive_span([&] {
      std::vector<Elem> b;
      for (const auto& x : out) b.push_back(x[r]);
      return b;
    }());
  }
  return out;
}

struct OrderVerdict {
  RootOrder order;
  bool self_enclosed = false;
  int first_bad_position = -1;  // 0-based k where the slice differs, or -1
};

inline OrderVerdict check_order(const Chevalley& G, const ElementSet& H, const RootOrder& order) {
  OrderVerdict v{order, true, -1};
  std::vector<std::set<Elem>> slices(order.size());
  for (const auto& h : H) {
    auto c = G.coords_in_order(h, order);
    for (std::size_t k = 0; k < order.size(); ++k) slices[k].insert(c[order[k]]);
  }
  for (std::size_t k = 0; k < order.size(); ++k)
    if (slices[k] != root_part(G, H, order[k])) {
      v.self_enclosed = false;
      v.first_bad_position = static_cast<int>(k);
      break;
    }
  return v;
}

struct SelfEnclosedReport {
  std::vector<OrderVerdict> orders;
  bool all() const {
    return std::all_of(orders.begin(), orders.end(), [](const auto& o) { return o.self_enclosed; });
  }
  std::size_t failures() const {
    return std::count_if(orders.begin(), orders.end(), [](const auto& o) { return !o.self_enclosed; });
  }
};

inline SelfEnclosedReport is_self_enclosed(const Chevalley& G, const ElementSet& H, const std::vector<RootOrder>& orders) {
  if (!is_subgroup(G, H)) throw DomainError("element set is not closed under product");
  SelfEnclosedReport r;
  for (const auto& o : orders) r.orders.push_back(check_order(G, H, o));
  return r;
}

inline bool is_p_power(std::size_t n, unsigned p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

/// Height-order recursion: H_k = <X_k, Y_k> in U_{delta_k}, where
/// Y_k = <H_1, ..., H_{k-1}> cap U_{delta_k}; returns <H_1, ..., H_m>.
struct ClosureResult {
  ElementSet H;
  std::vector<std::set<Elem>> factors;  // H_k for k = 1..m, height order
};

inline ClosureResult closure(const Chevalley& G, const ElementSet& X, std::size_t cap = kDefaultSubgroupCap) {
  const auto& F = G.field();
  const auto order = height_order(G);
  const int m = G.num_positive();
  std::vector<std::set<Elem>> Xk(m);
  for (const auto& x : X) {
    auto c = G.coords_in_order(x, order);
    for (int k = 0; k < m; ++k) Xk[k].insert(c[order[k]]);
  }
  ClosureResult res;
  std::vector<Unipotent> gens;
  for (int k = 0; k < m; ++k) {
    std::set<Elem> Yk;
    if (k > 0) {
      auto prev = generate(G, gens, cap);
      Yk = slice(G, prev, order, k);
    }
    std::vector<Elem> s(Xk[k].begin(), Xk[k].end());
    s.insert(s.end(), Yk.begin(), Yk.end());
    auto span = F.additive_span(s);
    std::set<Elem> Hk(span.begin(), span.end());
    for (const auto& g : root_generators(G, order[k], Hk)) gens.push_back(g);
    res.factors.push_back(std::move(Hk));
  }
  res.H = generate(G, gens, cap);
  return res;
}

/// (H_{delta_1}, ..., H_{delta_m}) for the given order, after checking that
/// the ordered product enumerates H exactly once.
inline std::vector<std::set<Elem>> root_factor(const Chevalley& G, const ElementSet& H, const RootOrder& order) {
  if (!check_order(G, H, order).self_enclosed) throw PreconditionError("subgroup is not self-enclosed on this order");
  std::vector<std::set<Elem>> f;
  std::size_t prod = 1;
  for (int r : order) {
    f.push_back(root_part(G, H, r));
    prod *= f.back().size();
  }
  if (prod != H.size()) throw DomainError("root factors do not multiply to |H|");
  return f;
}

/// H_w = H cap U_w, U_w the product over Phi^-_w.
inline ElementSet restrict_to(const Chevalley& G, const ElementSet& H, const std::vector<int>& roots) {
  std::vector<char> in(G.num_positive(), 0);
  for (int r : roots) in[r] = 1;
  ElementSet out;
  for (const auto& h : H) {
    bool ok = true;
    for (int r = 0; r < G.num_positive(); ++r)
      if (!in[r] && h[r] != 0) ok = false;
    if (ok) out.insert(h);
  }
  return out;
}

struct CosetProjections {
  ElementSet left;   // H_V: v with h = x v, x in the left transversal
  ElementSet right;  // _V H: v with h = v y, y in the right transversal
  ElementSet meet;   // H cap V
  bool holds() const { return left == right && right == meet; }
};

/// Projections of H onto V = prod_{beta in V} U_beta with transversals given
/// by the ordered products over the complementary roots.
inline CosetProjections coset_projections(const Chevalley& G, const ElementSet& H, const std::vector<int>& V) {
  if (!G.is_closed(V)) throw DomainError("root set does not give a subgroup product");
  CosetProjections p;
  for (const auto& h : H) {
    auto f = G.factor_rel(h, V);
    p.left.insert(f.left_inner);
    p.right.insert(f.right_inner);
  }
  p.meet = restrict_to(G, H, V);
  return p;
}

/// Elements of U with coordinates in the given subsets (product in root order).
inline ElementSet product_set(const Chevalley& G, const std::vector<std::vector<Elem>>& coords) {
  ElementSet out;
  std::vector<std::size_t> idx(coords.size(), 0);
  const std::size_t m = coords.size();
  while (true) {
    Unipotent u = G.identity();
    for (std::size_t r = 0; r < m; ++r) u[r] = coords[r][idx[r]];
    out.insert(u);
    std::size_t r = 0;
    while (r < m && ++idx[r] == coords[r].size()) idx[r++] = 0;
    if (r == m) break;
  }
  return out;
}

/// prod_k U_{delta_k}(F_{p^{a_k}}) in height order.
inline ElementSet tower(const Chevalley& G, const std::vector<unsigned>& exponents) {
  if (exponents.size() != static_cast<std::size_t>(G.num_positive()))
    throw ConfigError("tower needs one exponent per positive root");
  std::vector<std::vector<Elem>> c;
  for (unsigned a : exponents) c.push_back(G.field().subfield(a));
  return product_set(G, c);
}

/// All subgroups of U = U(F_q) for |U| <= 64, as bitmasks over an element list.
class SmallUnipotentGroup {
 public:
  explicit SmallUnipotentGroup(const Chevalley& G) : G_(G) {
    std::vector<std::vector<Elem>> all(G.num_positive());
    for (auto& v : all)
      for (unsigned c = 0; c < G.field().q(); ++c) v.push_back(static_cast<Elem>(c));
    auto U = product_set(G, all);
    if (U.size() > 64) throw ResourceError("brute-force subgroup oracle needs |U| <= 64");
    elems_.assign(U.begin(), U.end());
    for (std::size_t i = 0; i < elems_.size(); ++i) pos_[elems_[i]] = i;
    mul_.assign(elems_.size() * elems_.size(), 0);
    for (std::size_t i = 0; i < elems_.size(); ++i)
      for (std::size_t j = 0; j < elems_.size(); ++j) mul_[i * elems_.size() + j] = pos_.at(G.mul(elems_[i], elems_[j]));
  }

  std::size_t size() const { return elems_.size(); }
  std::uint64_t mask_of(const ElementSet& S) const {
    std::uint64_t b = 0;
    for (const auto& s : S) b |= 1ull << pos_.at(s);
    return b;
  }
  ElementSet set_of(std::uint64_t b) const {
    ElementSet s;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (b >> i & 1ull) s.insert(elems_[i]);
    return s;
  }

  std::uint64_t generated(const std::vector<std::size_t>& gens) const {
    const std::size_t e = pos_.at(G_.identity());
    std::uint64_t b = 1ull << e;
    std::vector<std::size_t> todo{e};
    while (!todo.empty()) {
      auto h = todo.back();
      todo.pop_back();
      for (auto g : gens) {
        auto k = mul_[h * elems_.size() + g];
        if (!(b >> k & 1ull)) {
          b |= 1ull << k;
          todo.push_back(k);
        }
      }
    }
    return b;
  }

  /// Every subgroup containing the elements of `base`.
  std::vector<std::uint64_t> overgroups(std::uint64_t base) const {
    std::vector<std::size_t> g0;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (base >> i & 1ull) g0.push_back(i);
    std::map<std::uint64_t, std::vector<std::size_t>> seen;
    const auto start = generated(g0);
    seen[start] = g0;
    std::vector<std::uint64_t> todo{start};
    while (!todo.empty()) {
      auto s = todo.back();
      todo.pop_back();
      const auto gens = seen[s];
      for (std::size_t i = 0; i < elems_.size(); ++i)
        if (!(s >> i & 1ull)) {
          auto g = gens;
          g.push_back(i);
          auto t = generated(g);
          if (!seen.count(t)) {
            seen[t] = std::move(g);
            todo.push_back(t);
          }
        }
    }
    std::vector<std::uint64_t> out;
    for (const auto& [s, g] : seen) out.push_back(s);
    return out;
  }

  /// Intersection of all subgroups containing X that are self-enclosed on
  /// every given order; also whether that intersection is itself one of them.
  std::pair<ElementSet, bool> minimal_self_enclosed(const ElementSet& X, const std::vector<RootOrder>& orders) const {
    const std::size_t n = elems_.size();
    const int m = G_.num_positive();
    // single[i] = root r when elems_[i] lies in U_r \ {1}
    std::vector<int> single(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      int r = -1, cnt = 0;
      for (int t = 0; t < m; ++t)
        if (elems_[i][t]) {
          r = t;
          ++cnt;
        }
      if (cnt == 1) single[i] = r;
    }
    std::vector<std::vector<Elem>> coords;  // [o * n + i][k]
    for (const auto& o : orders)
      for (std::size_t i = 0; i < n; ++i) {
        auto c = G_.coords_in_order(elems_[i], o);
        std::vector<Elem> d(m);
        for (int k = 0; k < m; ++k) d[k] = c[o[k]];
        coords.push_back(std::move(d));
      }
    auto enclosed = [&](std::uint64_t s) {
      for (std::size_t oi = 0; oi < orders.size(); ++oi)
        for (int k = 0; k < m; ++k) {
          std::uint64_t sl = 1, part = 1;  // bit c for value c (q <= 64)
          for (std::size_t i = 0; i < n; ++i) {
            if (!(s >> i & 1ull)) continue;
            sl |= 1ull << coords[oi * n + i][k];
            if (single[i] == orders[oi][k]) part |= 1ull << elems_[i][single[i]];
          }
          if (sl != part) return false;
        }
      return true;
    };
    std::uint64_t meet = ~0ull;
    std::set<std::uint64_t> good;
    for (auto s : overgroups(mask_of(X)))
      if (enclosed(s)) {
        good.insert(s);
        meet &= s;
      }
    if (n < 64) meet &= (1ull << n) - 1;
    return {set_of(meet), good.count(meet) != 0};
  }

 private:
  const Chevalley& G_;
  std::vector<Unipotent> elems_;
  std::map<Unipotent, std::size_t> pos_;
  std::vector<std::size_t> mul_;
};

}  // namespace chevflag
