#pragma once

// Exact calculus in the simply-connected Chevalley group G(F_q) of a
// simply-laced root system: unipotent collection, torus and Weyl conjugation,
// the rank-one decomposition, and the generator words used to act on G/B.

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "chevflag/errors.hpp"
#include "chevflag/finite_field.hpp"
#include "chevflag/rootsys.hpp"
#include "chevflag/structure_constants.hpp"

namespace chevflag {

using Elem = FiniteField::Elem;

/// Coordinates (c_r) over the positive roots in root order; the element is
/// the ordered product of x_r(c_r) in that order.
using Unipotent = std::vector<Elem>;

/// t = prod_j alpha_j^vee(lambda_j)
struct Torus {
  std::vector<Elem> lambda;
  friend bool operator==(const Torus&, const Torus&) = default;
};

/// One generator in a group word.
struct Atom {
  enum class Kind { Root, Weyl, Torus };
  Kind kind = Kind::Root;
  int root = 0;      // Root: positive root index, or negated simple root
  Elem c = 0;        // Root: parameter
  unsigned i = 0;    // Weyl: simple index
  int power = 1;     // Weyl: +1 or -1
  Torus t;           // Torus

  static Atom root_element(int r, Elem c) {
    Atom a;
    a.kind = Kind::Root;
    a.root = r;
    a.c = c;
    return a;
  }
  static Atom weyl(unsigned i, int power = 1) {
    Atom a;
    a.kind = Kind::Weyl;
    a.i = i;
    a.power = power;
    return a;
  }
  static Atom torus(Torus t) {
    Atom a;
    a.kind = Kind::Torus;
    a.t = std::move(t);
    return a;
  }
};

using GroupWord = std::vector<Atom>;

struct Sl2Decomposition {
  Elem f = 0;  // f_i(u) = x_i(f)
  Torus h;     // h_i(u)
  Elem g = 0;  // g_i(u) = x_i(g)
};

class Chevalley {
 public:
  Chevalley(const RootSystem& rs, const FiniteField& F)
      : Chevalley(rs, F, compute_structure_constants(rs)) {}
  Chevalley(const RootSystem& rs, const FiniteField& F, StructureConstants sc)
      : rsp_(std::make_shared<const RootSystem>(rs)),
        F_(F),
        W_(std::make_shared<const WeylGroup>(*rsp_)),
        sc_(std::move(sc)),
        m_(rs.num_positive()) {
    if (sc_.order_hash != rs.order_hash()) throw ConfigError("structure constants stamped for a different root order");
    for (int r = 0; r < m_; ++r) {
      while (static_cast<int>(height_begin_.size()) < rs.height(r)) height_begin_.push_back(r);
    }
    height_begin_.push_back(m_);
  }

  const RootSystem& roots() const { return *rsp_; }
  const FiniteField& field() const { return F_; }
  const WeylGroup& weyl() const { return *W_; }
  const StructureConstants& constants() const { return sc_; }
  int num_positive() const { return m_; }
  unsigned rank() const { return rsp_->rank(); }

  // ---- unipotent group U ----

  Unipotent identity() const { return Unipotent(m_, 0); }
  bool is_identity(const Unipotent& u) const {
    return std::all_of(u.begin(), u.end(), [](Elem e) { return e == 0; });
  }
  Unipotent root_element(int r, Elem c) const {
    check_positive(r);
    Unipotent u(m_, 0);
    u[r] = c;
    return u;
  }

  /// u <- u * x_beta(b)
  void rmul_root(Unipotent& u, int beta, Elem b) const {
    if (b == 0) return;
    int j = -1;
    for (int k = m_ - 1; k > beta; --k)
      if (u[k]) {
        j = k;
        break;
      }
    if (j < 0) {
      u[beta] = F_.add(u[beta], b);
      return;
    }
    // x_j(d) x_beta(b) = x_beta(b) x_j(d) x_{j+beta}(N d b)
    const Elem d = u[j];
    u[j] = 0;
    rmul_root(u, beta, b);
    rmul_root(u, j, d);
    const int s = rsp_->sum(j, beta);
    if (s >= 0) rmul_root(u, s, F_.mul(F_.from_int(sc_.n(j, beta)), F_.mul(d, b)));
  }

  Unipotent mul(const Unipotent& u, const Unipotent& v) const {
    check(u);
    check(v);
    Unipotent c = u;
    for (int k = 0; k < m_; ++k) rmul_root(c, k, v[k]);
    return c;
  }

  Unipotent inverse(const Unipotent& u) const {
    Unipotent c = identity();
    for (int k = m_; k-- > 0;) rmul_root(c, k, F_.neg(u[k]));
    return c;
  }

  /// The element prod_{r in order} x_r(c[r]).
  Unipotent from_ordered(const std::vector<int>& order, const std::vector<Elem>& c) const {
    Unipotent u = identity();
    for (int r : order) rmul_root(u, r, c[r]);
    return u;
  }

  /// Coordinates c (indexed by root) with u = prod_{r in order} x_r(c[r]).
  /// Any total order of the positive roots is admissible.
  std::vector<Elem> coords_in_order(const Unipotent& u, const std::vector<int>& order) const {
    check_order(order);
    std::vector<Elem> c(m_, 0);
    const int maxh = rsp_->max_height();
    for (int h = 1; h <= maxh; ++h) {
      Unipotent v = from_ordered(order, c);
      Unipotent t = mul(inverse(v), u);
      for (int r = height_begin_[h - 1]; r < height_begin_[h]; ++r) c[r] = t[r];
    }
    return c;
  }

  /// The U_{alpha_i}-component: the same in every order.
  Elem simple_component(const Unipotent& u, unsigned i) const { return u[rsp_->simple(i)]; }

  /// Unique factorization u = a * b with a in the product over roots outside
  /// V (root order) and b in the product over V (root order).
  /// Right version: u = b' * a'.
  struct Factorization {
    Unipotent left_outer, left_inner;    // u = left_outer * left_inner
    Unipotent right_inner, right_outer;  // u = right_inner * right_outer
  };
  Factorization factor_rel(const Unipotent& u, const std::vector<int>& V) const {
    if (!is_closed(V)) throw DomainError("root set is not closed: its root subgroups do not form a subgroup");
    std::vector<char> in(m_, 0);
    for (int r : V) in[r] = 1;
    std::vector<int> outer, inner;
    for (int r = 0; r < m_; ++r) (in[r] ? inner : outer).push_back(r);
    Factorization f;
    {
      auto order = outer;
      order.insert(order.end(), inner.begin(), inner.end());
      auto c = coords_in_order(u, order);
      f.left_outer = from_ordered(outer, c);
      f.left_inner = from_ordered(inner, c);
    }
    {
      auto order = inner;
      order.insert(order.end(), outer.begin(), outer.end());
      auto c = coords_in_order(u, order);
      f.right_inner = from_ordered(inner, c);
      f.right_outer = from_ordered(outer, c);
    }
    return f;
  }

  /// Component of u in the closed subgroup U_S when u = a * b, a in U_S,
  /// b in the product over the complement (both in root order).
  Unipotent leading_part(const Unipotent& u, const std::vector<int>& S) const {
    std::vector<char> in(m_, 0);
    for (int r : S) in[r] = 1;
    std::vector<int> order;
    for (int r = 0; r < m_; ++r)
      if (in[r]) order.push_back(r);
    const std::size_t k = order.size();
    for (int r = 0; r < m_; ++r)
      if (!in[r]) order.push_back(r);
    auto c = coords_in_order(u, order);
    Unipotent a = identity();
    for (std::size_t t = 0; t < k; ++t) a[order[t]] = c[order[t]];
    return a;
  }

  bool is_closed(const std::vector<int>& S) const {
    std::vector<char> in(m_, 0);
    for (int r : S) {
      check_positive(r);
      in[r] = 1;
    }
    for (int a : S)
      for (int b : S) {
        int s = rsp_->sum(a, b);
        if (s >= 0 && !in[s]) return false;
      }
    return true;
  }

  // ---- torus ----

  Torus torus_identity() const { return Torus{std::vector<Elem>(rank(), 1)}; }
  Torus coroot(unsigned i, Elem lambda) const {
    if (lambda == 0) throw DomainError("torus value must be nonzero");
    Torus t = torus_identity();
    t.lambda[i] = lambda;
    return t;
  }
  Torus torus_mul(const Torus& a, const Torus& b) const {
    Torus t = a;
    for (unsigned j = 0; j < rank(); ++j) t.lambda[j] = F_.mul(a.lambda[j], b.lambda[j]);
    return t;
  }
  Torus torus_inverse(const Torus& a) const {
    Torus t = a;
    for (auto& x : t.lambda) x = F_.inv(x);
    return t;
  }
  /// alpha(t) for any root alpha.
  Elem character(int r, const Torus& t) const {
    Elem v = 1;
    for (unsigned j = 0; j < rank(); ++j) v = F_.mul(v, F_.pow(t.lambda[j], rsp_->pairing(r, j)));
    return v;
  }
  Unipotent conj_torus(const Torus& t, const Unipotent& u) const {
    Unipotent c = u;
    for (int r = 0; r < m_; ++r)
      if (c[r]) c[r] = F_.mul(character(r, t), c[r]);
    return c;
  }
  /// s_i t s_i^{-1}
  Torus conj_torus_by_simple(unsigned i, const Torus& t) const {
    Torus s = t;
    Elem v = F_.inv(t.lambda[i]);
    for (unsigned j = 0; j < rank(); ++j)
      if (j != i && rsp_->cartan()[i][j] == -1) v = F_.mul(v, t.lambda[j]);
    s.lambda[i] = v;
    return s;
  }

  // ---- Weyl representatives ----

  /// s_i u s_i^{-1}; requires the U_{alpha_i}-component of u to vanish.
  Unipotent conj_simple(unsigned i, const Unipotent& u) const {
    if (u[rsp_->simple(i)] != 0)
      throw DomainError("conjugate has a negative-root factor; reduce at flag level first");
    Unipotent c = identity();
    for (int r = 0; r < m_; ++r)
      if (u[r]) {
        int eta = sc_.weyl_sign(i, r);
        rmul_root(c, rsp_->reflect(i, r), eta == 1 ? u[r] : F_.neg(u[r]));
      }
    return c;
  }

  /// w u w^{-1} for the representative along the canonical reduced word;
  /// requires w(support of u) to be positive.
  Unipotent conj_weyl(WeylGroup::Index w, const Unipotent& u) const {
    for (int r = 0; r < m_; ++r)
      if (u[r] && !rsp_->is_positive(weyl().act(w, r)))
        throw DomainError("w sends a root of the support to a negative root; reduce at flag level first");
    Unipotent c = u;
    const auto& word = weyl().word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) c = conj_simple(*it, c);
    return c;
  }

  /// s_i x_i(c) s_i^{-1} = x_i(f) s_i h x_i(g), c != 0.
  Sl2Decomposition sl2_decompose(unsigned i, Elem c) const {
    if (i >= rank()) throw DomainError("simple index out of range");
    if (c == 0) throw DomainError("sl2 decomposition is defined on U_alpha minus the identity only");
    Sl2Decomposition d;
    d.f = F_.neg(F_.inv(c));
    d.g = d.f;
    d.h = coroot(i, c);
    return d;
  }

  // ---- words ----

  GroupWord inverse_word(const GroupWord& w) const {
    GroupWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      Atom a = *it;
      switch (a.kind) {
        case Atom::Kind::Root:
          a.c = F_.neg(a.c);
          break;
        case Atom::Kind::Weyl:
          a.power = -a.power;
          break;
        case Atom::Kind::Torus:
          a.t = torus_inverse(a.t);
          break;
      }
      out.push_back(a);
    }
    return out;
  }
  GroupWord weyl_word(WeylGroup::Index w) const {
    GroupWord out;
    for (auto i : weyl().word(w)) out.push_back(Atom::weyl(i));
    return out;
  }
  GroupWord unipotent_word(const Unipotent& u) const {
    GroupWord out;
    for (int r = 0; r < m_; ++r)
      if (u[r]) out.push_back(Atom::root_element(r, u[r]));
    return out;
  }

  /// Generators of G(F_q): x_i(b) for an F_p-basis b of F_q, s_i, and
  /// alpha_i^vee(primitive) when q > 2.
  std::vector<Atom> generators() const {
    std::vector<Atom> g;
    for (unsigned i = 0; i < rank(); ++i)
      for (Elem b : F_.additive_basis()) g.push_back(Atom::root_element(rsp_->simple(i), b));
    for (unsigned i = 0; i < rank(); ++i) g.push_back(Atom::weyl(i));
    if (F_.q() > 2)
      for (unsigned i = 0; i < rank(); ++i) g.push_back(Atom::torus(coroot(i, F_.primitive())));
    return g;
  }

  std::string format_unipotent(const Unipotent& u) const {
    std::string s;
    for (int r = 0; r < m_; ++r)
      if (u[r]) {
        if (!s.empty()) s += "*";
        s += "x[" + rsp_->format_root(r) + "](" + std::to_string(u[r]) + ")";
      }
    return s.empty() ? "id" : s;
  }

  /// Roots of height h are indices [height_begin(h), height_begin(h+1)).
  int height_begin(int h) const { return height_begin_[h - 1]; }

 private:
  void check_positive(int r) const {
    if (r < 0 || r >= m_) throw DomainError("not a positive root index: " + std::to_string(r));
  }
  void check(const Unipotent& u) const {
    if (static_cast<int>(u.size()) != m_) throw DomainError("unipotent element belongs to a different root system");
  }
  void check_order(const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != m_) throw DomainError("root order is not a permutation of the positive roots");
    std::vector<char> seen(m_, 0);
    for (int r : order) {
      check_positive(r);
      if (seen[r]++) throw DomainError("root order repeats a root");
    }
  }
  std::shared_ptr<const RootSystem> rsp_;
  FiniteField F_;
  std::shared_ptr<const WeylGroup> W_;
  StructureConstants sc_;
  int m_;
  std::vector<int> height_begin_;
};

}  // namespace chevflag
