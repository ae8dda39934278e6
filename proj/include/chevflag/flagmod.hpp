#pragma once

// The permutation module F[G/B] on Bruhat normal forms u w B, the vectors
// eta_J, the submodules M_J = F G eta_J and the subquotients E_J.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chevflag/chevalley.hpp"
#include "chevflag/coefficient_field.hpp"
#include "chevflag/errors.hpp"
#include "chevflag/linalg.hpp"

namespace chevflag {

inline constexpr std::size_t kDefaultSpinCap = 5000;

/// Cells indexed by Weyl elements, each carrying the unipotent coordinates of
/// a closed root set; basis index = cell offset + mixed-radix coordinates.
class CellIndex {
 public:
  CellIndex() = default;
  CellIndex(unsigned q, std::vector<WeylGroup::Index> cells, std::vector<std::vector<int>> roots)
      : q_(q), cells_(std::move(cells)), roots_(std::move(roots)) {
    std::size_t off = 0;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      offset_.push_back(off);
      std::size_t n = 1;
      for (std::size_t k = 0; k < roots_[c].size(); ++k) n *= q_;
      size_.push_back(n);
      off += n;
      pos_[cells_[c]] = c;
    }
    total_ = off;
  }

  std::size_t size() const { return total_; }
  std::size_t num_cells() const { return cells_.size(); }
  const std::vector<WeylGroup::Index>& cells() const { return cells_; }
  bool has_cell(WeylGroup::Index w) const { return pos_.count(w) != 0; }
  std::size_t cell_position(WeylGroup::Index w) const {
    auto it = pos_.find(w);
    if (it == pos_.end()) throw DomainError("Weyl element does not index a cell");
    return it->second;
  }
  const std::vector<int>& roots_of(WeylGroup::Index w) const { return roots_[cell_position(w)]; }
  std::size_t cell_offset(std::size_t c) const { return offset_[c]; }
  std::size_t cell_size(std::size_t c) const { return size_[c]; }
  std::size_t cell_of_index(std::size_t idx) const {
    std::size_t c = 0;
    while (c + 1 < cells_.size() && offset_[c + 1] <= idx) ++c;
    return c;
  }

  /// Index of (w, u); u must be supported on the cell's roots.
  std::size_t index(WeylGroup::Index w, const Unipotent& u) const {
    const std::size_t c = cell_position(w);
    std::size_t v = 0;
    const auto& rs = roots_[c];
    for (std::size_t k = rs.size(); k-- > 0;) v = v * q_ + u[rs[k]];
    return offset_[c] + v;
  }
  std::pair<WeylGroup::Index, Unipotent> term(std::size_t idx, int m) const {
    const std::size_t c = cell_of_index(idx);
    std::size_t v = idx - offset_[c];
    Unipotent u(m, 0);
    for (int r : roots_[c]) {
      u[r] = static_cast<Elem>(v % q_);
      v /= q_;
    }
    return {cells_[c], u};
  }

 private:
  unsigned q_ = 2;
  std::vector<WeylGroup::Index> cells_;
  std::vector<std::vector<int>> roots_;
  std::vector<std::size_t> offset_, size_;
  std::map<WeylGroup::Index, std::size_t> pos_;
  std::size_t total_ = 0;
};

/// Left cosets G/B in normal form (w, u), u supported on Phi^-_{w^{-1}}.
class FlagSpace {
 public:
  struct Coset {
    WeylGroup::Index w = 0;
    Unipotent u;
    friend bool operator==(const Coset&, const Coset&) = default;
  };

  explicit FlagSpace(const Chevalley& G, std::size_t cap = 200000) : G_(G) {
    const auto& W = G_.weyl();
    std::vector<WeylGroup::Index> cells;
    std::vector<std::vector<int>> roots;
    std::size_t total = 0;
    for (WeylGroup::Index w = 0; w < W.size(); ++w) {
      cells.push_back(w);
      roots.push_back(W.inversion_set(W.inverse(w)));
      std::size_t n = 1;
      for (std::size_t k = 0; k < roots.back().size(); ++k) n *= G_.field().q();
      total += n;
      if (total > cap) throw ResourceError("|G/B| exceeds cap " + std::to_string(cap));
    }
    index_ = CellIndex(G_.field().q(), cells, roots);
  }

  const Chevalley& group() const { return G_; }
  std::size_t size() const { return index_.size(); }
  const CellIndex& cells() const { return index_; }

  std::size_t index(const Coset& c) const { return index_.index(c.w, c.u); }
  Coset coset(std::size_t idx) const {
    auto [w, u] = index_.term(idx, G_.num_positive());
    return {w, u};
  }

  /// u w B in normal form for arbitrary u in U.
  Coset normalize(WeylGroup::Index w, const Unipotent& u) const {
    return {w, G_.leading_part(u, index_.roots_of(w))};
  }

  Coset act(const Atom& a, const Coset& x) const {
    const auto& rs = G_.roots();
    const auto& W = G_.weyl();
    const auto& F = G_.field();
    switch (a.kind) {
      case Atom::Kind::Root: {
        if (rs.is_positive(a.root)) return normalize(x.w, G_.mul(G_.root_element(a.root, a.c), x.u));
        const int s = rs.negate(a.root);
        if (!rs.is_simple(s)) throw DomainError("negative root atoms must be negated simple roots");
        // x_{-i}(c) = s_i x_i(-c) s_i^{-1}
        const unsigned i = static_cast<unsigned>(s);
        Coset y = act(Atom::weyl(i, -1), x);
        y = act(Atom::root_element(s, F.neg(a.c)), y);
        return act(Atom::weyl(i, 1), y);
      }
      case Atom::Kind::Torus:
        return {x.w, G_.conj_torus(a.t, x.u)};
      case Atom::Kind::Weyl: {
        if (a.power < 0) {
          // s_i^{-1} = alpha_i^vee(-1) s_i
          Coset y = act(Atom::weyl(a.i, 1), x);
          return act(Atom::torus(G_.coroot(a.i, F.neg(1))), y);
        }
        const unsigned i = a.i;
        const int ai = rs.simple(i);
        const Elem c = x.u[ai];
        Unipotent u1 = G_.mul(x.u, G_.root_element(ai, F.neg(c)));  // x.u = u1 x_i(c)
        Unipotent u2 = G_.conj_simple(i, u1);
        const WeylGroup::Index sw = W.mul_simple_left(i, x.w);
        if (c == 0 || W.length(sw) > W.length(x.w)) return normalize(sw, u2);
        return normalize(x.w, G_.mul(u2, G_.root_element(ai, F.neg(F.inv(c)))));
      }
    }
    return x;
  }

  /// Left translation by a word (rightmost atom acts first).
  Coset act(const GroupWord& g, Coset x) const {
    for (auto it = g.rbegin(); it != g.rend(); ++it) x = act(*it, x);
    return x;
  }

  std::vector<std::uint32_t> permutation(const Atom& a) const {
    std::vector<std::uint32_t> p(size());
    for (std::size_t k = 0; k < size(); ++k) p[k] = static_cast<std::uint32_t>(index(act(a, coset(k))));
    return p;
  }

 private:
  const Chevalley& G_;
  CellIndex index_;
};

/// F[G/B] over a coefficient field.
template <CoefficientField F>
class FlagModule {
 public:
  using T = typename F::value_type;

  FlagModule(const FlagSpace& X, F f) : X_(X), f_(std::move(f)) {
    for (const auto& a : X_.group().generators()) gen_perm_.push_back(X_.permutation(a));
  }

  const FlagSpace& space() const { return X_; }
  const F& field() const { return f_; }
  std::size_t dim() const { return X_.size(); }
  std::size_t num_generators() const { return gen_perm_.size(); }

  Vec<F> zero() const { return Vec<F>(dim(), f_.zero()); }
  Vec<F> unit(std::size_t k) const {
    auto v = zero();
    v[k] = f_.one();
    return v;
  }

  Vec<F> permute(const std::vector<std::uint32_t>& p, const Vec<F>& v) const {
    auto out = zero();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!f_.is_zero(v[k])) out[p[k]] = f_.add(out[p[k]], v[k]);
    return out;
  }
  Vec<F> act_generator(std::size_t g, const Vec<F>& v) const { return permute(gen_perm_[g], v); }
  Vec<F> act(const GroupWord& g, const Vec<F>& v) const {
    auto out = zero();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!f_.is_zero(v[k])) {
        auto j = X_.index(X_.act(g, X_.coset(k)));
        out[j] = f_.add(out[j], v[k]);
      }
    return out;
  }

  /// eta_J = sum_{w in W_J} (-1)^{l(w)} w B
  Vec<F> eta(Subset J) const {
    const auto& W = X_.group().weyl();
    auto v = zero();
    for (WeylGroup::Index w = 0; w < W.size(); ++w)
      if (W.in_parabolic(w, J)) {
        auto k = X_.index({w, X_.group().identity()});
        v[k] = (W.length(w) % 2) ? f_.neg(f_.one()) : f_.one();
      }
    return v;
  }

  /// u w eta_J
  Vec<F> translate_eta(const Unipotent& u, WeylGroup::Index w, Subset J) const {
    GroupWord g = X_.group().unipotent_word(u);
    auto ww = X_.group().weyl_word(w);
    g.insert(g.end(), ww.begin(), ww.end());
    return act(g, eta(J));
  }

  Echelon<F> spin(const std::vector<Vec<F>>& seeds, std::size_t cap = kDefaultSpinCap) const {
    return chevflag::spin(f_, dim(), seeds, num_generators(),
                          [&](std::size_t g, const Vec<F>& v) { return act_generator(g, v); }, cap);
  }

 private:
  const FlagSpace& X_;
  F f_;
  std::vector<std::vector<std::uint32_t>> gen_perm_;
};

/// Terms u w eta_J (w in X_J, u in U_{w_J w^{-1}}) indexing the claimed basis of M_J.
inline CellIndex mj_index(const Chevalley& G, const ParabolicSubset& P) {
  const auto& W = G.weyl();
  std::vector<std::vector<int>> roots;
  for (auto w : P.X) roots.push_back(W.inversion_set(W.mul(P.w_J, W.inverse(w))));
  return CellIndex(G.field().q(), P.X, roots);
}

/// Terms u w C_J (w in Y_J, u in U_{w_J w^{-1}}) indexing the claimed basis of E_J.
inline CellIndex ej_index(const Chevalley& G, const ParabolicSubset& P) {
  const auto& W = G.weyl();
  std::vector<std::vector<int>> roots;
  for (auto w : P.Y) roots.push_back(W.inversion_set(W.mul(P.w_J, W.inverse(w))));
  return CellIndex(G.field().q(), P.Y, roots);
}

struct BasisCheck {
  std::size_t claimed = 0;      // size of the claimed basis
  std::size_t rank = 0;         // rank of the claimed vectors
  std::size_t module_dim = 0;   // dimension of the module by spinning
  bool independent = false;
  bool spanning = false;
  bool holds() const { return independent && spanning; }
};

/// Checks that { u w eta_J } is a basis of M_J = F G eta_J.
template <CoefficientField F>
BasisCheck check_mj_basis(const FlagModule<F>& M, const ParabolicSubset& P, std::size_t cap = kDefaultSpinCap) {
  const auto& G = M.space().group();
  auto idx = mj_index(G, P);
  BasisCheck b;
  b.claimed = idx.size();
  Echelon<F> e(M.field(), M.dim());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto [w, u] = idx.term(k, G.num_positive());
    e.insert(M.translate_eta(u, w, P.J));
  }
  b.rank = e.dim();
  b.module_dim = M.spin({M.eta(P.J)}, cap).dim();
  b.independent = b.rank == b.claimed;
  b.spanning = b.rank == b.module_dim;
  if (b.spanning) {
    // every claimed vector lies in M_J, so equal dimension means equal spaces
    auto mj = M.spin({M.eta(P.J)}, cap);
    for (const auto& r : e.rows())
      if (!mj.contains(r)) b.spanning = false;
  }
  return b;
}

inline std::uint64_t hash_values(const std::vector<std::uint64_t>& v, std::uint64_t h = 1469598103934665603ull) {
  for (auto x : v) h = fnv1a(&x, sizeof(x), h);
  return h;
}

template <CoefficientField F>
std::uint64_t matrix_hash(const F& f, const Matrix<F>& m) {
  std::string s = std::to_string(m.rows) + "x" + std::to_string(m.cols) + ":";
  for (const auto& x : m.data) s += f.format(x) + ",";
  return fnv1a(s);
}

}  // namespace chevflag
