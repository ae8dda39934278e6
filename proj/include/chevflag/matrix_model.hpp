#pragma once

// SL_{n+1}(F_q) matrices for type A_n words: the cross-validation oracle for
// the collection and conjugation formulas.

#include <string>
#include <vector>

#include "chevflag/chevalley.hpp"
#include "chevflag/errors.hpp"

namespace chevflag {

using FqMatrix = std::vector<std::vector<Elem>>;

class MatrixModel {
 public:
  explicit MatrixModel(const Chevalley& G) : G_(&G), d_(G.rank() + 1) {
    if (G.roots().type() != 'A')
      throw UnsupportedError("matrix oracle is only available for type A, not " + G.roots().label());
  }

  unsigned degree() const { return d_; }

  FqMatrix identity() const {
    FqMatrix m(d_, std::vector<Elem>(d_, 0));
    for (unsigned i = 0; i < d_; ++i) m[i][i] = 1;
    return m;
  }

  FqMatrix mul(const FqMatrix& a, const FqMatrix& b) const {
    const auto& F = G_->field();
    FqMatrix c(d_, std::vector<Elem>(d_, 0));
    for (unsigned i = 0; i < d_; ++i)
      for (unsigned k = 0; k < d_; ++k) {
        if (!a[i][k]) continue;
        for (unsigned j = 0; j < d_; ++j) c[i][j] = F.add(c[i][j], F.mul(a[i][k], b[k][j]));
      }
    return c;
  }

  /// (row, col) of the matrix unit carrying root r: e_i - e_j <-> E_ij.
  std::pair<unsigned, unsigned> root_position(int r) const {
    const auto& rs = G_->roots();
    const auto& c = rs.coords(r);
    int first = -1, last = -1;
    for (unsigned k = 0; k < rs.rank(); ++k)
      if (c[k] != 0) {
        if (first < 0) first = static_cast<int>(k);
        last = static_cast<int>(k);
      }
    if (rs.is_positive(r)) return {static_cast<unsigned>(first), static_cast<unsigned>(last + 1)};
    return {static_cast<unsigned>(last + 1), static_cast<unsigned>(first)};
  }

  FqMatrix root_matrix(int r, Elem c) const {
    auto m = identity();
    auto [i, j] = root_position(r);
    m[i][j] = c;
    return m;
  }

  FqMatrix atom_matrix(const Atom& a) const {
    const auto& F = G_->field();
    const auto& rs = G_->roots();
    switch (a.kind) {
      case Atom::Kind::Root:
        if (!rs.is_positive(a.root) && !rs.is_simple(rs.negate(a.root)))
          throw DomainError("negative root atoms must be negated simple roots");
        return root_matrix(a.root, a.c);
      case Atom::Kind::Weyl: {
        // s_i = x_i(1) x_{-i}(-1) x_i(1)
        const int s = rs.simple(a.i);
        auto m = mul(mul(root_matrix(s, 1), root_matrix(rs.negate(s), F.neg(1))), root_matrix(s, 1));
        if (a.power < 0) m = mul(mul(m, m), m);  // s_i has order 4
        return m;
      }
      case Atom::Kind::Torus: {
        auto m = identity();
        for (unsigned j = 0; j < rs.rank(); ++j) {
          m[j][j] = F.mul(m[j][j], a.t.lambda[j]);
          m[j + 1][j + 1] = F.mul(m[j + 1][j + 1], F.inv(a.t.lambda[j]));
        }
        return m;
      }
    }
    return identity();
  }

  FqMatrix to_matrix(const GroupWord& w) const {
    auto m = identity();
    for (const auto& a : w) m = mul(m, atom_matrix(a));
    return m;
  }

  FqMatrix unipotent_matrix(const Unipotent& u) const { return to_matrix(G_->unipotent_word(u)); }

  /// Reads canonical coordinates back from an upper unitriangular matrix.
  Unipotent from_matrix(const FqMatrix& m) const {
    for (unsigned i = 0; i < d_; ++i)
      for (unsigned j = 0; j <= i; ++j)
        if (m[i][j] != (i == j ? 1 : 0)) throw DomainError("matrix is not upper unitriangular");
    Unipotent u = G_->identity();
    const auto& F = G_->field();
    auto rest = m;
    // peel factors in root order from the left: rest = x_r(c)^{-1} rest
    for (int r = 0; r < G_->num_positive(); ++r) {
      auto [i, j] = root_position(r);
      u[r] = rest[i][j];
      rest = mul(root_matrix(r, F.neg(u[r])), rest);
    }
    return u;
  }

  Elem determinant(FqMatrix a) const {
    const auto& F = G_->field();
    Elem det = 1;
    for (unsigned c = 0; c < d_; ++c) {
      unsigned p = c;
      while (p < d_ && a[p][c] == 0) ++p;
      if (p == d_) return 0;
      if (p != c) {
        std::swap(a[p], a[c]);
        det = F.neg(det);
      }
      det = F.mul(det, a[c][c]);
      const Elem inv = F.inv(a[c][c]);
      for (unsigned r = c + 1; r < d_; ++r) {
        const Elem f = F.mul(a[r][c], inv);
        if (!f) continue;
        for (unsigned k = c; k < d_; ++k) a[r][k] = F.sub(a[r][k], F.mul(f, a[c][k]));
      }
    }
    return det;
  }

 private:
  const Chevalley* G_;
  unsigned d_;
};

}  // namespace chevflag
