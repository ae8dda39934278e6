#pragma once

// Presentations of M_J and E_J by generator matrices. E_J is built two ways:
// as a quotient of spun subspaces of F[G/B], and symbolically from the
// rewriting rules; EJModule wraps the symbolic form for the later searches.

#include <optional>
#include <string>
#include <vector>

#include "chevflag/chevalley.hpp"
#include "chevflag/coefficient_field.hpp"
#include "chevflag/errors.hpp"
#include "chevflag/flagmod.hpp"
#include "chevflag/linalg.hpp"
#include "chevflag/rewriting.hpp"

namespace chevflag {

template <CoefficientField F>
struct Presentation {
  std::string kind;  // "M_J" or "E_J"
  Subset J = 0;
  std::string mode;  // "spin", "quotient" or "rewriting"
  CellIndex basis;
  std::vector<Atom> generators;
  std::vector<Matrix<F>> matrices;  // empty when the basis check failed
  std::optional<BasisCheck> check;
  std::size_t dim() const { return basis.size(); }
};

namespace detail {

template <CoefficientField F>
Matrix<F> columns_to_matrix(const F& f, const std::vector<Vec<F>>& cols, std::size_t rows) {
  Matrix<F> m(rows, cols.size(), f.zero());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

template <CoefficientField F>
Vec<F> unit_tag(const F& f, std::size_t n, std::size_t k) {
  Vec<F> t(n, f.zero());
  t[k] = f.one();
  return t;
}

}  // namespace detail

/// M_J = F G eta_J with the basis {u w eta_J}, verified and expressed by matrices.
template <CoefficientField F>
Presentation<F> mj_presentation(const FlagModule<F>& M, Subset J, std::size_t cap = kDefaultSpinCap) {
  const auto& G = M.space().group();
  const auto& f = M.field();
  Presentation<F> p;
  p.kind = "M_J";
  p.J = J;
  p.mode = "spin";
  const auto P = parabolic_data(G.weyl(), J);
  p.basis = mj_index(G, P);
  p.generators = G.generators();
  const std::size_t n = p.basis.size();
  Echelon<F> e(f, M.dim(), n);
  std::vector<Vec<F>> claimed;
  BasisCheck b;
  b.claimed = n;
  bool indep = true;
  for (std::size_t k = 0; k < n; ++k) {
    auto [w, u] = p.basis.term(k, G.num_positive());
    claimed.push_back(M.translate_eta(u, w, J));
    if (!e.insert(claimed.back(), detail::unit_tag(f, n, k))) indep = false;
  }
  b.rank = e.dim();
  auto mj = M.spin({M.eta(J)}, cap);
  b.module_dim = mj.dim();
  b.independent = indep;
  b.spanning = b.rank == b.module_dim;
  for (const auto& r : e.rows())
    if (!mj.contains(r)) b.spanning = false;
  p.check = b;
  if (!b.holds()) return p;
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    std::vector<Vec<F>> cols;
    for (std::size_t k = 0; k < n; ++k) cols.push_back(*e.coordinates(M.act_generator(g, claimed[k])));
    p.matrices.push_back(detail::columns_to_matrix(f, cols, n));
  }
  return p;
}

/// E_J = M_J / sum_{K > J} M_K by spinning, on the classes of {u w eta_J : w in Y_J}.
template <CoefficientField F>
Presentation<F> ej_quotient(const FlagModule<F>& M, Subset J, std::size_t cap = kDefaultSpinCap) {
  const auto& G = M.space().group();
  const auto& f = M.field();
  Presentation<F> p;
  p.kind = "E_J";
  p.J = J;
  p.mode = "quotient";
  const auto P = parabolic_data(G.weyl(), J);
  p.basis = ej_index(G, P);
  p.generators = G.generators();
  const std::size_t n = p.basis.size();
  const unsigned rank = G.rank();

  std::vector<Vec<F>> larger;
  for (Subset K : all_subsets(rank))
    if ((K & J) == J && K != J) larger.push_back(M.eta(K));
  auto mprime = M.spin(larger, cap);
  auto mj = M.spin({M.eta(J)}, cap);

  Echelon<F> e(f, M.dim(), n);
  for (const auto& r : mprime.rows()) e.insert(r, Vec<F>(n, f.zero()));
  std::vector<Vec<F>> claimed;
  BasisCheck b;
  b.claimed = n;
  bool indep = true;
  for (std::size_t k = 0; k < n; ++k) {
    auto [w, u] = p.basis.term(k, G.num_positive());
    claimed.push_back(M.translate_eta(u, w, J));
    if (!e.insert(claimed.back(), detail::unit_tag(f, n, k))) indep = false;
  }
  b.rank = e.dim() - mprime.dim();
  b.module_dim = mj.dim() - mprime.dim();
  b.independent = indep;
  b.spanning = e.dim() == mj.dim();
  p.check = b;
  if (!b.holds()) return p;
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    std::vector<Vec<F>> cols;
    for (std::size_t k = 0; k < n; ++k) cols.push_back(*e.coordinates(M.act_generator(g, claimed[k])));
    p.matrices.push_back(detail::columns_to_matrix(f, cols, n));
  }
  return p;
}

/// E_J with the action of s_i computed by rewriting and reduction; unipotent
/// and torus elements act within cells.
template <CoefficientField F>
class EJModule {
 public:
  using T = typename F::value_type;

  EJModule(const Chevalley& G, Subset J, F f) : G_(G), f_(std::move(f)), rw_(G, J) {
    const auto& idx = rw_.ej();
    const std::size_t n = idx.size();
    for (unsigned i = 0; i < G_.rank(); ++i) {
      Matrix<F> m(n, n, f_.zero());
      for (std::size_t k = 0; k < n; ++k) {
        auto [w, u] = idx.term(k, G_.num_positive());
        for (const auto& [c, t] : rw_.weyl_on_term(i, MJTerm{w, u}))
          for (auto [j, d] : rw_.reduce(t)) m(j, k) = f_.add(m(j, k), f_.from_int(c * d));
      }
      weyl_.push_back(std::move(m));
    }
  }

  const Chevalley& group() const { return G_; }
  const F& field() const { return f_; }
  Subset J() const { return rw_.parabolic().J; }
  const ParabolicSubset& parabolic() const { return rw_.parabolic(); }
  const CellIndex& basis() const { return rw_.ej(); }
  std::size_t dim() const { return rw_.ej().size(); }
  const Matrix<F>& weyl_matrix(unsigned i) const { return weyl_[i]; }

  Vec<F> zero() const { return Vec<F>(dim(), f_.zero()); }
  Vec<F> unit(std::size_t k) const {
    auto v = zero();
    v[k] = f_.one();
    return v;
  }
  Vec<F> basis_vector(WeylGroup::Index w, const Unipotent& u) const {
    return unit(basis().index(w, G_.leading_part(u, basis().roots_of(w))));
  }
  /// C_J, the image of eta_J.
  Vec<F> generator() const { return basis_vector(0, G_.identity()); }

  std::size_t act_unipotent_index(const Unipotent& x, std::size_t k) const {
    auto [w, u] = basis().term(k, G_.num_positive());
    return basis().index(w, G_.leading_part(G_.mul(x, u), basis().roots_of(w)));
  }

  Vec<F> act_unipotent(const Unipotent& x, const Vec<F>& v) const {
    auto out = zero();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!f_.is_zero(v[k])) {
        auto j = act_unipotent_index(x, k);
        out[j] = f_.add(out[j], v[k]);
      }
    return out;
  }

  Vec<F> act_torus(const Torus& t, const Vec<F>& v) const {
    auto out = zero();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!f_.is_zero(v[k])) {
        auto [w, u] = basis().term(k, G_.num_positive());
        auto j = basis().index(w, G_.conj_torus(t, u));
        out[j] = f_.add(out[j], v[k]);
      }
    return out;
  }

  Vec<F> act_weyl(unsigned i, int power, const Vec<F>& v) const {
    auto out = mat_vec(f_, weyl_[i], v);
    // s_i^{-1} = alpha_i^vee(-1) s_i
    if (power < 0) out = act_torus(G_.coroot(i, G_.field().neg(1)), out);
    return out;
  }

  Vec<F> act(const Atom& a, const Vec<F>& v) const {
    const auto& rs = G_.roots();
    switch (a.kind) {
      case Atom::Kind::Root: {
        if (rs.is_positive(a.root)) return act_unipotent(G_.root_element(a.root, a.c), v);
        const int s = rs.negate(a.root);
        if (!rs.is_simple(s)) throw DomainError("negative root atoms must be negated simple roots");
        const unsigned i = static_cast<unsigned>(s);
        auto y = act_weyl(i, -1, v);
        y = act_unipotent(G_.root_element(s, G_.field().neg(a.c)), y);
        return act_weyl(i, 1, y);
      }
      case Atom::Kind::Torus:
        return act_torus(a.t, v);
      case Atom::Kind::Weyl:
        return act_weyl(a.i, a.power, v);
    }
    return v;
  }

  /// Left action of a word (rightmost atom first).
  Vec<F> act(const GroupWord& g, Vec<F> v) const {
    for (auto it = g.rbegin(); it != g.rend(); ++it) v = act(*it, v);
    return v;
  }

  /// Sum over x in X of x v.
  Vec<F> group_sum(const std::vector<Unipotent>& X, const Vec<F>& v) const {
    auto out = zero();
    for (const auto& x : X) {
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!f_.is_zero(v[k])) {
          auto j = act_unipotent_index(x, k);
          out[j] = f_.add(out[j], v[k]);
        }
    }
    return out;
  }

  Matrix<F> matrix_of(const Atom& a) const {
    std::vector<Vec<F>> cols;
    for (std::size_t k = 0; k < dim(); ++k) cols.push_back(act(a, unit(k)));
    return detail::columns_to_matrix(f_, cols, dim());
  }

  std::vector<Matrix<F>> generator_matrices() const {
    std::vector<Matrix<F>> out;
    for (const auto& a : G_.generators()) out.push_back(matrix_of(a));
    return out;
  }

  Echelon<F> spin(const std::vector<Vec<F>>& seeds, std::size_t cap = kDefaultSpinCap) const {
    const auto gens = G_.generators();
    return chevflag::spin(f_, dim(), seeds, gens.size(),
                          [&](std::size_t g, const Vec<F>& v) { return act(gens[g], v); }, cap);
  }

 private:
  const Chevalley& G_;
  F f_;
  MJRewriter rw_;
  std::vector<Matrix<F>> weyl_;
};

template <CoefficientField F>
Presentation<F> ej_rewriting(const EJModule<F>& E) {
  Presentation<F> p;
  p.kind = "E_J";
  p.J = E.J();
  p.mode = "rewriting";
  p.basis = E.basis();
  p.generators = E.group().generators();
  p.matrices = E.generator_matrices();
  return p;
}

}  // namespace chevflag
