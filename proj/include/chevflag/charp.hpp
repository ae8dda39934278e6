#pragma once

// Equal-characteristic reductions in E_J: group sums, fixed points of finite
// p-subgroups of U, the abelian product dichotomy, and the one-term and
// least-term reductions, each recorded as a replayable certificate.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chevflag/augment.hpp"
#include "chevflag/ejmodule.hpp"
#include "chevflag/errors.hpp"
#include "chevflag/selfenc.hpp"

namespace chevflag {

inline constexpr std::size_t kMaxReductionRounds = 64;

/// sum_k c_k g_k in the group algebra.
template <CoefficientField F>
struct AlgebraElement {
  std::string label;
  std::vector<std::pair<typename F::value_type, GroupWord>> terms;
};

template <CoefficientField F>
AlgebraElement<F> group_sum_element(const Chevalley& G, const F& f, const std::vector<Unipotent>& X, std::string label) {
  AlgebraElement<F> a{std::move(label), {}};
  for (const auto& x : X) a.terms.push_back({f.one(), G.unipotent_word(x)});
  return a;
}

template <CoefficientField F>
Vec<F> apply_element(const EJModule<F>& E, const AlgebraElement<F>& a, const Vec<F>& v) {
  auto out = E.zero();
  for (const auto& [c, g] : a.terms) axpy(E.field(), out, c, E.act(g, v));
  return out;
}

template <CoefficientField F>
struct Certificate {
  std::vector<AlgebraElement<F>> steps;
  std::size_t size() const { return steps.size(); }
};

template <CoefficientField F>
Vec<F> replay(const EJModule<F>& E, const Certificate<F>& c, Vec<F> v) {
  for (const auto& s : c.steps) v = apply_element(E, s, v);
  return v;
}

template <CoefficientField F>
void require_equal_characteristic(const EJModule<F>& E) {
  if (E.field().characteristic() != E.group().field().p())
    throw ConfigError("group-sum reductions need char F = char F_q; got " + E.field().name() + " and q = " +
                      std::to_string(E.group().field().q()));
}

template <CoefficientField F>
Vec<F> apply_group_sum(const EJModule<F>& E, const std::vector<Unipotent>& X, const Vec<F>& v) {
  require_equal_characteristic(E);
  return E.group_sum(X, v);
}

// ---- abelian product dichotomy ----

/// Finite abelian group Z/n_1 x ... x Z/n_k with elements as residue vectors.
struct AbelianGroup {
  std::vector<unsigned> moduli;
  using Element = std::vector<unsigned>;

  Element add(const Element& a, const Element& b) const {
    Element c(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = (a[i] + b[i]) % moduli[i];
    return c;
  }
  std::vector<Element> elements() const {
    std::vector<Element> out{Element(moduli.size(), 0)};
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      std::vector<Element> next;
      for (const auto& e : out)
        for (unsigned r = 0; r < moduli[i]; ++r) {
          auto x = e;
          x[i] = r;
          next.push_back(x);
        }
      out = std::move(next);
    }
    return out;
  }
};

enum class SumVerdict { Zero, Full };

/// The product H' K of group sums in F_p[G], where G = H x K and |H'| = |H|.
inline SumVerdict abelian_sum_identity(const AbelianGroup& G, const std::set<AbelianGroup::Element>& H,
                                       const std::set<AbelianGroup::Element>& K,
                                       const std::set<AbelianGroup::Element>& Hp, unsigned p) {
  if (Hp.size() != H.size()) throw PreconditionError("|H'| must equal |H|");
  const auto all = G.elements();
  std::set<AbelianGroup::Element> HK;
  for (const auto& h : H)
    for (const auto& k : K) HK.insert(G.add(h, k));
  if (HK.size() != all.size() || H.size() * K.size() != all.size())
    throw PreconditionError("G is not the direct product H x K");
  std::map<AbelianGroup::Element, unsigned> coef;
  for (const auto& h : Hp)
    for (const auto& k : K) coef[G.add(h, k)] += 1;
  bool zero = true, full = true;
  for (const auto& g : all) {
    const unsigned c = coef.count(g) ? coef[g] % p : 0;
    if (c != 0) zero = false;
    if (c != 1 % p) full = false;
  }
  if (zero) return SumVerdict::Zero;
  if (full) return SumVerdict::Full;
  throw DomainError("product of group sums is neither 0 nor the full sum");
}

// ---- fixed points ----

/// Minimal generating subset of a finite subgroup of U.
inline std::vector<Unipotent> generating_subset(const Chevalley& G, const ElementSet& V) {
  std::vector<Unipotent> gens;
  ElementSet cur{G.identity()};
  for (const auto& v : V)
    if (!cur.count(v)) {
      gens.push_back(v);
      cur = generate(G, gens);
    }
  return gens;
}

/// The V-invariant vectors of a V-stable subspace S (given by its rows).
template <CoefficientField F>
std::vector<Vec<F>> fixed_points(const EJModule<F>& E, const ElementSet& V, const Echelon<F>& S) {
  require_equal_characteristic(E);
  const auto& f = E.field();
  const auto gens = generating_subset(E.group(), V);
  const auto& rows = S.rows();
  if (rows.empty()) return {};
  Matrix<F> A(gens.size() * E.dim(), rows.size(), f.zero());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      auto img = E.act_unipotent(gens[g], rows[j]);
      if (!S.contains(img)) throw DomainError("subspace is not stable under the group");
      for (std::size_t i = 0; i < E.dim(); ++i) A(g * E.dim() + i, j) = f.sub(img[i], rows[j][i]);
    }
  std::vector<Vec<F>> out;
  for (const auto& c : nullspace(f, A)) {
    auto v = E.zero();
    for (std::size_t j = 0; j < rows.size(); ++j) axpy(f, v, c[j], rows[j]);
    out.push_back(std::move(v));
  }
  return out;
}

// ---- shapes ----

/// Cells where v is nonzero.
template <CoefficientField F>
std::vector<WeylGroup::Index> active_cells(const EJModule<F>& E, const Vec<F>& v) {
  std::vector<WeylGroup::Index> out;
  const auto& B = E.basis();
  for (std::size_t c = 0; c < B.num_cells(); ++c)
    for (std::size_t k = B.cell_offset(c); k < B.cell_offset(c) + B.cell_size(c); ++k)
      if (!E.field().is_zero(v[k])) {
        out.push_back(B.cells()[c]);
        break;
      }
  return out;
}

template <CoefficientField F>
ElementSet support(const EJModule<F>& E, const Vec<F>& v) {
  ElementSet s;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!E.field().is_zero(v[k])) s.insert(E.basis().term(k, E.group().num_positive()).second);
  return s;
}

template <CoefficientField F>
struct GroupSumShape {
  WeylGroup::Index w = 0;
  ElementSet X;
  typename F::value_type scale{};  // v = scale * X w C_J
};

/// v = a * (sum_{x in X} x) w C_J with X a subgroup, a != 0.
template <CoefficientField F>
std::optional<GroupSumShape<F>> group_sum_shape(const EJModule<F>& E, const Vec<F>& v) {
  auto cells = active_cells(E, v);
  if (cells.size() != 1) return std::nullopt;
  const auto& f = E.field();
  GroupSumShape<F> s;
  s.w = cells[0];
  bool first = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (f.is_zero(v[k])) continue;
    if (first) {
      s.scale = v[k];
      first = false;
    } else if (!(v[k] == s.scale)) {
      return std::nullopt;
    }
    s.X.insert(E.basis().term(k, E.group().num_positive()).second);
  }
  if (!is_subgroup(E.group(), s.X)) return std::nullopt;
  return s;
}

template <CoefficientField F>
AlgebraElement<F> scalar_element(const F& f, const typename F::value_type& c, std::string label) {
  return AlgebraElement<F>{std::move(label), {{c, GroupWord{}}}};
}

/// F_p-subspaces of F_q (additive subgroups), smallest first.
inline std::vector<std::vector<Elem>> additive_subgroups(const FiniteField& Fq) {
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> todo{{0}};
  seen.insert({0});
  while (!todo.empty()) {
    auto s = todo.back();
    todo.pop_back();
    for (unsigned c = 1; c < Fq.q(); ++c) {
      auto g = s;
      g.push_back(static_cast<Elem>(c));
      auto span = Fq.additive_span(g);
      std::sort(span.begin(), span.end());
      if (seen.insert(span).second) todo.push_back(span);
    }
  }
  std::vector<std::vector<Elem>> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

/// All subgroups of U for |U| <= 64, smallest first.
inline std::vector<ElementSet> small_subgroups(const Chevalley& G) {
  SmallUnipotentGroup S(G);
  std::vector<ElementSet> out;
  for (auto m : S.overgroups(0)) out.push_back(S.set_of(m));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

// ---- one-term reduction ----

template <CoefficientField F>
struct ReductionResult {
  bool ok = false;
  WeylGroup::Index w = 0;
  ElementSet X;
  Vec<F> value;  // X w C_J
  Certificate<F> certificate;
  std::vector<std::string> trace;
};

template <CoefficientField F>
class CharPReducer {
 public:
  using T = typename F::value_type;

  explicit CharPReducer(const EJModule<F>& E) : E_(E), G_(E.group()) {
    require_equal_characteristic(E_);
    std::size_t order = 1;
    for (int r = 0; r < G_.num_positive(); ++r) order *= G_.field().q();
    if (order <= 64) subgroups_ = small_subgroups(G_);
  }

  const EJModule<F>& module() const { return E_; }

  /// From xi to a single-cell group sum X w C_J.
  ReductionResult<F> oneterm(const Vec<F>& xi) const {
    ReductionResult<F> res;
    if (is_zero_vec(E_.field(), xi)) throw PreconditionError("xi must be nonzero");
    Vec<F> eta = xi;
    for (std::size_t round = 0; round < kMaxReductionRounds; ++round) {
      if (finish(eta, res)) return res;
      // fixed points of kV eta for a self-enclosed V containing the support
      const auto V = closure(G_, support(E_, eta)).H;
      auto fixed = fixed_vector(V, eta, res);
      if (!fixed) return res;
      eta = *fixed;
      if (finish(eta, res)) return res;
      auto next = omega_step(V, eta, res);
      if (!next) next = subgroup_fallback(eta, res);
      if (!next) {
        res.trace.push_back("no multiplier lowers the number of cells");
        return res;
      }
      eta = *next;
    }
    res.trace.push_back("round cap reached");
    return res;
  }

  /// Further single-cell group sums alpha g xi with alpha in kV, V over the
  /// subgroups of U (smallest first) and g in {1, s_i^{+-1}}, ordered by cell
  /// length then |X|.
  std::vector<ReductionResult<F>> oneterm_alternatives(const Vec<F>& xi, std::size_t limit = 16) const {
    const auto& f = E_.field();
    const auto& W = G_.weyl();
    std::vector<ReductionResult<F>> out;
    std::set<Vec<F>> seen;
    const std::size_t l = static_cast<std::size_t>(f.characteristic());
    std::vector<std::optional<Atom>> pre{std::nullopt};
    for (unsigned i = 0; i < G_.rank(); ++i) {
      pre.push_back(Atom::weyl(i, 1));
      pre.push_back(Atom::weyl(i, -1));
    }
    for (const auto& g : pre) {
      const Vec<F> base = g ? E_.act(*g, xi) : xi;
      for (const auto& V : subgroups_) {
        if (V.size() < 2) continue;
        std::vector<Unipotent> Vlist(V.begin(), V.end());
        auto span = orbit_span(Vlist, base);
        auto fixed = fixed_points(E_, V, span);
        std::size_t total = 1;
        for (std::size_t k = 0; k < fixed.size() && total <= 4096; ++k) total *= l;
        if (total > 4096) continue;
        for (std::size_t code = 1; code < total; ++code) {
          auto v = E_.zero();
          std::size_t c = code;
          for (std::size_t k = 0; k < fixed.size(); ++k, c /= l)
            axpy(f, v, f.from_int(static_cast<std::int64_t>(c % l)), fixed[k]);
          auto shape = group_sum_shape(E_, v);
          if (!shape || !(shape->scale == f.one()) || !seen.insert(v).second) continue;
          ReductionResult<F> r;
          if (g) r.certificate.steps.push_back(AlgebraElement<F>{"Weyl move", {{f.one(), GroupWord{*g}}}});
          r.certificate.steps.push_back(certify(Vlist, span, v, V.size()));
          r.trace.push_back("fixed vector of kV g xi with |V| = " + std::to_string(V.size()));
          finish(v, r);
          out.push_back(std::move(r));
        }
      }
    }
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
      if (W.length(a.w) != W.length(b.w)) return W.length(a.w) < W.length(b.w);
      return a.X.size() < b.X.size();
    });
    if (out.size() > limit) out.resize(limit);
    return out;
  }

  /// From X (s w) C_J to H w C_J, where s = s_i and
  /// s w > w. The input must be a group-sum vector on the (s w)-cell.
  ReductionResult<F> leastterm(const Vec<F>& input, unsigned i) const {
    ReductionResult<F> res;
    const auto& W = G_.weyl();
    auto shape = group_sum_shape(E_, input);
    if (!shape) throw PreconditionError("input is not a single-cell group sum");
    const auto sw = shape->w;
    const auto w = W.mul_simple_left(i, sw);
    if (W.length(w) >= W.length(sw)) throw PreconditionError("s w must be longer than w");
    if (!E_.basis().has_cell(w)) throw DomainError("w is not in Y_J");
    res.trace.push_back("descend " + W.format(sw) + " -> " + W.format(w) + "; CD2 inequality " +
                        (cd2_inequality(w, i) ? "holds" : "fails"));
    const int ai = G_.roots().simple(i);
    bool alpha_trivial = true;
    for (const auto& x : shape->X)
      if (x[ai] != 0) alpha_trivial = false;
    Vec<F> v = input;
    {
      // s^{-1} when X misses U_alpha, s otherwise
      AlgebraElement<F> a{alpha_trivial ? "conjugate by s^-1" : "multiply by s",
                          {{E_.field().one(), GroupWord{Atom::weyl(i, alpha_trivial ? -1 : 1)}}}};
      v = apply_element(E_, a, v);
      res.certificate.steps.push_back(std::move(a));
    }
    if (accept_at(v, w, res)) return res;
    // multipliers: products of additive subgroups on the roots of both cells
    const auto roots = tail_roots(w, i);
    if (auto r = root_product_search(v, w, roots, res)) {
      if (accept_at(*r, w, res)) return res;
    }
    for (const auto& Om : subgroups_) {
      if (Om.size() < 2) continue;
      auto t = E_.group_sum({Om.begin(), Om.end()}, v);
      if (group_sum_shape(E_, t) && group_sum_shape(E_, t)->w == w) {
        res.certificate.steps.push_back(group_sum_element(G_, E_.field(), {Om.begin(), Om.end()}, "subgroup sum"));
        if (accept_at(t, w, res)) return res;
      }
    }
    res.trace.push_back("no multiplier isolates the lower cell");
    return res;
  }

  /// (U_{w_J w^{-1}})^s != U_{w_J w^{-1}}, compared as root sets.
  bool cd2_inequality(WeylGroup::Index w, unsigned i) const {
    const auto& W = G_.weyl();
    auto roots = W.inversion_set(W.mul(E_.parabolic().w_J, W.inverse(w)));
    std::set<int> a(roots.begin(), roots.end()), b;
    for (int r : roots) b.insert(G_.roots().reflect(i, r));
    return a != b;
  }

 private:
  bool finish(const Vec<F>& eta, ReductionResult<F>& res) const {
    auto s = group_sum_shape(E_, eta);
    if (!s) return false;
    if (!(s->scale == E_.field().one()))
      res.certificate.steps.push_back(scalar_element(E_.field(), E_.field().inv(s->scale), "normalize"));
    res.ok = true;
    res.w = s->w;
    res.X = s->X;
    res.value = E_.group_sum({s->X.begin(), s->X.end()}, E_.basis_vector(s->w, G_.identity()));
    return true;
  }

  bool accept_at(const Vec<F>& v, WeylGroup::Index w, ReductionResult<F>& res) const {
    auto s = group_sum_shape(E_, v);
    if (!s || s->w != w) return false;
    return finish(v, res);
  }

  // kV eta, tagged by the elements of V.
  Echelon<F> orbit_span(const std::vector<Unipotent>& Vlist, const Vec<F>& eta) const {
    const auto& f = E_.field();
    Echelon<F> span(f, E_.dim(), Vlist.size());
    for (std::size_t k = 0; k < Vlist.size(); ++k) {
      Vec<F> tag(Vlist.size(), f.zero());
      tag[k] = f.one();
      span.insert(E_.act_unipotent(Vlist[k], eta), tag);
    }
    return span;
  }

  // alpha in kV with alpha eta = v.
  AlgebraElement<F> certify(const std::vector<Unipotent>& Vlist, const Echelon<F>& span, const Vec<F>& v,
                            std::size_t order) const {
    auto alpha = *span.coordinates(v);
    AlgebraElement<F> a{"fixed vector of kV xi, |V| = " + std::to_string(order), {}};
    for (std::size_t k = 0; k < Vlist.size(); ++k)
      if (!E_.field().is_zero(alpha[k])) a.terms.push_back({alpha[k], G_.unipotent_word(Vlist[k])});
    return a;
  }

  // A V-fixed vector of kV eta with fewest active cells, written as alpha eta.
  std::optional<Vec<F>> fixed_vector(const ElementSet& V, const Vec<F>& eta, ReductionResult<F>& res) const {
    std::vector<Unipotent> Vlist(V.begin(), V.end());
    auto span = orbit_span(Vlist, eta);
    auto fixed = fixed_points(E_, V, span);
    if (fixed.empty()) {
      res.trace.push_back("fixed subspace is zero");
      return std::nullopt;
    }
    auto best = pick_fewest_cells(fixed);
    res.certificate.steps.push_back(certify(Vlist, span, best, V.size()));
    res.trace.push_back("fixed vector on " + std::to_string(active_cells(E_, best).size()) + " cells");
    return best;
  }

  // Fewest active cells, then fewest nonzero coordinates.
  Vec<F> pick_fewest_cells(const std::vector<Vec<F>>& basis) const {
    const auto& f = E_.field();
    auto weight = [&](const Vec<F>& v) {
      std::size_t n = 0;
      for (const auto& x : v) n += !f.is_zero(x);
      return n;
    };
    std::size_t total = 1;
    const std::size_t l = static_cast<std::size_t>(f.characteristic());
    for (std::size_t k = 0; k < basis.size() && total <= 4096; ++k) total *= l;
    Vec<F> best = basis[0];
    std::size_t best_cells = active_cells(E_, best).size();
    if (total <= 4096) {
      for (std::size_t code = 1; code < total; ++code) {
        auto v = E_.zero();
        std::size_t c = code;
        for (std::size_t k = 0; k < basis.size(); ++k, c /= l) axpy(f, v, f.from_int(static_cast<std::int64_t>(c % l)), basis[k]);
        auto n = active_cells(E_, v).size();
        if (n > 0 && (n < best_cells || (n == best_cells && weight(v) < weight(best)))) {
          best = v;
          best_cells = n;
        }
      }
    } else {
      for (const auto& v : basis) {
        auto n = active_cells(E_, v).size();
        if (n < best_cells) {
          best = v;
          best_cells = n;
        }
      }
    }
    return best;
  }

  // The multiplier built from y in U_{gamma_s} \ V_{gamma_s}.
  std::optional<Vec<F>> omega_step(const ElementSet& V, const Vec<F>& eta, ReductionResult<F>& res) const {
    const auto& W = G_.weyl();
    const auto wJ = E_.parabolic().w_J;
    auto cells = active_cells(E_, eta);
    std::set<int> uni;
    std::vector<std::set<int>> per;
    for (auto w : cells) {
      auto r = W.inversion_set(W.mul(wJ, W.inverse(w)));
      per.emplace_back(r.begin(), r.end());
      uni.insert(r.begin(), r.end());
    }
    std::vector<int> gammas(uni.begin(), uni.end());  // root order refines height
    int s = -1;
    for (int k = static_cast<int>(gammas.size()); k-- > 0;) {
      bool in_all = true;
      for (const auto& p : per)
        if (!p.count(gammas[k])) in_all = false;
      if (!in_all) {
        s = k;
        break;
      }
    }
    if (s < 0) return std::nullopt;
    const int gs = gammas[s];
    const auto Vg = root_part(G_, V, gs);
    std::optional<Elem> y;
    for (unsigned c = 1; c < G_.field().q() && !y; ++c)
      if (!Vg.count(static_cast<Elem>(c))) y = static_cast<Elem>(c);
    if (!y) {
      res.trace.push_back("V already contains U_gamma_s");
      return std::nullopt;
    }
    std::vector<int> tail(gammas.begin() + s, gammas.end());
    std::vector<Unipotent> tail_gens;
    for (int r : tail)
      for (const auto& g : root_generators(G_, r, root_part(G_, V, r))) tail_gens.push_back(g);
    const auto VT = generate(G_, tail_gens);
    ElementSet seeds = V;
    seeds.insert(G_.root_element(gs, *y));
    const auto X = closure(G_, seeds).H;
    const auto XT = restrict_to(G_, X, tail);
    std::vector<Unipotent> omega;
    ElementSet covered;
    for (const auto& x : XT) {
      if (covered.count(x)) continue;
      omega.push_back(x);
      for (const auto& v : VT) covered.insert(G_.mul(x, v));
    }
    auto out = E_.group_sum(omega, eta);
    if (is_zero_vec(E_.field(), out) || active_cells(E_, out).size() >= cells.size()) {
      res.trace.push_back("Omega_s at " + G_.roots().format_root(gs) + " does not lower the cell count");
      return std::nullopt;
    }
    res.certificate.steps.push_back(group_sum_element(G_, E_.field(), omega, "Omega_s at " + G_.roots().format_root(gs)));
    res.trace.push_back("Omega_s at " + G_.roots().format_root(gs) + ", |Omega| = " + std::to_string(omega.size()));
    return out;
  }

  std::optional<Vec<F>> subgroup_fallback(const Vec<F>& eta, ReductionResult<F>& res) const {
    const auto n = active_cells(E_, eta).size();
    for (const auto& Om : subgroups_) {
      if (Om.size() < 2) continue;
      auto out = E_.group_sum({Om.begin(), Om.end()}, eta);
      if (is_zero_vec(E_.field(), out) || active_cells(E_, out).size() >= n) continue;
      res.certificate.steps.push_back(group_sum_element(G_, E_.field(), {Om.begin(), Om.end()}, "subgroup sum"));
      res.trace.push_back("subgroup sum of order " + std::to_string(Om.size()));
      return out;
    }
    return std::nullopt;
  }

  // Roots of U_{w_J w^{-1}} and U_{w_J w^{-1} s}, height order.
  std::vector<int> tail_roots(WeylGroup::Index w, unsigned i) const {
    const auto& W = G_.weyl();
    const auto wJ = E_.parabolic().w_J;
    auto a = W.inversion_set(W.mul(wJ, W.inverse(w)));
    auto b = W.inversion_set(W.mul_simple_right(W.mul(wJ, W.inverse(w)), i));
    std::set<int> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    return {u.begin(), u.end()};
  }

  // Products of additive subgroups Omega_k of U_{beta_k}, smallest total first.
  std::optional<Vec<F>> root_product_search(const Vec<F>& v, WeylGroup::Index w, const std::vector<int>& roots,
                                            ReductionResult<F>& res) const {
    const auto subs = additive_subgroups(G_.field());
    const std::size_t n = roots.size();
    std::size_t combos = 1;
    for (std::size_t k = 0; k < n && combos <= 20000; ++k) combos *= subs.size();
    if (combos > 20000) return std::nullopt;
    std::vector<std::vector<std::size_t>> order;
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<std::size_t> pick(n);
      std::size_t c = code;
      for (std::size_t k = 0; k < n; ++k, c /= subs.size()) pick[k] = c % subs.size();
      order.push_back(pick);
    }
    auto weight = [&](const std::vector<std::size_t>& p) {
      std::size_t s = 1;
      for (auto x : p) s *= subs[x].size();
      return s;
    };
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) { return weight(a) < weight(b); });
    for (const auto& pick : order) {
      Vec<F> t = v;
      std::vector<AlgebraElement<F>> steps;
      // Omega_r ... Omega_m: the highest root acts first
      for (std::size_t k = n; k-- > 0;) {
        if (subs[pick[k]].size() < 2) continue;
        std::vector<Unipotent> Om;
        for (Elem c : subs[pick[k]]) Om.push_back(G_.root_element(roots[k], c));
        t = E_.group_sum(Om, t);
        steps.push_back(group_sum_element(G_, E_.field(), Om, "Omega at " + G_.roots().format_root(roots[k])));
      }
      auto s = group_sum_shape(E_, t);
      if (s && s->w == w) {
        for (auto& st : steps) res.certificate.steps.push_back(std::move(st));
        res.trace.push_back("root-subgroup product of order " + std::to_string(weight(pick)));
        return t;
      }
    }
    return std::nullopt;
  }

  const EJModule<F>& E_;
  const Chevalley& G_;
  std::vector<ElementSet> subgroups_;
};

template <CoefficientField F>
struct PipelineResult {
  bool completed = false;
  std::vector<std::string> stages;       // "oneterm", then one entry per descent
  ElementSet H;                          // final H with H C_J
  Vec<F> final_vector;                   // H C_J
  Certificate<F> certificate;            // replays xi to H C_J
  bool certificate_replays = false;
  bool member_of_spin = false;
  std::optional<bool> coefficient_sum_ok;  // w_J H C_J sums to (-1)^{l(w_J)}
  bool contains_generator = false;       // C_J in spin(xi)
  std::vector<std::string> trace;
};

/// oneterm, then least-term descents down to the e-cell, then the final
/// coefficient-sum check; every stage is replayed and rank-checked.
template <CoefficientField F>
PipelineResult<F> run_pipeline(const CharPReducer<F>& R, const Vec<F>& xi) {
  const auto& E = R.module();
  const auto& G = E.group();
  const auto& W = G.weyl();
  const auto& f = E.field();
  PipelineResult<F> out;
  auto first = R.oneterm(xi);
  out.trace = first.trace;
  std::vector<ReductionResult<F>> starts;
  if (first.ok) starts.push_back(std::move(first));
  bool alternatives = false;
  Vec<F> cur;
  ElementSet H;
  for (std::size_t attempt = 0; attempt < starts.size() || !alternatives; ++attempt) {
    if (attempt == starts.size()) {
      // the least-term chain from every start so far failed
      alternatives = true;
      for (auto& r : R.oneterm_alternatives(xi)) starts.push_back(std::move(r));
      if (attempt == starts.size()) break;
      out.trace.push_back("trying " + std::to_string(starts.size() - attempt) + " alternative one-term outputs");
    }
    const auto& one = starts[attempt];
    out.certificate = one.certificate;
    out.stages = {"oneterm"};
    cur = one.value;
    WeylGroup::Index w = one.w;
    H = one.X;
    bool ok = true;
    while (w != 0) {
      unsigned i = 0;
      while (!(W.left_descents(w) >> i & 1u)) ++i;
      auto step = R.leastterm(cur, i);
      for (auto& t : step.trace) out.trace.push_back(t);
      for (auto& s : step.certificate.steps) out.certificate.steps.push_back(std::move(s));
      out.stages.push_back("leastterm " + W.format(w));
      if (!step.ok) {
        ok = false;
        break;
      }
      cur = step.value;
      w = step.w;
      H = step.X;
    }
    if (ok) break;
    if (attempt + 1 == starts.size() && alternatives) return out;
  }
  if (out.stages.empty()) return out;
  if (!(replay(E, out.certificate, xi) == cur) || !group_sum_shape(E, cur) || group_sum_shape(E, cur)->w != 0)
    return out;
  out.completed = true;
  out.H = H;
  out.final_vector = cur;
  out.certificate_replays = replay(E, out.certificate, xi) == cur;
  auto sp = E.spin({xi});
  out.member_of_spin = sp.contains(cur);
  out.contains_generator = sp.contains(E.generator());
  auto top = E.act(G.weyl_word(E.parabolic().w_J), cur);
  const auto& B = E.basis();
  bool e_cell_only = active_cells(E, top).size() <= 1 && (active_cells(E, top).empty() || active_cells(E, top)[0] == 0);
  auto total = f.zero();
  for (std::size_t k = 0; k < B.cell_size(0); ++k) total = f.add(total, top[B.cell_offset(0) + k]);
  const auto expect = (W.length(E.parabolic().w_J) % 2) ? f.neg(f.one()) : f.one();
  out.coefficient_sum_ok = e_cell_only && total == expect;
  return out;
}

}  // namespace chevflag
