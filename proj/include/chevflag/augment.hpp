#pragma once

// Cell projections P_w, per-cell augmentations, the condition heart_h, and a
// search for g with eps(g xi) != 0 that follows the descent moves s and s y
// (y in U_s), falling back to seeded random generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chevflag/ejmodule.hpp"
#include "chevflag/errors.hpp"

namespace chevflag {

inline constexpr std::size_t kDefaultMoveBudget = 10000;

template <CoefficientField F>
Vec<F> project(const EJModule<F>& E, WeylGroup::Index w, const Vec<F>& xi) {
  const auto& B = E.basis();
  if (!B.has_cell(w)) throw DomainError("Weyl element is not in Y_J");
  const auto c = B.cell_position(w);
  auto out = E.zero();
  for (std::size_t k = B.cell_offset(c); k < B.cell_offset(c) + B.cell_size(c); ++k) out[k] = xi[k];
  return out;
}

/// eps_w(P_w xi) for each w in Y_J, in Y_J order.
template <CoefficientField F>
std::vector<typename F::value_type> augmentation(const EJModule<F>& E, const Vec<F>& xi) {
  const auto& B = E.basis();
  const auto& f = E.field();
  std::vector<typename F::value_type> out;
  for (std::size_t c = 0; c < B.num_cells(); ++c) {
    auto s = f.zero();
    for (std::size_t k = B.cell_offset(c); k < B.cell_offset(c) + B.cell_size(c); ++k) s = f.add(s, xi[k]);
    out.push_back(s);
  }
  return out;
}

template <CoefficientField F>
bool profile_nonzero(const F& f, const std::vector<typename F::value_type>& p) {
  for (const auto& x : p)
    if (!f.is_zero(x)) return true;
  return false;
}

/// heart_h: sum of the e-cell coefficients a_{e,x} over x in U'_h is nonzero.
template <CoefficientField F>
bool heart_condition(const EJModule<F>& E, const Vec<F>& xi, WeylGroup::Index h) {
  const auto& G = E.group();
  const auto& W = G.weyl();
  if (!W.in_parabolic(h, E.J())) throw DomainError("h is not in W_J");
  std::vector<char> inverted(G.num_positive(), 0);
  for (int r : W.inversion_set(h)) inverted[r] = 1;
  const auto& B = E.basis();
  const auto& f = E.field();
  auto s = f.zero();
  for (std::size_t k = B.cell_offset(0); k < B.cell_offset(0) + B.cell_size(0); ++k) {
    if (f.is_zero(xi[k])) continue;
    auto [w, u] = B.term(k, G.num_positive());
    bool in_prime = true;
    for (int r = 0; r < G.num_positive(); ++r)
      if (u[r] != 0 && inverted[r]) in_prime = false;
    if (in_prime) s = f.add(s, xi[k]);
  }
  return !f.is_zero(s);
}

/// Cells v in Y_J with s v outside Y_J whose s-image meets the sigma-cell.
template <CoefficientField F>
std::vector<WeylGroup::Index> spade_set(const EJModule<F>& E, unsigned i, WeylGroup::Index sigma) {
  const auto& W = E.group().weyl();
  const auto& B = E.basis();
  std::vector<WeylGroup::Index> out;
  for (auto v : B.cells()) {
    if (B.has_cell(W.mul_simple_left(i, v))) continue;
    auto img = E.act_weyl(i, 1, E.basis_vector(v, E.group().identity()));
    if (!is_zero_vec(E.field(), project(E, sigma, img))) out.push_back(v);
  }
  return out;
}

template <CoefficientField F>
struct SearchResult {
  bool success = false;
  GroupWord g;                                   // g xi has nonzero augmentation
  std::vector<typename F::value_type> profile;   // eps(g xi)
  std::size_t moves = 0;                         // atomic moves tried
  std::size_t random_moves = 0;                  // moves taken by the fallback
  std::vector<std::string> trace;
};

template <CoefficientField F>
class NonvanishingSearch {
 public:
  NonvanishingSearch(const EJModule<F>& E, std::size_t budget = kDefaultMoveBudget, std::uint64_t seed = 1)
      : E_(E), budget_(budget), rng_(seed) {
    const auto& G = E_.group();
    atoms_ = G.generators();
    for (unsigned i = 0; i < G.rank(); ++i)
      for (Elem b : G.field().additive_basis()) atoms_.push_back(Atom::root_element(G.roots().negate(G.roots().simple(i)), b));
  }

  SearchResult<F> run(const Vec<F>& xi) {
    const auto& f = E_.field();
    if (is_zero_vec(f, xi)) throw PreconditionError("xi must be nonzero");
    SearchResult<F> res;
    cur_ = xi;
    word_.clear();
    res_ = &res;
    while (true) {
      auto prof = augmentation(E_, cur_);
      if (profile_nonzero(f, prof)) {
        res.success = true;
        res.profile = prof;
        res.g = word_;
        return res;
      }
      if (res.moves >= budget_) {
        res.profile = prof;
        res.g = word_;
        res.trace.push_back("budget exhausted");
        return res;
      }
      bool progressed = is_zero_vec(f, project(E_, 0, cur_)) ? cell_step() : heart_step();
      if (!progressed) random_step();
    }
  }

 private:
  // minimal length of a cell where cur_ is nonzero
  unsigned min_cell_length(const Vec<F>& v) const {
    const auto& W = E_.group().weyl();
    const auto& B = E_.basis();
    unsigned best = ~0u;
    for (std::size_t c = 0; c < B.num_cells(); ++c) {
      const auto w = B.cells()[c];
      if (W.length(w) >= best) continue;
      for (std::size_t k = B.cell_offset(c); k < B.cell_offset(c) + B.cell_size(c); ++k)
        if (!E_.field().is_zero(v[k])) {
          best = W.length(w);
          break;
        }
    }
    return best;
  }

  // minimal length of h in W_J with heart_h, or ~0u
  unsigned min_heart_length(const Vec<F>& v) const {
    const auto& W = E_.group().weyl();
    unsigned best = ~0u;
    for (WeylGroup::Index h = 0; h < W.size(); ++h)
      if (W.in_parabolic(h, E_.J()) && W.length(h) < best && heart_condition(E_, v, h)) best = W.length(h);
    return best;
  }

  void apply(const GroupWord& g) {
    cur_ = E_.act(g, cur_);
    word_.insert(word_.begin(), g.begin(), g.end());
  }

  // Candidate moves s and s y, y over U_{alpha_i} \ {1}.
  std::vector<GroupWord> candidates(unsigned i) const {
    const auto& G = E_.group();
    std::vector<GroupWord> c{{Atom::weyl(i)}};
    for (unsigned y = 1; y < G.field().q(); ++y)
      c.push_back({Atom::weyl(i), Atom::root_element(G.roots().simple(i), static_cast<Elem>(y))});
    return c;
  }

  // Drop the minimal nonzero cell towards e.
  bool cell_step() {
    const auto& W = E_.group().weyl();
    const auto& B = E_.basis();
    const unsigned L = min_cell_length(cur_);
    for (std::size_t c = 0; c < B.num_cells(); ++c) {
      const auto h = B.cells()[c];
      if (W.length(h) != L || is_zero_vec(E_.field(), project(E_, h, cur_))) continue;
      for (unsigned i = 0; i < E_.group().rank(); ++i) {
        const auto sigma = W.mul_simple_left(i, h);
        if (W.length(sigma) > W.length(h)) continue;
        for (const auto& g : candidates(i)) {
          res_->moves += g.size();
          auto v = E_.act(g, cur_);
          if (min_cell_length(v) < L) {
            apply(g);
            res_->trace.push_back("cell " + W.format(h) + " -> " + W.format(sigma) + " by " + describe(g));
            return true;
          }
        }
        if (B.has_cell(sigma) && res_->trace.size() < 64)
          res_->trace.push_back("no descent at s" + std::to_string(i + 1) + "; spade cells " +
                                std::to_string(spade_set(E_, i, sigma).size()));
      }
    }
    return false;
  }

  // Proposition-4.2 step: move x^{-1} to make a_{e,id} nonzero, then lower the
  // length of h with heart_h.
  bool heart_step() {
    const auto& G = E_.group();
    const auto& W = G.weyl();
    const auto& f = E_.field();
    const auto& B = E_.basis();
    unsigned L = min_heart_length(cur_);
    if (L == ~0u) {
      for (std::size_t k = 0; k < B.cell_size(0); ++k)
        if (!f.is_zero(cur_[k])) {
          auto [w, u] = B.term(k, G.num_positive());
          GroupWord g = G.unipotent_word(G.inverse(u));
          res_->moves += g.size();
          apply(g);
          res_->trace.push_back("translate e-cell term to the identity");
          L = min_heart_length(cur_);
          break;
        }
      if (L == ~0u) return false;
    }
    for (WeylGroup::Index h = 0; h < W.size(); ++h) {
      if (!W.in_parabolic(h, E_.J()) || W.length(h) != L || !heart_condition(E_, cur_, h)) continue;
      for (unsigned i = 0; i < G.rank(); ++i) {
        if (!(W.right_descents(h) >> i & 1u)) continue;
        for (const auto& g : candidates(i)) {
          res_->moves += g.size();
          auto v = E_.act(g, cur_);
          if (!is_zero_vec(f, project(E_, 0, v)) && min_heart_length(v) < L) {
            apply(g);
            res_->trace.push_back("heart " + W.format(h) + " -> " + W.format(W.mul_simple_right(h, i)) + " by " +
                                  describe(g));
            return true;
          }
        }
      }
    }
    return false;
  }

  void random_step() {
    const auto& a = atoms_[rng_() % atoms_.size()];
    ++res_->moves;
    ++res_->random_moves;
    apply({a});
  }

  std::string describe(const GroupWord& g) const {
    std::string s;
    for (const auto& a : g) {
      if (!s.empty()) s += " ";
      if (a.kind == Atom::Kind::Weyl)
        s += "s" + std::to_string(a.i + 1);
      else if (a.kind == Atom::Kind::Root)
        s += "x" + std::to_string(a.root) + "(" + std::to_string(a.c) + ")";
      else
        s += "t";
    }
    return s;
  }

  const EJModule<F>& E_;
  std::size_t budget_;
  std::mt19937_64 rng_;
  std::vector<Atom> atoms_;
  Vec<F> cur_;
  GroupWord word_;
  SearchResult<F>* res_ = nullptr;
};

}  // namespace chevflag
