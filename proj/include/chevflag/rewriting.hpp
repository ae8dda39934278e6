#pragma once

// Symbolic action on the terms u w eta_J of M_J: the three-case rewriting of
// s_i u_i w eta_J, and reduction of X_J-terms to the Y_J-basis of E_J modulo
// the larger M_K.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chevflag/chevalley.hpp"
#include "chevflag/errors.hpp"
#include "chevflag/flagmod.hpp"

namespace chevflag {

/// The term u w eta_J (w in X_J).
struct MJTerm {
  WeylGroup::Index w = 0;
  Unipotent u;
  friend bool operator==(const MJTerm&, const MJTerm&) = default;
};

using IntCombination = std::vector<std::pair<long long, MJTerm>>;

enum class RewriteCase {
  Ascent,         // (i)   l(s_i w w_J) > l(w w_J): s_i w eta_J
  Descent,        // (ii)  s_i w < w: f_i(u_i) w eta_J
  ParabolicFold,  // (iii) s_i w = w s_j, j in J: (f_i(u_i) - 1) w eta_J
};

inline std::string to_string(RewriteCase c) {
  switch (c) {
    case RewriteCase::Ascent:
      return "i";
    case RewriteCase::Descent:
      return "ii";
    case RewriteCase::ParabolicFold:
      return "iii";
  }
  return "?";
}

struct RewriteResult {
  RewriteCase which = RewriteCase::Ascent;
  IntCombination terms;
};

class MJRewriter {
 public:
  MJRewriter(const Chevalley& G, Subset J)
      : G_(G), P_(parabolic_data(G.weyl(), J)), mj_(mj_index(G, P_)), ej_(ej_index(G, P_)), memo_(mj_.size()) {}

  const Chevalley& group() const { return G_; }
  const ParabolicSubset& parabolic() const { return P_; }
  const CellIndex& mj() const { return mj_; }
  const CellIndex& ej() const { return ej_; }

  bool in_x(WeylGroup::Index w) const { return mj_.has_cell(w); }

  /// u w eta_J with the factor in U'_{w_J w^{-1}} dropped (it fixes w eta_J).
  MJTerm normalize(WeylGroup::Index w, const Unipotent& u) const {
    if (!in_x(w)) throw PreconditionError("w is not a minimal coset representative for W_J");
    return {w, G_.leading_part(u, mj_.roots_of(w))};
  }

  /// s_i x_i(c) w eta_J for c != 0 and w in X_J, by the three-case rule.
  RewriteResult rewrite_step(unsigned i, Elem c, WeylGroup::Index w) const {
    if (c == 0) throw DomainError("u_i must be a nonidentity element of U_alpha_i");
    if (!in_x(w)) throw PreconditionError("l(w w_J) = l(w) + l(w_J) fails for w");
    const auto& W = G_.weyl();
    const auto sw = W.mul_simple_left(i, w);
    const auto d = G_.sl2_decompose(i, c);
    const Unipotent f = G_.root_element(G_.roots().simple(i), d.f);
    RewriteResult r;
    if (W.length(W.mul(sw, P_.w_J)) > W.length(W.mul(w, P_.w_J))) {
      r.which = RewriteCase::Ascent;
      r.terms.push_back({1, normalize(sw, G_.identity())});
    } else if (W.length(sw) < W.length(w)) {
      r.which = RewriteCase::Descent;
      r.terms.push_back({1, normalize(w, f)});
    } else {
      r.which = RewriteCase::ParabolicFold;
      r.terms.push_back({1, normalize(w, f)});
      r.terms.push_back({-1, normalize(w, G_.identity())});
    }
    return r;
  }

  /// s_i (u w eta_J) as a combination of M_J terms.
  IntCombination weyl_on_term(unsigned i, const MJTerm& t) const {
    const auto& W = G_.weyl();
    const auto& F = G_.field();
    const int ai = G_.roots().simple(i);
    const Elem c = t.u[ai];
    const Unipotent u1 = G_.mul(t.u, G_.root_element(ai, F.neg(c)));
    const Unipotent u2 = G_.conj_simple(i, u1);
    IntCombination base;
    if (c != 0) {
      base = rewrite_step(i, c, t.w).terms;
    } else {
      const auto sw = W.mul_simple_left(i, t.w);
      if (in_x(sw))
        base.push_back({1, MJTerm{sw, G_.identity()}});
      else
        base.push_back({-1, MJTerm{t.w, G_.identity()}});
    }
    IntCombination out;
    for (auto& [k, b] : base) out.push_back({k, normalize(b.w, G_.mul(u2, b.u))});
    return out;
  }

  /// Coordinates of the image of u w eta_J in E_J (basis u' y C_J, y in Y_J).
  const std::map<std::size_t, long long>& reduce(const MJTerm& t) {
    const std::size_t key = mj_.index(t.w, t.u);
    if (memo_[key]) return *memo_[key];
    std::map<std::size_t, long long> out;
    if (ej_.has_cell(t.w)) {
      out[ej_.index(t.w, t.u)] = 1;
    } else {
      // v = v1 x with x longest in X_J cap W_K; v1 eta_K lies in M_K
      const auto& W = G_.weyl();
      const Subset extra = W.right_descents(W.mul(t.w, P_.w_J)) & ~P_.J;
      if (!extra) throw DomainError("term outside Y_J has no extra descent");
      unsigned k = 0;
      while (!(extra >> k & 1u)) ++k;
      const Subset K = P_.J | (1u << k);
      const auto wK = longest(K);
      const auto x = W.mul(wK, P_.w_J);
      const auto v1 = W.mul(t.w, W.inverse(x));
      if (W.length(v1) + W.length(x) != W.length(t.w)) throw DomainError("coset factorization is not reduced");
      const long long sx = (W.length(x) % 2) ? -1 : 1;
      for (auto xp : P_.X) {
        if (xp == x || !W.in_parabolic(xp, K)) continue;
        const long long sxp = (W.length(xp) % 2) ? -1 : 1;
        const auto sub = reduce(normalize(W.mul(v1, xp), t.u));
        for (auto [idx, c] : sub) out[idx] += -sx * sxp * c;
      }
      for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    memo_[key] = std::move(out);
    return *memo_[key];
  }

 private:
  WeylGroup::Index longest(Subset K) {
    auto it = longest_.find(K);
    if (it != longest_.end()) return it->second;
    return longest_[K] = G_.weyl().longest_of(K);
  }

  const Chevalley& G_;
  ParabolicSubset P_;
  CellIndex mj_, ej_;
  std::vector<std::optional<std::map<std::size_t, long long>>> memo_;
  std::map<Subset, WeylGroup::Index> longest_;
};

}  // namespace chevflag
