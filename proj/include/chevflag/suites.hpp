#pragma once

// Seeded verification suites over the finite models. Each returns a Check with
// a verdict and a JSON payload that is a pure function of its arguments.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "chevflag/augment.hpp"
#include "chevflag/charp.hpp"
#include "chevflag/ejmodule.hpp"
#include "chevflag/flagmod.hpp"
#include "chevflag/matrix_model.hpp"
#include "chevflag/modengine.hpp"
#include "chevflag/rewriting.hpp"
#include "chevflag/selfenc.hpp"

namespace chevflag {

enum class CheckVerdict { Pass, Fail, Inconclusive };

inline std::string to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass: return "pass";
    case CheckVerdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

struct Check {
  std::string name;
  CheckVerdict verdict = CheckVerdict::Pass;
  nlohmann::json data = nlohmann::json::object();

  void require(bool ok) {
    if (!ok && verdict == CheckVerdict::Pass) verdict = CheckVerdict::Fail;
  }
  bool passed() const { return verdict == CheckVerdict::Pass; }
  nlohmann::json to_json() const { return {{"name", name}, {"verdict", to_string(verdict)}, {"data", data}}; }
};

inline std::string subset_label(Subset J, unsigned n) { return format_subset(J, n); }

inline Vec<PrimeField> random_ej_vector(const EJModule<PrimeField>& E, std::mt19937_64& rng) {
  const auto l = E.field().order();
  while (true) {
    auto v = E.zero();
    const std::size_t terms = 1 + rng() % 3;
    for (std::size_t t = 0; t < terms; ++t) v[rng() % v.size()] = static_cast<std::uint32_t>(rng() % l);
    if (!is_zero_vec(E.field(), v)) return v;
  }
}

inline Unipotent random_unipotent(const Chevalley& G, std::mt19937_64& rng) {
  Unipotent u = G.identity();
  for (auto& c : u) c = static_cast<Elem>(rng() % G.field().q());
  return u;
}

namespace suites {

/// dim E_J from spin ranks in F[G/B], against sum_{w in Y_J} q^{l(w_J w^{-1})}
/// and the total against |G/B|.
inline Check partition(const Chevalley& G, std::uint32_t ell) {
  Check c{"dimension_partition"};
  FlagSpace X(G);
  FlagModule<PrimeField> M(X, PrimeField(ell));
  std::size_t total = 0;
  auto parts = nlohmann::json::array();
  for (Subset J : all_subsets(G.rank())) {
    auto p = ej_quotient(M, J);
    const auto idx = ej_index(G, parabolic_data(G.weyl(), J));
    c.require(p.check && p.check->holds());
    c.require(p.dim() == idx.size());
    total += p.dim();
    parts.push_back({{"J", subset_label(J, G.rank())}, {"dim", p.dim()}, {"formula", idx.size()}});
  }
  c.require(total == X.size());
  c.data = {{"parts", parts}, {"total", total}, {"flag_dim", X.size()}};
  return c;
}

/// The claimed M_J and E_J bases are independent and spanning.
inline Check basis_claims(const Chevalley& G, std::uint32_t ell) {
  Check c{"basis_claims"};
  FlagSpace X(G);
  FlagModule<PrimeField> M(X, PrimeField(ell));
  auto rows = nlohmann::json::array();
  for (Subset J : all_subsets(G.rank())) {
    auto mj = mj_presentation(M, J);
    auto ej = ej_quotient(M, J);
    const bool a = mj.check && mj.check->holds();
    const bool b = ej.check && ej.check->holds();
    c.require(a && b);
    rows.push_back({{"J", subset_label(J, G.rank())}, {"M_J", a}, {"E_J", b}, {"dim_M_J", mj.dim()}, {"dim_E_J", ej.dim()}});
  }
  c.data = {{"subsets", rows}};
  return c;
}

/// Rewriting against the direct action on eta_J translates.
inline Check rewriting(const Chevalley& G, std::uint32_t ell, std::size_t trials, std::uint64_t seed) {
  Check c{"root_element_rewriting"};
  FlagSpace X(G);
  FlagModule<PrimeField> M(X, PrimeField(ell));
  std::mt19937_64 rng(seed);
  std::vector<MJRewriter> rws;
  for (Subset J : all_subsets(G.rank())) rws.emplace_back(G, J);
  std::size_t matches = 0;
  std::map<std::string, std::size_t> cases;
  const unsigned q = G.field().q();
  for (std::size_t t = 0; t < trials; ++t) {
    auto& rw = rws[rng() % rws.size()];
    const Subset J = rw.parabolic().J;
    const auto& Xs = rw.parabolic().X;
    const auto w = Xs[rng() % Xs.size()];
    const unsigned i = static_cast<unsigned>(rng() % G.rank());
    const Elem a = static_cast<Elem>(1 + rng() % (q - 1));
    auto r = rw.rewrite_step(i, a, w);
    ++cases[to_string(r.which)];
    GroupWord g{Atom::weyl(i), Atom::root_element(G.roots().simple(i), a)};
    auto ww = G.weyl_word(w);
    g.insert(g.end(), ww.begin(), ww.end());
    auto lhs = M.act(g, M.eta(J));
    auto rhs = M.zero();
    for (const auto& [k, term] : r.terms) axpy(M.field(), rhs, M.field().from_int(k), M.translate_eta(term.u, term.w, J));
    if (lhs == rhs) ++matches;
  }
  c.require(matches == trials);
  c.data = {{"trials", trials}, {"matches", matches}, {"cases", cases}};
  return c;
}

/// s x_i(c) s^{-1} = x_i(f) s h x_i(g) in SL_{n+1}(F_q) for every c != 0, and
/// c -> f is a bijection of F_q^*.
inline Check sl2(const Chevalley& G) {
  Check c{"sl2_decomposition"};
  if (G.roots().type() != 'A') {
    c.verdict = CheckVerdict::Inconclusive;
    c.data = {{"reason", "matrix model is only available for type A"}};
    return c;
  }
  MatrixModel M(G);
  const unsigned q = G.field().q();
  std::size_t checked = 0;
  bool bijective = true;
  for (unsigned i = 0; i < G.rank(); ++i) {
    std::set<Elem> fs;
    const int a = G.roots().simple(i);
    for (Elem x = 1; x < q; ++x) {
      auto d = G.sl2_decompose(i, x);
      auto lhs = M.to_matrix({Atom::weyl(i), Atom::root_element(a, x), Atom::weyl(i, -1)});
      auto rhs = M.to_matrix({Atom::root_element(a, d.f), Atom::weyl(i), Atom::torus(d.h), Atom::root_element(a, d.g)});
      c.require(lhs == rhs);
      if (d.f != 0) fs.insert(d.f);
      ++checked;
    }
    if (fs.size() != q - 1) bijective = false;
  }
  c.require(bijective);
  c.data = {{"identities", checked}, {"f_bijective", bijective}};
  return c;
}

/// closure(X) contains X, has p-power order and is self-enclosed for every
/// sampled root order.
inline Check closure_suite(const Chevalley& G, std::size_t trials, std::uint64_t seed) {
  Check c{"selfenc_closure"};
  std::mt19937_64 rng(seed);
  const auto orders = sampled_orders(G);
  std::size_t ok = 0;
  std::vector<std::size_t> sizes;
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSet X;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n; ++k) X.insert(random_unipotent(G, rng));
    auto H = closure(G, X).H;
    const bool contains = std::includes(H.begin(), H.end(), X.begin(), X.end());
    const bool good = contains && is_p_power(H.size(), G.field().p()) && is_self_enclosed(G, H, orders).all();
    ok += good;
    sizes.push_back(H.size());
  }
  c.require(ok == trials);
  c.data = {{"trials", trials}, {"passed", ok}, {"orders", orders.size()}, {"sizes", sizes}};
  return c;
}

/// tower(exponents) is a self-enclosed subgroup.
inline Check tower_suite(const Chevalley& G, const std::vector<unsigned>& exponents) {
  Check c{"selfenc_tower"};
  auto H = tower(G, exponents);
  const bool sub = is_subgroup(G, H);
  bool enclosed = false;
  if (sub) enclosed = is_self_enclosed(G, H, sampled_orders(G)).all();
  c.require(sub && enclosed);
  c.data = {{"exponents", exponents}, {"size", H.size()}, {"subgroup", sub}, {"self_enclosed", enclosed}};
  if (!sub) c.data["reason"] = "the product of the root slices is not closed under multiplication";
  return c;
}

/// H_V = _V H = H cap V for closures H and closed root sets V.
inline Check coset_suite(const Chevalley& G, std::size_t trials, std::uint64_t seed) {
  Check c{"selfenc_coset_projections"};
  std::vector<std::vector<int>> closed;
  const int m = G.num_positive();
  for (std::uint32_t mask = 1; mask < (1u << m) && m <= 12; ++mask) {
    std::vector<int> S;
    for (int r = 0; r < m; ++r)
      if (mask >> r & 1u) S.push_back(r);
    if (G.is_closed(S)) closed.push_back(S);
  }
  std::mt19937_64 rng(seed);
  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSet X;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n; ++k) X.insert(random_unipotent(G, rng));
    auto H = closure(G, X).H;
    ok += coset_projections(G, H, closed[rng() % closed.size()]).holds();
  }
  c.require(ok == trials);
  c.data = {{"trials", trials}, {"passed", ok}, {"closed_sets", closed.size()}};
  return c;
}

/// Search for g with eps(g xi) != 0 from seeded xi.
inline Check augment_suite(const Chevalley& G, Subset J, std::uint32_t ell, std::size_t trials, std::size_t budget,
                           std::uint64_t seed) {
  Check c{"augment_nonvanishing J=" + subset_label(J, G.rank())};
  EJModule<PrimeField> E(G, J, PrimeField(ell));
  std::mt19937_64 rng(seed);
  NonvanishingSearch<PrimeField> S(E, budget, seed + 1);
  std::size_t ok = 0, random_moves = 0;
  auto lengths = nlohmann::json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    auto xi = random_ej_vector(E, rng);
    auto r = S.run(xi);
    const bool good = r.success && profile_nonzero(E.field(), augmentation(E, E.act(r.g, xi)));
    ok += good;
    random_moves += r.random_moves;
    lengths.push_back(r.g.size());
  }
  c.require(ok == trials);
  c.data = {{"trials", trials},
            {"successes", ok},
            {"success_rate", trials ? static_cast<double>(ok) / static_cast<double>(trials) : 1.0},
            {"random_moves", random_moves},
            {"word_lengths", lengths}};
  return c;
}

/// oneterm then leastterm descents on seeded xi, with certificates replayed.
inline Check charp_suite(const Chevalley& G, Subset J, std::size_t trials, std::uint64_t seed) {
  Check c{"charp_pipeline J=" + subset_label(J, G.rank())};
  EJModule<PrimeField> E(G, J, PrimeField(G.field().p()));
  CharPReducer<PrimeField> R(E);
  std::mt19937_64 rng(seed);
  std::size_t order = 1;
  for (int r = 0; r < G.num_positive() && order <= 64; ++r) order *= G.field().q();
  std::vector<ElementSet> subgroups;
  if (order <= 64) subgroups = small_subgroups(G);
  std::size_t completed = 0, sound = 0, dead_ends = 0, missed = 0, unchecked = 0;
  auto runs = nlohmann::json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    auto xi = random_ej_vector(E, rng);
    auto r = run_pipeline(R, xi);
    const bool good = r.completed && r.certificate_replays && r.member_of_spin && r.coefficient_sum_ok.value_or(false);
    completed += r.completed;
    sound += good;
    nlohmann::json run{{"completed", r.completed},
                       {"stages", r.stages},
                       {"certificate_steps", r.certificate.size()},
                       {"H_size", r.H.size()}};
    if (!r.completed) {
      if (subgroups.empty()) {
        ++unchecked;
      } else {
        // an incomplete run is a dead end only if no H C_J lies in spin(xi)
        auto sp = E.spin({xi});
        bool reachable = false;
        for (const auto& H : subgroups) {
          auto v = E.group_sum({H.begin(), H.end()}, E.generator());
          auto shape = group_sum_shape(E, v);
          if (shape && shape->w == 0 && sp.contains(v)) {
            reachable = true;
            break;
          }
        }
        reachable ? ++missed : ++dead_ends;
        run["target_reachable"] = reachable;
      }
    }
    runs.push_back(run);
  }
  c.require(sound == completed && missed == 0);
  if (unchecked) c.verdict = c.verdict == CheckVerdict::Fail ? CheckVerdict::Fail : CheckVerdict::Inconclusive;
  c.data = {{"trials", trials},
            {"completed", completed},
            {"certified", sound},
            {"dead_ends", dead_ends},
            {"missed", missed},
            {"unchecked", unchecked},
            {"completion_rate", trials ? static_cast<double>(completed) / static_cast<double>(trials) : 1.0},
            {"runs", runs}};
  return c;
}

/// Composition factor dimensions of a module against expected dimensions.
inline Check factors_suite(const MatrixModule& M, const std::vector<std::size_t>& expected, std::uint64_t seed) {
  Check c{"composition_factors " + M.provenance};
  auto r = composition_factors(M, seed);
  auto dims = r.sorted_dims();
  if (!r.final) c.verdict = CheckVerdict::Inconclusive;
  if (!expected.empty()) c.require(dims == expected);
  c.data = to_json(r);
  c.data["expected"] = expected;
  return c;
}

/// E_I over F_p is irreducible by spinning every nonzero vector.
inline Check steinberg_suite(const Chevalley& G) {
  Check c{"steinberg_irreducible"};
  EJModule<PrimeField> E(G, (1u << G.rank()) - 1, PrimeField(G.field().p()));
  MatrixModule M(E.field(), E.dim(), E.generator_matrices(), "E_I");
  auto r = exhaustive_irreducible(M);
  c.require(r.irreducible);
  c.data = {{"dim", M.dim}, {"spins", r.spins}, {"irreducible", r.irreducible}};
  return c;
}

}  // namespace suites
}  // namespace chevflag
