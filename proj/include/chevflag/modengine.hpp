#pragma once

// A small MeatAxe over prime fields: spinning, a Norton irreducibility test,
// recursive composition factors, brute-force oracles, and a JSON interchange
// format for modules given by generator matrices.

#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "chevflag/coefficient_field.hpp"
#include "chevflag/errors.hpp"
#include "chevflag/flagmod.hpp"
#include "chevflag/linalg.hpp"

namespace chevflag {

inline constexpr std::size_t kModuleDimCap = 2000;
inline constexpr std::size_t kNortonAttempts = 500;
inline constexpr std::uint64_t kBruteForceCap = 1u << 20;

struct MatrixModule {
  PrimeField field{2};
  std::size_t dim = 0;
  std::vector<Matrix<PrimeField>> gens;
  std::string provenance;

  MatrixModule() = default;
  MatrixModule(PrimeField f, std::size_t n, std::vector<Matrix<PrimeField>> g, std::string prov)
      : field(f), dim(n), gens(std::move(g)), provenance(std::move(prov)) {
    if (dim > kModuleDimCap) throw ResourceError("module dimension " + std::to_string(dim) + " exceeds cap");
    for (const auto& m : gens) {
      if (m.rows != dim || m.cols != dim) throw DomainError("generator matrix has the wrong shape");
      if (!is_invertible(field, m)) throw DomainError("generator matrix is singular");
    }
  }
};

/// Smallest generator-stable subspace containing v.
inline Echelon<PrimeField> spin_vector(const MatrixModule& M, const Vec<PrimeField>& v) {
  return spin(M.field, M.dim, {v}, M.gens.size(),
              [&](std::size_t g, const Vec<PrimeField>& x) { return mat_vec(M.field, M.gens[g], x); }, M.dim);
}

inline Echelon<PrimeField> spin_subspace(const MatrixModule& M, const std::vector<Vec<PrimeField>>& seeds) {
  return spin(M.field, M.dim, seeds, M.gens.size(),
              [&](std::size_t g, const Vec<PrimeField>& x) { return mat_vec(M.field, M.gens[g], x); }, M.dim);
}

inline MatrixModule dual_module(const MatrixModule& M) {
  std::vector<Matrix<PrimeField>> t;
  for (const auto& g : M.gens) t.push_back(transpose(g));
  return MatrixModule(M.field, M.dim, std::move(t), M.provenance + " (transpose)");
}

/// Action on an invariant subspace S, in the coordinates of S's rows.
inline MatrixModule submodule(const MatrixModule& M, const Echelon<PrimeField>& S) {
  const auto& f = M.field;
  const auto k = S.dim();
  Echelon<PrimeField> tagged(f, M.dim, k);
  for (std::size_t i = 0; i < k; ++i) {
    Vec<PrimeField> t(k, 0);
    t[i] = 1;
    tagged.insert(S.rows()[i], t);
  }
  std::vector<Matrix<PrimeField>> gens;
  for (const auto& g : M.gens) {
    Matrix<PrimeField> m(k, k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      auto c = tagged.coordinates(mat_vec(f, g, S.rows()[j]));
      if (!c) throw DomainError("subspace is not invariant");
      for (std::size_t i = 0; i < k; ++i) m(i, j) = (*c)[i];
    }
    gens.push_back(std::move(m));
  }
  return MatrixModule(f, k, std::move(gens), M.provenance + " / sub");
}

/// Action on M / S, in the coordinates of the non-pivot columns of S.
inline MatrixModule quotient_module(const MatrixModule& M, const Echelon<PrimeField>& S) {
  const auto& f = M.field;
  std::vector<char> piv(M.dim, 0);
  for (auto p : S.pivots()) piv[p] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < M.dim; ++c)
    if (!piv[c]) free.push_back(c);
  const auto k = free.size();
  std::vector<Matrix<PrimeField>> gens;
  for (const auto& g : M.gens) {
    Matrix<PrimeField> m(k, k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      Vec<PrimeField> e(M.dim, 0);
      e[free[j]] = 1;
      auto r = S.reduce(mat_vec(f, g, e));
      for (std::size_t i = 0; i < k; ++i) m(i, j) = r[free[i]];
    }
    gens.push_back(std::move(m));
  }
  return MatrixModule(f, k, std::move(gens), M.provenance + " / quotient");
}

/// Orthogonal complement of a subspace of the dual: a submodule of M when S
/// is stable under the transposed generators.
inline Echelon<PrimeField> annihilator(const MatrixModule& M, const Echelon<PrimeField>& S) {
  Matrix<PrimeField> A(S.dim(), M.dim, 0);
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = 0; j < M.dim; ++j) A(i, j) = S.rows()[i][j];
  Echelon<PrimeField> out(M.field, M.dim);
  for (auto& v : nullspace(M.field, A)) out.insert(v);
  return out;
}

enum class Verdict { Irreducible, Reducible, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Irreducible: return "irreducible";
    case Verdict::Reducible: return "reducible";
    default: return "inconclusive";
  }
}

struct IrreducibilityResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Echelon<PrimeField>> witness;  // proper nonzero submodule
  std::string certificate;                     // how the verdict was reached
  std::size_t attempts = 0;
};

namespace detail {

// Enumerates the nonzero vectors of a subspace with first nonzero coordinate 1.
template <class Fn>
bool for_each_projective(const PrimeField& f, const std::vector<Vec<PrimeField>>& basis, std::size_t n, Fn&& fn) {
  const std::uint64_t l = f.order();
  const std::size_t k = basis.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > kBruteForceCap / l) throw ResourceError("too many vectors to enumerate");
    total *= l;
  }
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    std::size_t lead = 0;
    std::vector<std::uint32_t> digits(k);
    for (std::size_t i = 0; i < k; ++i, c /= l) digits[i] = static_cast<std::uint32_t>(c % l);
    while (digits[lead] == 0) ++lead;
    if (digits[lead] != 1) continue;
    Vec<PrimeField> v(n, 0);
    for (std::size_t i = 0; i < k; ++i) axpy(f, v, digits[i], basis[i]);
    if (!fn(v)) return false;
  }
  return true;
}

}  // namespace detail

/// Norton's criterion with linear factors A - lambda of random algebra
/// elements A; the dual check uses the transposed generators.
inline IrreducibilityResult irreducibility_test(const MatrixModule& M, std::uint64_t seed = 1) {
  IrreducibilityResult res;
  const auto& f = M.field;
  const auto n = M.dim;
  if (n == 0) throw PreconditionError("module must be nonzero");
  if (n == 1) {
    res.verdict = Verdict::Irreducible;
    res.certificate = "dimension 1";
    return res;
  }
  const auto D = dual_module(M);
  std::mt19937_64 rng(seed);
  std::vector<Matrix<PrimeField>> words = M.gens;
  auto proper = [&](const Echelon<PrimeField>& S) { return S.dim() > 0 && S.dim() < n; };
  for (std::size_t attempt = 0; attempt < kNortonAttempts; ++attempt) {
    res.attempts = attempt + 1;
    // grow the pool of products so that A ranges over more of the algebra
    if (!M.gens.empty() && words.size() < 64)
      words.push_back(mat_mul(f, words[rng() % words.size()], M.gens[rng() % M.gens.size()]));
    Matrix<PrimeField> A(n, n, 0);
    for (const auto& w : words) A = mat_add(f, A, mat_scale(f, w, static_cast<std::uint32_t>(rng() % f.order())));
    for (std::uint32_t lambda = 0; lambda < f.order(); ++lambda) {
      auto B = A;
      for (std::size_t i = 0; i < n; ++i) B(i, i) = f.sub(B(i, i), lambda);
      auto ker = nullspace(f, B);
      if (ker.empty()) continue;
      std::uint64_t points = 1;
      for (std::size_t i = 0; i < ker.size() && points <= 4096; ++i) points *= f.order();
      if (points > 4096) continue;
      std::optional<Echelon<PrimeField>> found;
      detail::for_each_projective(f, ker, n, [&](const Vec<PrimeField>& v) {
        auto S = spin_vector(M, v);
        if (proper(S)) {
          found = std::move(S);
          return false;
        }
        return true;
      });
      if (found) {
        res.verdict = Verdict::Reducible;
        res.witness = std::move(found);
        res.certificate = "kernel vector of A - " + std::to_string(lambda) + " spins to a proper submodule";
        return res;
      }
      auto kerT = nullspace(f, transpose(B));
      auto T = spin_vector(D, kerT.at(0));
      if (proper(T)) {
        res.verdict = Verdict::Reducible;
        res.witness = annihilator(M, T);
        res.certificate = "dual kernel vector spins to a proper submodule of the dual";
        return res;
      }
      res.verdict = Verdict::Irreducible;
      res.certificate = "Norton: A - " + std::to_string(lambda) + " has nullity " + std::to_string(ker.size()) +
                        "; every kernel vector and a dual kernel vector spin to the whole space";
      return res;
    }
  }
  res.certificate = "no singular A - lambda with a small kernel after " + std::to_string(kNortonAttempts) + " attempts";
  return res;
}

/// Irreducible iff every nonzero vector (up to scalars) spins to the whole module.
struct ExhaustiveResult {
  bool irreducible = false;
  std::size_t spins = 0;
};

inline ExhaustiveResult exhaustive_irreducible(const MatrixModule& M) {
  ExhaustiveResult r;
  std::vector<Vec<PrimeField>> basis;
  for (std::size_t i = 0; i < M.dim; ++i) {
    Vec<PrimeField> e(M.dim, 0);
    e[i] = 1;
    basis.push_back(e);
  }
  r.irreducible = true;
  detail::for_each_projective(M.field, basis, M.dim, [&](const Vec<PrimeField>& v) {
    ++r.spins;
    if (spin_vector(M, v).dim() < M.dim) r.irreducible = false;
    return true;
  });
  return r;
}

struct CompositionFactor {
  std::size_t dim = 0;
  std::uint64_t hash = 0;  // over the generator matrices
  std::string provenance;
  MatrixModule module;
};

struct CompositionReport {
  std::vector<CompositionFactor> factors;  // bottom to top of the series
  bool final = true;                       // false when a leaf was inconclusive
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& x : factors) d.push_back(x.dim);
    return d;
  }
  std::vector<std::size_t> sorted_dims() const {
    auto d = dims();
    std::sort(d.begin(), d.end());
    return d;
  }
};

inline std::uint64_t module_hash(const MatrixModule& M) {
  std::vector<std::uint64_t> h;
  for (const auto& g : M.gens) h.push_back(matrix_hash(M.field, g));
  return hash_values(h);
}

namespace detail {

inline void split(const MatrixModule& M, std::uint64_t seed, CompositionReport& out) {
  auto t = irreducibility_test(M, seed);
  if (t.verdict == Verdict::Inconclusive && M.dim <= 12) {
    auto e = exhaustive_irreducible(M);
    if (e.irreducible) t.verdict = Verdict::Irreducible;
    else
      for (std::size_t i = 0; i < M.dim && !t.witness; ++i) {
        Vec<PrimeField> v(M.dim, 0);
        v[i] = 1;
        auto S = spin_vector(M, v);
        if (S.dim() < M.dim) t.witness = std::move(S), t.verdict = Verdict::Reducible;
      }
  }
  if (t.verdict == Verdict::Reducible) {
    split(submodule(M, *t.witness), seed * 2 + 1, out);
    split(quotient_module(M, *t.witness), seed * 2 + 2, out);
    return;
  }
  if (t.verdict == Verdict::Inconclusive) out.final = false;
  out.factors.push_back({M.dim, module_hash(M), M.provenance, M});
}

}  // namespace detail

inline CompositionReport composition_factors(const MatrixModule& M, std::uint64_t seed = 1) {
  CompositionReport r;
  detail::split(M, seed, r);
  return r;
}

/// Independent oracle: repeatedly peel off a smallest cyclic submodule found by
/// spinning every vector; such a submodule is irreducible.
inline std::vector<std::size_t> brute_force_composition_dims(const MatrixModule& M) {
  if (M.dim == 0) return {};
  std::vector<Vec<PrimeField>> basis;
  for (std::size_t i = 0; i < M.dim; ++i) {
    Vec<PrimeField> e(M.dim, 0);
    e[i] = 1;
    basis.push_back(e);
  }
  std::optional<Echelon<PrimeField>> best;
  detail::for_each_projective(M.field, basis, M.dim, [&](const Vec<PrimeField>& v) {
    auto S = spin_vector(M, v);
    if (!best || S.dim() < best->dim()) best = std::move(S);
    return best->dim() > 1;
  });
  std::vector<std::size_t> out{best->dim()};
  if (best->dim() < M.dim)
    for (auto d : brute_force_composition_dims(quotient_module(M, *best))) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

/// dim End_G(M), from the kernel of X -> (g X - X g)_g.
inline std::size_t endomorphism_dim(const MatrixModule& M) {
  const auto& f = M.field;
  const auto n = M.dim;
  Matrix<PrimeField> A(M.gens.size() * n * n, n * n, 0);
  for (std::size_t g = 0; g < M.gens.size(); ++g) {
    const auto& G = M.gens[g];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t row = g * n * n + i * n + j;
        // (G X)_{ij} = sum_k G_{ik} X_{kj};  (X G)_{ij} = sum_k X_{ik} G_{kj}
        for (std::size_t k = 0; k < n; ++k) {
          A(row, k * n + j) = f.add(A(row, k * n + j), G(i, k));
          A(row, i * n + k) = f.sub(A(row, i * n + k), G(k, j));
        }
      }
  }
  return n * n - matrix_rank(f, A);
}

// ---- constructions ----

/// F[G/B] with the group generators acting by coset permutations.
inline MatrixModule flag_permutation_module(const Chevalley& G, const PrimeField& f) {
  FlagSpace X(G);
  std::vector<Matrix<PrimeField>> gens;
  for (const auto& a : G.generators()) {
    auto p = X.permutation(a);
    Matrix<PrimeField> m(X.size(), X.size(), 0);
    for (std::size_t k = 0; k < p.size(); ++k) m(p[k], k) = 1;
    gens.push_back(std::move(m));
  }
  return MatrixModule(f, X.size(), std::move(gens),
                      f.name() + "[" + G.roots().label() + "(F" + std::to_string(G.field().q()) + ")/B]");
}

// ---- JSON interchange ----

inline nlohmann::json to_json(const MatrixModule& M) {
  nlohmann::json j;
  j["dim"] = M.dim;
  j["ell"] = M.field.order();
  j["generators"] = M.gens.size();
  j["provenance"] = M.provenance;
  auto mats = nlohmann::json::array();
  for (const auto& g : M.gens) mats.push_back(g.data);
  j["matrices"] = mats;
  return j;
}

inline MatrixModule module_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("dim").get<std::size_t>();
    PrimeField f(j.at("ell").get<std::uint32_t>());
    const auto count = j.at("generators").get<std::size_t>();
    const auto& mats = j.at("matrices");
    if (mats.size() != count) throw ConfigError("generator count does not match the payload");
    std::vector<Matrix<PrimeField>> gens;
    for (const auto& m : mats) {
      auto data = m.get<std::vector<std::uint32_t>>();
      if (data.size() != n * n) throw ConfigError("matrix payload has the wrong length");
      Matrix<PrimeField> g(n, n, 0);
      for (std::size_t k = 0; k < data.size(); ++k) g.data[k] = f.from_int(data[k]);
      gens.push_back(std::move(g));
    }
    return MatrixModule(f, n, std::move(gens), j.value("provenance", std::string("json")));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed module JSON: ") + e.what());
  }
}

inline nlohmann::json to_json(const CompositionReport& r) {
  nlohmann::json j;
  j["final"] = r.final;
  j["dims"] = r.sorted_dims();
  auto fs = nlohmann::json::array();
  for (const auto& x : r.factors) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x.hash));
    fs.push_back({{"dim", x.dim}, {"hash", buf}, {"provenance", x.provenance}});
  }
  j["factors"] = fs;
  return j;
}

}  // namespace chevflag
