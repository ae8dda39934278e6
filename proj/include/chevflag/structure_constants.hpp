#pragma once

// Integral Chevalley basis of a simply-laced Lie algebra, built from a
// bimultiplicative sign cocycle on the root lattice, and the sign tables the
// group calculus needs:
//   N(a, b)      with [e_a, e_b] = N(a, b) e_{a+b}            (a, b > 0)
//   eta(i, b)    with s_i x_b(c) s_i^{-1} = x_{s_i b}(eta c)   (b > 0, b != a_i)
// where s_i = x_i(1) x_{-i}(-1) x_i(1) and x_{-i}(c) uses the negative root
// vector normalised by [e_i, e_{-i}] = h_i.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "chevflag/errors.hpp"
#include "chevflag/rootsys.hpp"

namespace chevflag {

inline constexpr int kStructureCacheVersion = 1;

/// The Lie algebra with basis h_1..h_n, e_r (r over all roots).
class LieAlgebra {
 public:
  explicit LieAlgebra(const RootSystem& rs) : rs_(&rs), n_(rs.rank()), r2_(rs.num_roots()) {}

  std::size_t dim() const { return n_ + r2_; }
  std::size_t h_index(unsigned i) const { return i; }
  std::size_t e_index(int r) const { return n_ + static_cast<std::size_t>(r); }

  /// Cocycle eps(a, b) = prod_{i,j} eps_ij^{a_i b_j}, eps_ii = -1,
  /// eps_ij = -1 exactly when i and j are joined and i > j.
  int cocycle(int a, int b) const {
    const auto& A = rs_->cartan();
    long long s = 0;
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j) {
        const bool minus = (i == j) || (A[i][j] == -1 && i > j);
        if (minus) s += static_cast<long long>(rs_->coords(a)[i]) * rs_->coords(b)[j];
      }
    return (s % 2 == 0) ? 1 : -1;
  }

  /// Bracket of two basis vectors, as a dense integer vector.
  std::vector<long long> bracket(std::size_t x, std::size_t y) const {
    std::vector<long long> out(dim(), 0);
    const bool xh = x < n_, yh = y < n_;
    if (xh && yh) return out;
    if (xh) {
      int r = static_cast<int>(y - n_);
      out[y] = rs_->pairing(r, static_cast<unsigned>(x));
      return out;
    }
    if (yh) {
      int r = static_cast<int>(x - n_);
      out[x] = -rs_->pairing(r, static_cast<unsigned>(y));
      return out;
    }
    int a = static_cast<int>(x - n_), b = static_cast<int>(y - n_);
    if (rs_->negate(a) == b) {
      int e = cocycle(a, b);
      for (unsigned k = 0; k < n_; ++k) out[k] = e * rs_->coords(a)[k];
      return out;
    }
    int s = rs_->sum(a, b);
    if (s >= 0) out[e_index(s)] = cocycle(a, b);
    return out;
  }

  /// Matrix of ad(e_r) in the basis above (column j = image of basis vector j).
  std::vector<std::vector<long long>> ad(int r) const {
    std::vector<std::vector<long long>> m(dim(), std::vector<long long>(dim(), 0));
    for (std::size_t j = 0; j < dim(); ++j) {
      auto col = bracket(e_index(r), j);
      for (std::size_t i = 0; i < dim(); ++i) m[i][j] = col[i];
    }
    return m;
  }

 private:
  const RootSystem* rs_;
  unsigned n_;
  int r2_;
};

struct StructureConstants {
  std::string type_label;
  std::uint64_t order_hash = 0;
  int m = 0;
  unsigned rank = 0;
  std::vector<int> N;    // m*m, entry a*m+b
  std::vector<int> eta;  // rank*m, entry i*m+b (0 where undefined)

  int n(int a, int b) const { return N[a * m + b]; }
  int weyl_sign(unsigned i, int b) const { return eta[i * m + b]; }

  nlohmann::json to_json() const {
    return {{"version", kStructureCacheVersion}, {"type", type_label},  {"rank", rank},
            {"order_hash", order_hash},         {"positive_roots", m}, {"N", N},
            {"eta", eta}};
  }
  static StructureConstants from_json(const nlohmann::json& j) {
    if (j.at("version").get<int>() != kStructureCacheVersion) throw ConfigError("structure-constant cache version mismatch");
    StructureConstants s;
    s.type_label = j.at("type").get<std::string>();
    s.rank = j.at("rank").get<unsigned>();
    s.order_hash = j.at("order_hash").get<std::uint64_t>();
    s.m = j.at("positive_roots").get<int>();
    s.N = j.at("N").get<std::vector<int>>();
    s.eta = j.at("eta").get<std::vector<int>>();
    return s;
  }
};

namespace detail {

using IntMat = std::vector<std::vector<long long>>;

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
  const std::size_t n = a.size();
  IntMat c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// exp of a nilpotent ad-matrix with cube zero: 1 + X + X^2/2 (exact division).
inline IntMat int_exp(const IntMat& x) {
  const std::size_t n = x.size();
  IntMat x2 = int_mul(x, x);
  IntMat e(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (x2[i][j] % 2 != 0) throw DomainError("ad(e)^2 not divisible by 2");
      e[i][j] = (i == j) + x[i][j] + x2[i][j] / 2;
    }
  return e;
}

}  // namespace detail

inline StructureConstants compute_structure_constants(const RootSystem& rs) {
  LieAlgebra L(rs);
  StructureConstants s;
  s.type_label = rs.label();
  s.order_hash = rs.order_hash();
  s.m = rs.num_positive();
  s.rank = rs.rank();
  s.N.assign(s.m * s.m, 0);
  for (int a = 0; a < s.m; ++a)
    for (int b = 0; b < s.m; ++b)
      if (rs.sum(a, b) >= 0) s.N[a * s.m + b] = L.cocycle(a, b);
  s.eta.assign(rs.rank() * s.m, 0);
  for (unsigned i = 0; i < rs.rank(); ++i) {
    auto ep = detail::int_exp(L.ad(rs.simple(i)));
    // exp(-ad e'_{-i}) with e'_{-i} = -e_{-i}
    auto en = detail::int_exp(L.ad(rs.negate(rs.simple(i))));
    auto n = detail::int_mul(detail::int_mul(ep, en), ep);
    for (int b = 0; b < s.m; ++b) {
      if (b == rs.simple(i)) continue;
      int t = rs.reflect(i, b);
      long long v = n[L.e_index(t)][L.e_index(b)];
      if (v != 1 && v != -1) throw DomainError("Weyl action sign is not +-1");
      s.eta[i * s.m + b] = static_cast<int>(v);
    }
  }
  return s;
}

/// Loads the table for rs from cache_dir, recomputing and storing it when the
/// file is absent or stamped for a different root order.
inline StructureConstants cached_structure_constants(const RootSystem& rs, const std::string& cache_dir) {
  namespace fs = std::filesystem;
  fs::path file = fs::path(cache_dir) / ("structure_" + rs.label() + ".json");
  if (fs::exists(file)) {
    try {
      std::ifstream in(file);
      auto s = StructureConstants::from_json(nlohmann::json::parse(in));
      if (s.order_hash == rs.order_hash() && s.type_label == rs.label()) return s;
    } catch (const std::exception&) {
      // stale or corrupt: rebuild below
    }
  }
  auto s = compute_structure_constants(rs);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  std::ofstream out(file);
  if (out) out << s.to_json().dump() << "\n";
  return s;
}

}  // namespace chevflag
