#pragma once

// Simply-laced root systems (types A, D, E up to rank 6) and their Weyl groups.
//
// Roots are indexed 0..2m-1: indices 0..m-1 are the positive roots sorted by
// (height, then coordinates in decreasing lexicographic order), so the simple
// roots alpha_1..alpha_n come first; index r + m is the negative of root r.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "chevflag/errors.hpp"

namespace chevflag {

inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ull) {
  auto p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  return fnv1a(s.data(), s.size(), h);
}

using Subset = std::uint32_t;  // bitmask over simple indices 0..n-1

inline std::string format_subset(Subset J, unsigned n) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < n; ++i)
    if (J >> i & 1u) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

class RootSystem {
 public:
  static constexpr unsigned kMaxRank = 6;

  /// Builds the root system of type A_n, D_n or E_n with n <= 6.
  static RootSystem build(char type, unsigned rank) {
    if (type != 'A' && type != 'D' && type != 'E')
      throw ConfigError(std::string("unsupported root system type '") + type +
                        "': only simply-laced types A, D, E are supported");
    if (rank < 1 || rank > kMaxRank)
      throw ConfigError("rank must be between 1 and " + std::to_string(kMaxRank) + ", got " + std::to_string(rank));
    if (type == 'D' && rank < 4) throw ConfigError("type D requires rank >= 4");
    if (type == 'E' && rank != 6) throw ConfigError("type E requires rank 6 (E7, E8 exceed the rank cap 6)");
    RootSystem rs;
    rs.type_ = type;
    rs.rank_ = rank;
    rs.cartan_.assign(rank, std::vector<int>(rank, 0));
    auto link = [&](unsigned a, unsigned b) { rs.cartan_[a][b] = rs.cartan_[b][a] = -1; };
    for (unsigned i = 0; i < rank; ++i) rs.cartan_[i][i] = 2;
    if (type == 'A') {
      for (unsigned i = 0; i + 1 < rank; ++i) link(i, i + 1);
    } else if (type == 'D') {
      for (unsigned i = 0; i + 2 < rank; ++i) link(i, i + 1);
      link(rank - 3, rank - 1);
    } else {
      link(0, 2);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      link(1, 3);
    }
    rs.generate();
    return rs;
  }

  /// Parses labels such as "A2" or "E6".
  static RootSystem parse(const std::string& label) {
    if (label.size() < 2) throw ConfigError("root system label must look like A2, D4, E6; got '" + label + "'");
    unsigned r = 0;
    for (std::size_t i = 1; i < label.size(); ++i) {
      if (label[i] < '0' || label[i] > '9') throw ConfigError("bad root system label '" + label + "'");
      r = r * 10 + static_cast<unsigned>(label[i] - '0');
    }
    return build(label[0], r);
  }

  char type() const { return type_; }
  unsigned rank() const { return rank_; }
  std::string label() const { return std::string(1, type_) + std::to_string(rank_); }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  int num_positive() const { return m_; }
  int num_roots() const { return 2 * m_; }
  bool is_positive(int r) const { return r < m_; }
  int negate(int r) const { return r < m_ ? r + m_ : r - m_; }
  int simple(unsigned i) const { return static_cast<int>(i); }
  bool is_simple(int r) const { return r < static_cast<int>(rank_); }

  const std::vector<int>& coords(int r) const { return coords_[r]; }
  int height(int r) const { return height_[r]; }
  int max_height() const { return height_[m_ - 1]; }

  /// Index of the root with the given coordinates, or -1.
  int find(const std::vector<int>& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
  }
  /// Index of a + b if it is a root, else -1 (a + b = 0 also gives -1).
  int sum(int a, int b) const { return sum_[a * 2 * m_ + b]; }
  /// s_i(r)
  int reflect(unsigned i, int r) const { return reflect_[i * 2 * m_ + r]; }
  /// <r, alpha_i^vee>
  int pairing(int r, unsigned i) const {
    int s = 0;
    for (unsigned k = 0; k < rank_; ++k) s += coords_[r][k] * cartan_[i][k];
    return s;
  }

  /// Hash of the labelled positive-root order; stamps order-dependent artifacts.
  std::uint64_t order_hash() const {
    std::string s = label() + ":";
    for (int r = 0; r < m_; ++r) {
      for (int c : coords_[r]) s += std::to_string(c) + ",";
      s += ";";
    }
    return fnv1a(s);
  }

  std::string format_root(int r) const {
    std::string s = is_positive(r) ? "" : "-";
    bool first = true;
    for (unsigned k = 0; k < rank_; ++k) {
      int c = std::abs(coords_[r][k]);
      if (!c) continue;
      if (!first) s += "+";
      if (c > 1) s += std::to_string(c);
      s += "a" + std::to_string(k + 1);
      first = false;
    }
    return s;
  }

  friend bool operator==(const RootSystem& a, const RootSystem& b) {
    return a.type_ == b.type_ && a.rank_ == b.rank_;
  }

 private:
  void generate() {
    std::set<std::vector<int>> all;
    std::vector<std::vector<int>> todo;
    for (unsigned i = 0; i < rank_; ++i) {
      std::vector<int> e(rank_, 0);
      e[i] = 1;
      todo.push_back(e);
      all.insert(e);
    }
    while (!todo.empty()) {
      auto v = todo.back();
      todo.pop_back();
      for (unsigned i = 0; i < rank_; ++i) {
        int pr = 0;
        for (unsigned k = 0; k < rank_; ++k) pr += v[k] * cartan_[i][k];
        auto w = v;
        w[i] -= pr;
        if (all.insert(w).second) todo.push_back(w);
      }
    }
    std::vector<std::vector<int>> pos;
    for (const auto& v : all)
      if (std::all_of(v.begin(), v.end(), [](int c) { return c >= 0; })) pos.push_back(v);
    auto ht = [](const std::vector<int>& v) {
      int s = 0;
      for (int c : v) s += c;
      return s;
    };
    std::sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
      int ha = ht(a), hb = ht(b);
      if (ha != hb) return ha < hb;
      return a > b;
    });
    m_ = static_cast<int>(pos.size());
    coords_ = pos;
    for (const auto& v : pos) {
      auto n = v;
      for (auto& c : n) c = -c;
      coords_.push_back(n);
    }
    for (int r = 0; r < 2 * m_; ++r) {
      index_[coords_[r]] = r;
      height_.push_back(ht(coords_[r]));
    }
    sum_.assign(4 * m_ * m_, -1);
    for (int a = 0; a < 2 * m_; ++a)
      for (int b = 0; b < 2 * m_; ++b) {
        std::vector<int> s(rank_);
        for (unsigned k = 0; k < rank_; ++k) s[k] = coords_[a][k] + coords_[b][k];
        sum_[a * 2 * m_ + b] = find(s);
      }
    reflect_.assign(rank_ * 2 * m_, -1);
    for (unsigned i = 0; i < rank_; ++i)
      for (int r = 0; r < 2 * m_; ++r) {
        auto w = coords_[r];
        w[i] -= pairing(r, i);
        reflect_[i * 2 * m_ + r] = find(w);
      }
  }

  char type_ = 'A';
  unsigned rank_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> coords_;
  std::vector<int> height_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> sum_, reflect_;
};

/// The Weyl group, fully enumerated. Element 0 is the identity; elements are
/// numbered by (length, lexicographically least reduced word).
class WeylGroup {
 public:
  using Index = std::uint32_t;
  static constexpr std::size_t kDefaultCap = 60000;

  explicit WeylGroup(const RootSystem& rs, std::size_t cap = kDefaultCap) : rs_(&rs), n_(rs.rank()), r2_(rs.num_roots()) {
    std::vector<std::uint16_t> id(r2_);
    for (int r = 0; r < r2_; ++r) id[r] = static_cast<std::uint16_t>(r);
    add(id, {}, 0);
    std::size_t level_begin = 0;
    while (level_begin < perm_.size()) {
      std::size_t level_end = perm_.size();
      for (std::size_t w = level_begin; w < level_end; ++w)
        for (unsigned i = 0; i < n_; ++i) {
          // w s_i
          std::vector<std::uint16_t> p(r2_);
          for (int r = 0; r < r2_; ++r) p[r] = perm_[w][rs.reflect(i, r)];
          if (lookup_.count(key(p))) continue;
          if (perm_.size() >= cap)
            throw ResourceError("Weyl group of " + rs.label() + " exceeds enumeration cap " + std::to_string(cap));
          auto word = words_[w];
          word.push_back(static_cast<std::uint8_t>(i));
          add(p, word, length_[w] + 1);
        }
      level_begin = level_end;
    }
    const std::size_t N = perm_.size();
    rmul_.assign(N * n_, 0);
    lmul_.assign(N * n_, 0);
    for (std::size_t w = 0; w < N; ++w)
      for (unsigned i = 0; i < n_; ++i) {
        std::vector<std::uint16_t> pr(r2_), pl(r2_);
        for (int r = 0; r < r2_; ++r) {
          pr[r] = perm_[w][rs.reflect(i, r)];
          pl[r] = static_cast<std::uint16_t>(rs.reflect(i, perm_[w][r]));
        }
        rmul_[w * n_ + i] = lookup_.at(key(pr));
        lmul_[w * n_ + i] = lookup_.at(key(pl));
      }
    inverse_.resize(N);
    for (std::size_t w = 0; w < N; ++w) {
      Index v = 0;
      for (auto it = words_[w].rbegin(); it != words_[w].rend(); ++it) v = rmul_[v * n_ + *it];
      inverse_[w] = v;
    }
    longest_ = static_cast<Index>(N - 1);
  }

  const RootSystem& roots() const { return *rs_; }
  std::size_t size() const { return perm_.size(); }
  unsigned rank() const { return n_; }
  Index identity() const { return 0; }
  Index longest() const { return longest_; }

  /// Lexicographically least reduced word (0-based simple indices).
  const std::vector<std::uint8_t>& word(Index w) const { return words_[w]; }
  unsigned length(Index w) const { return length_[w]; }
  int act(Index w, int root) const { return perm_[w][root]; }
  const std::vector<std::uint16_t>& root_permutation(Index w) const { return perm_[w]; }

  Index simple_reflection(unsigned i) const { return rmul_[i]; }
  Index mul_simple_right(Index w, unsigned i) const { return rmul_[w * n_ + i]; }
  Index mul_simple_left(unsigned i, Index w) const { return lmul_[w * n_ + i]; }
  Index inverse(Index w) const { return inverse_[w]; }
  Index mul(Index a, Index b) const {
    for (auto i : words_[b]) a = rmul_[a * n_ + i];
    return a;
  }
  Index from_word(const std::vector<std::uint8_t>& word) const {
    Index w = 0;
    for (auto i : word) {
      if (i >= n_) throw DomainError("simple index out of range in Weyl word");
      w = rmul_[w * n_ + i];
    }
    return w;
  }

  /// R(w) = { i : w s_i < w }
  Subset right_descents(Index w) const {
    Subset s = 0;
    for (unsigned i = 0; i < n_; ++i)
      if (!rs_->is_positive(perm_[w][i])) s |= 1u << i;
    return s;
  }
  /// { i : s_i w < w }
  Subset left_descents(Index w) const { return right_descents(inverse_[w]); }

  /// Phi_w^- = { a > 0 : w(a) < 0 }, in root order.
  std::vector<int> inversion_set(Index w) const {
    std::vector<int> out;
    for (int r = 0; r < rs_->num_positive(); ++r)
      if (!rs_->is_positive(perm_[w][r])) out.push_back(r);
    return out;
  }
  /// Phi_w^+ = { a > 0 : w(a) > 0 }, in root order.
  std::vector<int> non_inversion_set(Index w) const {
    std::vector<int> out;
    for (int r = 0; r < rs_->num_positive(); ++r)
      if (rs_->is_positive(perm_[w][r])) out.push_back(r);
    return out;
  }

  bool in_parabolic(Index w, Subset J) const {
    for (auto i : words_[w])
      if (!(J >> i & 1u)) return false;
    return true;
  }
  /// Longest element of W_J.
  Index longest_of(Subset J) const {
    Index best = 0;
    for (Index w = 0; w < size(); ++w)
      if (in_parabolic(w, J) && length_[w] > length_[best]) best = w;
    return best;
  }

  std::string format(Index w) const {
    if (words_[w].empty()) return "e";
    std::string s;
    for (auto i : words_[w]) s += "s" + std::to_string(i + 1);
    return s;
  }

 private:
  std::uint64_t key(const std::vector<std::uint16_t>& p) const {
    std::uint64_t k = 0;
    for (unsigned i = 0; i < n_; ++i) k = k * 128 + p[i];
    return k;
  }
  void add(const std::vector<std::uint16_t>& p, std::vector<std::uint8_t> word, unsigned len) {
    lookup_[key(p)] = static_cast<Index>(perm_.size());
    perm_.push_back(p);
    words_.push_back(std::move(word));
    length_.push_back(len);
  }

  const RootSystem* rs_;
  unsigned n_;
  int r2_;
  std::vector<std::vector<std::uint16_t>> perm_;
  std::vector<std::vector<std::uint8_t>> words_;
  std::vector<unsigned> length_;
  std::unordered_map<std::uint64_t, Index> lookup_;
  std::vector<Index> rmul_, lmul_, inverse_;
  Index longest_ = 0;
};

/// Parabolic data for J: the longest element w_J, the minimal left coset
/// representatives X_J of W/W_J, and Y_J = { w in X_J : R(w w_J) = J }.
struct ParabolicSubset {
  Subset J = 0;
  WeylGroup::Index w_J = 0;
  std::vector<WeylGroup::Index> X;
  std::vector<WeylGroup::Index> Y;
};

inline ParabolicSubset parabolic_data(const WeylGroup& W, Subset J) {
  if (J >> W.rank()) throw DomainError("J is not a subset of the simple indices");
  ParabolicSubset P;
  P.J = J;
  P.w_J = W.longest_of(J);
  for (WeylGroup::Index w = 0; w < W.size(); ++w) {
    if (W.right_descents(w) & J) continue;
    P.X.push_back(w);
    if (W.right_descents(W.mul(w, P.w_J)) == J) P.Y.push_back(w);
  }
  return P;
}

inline std::vector<Subset> all_subsets(unsigned n) {
  std::vector<Subset> out;
  for (Subset J = 0; J < (1u << n); ++J) out.push_back(J);
  return out;
}

}  // namespace chevflag
