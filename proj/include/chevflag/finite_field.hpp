#pragma once

// Exact arithmetic in F_q, q = p^k <= 256, by lookup tables.
//
// Elements are encoded as integers 0..q-1 whose base-p digits are the
// coordinates in the polynomial basis 1, x, ..., x^{k-1} of F_p[x]/(f).

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chevflag/errors.hpp"

namespace chevflag {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Splits q into (p, k) with q = p^k; throws ConfigError when q is not a prime power.
inline std::pair<unsigned, unsigned> split_prime_power(unsigned q) {
  if (q < 2) throw ConfigError("q must be a prime power >= 2, got " + std::to_string(q));
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw ConfigError("q must be a prime power, got " + std::to_string(q));
  return {p, k};
}

class FiniteField {
 public:
  using Elem = std::uint16_t;
  static constexpr unsigned kMaxOrder = 256;

  explicit FiniteField(unsigned p, unsigned k = 1) : p_(p), k_(k) {
    if (!is_prime(p)) throw ConfigError("field characteristic must be prime, got " + std::to_string(p));
    if (k == 0) throw ConfigError("field degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxOrder)
        throw ConfigError("field order p^k must be <= " + std::to_string(kMaxOrder));
    }
    q_ = static_cast<unsigned>(q);
    if (auto it = conway_table().find({p, k}); it != conway_table().end() && try_modulus(it->second)) {
      conway_ = true;
    } else if (!search_modulus()) {
      throw ConfigError("no primitive polynomial found");  // unreachable for valid (p, k)
    }
  }

  static FiniteField of_order(unsigned q) {
    auto [p, k] = split_prime_power(q);
    return FiniteField(p, k);
  }

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned q() const { return q_; }
  /// Monic modulus, coefficients from the constant term upwards.
  const std::vector<unsigned>& modulus() const { return modulus_; }
  bool conway_modulus() const { return conway_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// A generator of the multiplicative group (the class of x).
  Elem primitive() const { return primitive_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
    return inv_[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Image of the integer n under Z -> F_p -> F_q.
  Elem from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  /// Coordinates over F_p in the polynomial basis.
  std::vector<unsigned> coordinates(Elem a) const {
    std::vector<unsigned> c(k_);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = a % p_;
      a = static_cast<Elem>(a / p_);
    }
    return c;
  }
  Elem from_coordinates(const std::vector<unsigned>& c) const {
    unsigned v = 0;
    for (unsigned i = static_cast<unsigned>(c.size()); i-- > 0;) v = v * p_ + (c[i] % p_);
    return static_cast<Elem>(v);
  }

  /// F_p-basis 1, x, ..., x^{k-1}.
  std::vector<Elem> additive_basis() const {
    std::vector<Elem> b;
    unsigned v = 1;
    for (unsigned i = 0; i < k_; ++i, v *= p_) b.push_back(static_cast<Elem>(v));
    return b;
  }

  /// The subfield F_{p^a}; exists exactly when a divides k.
  std::vector<Elem> subfield(unsigned a) const {
    if (a == 0 || k_ % a != 0)
      throw DomainError("F_" + std::to_string(p_) + "^" + std::to_string(a) + " does not embed in F_" +
                        std::to_string(q_) + " (need a | k)");
    std::int64_t pa = 1;
    for (unsigned i = 0; i < a; ++i) pa *= p_;
    std::vector<Elem> out;
    for (unsigned x = 0; x < q_; ++x)
      if (pow(static_cast<Elem>(x), pa) == x) out.push_back(static_cast<Elem>(x));
    return out;
  }

  /// Smallest F_p-subspace containing the given elements (an additive subgroup).
  std::vector<Elem> additive_span(const std::vector<Elem>& gens) const {
    std::vector<char> in(q_, 0);
    std::vector<Elem> out{0};
    in[0] = 1;
    for (Elem g : gens) {
      if (in[g]) continue;
      std::size_t n = out.size();
      Elem m = g;
      for (unsigned j = 1; j < p_; ++j, m = add(m, g))
        for (std::size_t t = 0; t < n; ++t) {
          Elem s = add(out[t], m);
          if (!in[s]) {
            in[s] = 1;
            out.push_back(s);
          }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string name() const { return "F" + std::to_string(q_); }

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }

 private:
  // Conway polynomials, constant term first, for the small extension fields.
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>& conway_table() {
    static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> t{
        {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},    {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}}, {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},          {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},    {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{5, 2}, {2, 4, 1}},          {{5, 3}, {3, 3, 0, 1}},
        {{7, 2}, {3, 6, 1}},          {{11, 2}, {2, 7, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    return t;
  }

  // Installs f as modulus if it defines a field in which x is primitive.
  bool try_modulus(const std::vector<unsigned>& f) {
    if (f.size() != k_ + 1 || f.back() != 1) return false;
    modulus_ = f;
    build_tables();
    if (!tables_form_field()) return false;
    Elem x = (k_ == 1) ? static_cast<Elem>((p_ - f[0]) % p_) : static_cast<Elem>(p_);
    if (x == 0 || multiplicative_order(x) != q_ - 1) return false;
    primitive_ = x;
    return true;
  }

  bool search_modulus() {
    if (k_ == 1) {
      // x - g for the least primitive root g
      for (unsigned g = 1; g < p_; ++g)
        if (try_modulus({(p_ - g) % p_, 1})) {
          conway_ = true;
          return true;
        }
      return false;
    }
    std::vector<unsigned> f(k_ + 1, 0);
    f[k_] = 1;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k_; ++i) count *= p_;
    for (std::uint64_t n = 0; n < count; ++n) {
      std::uint64_t r = n;
      for (unsigned i = 0; i < k_; ++i) {
        f[i] = static_cast<unsigned>(r % p_);
        r /= p_;
      }
      if (try_modulus(f)) return true;
    }
    return false;
  }

  unsigned multiplicative_order(Elem a) const {
    unsigned ord = 1;
    for (Elem x = a; x != 1; x = mul(x, a)) {
      if (++ord > q_) return 0;
    }
    return ord;
  }

  bool tables_form_field() const {
    for (unsigned a = 1; a < q_; ++a)
      if (inv_[a] == 0) return false;
    return true;
  }

  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    std::vector<std::vector<unsigned>> coords(q_);
    for (unsigned a = 0; a < q_; ++a) coords[a] = coordinates(static_cast<Elem>(a));
    for (unsigned a = 0; a < q_; ++a) {
      std::vector<unsigned> n(k_);
      for (unsigned i = 0; i < k_; ++i) n[i] = (p_ - coords[a][i]) % p_;
      neg_[a] = from_coordinates(n);
      for (unsigned b = 0; b < q_; ++b) {
        std::vector<unsigned> s(k_);
        for (unsigned i = 0; i < k_; ++i) s[i] = (coords[a][i] + coords[b][i]) % p_;
        add_[a * q_ + b] = from_coordinates(s);
        mul_[a * q_ + b] = poly_mul(coords[a], coords[b]);
      }
    }
    for (unsigned a = 1; a < q_; ++a)
      for (unsigned b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) {
          inv_[a] = static_cast<Elem>(b);
          break;
        }
  }

  Elem poly_mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
    std::vector<unsigned> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    for (unsigned d = 2 * k_ - 1; d-- > k_;) {
      unsigned c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (unsigned i = 0; i < k_; ++i)
        prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - modulus_[i]) * c) % p_;
    }
    prod.resize(k_);
    return from_coordinates(prod);
  }

  unsigned p_, k_, q_ = 0;
  bool conway_ = false;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  Elem primitive_ = 1;
};

}  // namespace chevflag
