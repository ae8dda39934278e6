#pragma once

// Coefficient fields for modules: prime fields F_l and the rationals.

#include <concepts>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "chevflag/errors.hpp"
#include "chevflag/finite_field.hpp"

namespace chevflag {

template <class F>
concept CoefficientField = requires(const F& f, typename F::value_type a, std::int64_t n) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.neg(a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.from_int(n) } -> std::convertible_to<typename F::value_type>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { f.name() } -> std::convertible_to<std::string>;
};

class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t l) : l_(l) {
    if (!is_prime(l) || l >= (1u << 31))
      throw ConfigError("coefficient field order must be a prime below 2^31, got " + std::to_string(l));
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= l_ ? s - l_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + l_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : l_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % l_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw DomainError("inverse of zero in " + name());
    // Fermat
    std::uint64_t r = 1, base = a, e = l_ - 2;
    while (e) {
      if (e & 1) r = r * base % l_;
      base = base * base % l_;
      e >>= 1;
    }
    return static_cast<value_type>(r);
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(l_);
    return static_cast<value_type>(r < 0 ? r + l_ : r);
  }
  std::int64_t to_int(value_type a) const { return a; }
  std::uint64_t characteristic() const { return l_; }
  std::uint32_t order() const { return l_; }
  std::string name() const { return "F" + std::to_string(l_); }
  std::string format(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.l_ == b.l_; }

 private:
  std::uint32_t l_;
};

class RationalField {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw DomainError("inverse of zero in Q");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type from_int(std::int64_t n) const { return value_type(n); }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  std::string format(const value_type& a) const { return a.str(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

static_assert(CoefficientField<PrimeField>);
static_assert(CoefficientField<RationalField>);

}  // namespace chevflag
