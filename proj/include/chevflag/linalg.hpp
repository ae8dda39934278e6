#pragma once

// Dense exact linear algebra over a coefficient field: semi-echelon bases
// with optional coordinate tags, spinning, kernels.

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "chevflag/coefficient_field.hpp"
#include "chevflag/errors.hpp"

namespace chevflag {

template <CoefficientField F>
using Vec = std::vector<typename F::value_type>;

template <CoefficientField F>
bool is_zero_vec(const F& f, const Vec<F>& v) {
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

/// v <- v + c * w
template <CoefficientField F>
void axpy(const F& f, Vec<F>& v, const typename F::value_type& c, const Vec<F>& w) {
  if (f.is_zero(c)) return;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (!f.is_zero(w[j])) v[j] = f.add(v[j], f.mul(c, w[j]));
}

template <CoefficientField F>
void scale(const F& f, Vec<F>& v, const typename F::value_type& c) {
  for (auto& x : v) x = f.mul(c, x);
}

/// Semi-echelon basis of a subspace of F^n. Every row carries a tag vector
/// (possibly empty); reduction tracks the tag combination, which turns the
/// basis into a coordinate system for quotients and change-of-basis solves.
template <CoefficientField F>
class Echelon {
 public:
  using T = typename F::value_type;

  Echelon(F f, std::size_t ncols, std::size_t ntags = 0) : f_(std::move(f)), n_(ncols), t_(ntags) {}

  const F& field() const { return f_; }
  std::size_t dim() const { return rows_.size(); }
  std::size_t ncols() const { return n_; }
  std::size_t ntags() const { return t_; }
  const std::vector<Vec<F>>& rows() const { return rows_; }
  const std::vector<Vec<F>>& tags() const { return tags_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after clearing every pivot column; tag receives minus the
  /// tag combination of the rows subtracted.
  void reduce_in_place(Vec<F>& v, Vec<F>& tag) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T c = v[pivots_[i]];
      if (f_.is_zero(c)) continue;
      const T m = f_.neg(c);
      axpy(f_, v, m, rows_[i]);
      if (t_) axpy(f_, tag, m, tags_[i]);
    }
  }

  Vec<F> reduce(Vec<F> v) const {
    Vec<F> tag;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T c = v[pivots_[i]];
      if (!f_.is_zero(c)) axpy(f_, v, f_.neg(c), rows_[i]);
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return is_zero_vec(f_, reduce(v)); }

  /// Adds v (with tag) to the basis; returns false when v is already in the span.
  bool insert(Vec<F> v, Vec<F> tag = {}) {
    if (v.size() != n_) throw DomainError("vector length mismatch in echelon insert");
    if (t_ && tag.empty()) tag.assign(t_, f_.zero());
    reduce_in_place(v, tag);
    std::size_t p = 0;
    while (p < n_ && f_.is_zero(v[p])) ++p;
    if (p == n_) return false;
    const T s = f_.inv(v[p]);
    scale(f_, v, s);
    if (t_) scale(f_, tag, s);
    rows_.push_back(std::move(v));
    if (t_) tags_.push_back(std::move(tag));
    pivots_.push_back(p);
    return true;
  }

  /// For v in the span, the tag combination sum c_i tag_i with v = sum c_i row_i.
  std::optional<Vec<F>> coordinates(Vec<F> v) const {
    Vec<F> tag(t_, f_.zero());
    reduce_in_place(v, tag);
    if (!is_zero_vec(f_, v)) return std::nullopt;
    for (auto& x : tag) x = f_.neg(x);
    return tag;
  }

 private:
  F f_;
  std::size_t n_, t_;
  std::vector<Vec<F>> rows_, tags_;
  std::vector<std::size_t> pivots_;
};

/// Smallest subspace containing the seeds and stable under every generator.
/// apply(g, v) returns the image of v under generator g.
template <CoefficientField F, class Apply>
Echelon<F> spin(const F& f, std::size_t n, const std::vector<Vec<F>>& seeds, std::size_t ngens, Apply&& apply,
                std::size_t cap = 5000) {
  Echelon<F> e(f, n);
  std::deque<std::size_t> todo;
  auto push = [&](Vec<F> v) {
    if (e.insert(std::move(v))) {
      if (e.dim() > cap) throw ResourceError("spin dimension exceeds cap " + std::to_string(cap));
      todo.push_back(e.dim() - 1);
    }
  };
  for (const auto& s : seeds) push(s);
  while (!todo.empty()) {
    std::size_t i = todo.front();
    todo.pop_front();
    for (std::size_t g = 0; g < ngens; ++g) push(apply(g, e.rows()[i]));
  }
  return e;
}

template <CoefficientField F>
struct Matrix {
  using T = typename F::value_type;
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, T fill) : rows(r), cols(c), data(r * c, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  Vec<F> column(std::size_t j) const {
    Vec<F> c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Vec<F> row(std::size_t i) const { return Vec<F>(data.begin() + i * cols, data.begin() + (i + 1) * cols); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

template <CoefficientField F>
Matrix<F> identity_matrix(const F& f, std::size_t n) {
  Matrix<F> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <CoefficientField F>
Vec<F> mat_vec(const F& f, const Matrix<F>& m, const Vec<F>& v) {
  Vec<F> out(m.rows, f.zero());
  for (std::size_t i = 0; i < m.rows; ++i) {
    auto acc = f.zero();
    for (std::size_t j = 0; j < m.cols; ++j)
      if (!f.is_zero(v[j])) acc = f.add(acc, f.mul(m(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

template <CoefficientField F>
Matrix<F> mat_mul(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> c(a.rows, b.cols, f.zero());
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const auto x = a(i, k);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

template <CoefficientField F>
Matrix<F> mat_add(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = f.add(a.data[i], b.data[i]);
  return c;
}

template <CoefficientField F>
Matrix<F> mat_scale(const F& f, const Matrix<F>& a, const typename F::value_type& s) {
  Matrix<F> c = a;
  for (auto& x : c.data) x = f.mul(s, x);
  return c;
}

template <CoefficientField F>
Matrix<F> transpose(const Matrix<F>& a) {
  Matrix<F> t(a.cols, a.rows, typename F::value_type{});
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

template <CoefficientField F>
std::size_t rank(const F& f, const std::vector<Vec<F>>& vectors, std::size_t n) {
  Echelon<F> e(f, n);
  for (const auto& v : vectors) e.insert(v);
  return e.dim();
}

template <CoefficientField F>
std::size_t matrix_rank(const F& f, const Matrix<F>& m) {
  Echelon<F> e(f, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) e.insert(m.row(i));
  return e.dim();
}

/// Basis of {x : m x = 0}, in reduced form (one free column per vector).
template <CoefficientField F>
std::vector<Vec<F>> nullspace(const F& f, const Matrix<F>& m) {
  // Gauss-Jordan to reduced row echelon form.
  Matrix<F> a = m;
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t p = r;
    while (p < a.rows && f.is_zero(a(p, c))) ++p;
    if (p == a.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(p, j), a(r, j));
    const auto s = f.inv(a(r, c));
    for (std::size_t j = 0; j < a.cols; ++j) a(r, j) = f.mul(s, a(r, j));
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == r || f.is_zero(a(i, c))) continue;
      const auto m2 = f.neg(a(i, c));
      for (std::size_t j = 0; j < a.cols; ++j) a(i, j) = f.add(a(i, j), f.mul(m2, a(r, j)));
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<char> is_piv(a.cols, 0);
  for (auto c : pivcol) is_piv[c] = 1;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_piv[free]) continue;
    Vec<F> v(a.cols, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = f.neg(a(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <CoefficientField F>
bool is_invertible(const F& f, const Matrix<F>& m) {
  return m.rows == m.cols && matrix_rank(f, m) == m.rows;
}

}  // namespace chevflag
