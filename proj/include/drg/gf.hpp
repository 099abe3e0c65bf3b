#pragma once

// Table-driven arithmetic for GF(r^2) with r a small prime, plus
// Gaussian-elimination rank over the field. Elements are indices
// a + b*r into the table for the residue a + b*t, where t is a root of
// the chosen irreducible quadratic. The subfield GF(r) occupies indices
// 0..r-1, and conjugation x -> x^r is the Frobenius involution fixing
// exactly that subfield.

#include <cstdint>
#include <vector>

#include "drg/core.hpp"

namespace drg::gf {

using Elem = std::int32_t;

class FieldTable {
 public:
  /// GF(r^2) for prime r in {2, 3}.
  explicit FieldTable(int r) : r_(r), q_(r * r) {
    if (r != 2 && r != 3) fail(errc::unsupported_parameters, "GF(r^2) supports r in {2,3}");
    // t^2 = t + 1 over GF(2); t^2 = -1 over GF(3). Both are irreducible.
    const int t2_a = (r == 2) ? 1 : r - 1;
    const int t2_b = (r == 2) ? 1 : 0;
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    conj_.assign(q_, 0);
    for (Elem x = 0; x < q_; ++x) {
      int xa = x % r_, xb = x / r_;
      neg_[x] = idx((r_ - xa) % r_, (r_ - xb) % r_);
      for (Elem y = 0; y < q_; ++y) {
        int ya = y % r_, yb = y / r_;
        add_[x * q_ + y] = idx((xa + ya) % r_, (xb + yb) % r_);
        // (xa + xb t)(ya + yb t) with t^2 = t2_a + t2_b t
        int lo = (xa * ya + xb * yb % r_ * t2_a) % r_;
        int hi = (xa * yb + xb * ya + xb * yb % r_ * t2_b) % r_;
        mul_[x * q_ + y] = idx(lo, hi);
      }
    }
    for (Elem x = 1; x < q_; ++x) {
      for (Elem y = 1; y < q_; ++y)
        if (mul(x, y) == 1) inv_[x] = y;
    }
    for (Elem x = 0; x < q_; ++x) {
      Elem p = x;
      for (int i = 1; i < r_; ++i) p = mul(p, x);
      conj_[x] = p;  // x^r
    }
  }

  int r() const noexcept { return r_; }
  int q() const noexcept { return q_; }

  Elem add(Elem x, Elem y) const { return add_[x * q_ + y]; }
  Elem sub(Elem x, Elem y) const { return add_[x * q_ + neg_[y]]; }
  Elem mul(Elem x, Elem y) const { return mul_[x * q_ + y]; }
  Elem neg(Elem x) const { return neg_[x]; }
  Elem inv(Elem x) const {
    if (x == 0) fail(errc::unsupported_parameters, "inverse of zero");
    return inv_[x];
  }
  Elem conj(Elem x) const { return conj_[x]; }

  bool in_subfield(Elem x) const { return x < r_; }

 private:
  Elem idx(int a, int b) const { return static_cast<Elem>(a + b * r_); }

  int r_, q_;
  std::vector<Elem> add_, mul_, neg_, inv_, conj_;
};

/// Dense matrix over one field table, row-major.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  Elem& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elem at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// Rank by Gaussian elimination over the field.
inline int matrix_rank(const FieldTable& f, Matrix m) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    Elem scale = f.inv(m.at(rank, col));
    for (int j = col; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), scale);
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      Elem factor = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

}  // namespace drg::gf
