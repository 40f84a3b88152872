#pragma once

// Exact row reduction over Q or Q(i). Rows are inserted one at a time into a
// reduced row echelon basis, so huge overdetermined systems (one row per
// monomial) never have to be materialised at once.

#include "crkit/polyalg.hpp"

#include <cstddef>
#include <vector>

namespace crkit::poly {

inline bool is_zero_value(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero_value(const GaussianRational& x) { return x.is_zero(); }

template <typename T>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  /// Reduces row against the basis; returns true if it increased the rank.
  bool insert(std::vector<T> row) {
    if (full()) return false;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t pc = pivots_[k];
      if (is_zero_value(row[pc])) continue;
      const T factor = row[pc];
      const auto& pr = rows_[k];
      for (std::size_t c = pc; c < cols_; ++c) {
        if (!is_zero_value(pr[c])) row[c] -= factor * pr[c];
      }
    }
    std::size_t pc = cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!is_zero_value(row[c])) {
        pc = c;
        break;
      }
    }
    if (pc == cols_) return false;
    const T inv = T(1) / row[pc];
    for (std::size_t c = pc; c < cols_; ++c) {
      if (!is_zero_value(row[c])) row[c] *= inv;
    }
    // Keep the basis fully reduced in the new pivot column.
    for (auto& other : rows_) {
      if (is_zero_value(other[pc])) continue;
      const T factor = other[pc];
      for (std::size_t c = pc; c < cols_; ++c) {
        if (!is_zero_value(row[c])) other[c] -= factor * row[c];
      }
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(pc);
    return true;
  }

  /// Basis of {x : R x = 0}: one vector per free column, with that column set
  /// to 1 and the other free columns 0.
  std::vector<std::vector<T>> nullspace() const {
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t pc : pivots_) is_pivot[pc] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> x(cols_, T(0));
      x[f] = T(1);
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (!is_zero_value(rows_[k][f])) x[pivots_[k]] = -rows_[k][f];
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace crkit::poly
