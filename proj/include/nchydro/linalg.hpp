#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nchydro/scalar.hpp"

namespace nchydro {

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, ScalarOps<S>::zero()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const S& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<S> a_;
};

// Reduced row echelon solver for possibly singular systems M x = b with many
// right-hand sides: one elimination of [M | I], then each solve is a
// matrix-vector product.  Exact scalars pivot on the first nonzero entry;
// float scalars pivot on the entry of largest modulus with a relative zero
// threshold.
template <class S>
class PseudoSolver {
 public:
  explicit PseudoSolver(const DenseMatrix<S>& m) : r_(m), e_(m.rows(), m.rows()) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    for (std::size_t i = 0; i < rows; ++i) e_.at(i, i) = ScalarOps<S>::one();

    double scale = 1.0;
    if constexpr (!ScalarOps<S>::exact) {
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          scale = std::max(scale, std::sqrt(ScalarOps<S>::abs_sq(r_.at(i, j))));
    }
    zero_tol_ = 1e-12 * scale;

    pivot_col_.assign(rows, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
      std::size_t pivot = rows;
      if constexpr (ScalarOps<S>::exact) {
        for (std::size_t i = row; i < rows; ++i) {
          if (!ScalarOps<S>::is_zero(r_.at(i, col))) {
            pivot = i;
            break;
          }
        }
      } else {
        double best = 0.0;
        for (std::size_t i = row; i < rows; ++i) {
          double mag = ScalarOps<S>::abs_sq(r_.at(i, col));
          if (mag > best) {
            best = mag;
            pivot = i;
          }
        }
        if (pivot < rows && std::sqrt(best) <= zero_tol_) pivot = rows;
      }
      if (pivot == rows) continue;

      swap_rows(pivot, row, col);
      S inv = ScalarOps<S>::one() / r_.at(row, col);
      scale_row(row, inv, col);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == row) continue;
        S factor = r_.at(i, col);
        if (ScalarOps<S>::is_zero(factor)) continue;
        eliminate(i, row, factor, col);
      }
      pivot_col_[row] = static_cast<std::ptrdiff_t>(col);
      ++row;
    }
    rank_ = row;
  }

  std::size_t rank() const { return rank_; }

  // Particular solution with free variables set to zero, or nullopt when the
  // system is inconsistent.
  std::optional<std::vector<S>> solve(const std::vector<S>& b) const {
    const std::size_t rows = r_.rows();
    const std::size_t cols = r_.cols();
    double bscale = 1.0;
    if constexpr (!ScalarOps<S>::exact) {
      for (const S& v : b) bscale = std::max(bscale, std::sqrt(ScalarOps<S>::abs_sq(v)));
    }
    std::vector<S> y(rows, ScalarOps<S>::zero());
    for (std::size_t i = 0; i < rows; ++i) {
      S acc = ScalarOps<S>::zero();
      for (std::size_t k = 0; k < rows; ++k) {
        if (ScalarOps<S>::is_zero(e_.at(i, k)) || ScalarOps<S>::is_zero(b[k])) continue;
        acc += e_.at(i, k) * b[k];
      }
      y[i] = std::move(acc);
    }
    for (std::size_t i = rank_; i < rows; ++i) {
      if constexpr (ScalarOps<S>::exact) {
        if (!ScalarOps<S>::is_zero(y[i])) return std::nullopt;
      } else {
        if (std::sqrt(ScalarOps<S>::abs_sq(y[i])) > 1e-8 * bscale) return std::nullopt;
      }
    }
    std::vector<S> x(cols, ScalarOps<S>::zero());
    for (std::size_t i = 0; i < rank_; ++i)
      x[static_cast<std::size_t>(pivot_col_[i])] = y[i];
    return x;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b, std::size_t from_col) {
    if (a == b) return;
    for (std::size_t j = from_col; j < r_.cols(); ++j) std::swap(r_.at(a, j), r_.at(b, j));
    for (std::size_t j = 0; j < e_.cols(); ++j) std::swap(e_.at(a, j), e_.at(b, j));
  }
  void scale_row(std::size_t i, const S& s, std::size_t from_col) {
    for (std::size_t j = from_col; j < r_.cols(); ++j) r_.at(i, j) *= s;
    for (std::size_t j = 0; j < e_.cols(); ++j) e_.at(i, j) *= s;
  }
  void eliminate(std::size_t target, std::size_t source, const S& factor, std::size_t from_col) {
    for (std::size_t j = from_col; j < r_.cols(); ++j)
      r_.at(target, j) -= factor * r_.at(source, j);
    for (std::size_t j = 0; j < e_.cols(); ++j) e_.at(target, j) -= factor * e_.at(source, j);
  }

  DenseMatrix<S> r_;
  DenseMatrix<S> e_;
  std::vector<std::ptrdiff_t> pivot_col_;
  std::size_t rank_ = 0;
  double zero_tol_ = 0.0;
};

// Rank of a matrix by plain elimination (no inverse tracking).
template <class S>
std::size_t matrix_rank(DenseMatrix<S> m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  double tol = 0.0;
  if constexpr (!ScalarOps<S>::exact) {
    double scale = 1.0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        scale = std::max(scale, std::sqrt(ScalarOps<S>::abs_sq(m.at(i, j))));
    tol = 1e-10 * scale;
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = rows;
    if constexpr (ScalarOps<S>::exact) {
      for (std::size_t i = row; i < rows; ++i)
        if (!ScalarOps<S>::is_zero(m.at(i, col))) {
          pivot = i;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t i = row; i < rows; ++i) {
        double mag = std::sqrt(ScalarOps<S>::abs_sq(m.at(i, col)));
        if (mag > best) {
          best = mag;
          pivot = i;
        }
      }
      if (pivot < rows && best <= tol) pivot = rows;
    }
    if (pivot == rows) continue;
    if (pivot != row)
      for (std::size_t j = col; j < cols; ++j) std::swap(m.at(pivot, j), m.at(row, j));
    S inv = ScalarOps<S>::one() / m.at(row, col);
    for (std::size_t j = col; j < cols; ++j) m.at(row, j) *= inv;
    for (std::size_t i = row + 1; i < rows; ++i) {
      S factor = m.at(i, col);
      if (ScalarOps<S>::is_zero(factor)) continue;
      for (std::size_t j = col; j < cols; ++j) m.at(i, j) -= factor * m.at(row, j);
    }
    ++row;
  }
  return row;
}

}  // namespace nchydro
