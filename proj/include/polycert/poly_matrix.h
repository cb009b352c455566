#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polycert/polynomial.h"

namespace polycert {

/// Dense rows x cols matrix of polynomials in a common ring Q[t1..td].
///
/// Elements of M_{k,n}(Q[t]); the involution of M_n(Q[t]) is Transpose().
/// All indices in this API are 0-based.
class PolyMatrix {
 public:
  /// Zero matrix. Throws std::invalid_argument if any size is zero.
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static PolyMatrix Identity(std::size_t n, std::size_t nvars);
  /// p * I_n.
  static PolyMatrix ScalarMatrix(std::size_t n, const Polynomial& p);
  /// n x n diagonal with the given entries.
  static PolyMatrix Diagonal(std::span<const Polynomial> diagonal);
  /// Row-major nested lists; all rows must have equal length.
  static PolyMatrix FromRows(std::size_t nvars,
                             const std::vector<std::vector<Polynomial>>& rows);
  /// Convenience for tests and fixtures: entries in the text syntax.
  static PolyMatrix Parse(std::size_t nvars,
                          const std::vector<std::vector<std::string>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  bool is_square() const { return rows_ == cols_; }

  const Polynomial& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  Polynomial& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  /// Bounds-checked access; throws std::out_of_range.
  const Polynomial& at(std::size_t i, std::size_t j) const;
  const std::vector<Polynomial>& entries() const { return entries_; }

  PolyMatrix Transpose() const;
  bool is_symmetric() const;
  bool is_diagonal() const;
  bool is_zero() const;

  /// Submatrix on the given row and column index lists (any order).
  PolyMatrix Select(std::span<const std::size_t> row_idx,
                    std::span<const std::size_t> col_idx) const;

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  PolyMatrix& operator*=(const Polynomial& p);

  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
    return a += b;
  }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) {
    return a -= b;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(PolyMatrix a, const Polynomial& p) {
    return a *= p;
  }
  friend PolyMatrix operator*(const Polynomial& p, PolyMatrix a) {
    return a *= p;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.nvars_ == b.nvars_ &&
           a.entries_ == b.entries_;
  }

  /// Maximum entry degree (-1 for the zero matrix).
  int degree() const;

 private:
  void CheckSameShape(const PolyMatrix& o, const char* op) const;

  std::size_t rows_;
  std::size_t cols_;
  std::size_t nvars_;
  std::vector<Polynomial> entries_;
};

std::ostream& operator<<(std::ostream& os, const PolyMatrix& m);

/// X * A * X^t, exploiting the symmetry of the result when A is symmetric.
PolyMatrix Congruence(const PolyMatrix& x, const PolyMatrix& a);

/// Exact determinant by fraction-free (Bareiss) elimination with row
/// pivoting. Throws std::invalid_argument for a non-square matrix.
Polynomial Determinant(const PolyMatrix& a);

/// Determinant of the submatrix on `row_idx` x `col_idx`. Index tuples must
/// be nonempty, of equal length, strictly ascending and in range.
Polynomial Minor(const PolyMatrix& a, std::span<const std::size_t> row_idx,
                 std::span<const std::size_t> col_idx);

/// M_p: the minor on rows and columns 0..p-1, for 1 <= p <= n.
Polynomial LeadingPrincipalMinor(const PolyMatrix& a, std::size_t p);

/// Rank over the rational function field Q(t): largest p with an
/// identically nonzero p x p minor.
std::size_t GenericRank(const PolyMatrix& a);

/// Identity with rows 0 and l swapped (l = 0 gives I).
PolyMatrix PermutationMatrix(std::size_t n, std::size_t l, std::size_t nvars);

}  // namespace polycert
