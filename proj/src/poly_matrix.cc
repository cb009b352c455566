#include "polycert/poly_matrix.h"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace polycert {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("PolyMatrix: dimensions must be positive");
  }
  entries_.assign(rows * cols, Polynomial(nvars));
}

PolyMatrix PolyMatrix::Identity(std::size_t n, std::size_t nvars) {
  return ScalarMatrix(n, Polynomial::Constant(nvars, Rational(1)));
}

PolyMatrix PolyMatrix::ScalarMatrix(std::size_t n, const Polynomial& p) {
  PolyMatrix m(n, n, p.nvars());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

PolyMatrix PolyMatrix::Diagonal(std::span<const Polynomial> diagonal) {
  if (diagonal.empty()) {
    throw std::invalid_argument("PolyMatrix::Diagonal: empty diagonal");
  }
  PolyMatrix m(diagonal.size(), diagonal.size(), diagonal[0].nvars());
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    if (diagonal[i].nvars() != m.nvars_) {
      throw std::invalid_argument("PolyMatrix::Diagonal: nvars mismatch");
    }
    m(i, i) = diagonal[i];
  }
  return m;
}

PolyMatrix PolyMatrix::FromRows(
    std::size_t nvars, const std::vector<std::vector<Polynomial>>& rows) {
  if (rows.empty()) throw std::invalid_argument("PolyMatrix: no rows");
  PolyMatrix m(rows.size(), rows[0].size(), nvars);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw std::invalid_argument("PolyMatrix: ragged rows");
    }
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (rows[i][j].nvars() != nvars) {
        throw std::invalid_argument("PolyMatrix: nvars mismatch");
      }
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

PolyMatrix PolyMatrix::Parse(
    std::size_t nvars, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial>> polys;
  for (const auto& row : rows) {
    auto& out = polys.emplace_back();
    for (const auto& text : row) out.push_back(Polynomial::Parse(text, nvars));
  }
  return FromRows(nvars, polys);
}

const Polynomial& PolyMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw std::out_of_range("PolyMatrix::at: index out of range");
  }
  return (*this)(i, j);
}

PolyMatrix PolyMatrix::Transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool PolyMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

bool PolyMatrix::is_diagonal() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

PolyMatrix PolyMatrix::Select(std::span<const std::size_t> row_idx,
                              std::span<const std::size_t> col_idx) const {
  PolyMatrix s(row_idx.size(), col_idx.size(), nvars_);
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      s(i, j) = at(row_idx[i], col_idx[j]);
    }
  }
  return s;
}

void PolyMatrix::CheckSameShape(const PolyMatrix& o, const char* op) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || nvars_ != o.nvars_) {
    throw std::invalid_argument(std::string("PolyMatrix ") + op +
                                ": shape or nvars mismatch");
  }
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  CheckSameShape(o, "add");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
  CheckSameShape(o, "sub");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Polynomial& p) {
  if (p.nvars() != nvars_) {
    throw std::invalid_argument("PolyMatrix scale: nvars mismatch");
  }
  for (auto& e : entries_) e *= p;
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_) {
    throw std::invalid_argument(
        "PolyMatrix mul: " + std::to_string(a.rows_) + "x" +
        std::to_string(a.cols_) + " times " + std::to_string(b.rows_) + "x" +
        std::to_string(b.cols_) + " (or nvars mismatch)");
  }
  PolyMatrix c(a.rows_, b.cols_, a.nvars_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

int PolyMatrix::degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

std::ostream& operator<<(std::ostream& os, const PolyMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << (j ? ", " : "") << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

PolyMatrix Congruence(const PolyMatrix& x, const PolyMatrix& a) {
  const PolyMatrix xa = x * a;
  if (!a.is_symmetric()) return xa * x.Transpose();
  // (X A X^t) is symmetric: fill the lower triangle, mirror it.
  if (xa.cols() != x.cols()) {
    throw std::invalid_argument("Congruence: dimension mismatch");
  }
  PolyMatrix out(x.rows(), x.rows(), x.nvars());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Polynomial sum(x.nvars());
      for (std::size_t k = 0; k < x.cols(); ++k) {
        if (!xa(i, k).is_zero() && !x(j, k).is_zero()) sum += xa(i, k) * x(j, k);
      }
      out(j, i) = sum;
      out(i, j) = std::move(sum);
    }
  }
  return out;
}

namespace {

Polynomial ExactQuotient(const Polynomial& num, const Polynomial& den) {
  auto q = num.DivideExact(den);
  if (!q) {
    throw std::logic_error("fraction-free elimination: inexact division");
  }
  return std::move(*q);
}

}  // namespace

Polynomial Determinant(const PolyMatrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("Determinant: matrix is not square");
  }
  const std::size_t n = a.rows();
  PolyMatrix m = a;
  bool negate = false;
  Polynomial prev = Polynomial::Constant(a.nvars(), Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return Polynomial(a.nvars());
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = ExactQuotient(num, prev);
      }
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

namespace {

void CheckIndexTuple(std::span<const std::size_t> idx, std::size_t bound,
                     const char* which) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= bound) {
      throw std::out_of_range(std::string("Minor: ") + which +
                              " index out of range");
    }
    if (k > 0 && idx[k] <= idx[k - 1]) {
      throw std::invalid_argument(std::string("Minor: ") + which +
                                  " indices not strictly ascending");
    }
  }
}

}  // namespace

Polynomial Minor(const PolyMatrix& a, std::span<const std::size_t> row_idx,
                 std::span<const std::size_t> col_idx) {
  if (row_idx.empty() || row_idx.size() != col_idx.size()) {
    throw std::invalid_argument("Minor: index tuples must be nonempty and of "
                                "equal length");
  }
  CheckIndexTuple(row_idx, a.rows(), "row");
  CheckIndexTuple(col_idx, a.cols(), "column");
  return Determinant(a.Select(row_idx, col_idx));
}

Polynomial LeadingPrincipalMinor(const PolyMatrix& a, std::size_t p) {
  if (!a.is_square()) {
    throw std::invalid_argument("LeadingPrincipalMinor: matrix not square");
  }
  if (p < 1 || p > a.rows()) {
    throw std::out_of_range("LeadingPrincipalMinor: order " +
                            std::to_string(p) + " out of range");
  }
  std::vector<std::size_t> idx(p);
  for (std::size_t k = 0; k < p; ++k) idx[k] = k;
  return Determinant(a.Select(idx, idx));
}

std::size_t GenericRank(const PolyMatrix& a) {
  // Fraction-free elimination with full pivoting; each completed step is a
  // nonzero leading minor of a row/column permutation of `a`.
  PolyMatrix m = a;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Polynomial prev = Polynomial::Constant(a.nvars(), Rational(1));
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = k; i < rows && pi == rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        if (!m(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == rows) return k;
    if (pi != k) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(k, j), m(pi, j));
    }
    if (pj != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, k), m(i, pj));
    }
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        Polynomial num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = ExactQuotient(num, prev);
      }
      m(i, k) = Polynomial(a.nvars());
    }
    prev = m(k, k);
  }
  return std::min(rows, cols);
}

PolyMatrix PermutationMatrix(std::size_t n, std::size_t l, std::size_t nvars) {
  if (l >= n) {
    throw std::out_of_range("PermutationMatrix: index out of range");
  }
  PolyMatrix p = PolyMatrix::Identity(n, nvars);
  if (l != 0) {
    std::swap(p(0, 0), p(l, 0));
    std::swap(p(0, l), p(l, l));
  }
  return p;
}

}  // namespace polycert
