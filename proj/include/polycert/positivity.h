#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "polycert/diagonal.h"
#include "polycert/poly_matrix.h"
#include "polycert/rational.h"

namespace polycert {

using Point = std::vector<Rational>;

/// Dense matrix over Q; the value A(s) of a polynomial matrix at a point.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  static RationalMatrix FromRows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  Rational& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  bool is_symmetric() const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) =
      default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> entries_;
};

RationalMatrix EvaluateMatrix(const PolyMatrix& a, std::span<const Rational> s);

/// Exact determinant by Gaussian elimination over Q.
Rational RationalDeterminant(const RationalMatrix& m);

inline constexpr std::size_t kPsdDimensionCap = 12;

/// True iff every principal minor is >= 0. Throws std::invalid_argument for
/// a non-symmetric input and std::length_error above kPsdDimensionCap.
bool IsPsd(const RationalMatrix& m);

struct AxisRange {
  Rational low;
  Rational high;
  std::size_t count = 0;
};

inline constexpr std::size_t kDefaultGridPointCap = 100000;

struct GridSpec {
  std::vector<AxisRange> axes;
  std::size_t max_points = kDefaultGridPointCap;

  /// The same range on every axis; defaults to [-10, 10] with 21 points.
  static GridSpec Uniform(std::size_t nvars, Rational low = Rational(-10),
                          Rational high = Rational(10),
                          std::size_t count = 21);
  std::size_t total_points() const;
};

/// Tensor grid in lexicographic order (last axis fastest), points
/// low + k (high - low) / (count - 1). Throws std::invalid_argument on an
/// empty axis, low > high or a cap violation.
std::vector<Point> GenerateGrid(const GridSpec& spec);

struct PsdGridReport {
  std::size_t total_points = 0;
  std::vector<Point> non_psd_points;
  bool all_psd() const { return non_psd_points.empty(); }
};

PsdGridReport PsdOnGrid(const PolyMatrix& a, const GridSpec& spec);

/// Nonnegativity of every diagonal entry of every branch D at s.
bool BundleSignCondition(const DiagBundle& bundle, std::span<const Rational> s);

struct Disagreement {
  Point point;
  bool oracle_psd = false;
  bool bundle_psd = false;
};

struct EquivalenceReport {
  std::size_t total_points = 0;
  std::size_t agreements = 0;
  std::vector<Disagreement> disagreements;
};

class UnverifiedBundle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compares IsPsd(A(s)) with BundleSignCondition at every grid point. Every
/// branch must verify against A first (UnverifiedBundle otherwise).
EquivalenceReport CheckBundleEquivalence(const PolyMatrix& a,
                                         const DiagBundle& bundle,
                                         const GridSpec& spec);

}  // namespace polycert
