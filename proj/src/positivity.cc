#include "polycert/positivity.h"

#include <algorithm>

namespace polycert {

RationalMatrix RationalMatrix::FromRows(
    const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw std::invalid_argument("RationalMatrix: ragged rows");
    }
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

RationalMatrix EvaluateMatrix(const PolyMatrix& a, std::span<const Rational> s) {
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).Evaluate(s);
  }
  return out;
}

Rational RationalDeterminant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("RationalDeterminant: not square");
  }
  const std::size_t n = m.rows();
  std::vector<mpq_class> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get();
  }
  mpq_class det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && sgn(a[pivot * n + k]) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      det = -det;
    }
    const mpq_class& p = a[k * n + k];
    det *= p;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a[i * n + k]) == 0) continue;
      const mpq_class f = a[i * n + k] / p;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return Rational(det);
}

bool IsPsd(const RationalMatrix& m) {
  if (!m.is_symmetric()) {
    throw std::invalid_argument("IsPsd: matrix is not symmetric");
  }
  const std::size_t n = m.rows();
  if (n > kPsdDimensionCap) {
    throw std::length_error("IsPsd: dimension " + std::to_string(n) +
                            " exceeds cap " +
                            std::to_string(kPsdDimensionCap));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i).sign() < 0) return false;
  }
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) idx.push_back(k);
    }
    if (idx.size() == 1) continue;
    RationalMatrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = m(idx[a], idx[b]);
    }
    if (RationalDeterminant(sub).sign() < 0) return false;
  }
  return true;
}

GridSpec GridSpec::Uniform(std::size_t nvars, Rational low, Rational high,
                           std::size_t count) {
  GridSpec spec;
  spec.axes.assign(nvars, AxisRange{low, high, count});
  return spec;
}

std::size_t GridSpec::total_points() const {
  std::size_t total = 1;
  for (const auto& axis : axes) {
    if (axis.count != 0 && total > max_points) return max_points + 1;
    total *= axis.count;
  }
  return total;
}

std::vector<Point> GenerateGrid(const GridSpec& spec) {
  if (spec.axes.empty()) throw std::invalid_argument("grid: no axes");
  for (const auto& axis : spec.axes) {
    if (axis.count == 0) throw std::invalid_argument("grid: empty axis");
    if (axis.low > axis.high) throw std::invalid_argument("grid: low > high");
  }
  const std::size_t total = spec.total_points();
  if (total > spec.max_points) {
    throw std::invalid_argument("grid: " + std::to_string(total) +
                                " points exceed cap " +
                                std::to_string(spec.max_points));
  }
  std::vector<std::vector<Rational>> ticks;
  for (const auto& axis : spec.axes) {
    auto& t = ticks.emplace_back();
    if (axis.count == 1) {
      t.push_back(axis.low);
      continue;
    }
    const Rational step =
        (axis.high - axis.low) / Rational(static_cast<long>(axis.count - 1));
    for (std::size_t k = 0; k < axis.count; ++k) {
      t.push_back(axis.low + step * Rational(static_cast<long>(k)));
    }
  }
  std::vector<Point> points;
  points.reserve(total);
  std::vector<std::size_t> odometer(ticks.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Point p;
    for (std::size_t v = 0; v < ticks.size(); ++v) p.push_back(ticks[v][odometer[v]]);
    points.push_back(std::move(p));
    for (std::size_t v = ticks.size(); v-- > 0;) {
      if (++odometer[v] < ticks[v].size()) break;
      odometer[v] = 0;
    }
  }
  return points;
}

PsdGridReport PsdOnGrid(const PolyMatrix& a, const GridSpec& spec) {
  if (spec.axes.size() != a.nvars()) {
    throw std::invalid_argument("grid has " + std::to_string(spec.axes.size()) +
                                " axes, matrix has " +
                                std::to_string(a.nvars()) + " variables");
  }
  PsdGridReport report;
  for (auto& s : GenerateGrid(spec)) {
    ++report.total_points;
    if (!IsPsd(EvaluateMatrix(a, s))) report.non_psd_points.push_back(std::move(s));
  }
  return report;
}

bool BundleSignCondition(const DiagBundle& bundle, std::span<const Rational> s) {
  for (const auto& branch : bundle.branches) {
    const PolyMatrix& d = branch.certificate.d;
    for (std::size_t k = 0; k < d.rows(); ++k) {
      if (d(k, k).Evaluate(s).sign() < 0) return false;
    }
  }
  return true;
}

EquivalenceReport CheckBundleEquivalence(const PolyMatrix& a,
                                         const DiagBundle& bundle,
                                         const GridSpec& spec) {
  if (bundle.subject_dim != a.rows()) {
    throw UnverifiedBundle("bundle dimension does not match subject");
  }
  for (std::size_t l = 0; l < bundle.branches.size(); ++l) {
    if (auto v = VerifyDiagCertificate(a, bundle.branches[l].certificate); !v) {
      throw UnverifiedBundle("bundle branch " + std::to_string(l + 1) +
                             " fails " + v.failure);
    }
  }
  if (spec.axes.size() != a.nvars()) {
    throw std::invalid_argument("grid axes do not match matrix variables");
  }
  EquivalenceReport report;
  for (auto& s : GenerateGrid(spec)) {
    ++report.total_points;
    const bool oracle = IsPsd(EvaluateMatrix(a, s));
    const bool signs = BundleSignCondition(bundle, s);
    if (oracle == signs) {
      ++report.agreements;
    } else {
      report.disagreements.push_back({std::move(s), oracle, signs});
    }
  }
  return report;
}

}  // namespace polycert
