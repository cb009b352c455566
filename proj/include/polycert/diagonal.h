#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycert/certificates.h"
#include "polycert/poly_matrix.h"

namespace polycert {

enum class DiagErrorKind {
  kNotSymmetric,
  kZeroMatrix,
  kTooSmall,
  kNotStandardForm,
  kBundleTooLarge,
  kInternalIdentityFailure,
};

class DiagonalizationError : public std::runtime_error {
 public:
  DiagonalizationError(DiagErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  DiagErrorKind kind() const { return kind_; }

 private:
  DiagErrorKind kind_;
};

/// The leading principal minor M_order (1-based order) vanishes identically.
class NotStandardForm : public DiagonalizationError {
 public:
  explicit NotStandardForm(std::size_t order);
  std::size_t order() const { return order_; }

 private:
  std::size_t order_;
};

/// rank r and the nonzero leading principal minors M_1..M_r.
struct StandardFormData {
  std::size_t rank = 0;
  std::vector<Polynomial> minors;
};

StandardFormData CheckStandardForm(const PolyMatrix& a);

/// Diagonalization through leading minors for a matrix in standard form.
/// X+ and X- are lower triangular with diagonal m; w = m^2.
DiagCertificate StandardFormDiagonalize(const PolyMatrix& a);

/// One block reduction of A = [[alpha, beta], [beta^t, C]].
struct BlockStepResult {
  PolyMatrix reduced;  ///< diag(alpha^3, alpha (alpha C - beta^t beta))
  PolyMatrix x_plus;   ///< [[alpha, 0], [ beta^t, alpha I]]
  PolyMatrix x_minus;  ///< [[alpha, 0], [-beta^t, alpha I]]
  Polynomial alpha;

  /// The trailing (n-1) x (n-1) block of `reduced`.
  PolyMatrix Trailing() const;
};

BlockStepResult BlockStep(const PolyMatrix& a);

/// Rational congruence moving 2^{[i<j]} (a_ij + (a_ii + a_jj)/2) into the
/// (0,0) slot. Indices are 0-based with i <= j.
struct PivotCongruence {
  PolyMatrix matrix;     ///< V A V^t
  PolyMatrix v;
  PolyMatrix v_inverse;
  Rational scale;        ///< matrix(0,0) = scale * a~_ij; 1 or 2
};

PivotCongruence ApplyPivotCongruence(const PolyMatrix& a, std::size_t i,
                                     std::size_t j);

/// a~_ij = a_ii for i = j, a_ij + (a_ii + a_jj)/2 for i < j.
Polynomial PivotValue(const PolyMatrix& a, std::size_t i, std::size_t j);

struct PivotStep {
  std::size_t i = 0;  ///< 0-based, into the compacted matrix of that level
  std::size_t j = 0;
  Rational scale;
  friend bool operator==(const PivotStep&, const PivotStep&) = default;
};

struct PivotTrace {
  std::vector<PivotStep> steps;
  friend bool operator==(const PivotTrace&, const PivotTrace&) = default;
};

struct TracedCertificate {
  DiagCertificate certificate;
  PivotTrace trace;
};

struct DiagBundle {
  std::size_t subject_dim = 0;
  std::vector<TracedCertificate> branches;
};

struct BundleOptions {
  std::size_t max_branches = 10000;
};

/// Every-pivot recursion: A(s) is PSD iff every diagonal entry of every
/// branch's D(s) is nonnegative. Branches are in lexicographic pivot order.
DiagBundle DiagonalizationBundle(const PolyMatrix& a,
                                 const BundleOptions& options = {});

/// One branch: at each level the lexicographically first pivot that is not
/// identically zero. Terminates when the trailing block vanishes.
TracedCertificate SinglePathDiagonalize(const PolyMatrix& a);

/// Recomputes the pivot polynomials alpha_k along `trace` starting from A.
/// Throws std::invalid_argument if the trace does not fit A.
std::vector<Polynomial> ReplayTracePivots(const PolyMatrix& a,
                                          const PivotTrace& trace);

}  // namespace polycert
