#include "polycert/diagonal.h"

#include <utility>

namespace polycert {

NotStandardForm::NotStandardForm(std::size_t order)
    : DiagonalizationError(DiagErrorKind::kNotStandardForm,
                           "not in standard form: leading principal minor M" +
                               std::to_string(order) +
                               " vanishes identically"),
      order_(order) {}

namespace {

Polynomial One(std::size_t nvars) {
  return Polynomial::Constant(nvars, Rational(1));
}

void RequireSymmetricNonzero(const PolyMatrix& a) {
  if (!a.is_symmetric()) {
    throw DiagonalizationError(DiagErrorKind::kNotSymmetric,
                               "matrix is not symmetric");
  }
  if (a.is_zero()) {
    throw DiagonalizationError(DiagErrorKind::kZeroMatrix,
                               "matrix is identically zero");
  }
}

void CheckOrThrow(const PolyMatrix& a, const DiagCertificate& cert,
                  const char* who) {
  if (auto v = VerifyDiagCertificate(a, cert); !v) {
    throw DiagonalizationError(
        DiagErrorKind::kInternalIdentityFailure,
        std::string(who) + ": internal identity check failed (" + v.failure +
            ")");
  }
}

Polynomial DivideOrThrow(const Polynomial& num, const Polynomial& den,
                         const char* who) {
  auto q = num.DivideExact(den);
  if (!q) {
    throw DiagonalizationError(DiagErrorKind::kInternalIdentityFailure,
                               std::string(who) + ": inexact division");
  }
  return std::move(*q);
}

std::vector<std::size_t> Range(std::size_t n) {
  std::vector<std::size_t> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = k;
  return r;
}

// Block-diagonal diag(top-left scalar, rest).
PolyMatrix DiagCorner(const Polynomial& corner, const PolyMatrix& rest) {
  const std::size_t n = rest.rows() + 1;
  PolyMatrix out(n, n, rest.nvars());
  out(0, 0) = corner;
  for (std::size_t i = 0; i < rest.rows(); ++i) {
    for (std::size_t j = 0; j < rest.cols(); ++j) out(i + 1, j + 1) = rest(i, j);
  }
  return out;
}

// diag(top, scalar * I_k).
PolyMatrix DiagTail(const PolyMatrix& top, const Polynomial& scalar,
                    std::size_t k) {
  const std::size_t n = top.rows() + k;
  PolyMatrix out(n, n, top.nvars());
  for (std::size_t i = 0; i < top.rows(); ++i) {
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  }
  for (std::size_t i = top.rows(); i < n; ++i) out(i, i) = scalar;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Standard form

StandardFormData CheckStandardForm(const PolyMatrix& a) {
  RequireSymmetricNonzero(a);
  if (a.rows() < 2) {
    throw DiagonalizationError(DiagErrorKind::kTooSmall,
                               "standard form needs n >= 2");
  }
  StandardFormData data;
  data.rank = GenericRank(a);
  for (std::size_t p = 1; p <= data.rank; ++p) {
    Polynomial m = LeadingPrincipalMinor(a, p);
    if (m.is_zero()) throw NotStandardForm(p);
    data.minors.push_back(std::move(m));
  }
  return data;
}

namespace {

// X+ and X- = m * Y+^{-1} for a given clearing factor m; nullopt if some
// entry is not a polynomial for this m.
std::optional<std::pair<PolyMatrix, PolyMatrix>> StandardFormTransforms(
    const PolyMatrix& a, const StandardFormData& data, const Polynomial& m) {
  const std::size_t n = a.rows();
  const std::size_t r = data.rank;
  const std::size_t nvars = a.nvars();
  auto leading = [&](std::size_t p) {
    return p == 0 ? One(nvars) : data.minors[p - 1];
  };
  PolyMatrix x_plus(n, n, nvars);
  PolyMatrix x_minus(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) {
    x_plus(i, i) = m;
    x_minus(i, i) = m;
  }
  // X+(i, j) = m * det(A[{0..j-1, i}, {0..j}]) / M_{j+1}.
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::size_t> rows = Range(j + 1);
    const std::vector<std::size_t> cols = Range(j + 1);
    for (std::size_t i = j + 1; i < n; ++i) {
      rows[j] = i;
      auto q = (m * Minor(a, rows, cols)).DivideExact(data.minors[j]);
      if (!q) return std::nullopt;
      x_plus(i, j) = std::move(*q);
    }
  }
  // Row i of Y+^{-1}: with p = min(i, r) and S = {0..p-1, i}, entry k < p is
  // (-1)^{p+k} det(A[S \ {k}, {0..p-1}]) / M_p.
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t p = std::min(i, r);
    const std::vector<std::size_t> cols = Range(p);
    for (std::size_t k = 0; k < p; ++k) {
      std::vector<std::size_t> rows;
      for (std::size_t l = 0; l < p; ++l) {
        if (l != k) rows.push_back(l);
      }
      rows.push_back(i);
      Polynomial cofactor = Minor(a, rows, cols);
      if ((p + k) % 2 == 1) cofactor = -cofactor;
      auto q = (m * cofactor).DivideExact(leading(p));
      if (!q) return std::nullopt;
      x_minus(i, k) = std::move(*q);
    }
  }
  return std::make_pair(std::move(x_plus), std::move(x_minus));
}

}  // namespace

DiagCertificate StandardFormDiagonalize(const PolyMatrix& a) {
  const StandardFormData data = CheckStandardForm(a);
  const std::size_t n = a.rows();
  const std::size_t r = data.rank;
  const std::size_t nvars = a.nvars();

  Polynomial m = One(nvars);
  for (std::size_t p = 0; p + 1 < r; ++p) m *= data.minors[p];
  auto transforms = StandardFormTransforms(a, data, m);
  if (!transforms && r < n) {
    // Rows below the rank carry the denominator M_r.
    m *= data.minors[r - 1];
    transforms = StandardFormTransforms(a, data, m);
  }
  if (!transforms) {
    throw DiagonalizationError(DiagErrorKind::kInternalIdentityFailure,
                               "standard form: transforms not polynomial");
  }

  // D = m^2 diag(M_1, M_2/M_1, ..., M_r/M_{r-1}, 0, ...).
  const Polynomial m2 = m * m;
  PolyMatrix d(n, n, nvars);
  for (std::size_t p = 0; p < r; ++p) {
    d(p, p) = p == 0 ? m2 * data.minors[0]
                     : DivideOrThrow(m2 * data.minors[p], data.minors[p - 1],
                                     "standard form D");
  }
  DiagCertificate cert{std::move(transforms->first),
                       std::move(transforms->second), std::move(d), m2};
  CheckOrThrow(a, cert, "StandardFormDiagonalize");
  return cert;
}

// ---------------------------------------------------------------------------
// Block step and pivot congruence

PolyMatrix BlockStepResult::Trailing() const {
  const std::vector<std::size_t> idx = [&] {
    std::vector<std::size_t> v;
    for (std::size_t k = 1; k < reduced.rows(); ++k) v.push_back(k);
    return v;
  }();
  return reduced.Select(idx, idx);
}

BlockStepResult BlockStep(const PolyMatrix& a) {
  if (!a.is_symmetric()) {
    throw DiagonalizationError(DiagErrorKind::kNotSymmetric,
                               "block step: matrix is not symmetric");
  }
  const std::size_t n = a.rows();
  if (n < 2) {
    throw DiagonalizationError(DiagErrorKind::kTooSmall,
                               "block step needs n >= 2");
  }
  const std::size_t nvars = a.nvars();
  const Polynomial& alpha = a(0, 0);

  BlockStepResult out{PolyMatrix(n, n, nvars), PolyMatrix(n, n, nvars),
                      PolyMatrix(n, n, nvars), alpha};
  out.x_plus(0, 0) = alpha;
  out.x_minus(0, 0) = alpha;
  for (std::size_t i = 1; i < n; ++i) {
    out.x_plus(i, 0) = a(0, i);
    out.x_minus(i, 0) = -a(0, i);
    out.x_plus(i, i) = alpha;
    out.x_minus(i, i) = alpha;
  }
  out.reduced(0, 0) = alpha * alpha * alpha;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Polynomial entry = alpha * (alpha * a(i, j) - a(0, i) * a(0, j));
      out.reduced(j, i) = entry;
      out.reduced(i, j) = std::move(entry);
    }
  }

  const Polynomial alpha2 = alpha * alpha;
  const PolyMatrix alpha2_identity = PolyMatrix::ScalarMatrix(n, alpha2);
  if (!(out.x_plus * out.x_minus == alpha2_identity) ||
      !(out.x_minus * out.x_plus == alpha2_identity) ||
      !(Congruence(out.x_minus, a) == out.reduced) ||
      !(Congruence(out.x_plus, out.reduced) == a * (alpha2 * alpha2))) {
    throw DiagonalizationError(DiagErrorKind::kInternalIdentityFailure,
                               "block step: internal identity check failed");
  }
  return out;
}

Polynomial PivotValue(const PolyMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return a.at(i, i);
  return a.at(i, j) + (a.at(i, i) + a.at(j, j)) * Rational(1, 2);
}

PivotCongruence ApplyPivotCongruence(const PolyMatrix& a, std::size_t i,
                                     std::size_t j) {
  if (!a.is_symmetric()) {
    throw DiagonalizationError(DiagErrorKind::kNotSymmetric,
                               "pivot congruence: matrix is not symmetric");
  }
  const std::size_t n = a.rows();
  if (i >= n || j >= n) {
    throw std::out_of_range("pivot congruence: index out of range");
  }
  if (i > j) {
    throw std::invalid_argument("pivot congruence: requires i <= j");
  }
  const std::size_t nvars = a.nvars();
  const PolyMatrix swap = PermutationMatrix(n, i, nvars);
  if (i == j) {
    return {Congruence(swap, a), swap, swap, Rational(1)};
  }
  // W adds row j to row i.
  PolyMatrix add = PolyMatrix::Identity(n, nvars);
  PolyMatrix add_inverse = add;
  add(i, j) = One(nvars);
  add_inverse(i, j) = -One(nvars);
  const PolyMatrix v = swap * add;
  return {Congruence(v, a), v, add_inverse * swap, Rational(2)};
}

// ---------------------------------------------------------------------------
// Recursive diagonalization

namespace {

struct Reducer {
  bool all_pivots;
  std::size_t max_branches;

  std::vector<TracedCertificate> Run(const PolyMatrix& a) const {
    const std::size_t n = a.rows();
    const std::size_t nvars = a.nvars();

    std::vector<std::size_t> live;
    std::vector<std::size_t> dead;
    for (std::size_t i = 0; i < n; ++i) {
      bool zero = true;
      for (std::size_t j = 0; j < n && zero; ++j) zero = a(i, j).is_zero();
      (zero ? dead : live).push_back(i);
    }

    if (live.empty()) {
      return {{{PolyMatrix::Identity(n, nvars), PolyMatrix::Identity(n, nvars),
                PolyMatrix(n, n, nvars), One(nvars)},
               {}}};
    }
    if (!dead.empty()) return Compact(a, live, dead);
    if (n == 1) {
      return {{{PolyMatrix::Identity(1, nvars), PolyMatrix::Identity(1, nvars),
                a, One(nvars)},
               {}}};
    }

    std::vector<TracedCertificate> out;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (PivotValue(a, i, j).is_zero()) continue;
        Expand(a, i, j, out);
        if (!all_pivots) return out;
      }
    }
    return out;
  }

  // Zero rows/columns moved to the end by a permutation Q; the live block is
  // reduced on its own.
  std::vector<TracedCertificate> Compact(
      const PolyMatrix& a, const std::vector<std::size_t>& live,
      const std::vector<std::size_t>& dead) const {
    const std::size_t n = a.rows();
    const std::size_t nvars = a.nvars();
    PolyMatrix q(n, n, nvars);
    std::vector<std::size_t> order(live);
    order.insert(order.end(), dead.begin(), dead.end());
    for (std::size_t k = 0; k < n; ++k) q(k, order[k]) = One(nvars);
    const PolyMatrix qt = q.Transpose();

    std::vector<TracedCertificate> out;
    for (auto& sub : Run(a.Select(live, live))) {
      const DiagCertificate& c = sub.certificate;
      const PolyMatrix one_tail = DiagTail(c.x_minus, One(nvars), dead.size());
      DiagCertificate cert{qt * DiagTail(c.x_plus, c.w, dead.size()),
                           one_tail * q,
                           DiagTail(c.d, Polynomial(nvars), dead.size()), c.w};
      out.push_back({std::move(cert), std::move(sub.trace)});
    }
    return out;
  }

  void Expand(const PolyMatrix& a, std::size_t i, std::size_t j,
              std::vector<TracedCertificate>& out) const {
    const PivotCongruence pc = ApplyPivotCongruence(a, i, j);
    const BlockStepResult step = BlockStep(pc.matrix);
    const Polynomial& alpha = step.alpha;
    const Polynomial alpha2 = alpha * alpha;
    const Polynomial alpha3 = alpha2 * alpha;
    const PolyMatrix minus_v = step.x_minus * pc.v;
    const PolyMatrix v_inv_plus = pc.v_inverse * step.x_plus;

    for (auto& sub : Run(step.Trailing())) {
      const DiagCertificate& c = sub.certificate;
      DiagCertificate cert{v_inv_plus * DiagCorner(c.w, c.x_plus),
                           DiagCorner(One(a.nvars()), c.x_minus) * minus_v,
                           DiagCorner(alpha3, c.d), alpha2 * c.w};
      PivotTrace trace;
      trace.steps.push_back({i, j, pc.scale});
      trace.steps.insert(trace.steps.end(), sub.trace.steps.begin(),
                         sub.trace.steps.end());
      out.push_back({std::move(cert), std::move(trace)});
      if (out.size() > max_branches) {
        throw DiagonalizationError(
            DiagErrorKind::kBundleTooLarge,
            "diagonalization bundle exceeds " + std::to_string(max_branches) +
                " branches");
      }
    }
  }
};

}  // namespace

DiagBundle DiagonalizationBundle(const PolyMatrix& a,
                                 const BundleOptions& options) {
  RequireSymmetricNonzero(a);
  DiagBundle bundle{a.rows(), Reducer{true, options.max_branches}.Run(a)};
  if (bundle.branches.size() > options.max_branches) {
    throw DiagonalizationError(DiagErrorKind::kBundleTooLarge,
                               "diagonalization bundle exceeds " +
                                   std::to_string(options.max_branches) +
                                   " branches");
  }
  return bundle;
}

TracedCertificate SinglePathDiagonalize(const PolyMatrix& a) {
  RequireSymmetricNonzero(a);
  auto branches = Reducer{false, 1}.Run(a);
  TracedCertificate out = std::move(branches.front());
  CheckOrThrow(a, out.certificate, "SinglePathDiagonalize");
  return out;
}

std::vector<Polynomial> ReplayTracePivots(const PolyMatrix& a,
                                          const PivotTrace& trace) {
  std::vector<Polynomial> pivots;
  PolyMatrix current = a;
  for (const auto& step : trace.steps) {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < current.rows(); ++i) {
      bool zero = true;
      for (std::size_t j = 0; j < current.cols() && zero; ++j) {
        zero = current(i, j).is_zero();
      }
      if (!zero) live.push_back(i);
    }
    if (live.size() < 2) {
      throw std::invalid_argument("trace longer than the reduction");
    }
    if (live.size() < current.rows()) current = current.Select(live, live);
    if (step.j >= current.rows() || step.i > step.j) {
      throw std::invalid_argument("trace pivot out of range");
    }
    const PivotCongruence pc = ApplyPivotCongruence(current, step.i, step.j);
    if (!(pc.scale == step.scale)) {
      throw std::invalid_argument("trace scale mismatch");
    }
    const BlockStepResult bs = BlockStep(pc.matrix);
    pivots.push_back(bs.alpha);
    current = bs.Trailing();
  }
  return pivots;
}

}  // namespace polycert
