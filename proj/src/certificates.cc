#include "polycert/certificates.h"

#include <stdexcept>

namespace polycert {

namespace {

void RequireSymmetric(const PolyMatrix& a, const char* who) {
  if (!a.is_symmetric()) {
    throw std::invalid_argument(std::string(who) + ": subject not symmetric");
  }
}

void RequireShape(const PolyMatrix& m, std::size_t rows, std::size_t cols,
                  std::size_t nvars, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols || m.nvars() != nvars) {
    throw std::invalid_argument(what + ": expected " + std::to_string(rows) +
                                "x" + std::to_string(cols) + " over " +
                                std::to_string(nvars) + " variables");
  }
}

PolyMatrix ScalarIdentity(std::size_t n, const Polynomial& p) {
  return PolyMatrix::ScalarMatrix(n, p);
}

}  // namespace

Verdict VerifyDiagCertificate(const PolyMatrix& a, const DiagCertificate& cert) {
  RequireSymmetric(a, "VerifyDiagCertificate");
  const std::size_t n = a.rows();
  RequireShape(cert.x_plus, n, n, a.nvars(), "X+");
  RequireShape(cert.x_minus, n, n, a.nvars(), "X-");
  RequireShape(cert.d, n, n, a.nvars(), "D");
  if (cert.w.nvars() != a.nvars()) {
    throw std::invalid_argument("w: nvars mismatch");
  }
  if (!cert.d.is_diagonal()) return Verdict::Fail(kIdentityDiagonal);
  const PolyMatrix w_identity = ScalarIdentity(n, cert.w);
  if (!(cert.x_plus * cert.x_minus == w_identity)) {
    return Verdict::Fail(kIdentityProductPM);
  }
  if (!(cert.x_minus * cert.x_plus == w_identity)) {
    return Verdict::Fail(kIdentityProductMP);
  }
  if (!(Congruence(cert.x_minus, a) == cert.d)) {
    return Verdict::Fail(kIdentityForward);
  }
  if (!(Congruence(cert.x_plus, cert.d) == a * (cert.w * cert.w))) {
    return Verdict::Fail(kIdentityBackward);
  }
  return Verdict::Pass();
}

SumOfSquares SumOfSquares::Square(const Polynomial& root) {
  return {root * root, {root}};
}

SumOfSquares SumOfSquares::One(std::size_t nvars) {
  return Square(Polynomial::Constant(nvars, Rational(1)));
}

SumOfSquares operator*(const SumOfSquares& a, const SumOfSquares& b) {
  SumOfSquares out{a.value * b.value, {}};
  out.roots.reserve(a.roots.size() * b.roots.size());
  for (const auto& p : a.roots) {
    for (const auto& q : b.roots) out.roots.push_back(p * q);
  }
  return out;
}

bool SumOfSquares::IsValid() const {
  if (value.is_zero() || roots.empty()) return false;
  Polynomial sum(value.nvars());
  for (const auto& r : roots) {
    if (r.nvars() != value.nvars()) return false;
    sum += r * r;
  }
  return sum == value;
}

Verdict VerifyEquivWitness(const PolyMatrix& a1, const PolyMatrix& a2,
                           const EquivWitness& w) {
  RequireSymmetric(a1, "VerifyEquivWitness");
  RequireSymmetric(a2, "VerifyEquivWitness");
  const std::size_t n = a1.rows();
  const std::size_t nvars = a1.nvars();
  RequireShape(a2, n, n, nvars, "a2");
  RequireShape(w.x_plus, n, n, nvars, "x+");
  RequireShape(w.x_minus, n, n, nvars, "x-");
  if (w.z.nvars() != nvars || w.s1.value.nvars() != nvars ||
      w.s2.value.nvars() != nvars) {
    throw std::invalid_argument("witness scalars: nvars mismatch");
  }
  if (!w.s1.IsValid()) return Verdict::Fail("s1 nonzero sum of squares");
  if (!w.s2.IsValid()) return Verdict::Fail("s2 nonzero sum of squares");
  const PolyMatrix z_identity = ScalarIdentity(n, w.z);
  if (!(w.x_minus * w.x_plus == z_identity)) return Verdict::Fail("x-x+ = z");
  if (!(w.x_plus * w.x_minus == z_identity)) return Verdict::Fail("x+x- = z");
  if (!(a1 * w.s1.value == Congruence(w.x_plus, a2) * w.s2.value)) {
    return Verdict::Fail("s1a1 = s2x+a2x+^t");
  }
  return Verdict::Pass();
}

EquivWitness TrivialWitness(const PolyMatrix& a) {
  const std::size_t nvars = a.nvars();
  return {SumOfSquares::One(nvars), SumOfSquares::One(nvars),
          Polynomial::Constant(nvars, Rational(1)),
          PolyMatrix::Identity(a.rows(), nvars),
          PolyMatrix::Identity(a.rows(), nvars)};
}

EquivWitness WitnessFromDiagonalization(const DiagCertificate& cert) {
  const std::size_t nvars = cert.w.nvars();
  return {SumOfSquares::Square(cert.w), SumOfSquares::One(nvars), cert.w,
          cert.x_plus, cert.x_minus};
}

EquivWitness SymmetrizeWitness(const PolyMatrix& a1, const PolyMatrix& a2,
                               const EquivWitness& w) {
  if (auto v = VerifyEquivWitness(a1, a2, w); !v) {
    throw std::invalid_argument("SymmetrizeWitness: input witness invalid (" +
                                v.failure + ")");
  }
  if (w.z.is_zero()) {
    throw std::invalid_argument("SymmetrizeWitness: z = 0");
  }
  EquivWitness out{w.s2 * SumOfSquares::Square(w.z), w.s1, w.z, w.x_minus,
                   w.x_plus};
  return out;
}

EquivWitness ComposeWitnesses(const PolyMatrix& a1, const PolyMatrix& a2,
                              const PolyMatrix& a3, const EquivWitness& w12,
                              const EquivWitness& w23) {
  if (auto v = VerifyEquivWitness(a1, a2, w12); !v) {
    throw std::invalid_argument("ComposeWitnesses: first witness invalid (" +
                                v.failure + ")");
  }
  if (auto v = VerifyEquivWitness(a2, a3, w23); !v) {
    throw std::invalid_argument("ComposeWitnesses: second witness invalid (" +
                                v.failure + ")");
  }
  // s3 s1 a1 = s2 s4 (x+ y+) a3 (x+ y+)^t with u- = y- x-.
  return {w23.s1 * w12.s1, w12.s2 * w23.s2, w12.z * w23.z,
          w12.x_plus * w23.x_plus, w23.x_minus * w12.x_minus};
}

Verdict VerifySosMatrix(const PolyMatrix& a, const SosMatrixCertificate& cert) {
  RequireSymmetric(a, "VerifySosMatrix");
  if (cert.c.nvars() != a.nvars()) {
    throw std::invalid_argument("c: nvars mismatch");
  }
  for (const auto& q : cert.factors) {
    if (q.cols() != a.cols() || q.nvars() != a.nvars()) {
      throw std::invalid_argument("SOS factor must have " +
                                  std::to_string(a.cols()) + " columns");
    }
  }
  if (cert.c.is_zero()) return Verdict::Fail("c != 0");
  PolyMatrix sum(a.rows(), a.cols(), a.nvars());
  for (const auto& q : cert.factors) {
    sum += Congruence(q.Transpose(), PolyMatrix::Identity(q.rows(), a.nvars()));
  }
  if (!(a * (cert.c * cert.c) == sum)) {
    return Verdict::Fail("c^2A = sum Q^tQ");
  }
  return Verdict::Pass();
}

PolyMatrix GeneratorProduct(std::span<const PolyMatrix> bases,
                            std::span<const std::size_t> index_set) {
  if (bases.empty()) {
    throw std::invalid_argument("GeneratorProduct: no generators");
  }
  PolyMatrix out = PolyMatrix::Identity(bases[0].rows(), bases[0].nvars());
  for (std::size_t k = 0; k < index_set.size(); ++k) {
    if (index_set[k] >= bases.size() ||
        (k > 0 && index_set[k] <= index_set[k - 1])) {
      throw std::invalid_argument(
          "bad index set: indices must be ascending and below " +
          std::to_string(bases.size()));
    }
    out = out * bases[index_set[k]];
  }
  return out;
}

std::vector<std::size_t> IndexSetOfMask(std::size_t mask) {
  std::vector<std::size_t> set;
  for (std::size_t k = 0; mask != 0; ++k, mask >>= 1) {
    if (mask & 1u) set.push_back(k);
  }
  return set;
}

std::vector<PolyMatrix> TModuleGenerators(std::span<const PolyMatrix> bases) {
  if (bases.empty()) {
    throw std::invalid_argument("TModuleGenerators: no generators");
  }
  if (bases.size() > 20) {
    throw std::invalid_argument("TModuleGenerators: more than 20 generators");
  }
  for (const auto& b : bases) {
    if (!b.is_diagonal()) {
      throw std::invalid_argument("TModuleGenerators: non-diagonal input");
    }
    if (b.rows() != bases[0].rows() || b.nvars() != bases[0].nvars()) {
      throw std::invalid_argument("TModuleGenerators: shape mismatch");
    }
  }
  const std::size_t count = std::size_t{1} << bases.size();
  std::vector<PolyMatrix> out;
  out.reserve(count);
  out.push_back(PolyMatrix::Identity(bases[0].rows(), bases[0].nvars()));
  for (std::size_t mask = 1; mask < count; ++mask) {
    // Extend the product for mask minus its highest bit.
    std::size_t high = 0;
    while ((mask >> (high + 1)) != 0) ++high;
    const std::size_t rest = mask & ~(std::size_t{1} << high);
    out.push_back(out[rest] * bases[high]);
  }
  return out;
}

PolyMatrix ConstructModuleElement(
    std::span<const PolyMatrix> f_list,
    const std::vector<std::vector<PolyMatrix>>& coeffs) {
  if (f_list.empty()) {
    throw std::invalid_argument("ConstructModuleElement: no generators");
  }
  if (!coeffs.empty() && coeffs.size() != f_list.size()) {
    throw std::invalid_argument(
        "ConstructModuleElement: one coefficient list per generator");
  }
  std::size_t out_dim = f_list[0].cols();
  for (const auto& column : coeffs) {
    if (!column.empty()) {
      out_dim = column[0].cols();
      break;
    }
  }
  PolyMatrix sum(out_dim, out_dim, f_list[0].nvars());
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    const PolyMatrix& f = f_list[l];
    if (!f.is_symmetric()) {
      throw std::invalid_argument("ConstructModuleElement: f not symmetric");
    }
    for (const auto& a : coeffs[l]) {
      if (a.rows() != f.cols() || a.cols() != out_dim) {
        throw std::invalid_argument(
            "ConstructModuleElement: coefficient dimension mismatch");
      }
      sum += Congruence(a.Transpose(), f);
    }
  }
  return sum;
}

Verdict VerifyTModuleMembership(const PolyMatrix& element,
                                std::span<const PolyMatrix> bases,
                                const ModuleMembershipCertificate& cert) {
  if (cert.index_sets.size() != cert.coefficients.size()) {
    throw std::invalid_argument(
        "membership certificate: one coefficient list per index set");
  }
  for (const auto& b : bases) {
    if (!b.is_diagonal()) {
      throw std::invalid_argument("membership: generators must be diagonal");
    }
  }
  PolyMatrix sum(element.rows(), element.cols(), element.nvars());
  for (std::size_t j = 0; j < cert.index_sets.size(); ++j) {
    const PolyMatrix g = GeneratorProduct(bases, cert.index_sets[j]);
    for (const auto& y : cert.coefficients[j]) {
      if (y.rows() != g.cols() || y.cols() != element.cols() ||
          y.nvars() != element.nvars()) {
        throw std::invalid_argument("membership: coefficient dimension "
                                    "mismatch");
      }
      sum += Congruence(y.Transpose(), g);
    }
  }
  if (!(sum == element)) {
    return Verdict::Fail("element = sum y^tGy");
  }
  return Verdict::Pass();
}

PolyMatrix KnkElement(std::size_t k, std::size_t n, std::size_t nvars,
                      std::span<const PolyMatrix> a_list,
                      std::span<const PolyMatrix> x_list) {
  if (a_list.size() != x_list.size()) {
    throw std::invalid_argument("KnkElement: list lengths differ");
  }
  PolyMatrix sum(n, n, nvars);
  for (std::size_t l = 0; l < a_list.size(); ++l) {
    RequireShape(a_list[l], k, k, nvars, "KnkElement a_l");
    RequireShape(x_list[l], k, n, nvars, "KnkElement x_l");
    sum += Congruence(x_list[l].Transpose(), a_list[l]);
  }
  return sum;
}

PolyMatrix ChoiTypeFixture() {
  return PolyMatrix::Parse(2, {{"1 + t1^4*t2^2", "t1*t2"},
                               {"t1*t2", "1 + t1^2*t2^4"}});
}

}  // namespace polycert
