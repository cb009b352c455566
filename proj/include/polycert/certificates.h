#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "polycert/poly_matrix.h"
#include "polycert/polynomial.h"

namespace polycert {

/// Outcome of a certificate check; `failure` names the first identity that
/// did not hold.
struct Verdict {
  bool ok = true;
  std::string failure;

  static Verdict Pass() { return {}; }
  static Verdict Fail(std::string what) { return {false, std::move(what)}; }
  explicit operator bool() const { return ok; }
};

/// (X+, X-, D, w) with X+X- = X-X+ = wI, D = X- A X-^t, w^2 A = X+ D X+^t
/// and D diagonal, relative to a subject A.
struct DiagCertificate {
  PolyMatrix x_plus;
  PolyMatrix x_minus;
  PolyMatrix d;
  Polynomial w;
};

inline constexpr const char* kIdentityProductPM = "X+X- = wI";
inline constexpr const char* kIdentityProductMP = "X-X+ = wI";
inline constexpr const char* kIdentityForward = "D = X-AX-^t";
inline constexpr const char* kIdentityBackward = "w^2A = X+DX+^t";
inline constexpr const char* kIdentityDiagonal = "D diagonal";

/// Checks all four certificate identities exactly. Throws
/// std::invalid_argument if A is not symmetric or shapes disagree.
Verdict VerifyDiagCertificate(const PolyMatrix& a, const DiagCertificate& cert);

/// A polynomial together with an explicit decomposition value = sum roots^2.
struct SumOfSquares {
  Polynomial value;
  std::vector<Polynomial> roots;

  static SumOfSquares Square(const Polynomial& root);
  static SumOfSquares One(std::size_t nvars);
  /// Product of two sums of squares; roots are all pairwise products.
  friend SumOfSquares operator*(const SumOfSquares& a, const SumOfSquares& b);
  /// value != 0 and value == sum of roots^2.
  bool IsValid() const;
};

/// Witness for a1 ~ a2: x-x+ = x+x- = zI and s1 a1 = s2 x+ a2 x+^t, with s1,
/// s2 nonzero central sums of squares.
struct EquivWitness {
  SumOfSquares s1;
  SumOfSquares s2;
  Polynomial z;
  PolyMatrix x_plus;
  PolyMatrix x_minus;
};

Verdict VerifyEquivWitness(const PolyMatrix& a1, const PolyMatrix& a2,
                           const EquivWitness& w);

/// a ~ a with s1 = s2 = z = 1, x+ = x- = I.
EquivWitness TrivialWitness(const PolyMatrix& a);

/// A ~ D from a diagonalization certificate: s1 = w^2, s2 = 1, z = w.
EquivWitness WitnessFromDiagonalization(const DiagCertificate& cert);

/// Witness for a2 ~ a1 from one for a1 ~ a2 (s1' = s2 z^2, s2' = s1,
/// x+' = x-, x-' = x+). Throws std::invalid_argument if the input does not
/// verify or the result would not (z = 0).
EquivWitness SymmetrizeWitness(const PolyMatrix& a1, const PolyMatrix& a2,
                               const EquivWitness& w);

/// Witness for a1 ~ a3 from a1 ~ a2 (w12) and a2 ~ a3 (w23).
EquivWitness ComposeWitnesses(const PolyMatrix& a1, const PolyMatrix& a2,
                              const PolyMatrix& a3, const EquivWitness& w12,
                              const EquivWitness& w23);

/// c^2 A = sum_j Q_j^t Q_j; each factor Q_j is k_j x n.
struct SosMatrixCertificate {
  Polynomial c;
  std::vector<PolyMatrix> factors;
};

Verdict VerifySosMatrix(const PolyMatrix& a, const SosMatrixCertificate& cert);

/// Product of the base generators at the ascending 0-based `index_set`; the
/// empty set gives the identity. Throws std::invalid_argument on a bad set.
PolyMatrix GeneratorProduct(std::span<const PolyMatrix> bases,
                            std::span<const std::size_t> index_set);

/// All 2^r products over ascending index sets, in binary-counting order of
/// the set's bitmask (bit k selects bases[k]); element 0 is the identity.
/// Throws std::invalid_argument for non-diagonal or mismatched inputs.
std::vector<PolyMatrix> TModuleGenerators(std::span<const PolyMatrix> bases);

/// Index set of TModuleGenerators()[mask].
std::vector<std::size_t> IndexSetOfMask(std::size_t mask);

/// sum_l sum_j a_jl^t f_l a_jl; coeffs[l] holds the a_jl for f_list[l] and is
/// either empty or of the same length as f_list.
PolyMatrix ConstructModuleElement(
    std::span<const PolyMatrix> f_list,
    const std::vector<std::vector<PolyMatrix>>& coeffs);

/// element = sum_j sum_l y_jl^t G_{index_sets[j]} y_jl.
struct ModuleMembershipCertificate {
  std::vector<std::vector<std::size_t>> index_sets;
  std::vector<std::vector<PolyMatrix>> coefficients;
};

Verdict VerifyTModuleMembership(const PolyMatrix& element,
                                std::span<const PolyMatrix> bases,
                                const ModuleMembershipCertificate& cert);

/// sum_l x_l^t a_l x_l with a_l in M_k (PSD-constructed) and x_l k x n; an
/// element of the cone C_{n,k}.
PolyMatrix KnkElement(std::size_t k, std::size_t n, std::size_t nvars,
                      std::span<const PolyMatrix> a_list,
                      std::span<const PolyMatrix> x_list);

/// [[1 + t1^4 t2^2, t1 t2], [t1 t2, 1 + t1^2 t2^4]] over two variables.
PolyMatrix ChoiTypeFixture();

}  // namespace polycert
