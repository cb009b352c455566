#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polycert/rational.h"

namespace polycert {

/// Exponent vector t1^e1 * ... * td^ed with cached total degree.
class Monomial {
 public:
  explicit Monomial(std::size_t nvars) : exponents_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents);

  std::size_t nvars() const { return exponents_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(std::size_t var) const { return exponents_[var]; }
  const std::vector<std::uint32_t>& exponents() const { return exponents_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  /// Requires divides(other).
  Monomial quotient_of(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exponents_ == b.exponents_;
  }

  /// Graded lexicographic comparison with t1 > t2 > ... ; returns <0, 0, >0.
  static int Compare(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint32_t> exponents_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

/// Thrown by Polynomial::Parse; `column` is 1-based within the parsed text.
class PolyParseError : public std::invalid_argument {
 public:
  PolyParseError(std::size_t column, const std::string& what)
      : std::invalid_argument(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
///
/// Terms are kept sorted by descending graded-lex order and never carry a
/// zero coefficient, so structural equality is polynomial equality.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  /// The zero polynomial. Throws std::invalid_argument if nvars == 0.
  explicit Polynomial(std::size_t nvars);

  static Polynomial Constant(std::size_t nvars, const Rational& c);
  /// The variable t_{index+1} (index is 0-based).
  static Polynomial Variable(std::size_t nvars, std::size_t index);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial FromTerms(std::size_t nvars, std::vector<Term> terms);

  /// Parses the text syntax `3/2*t1^2*t2 - t2 + 1`. Variables beyond nvars
  /// are rejected.
  static Polynomial Parse(std::string_view text, std::size_t nvars);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Requires !is_zero().
  const Term& leading_term() const { return terms_.front(); }
  /// Coefficient of `m` (zero if absent).
  Rational coefficient(const Monomial& m) const;

  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const;

  /// Exact value at `point`. Throws std::invalid_argument on size mismatch.
  Rational Evaluate(std::span<const Rational> point) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) {
    return a *= c;
  }
  friend Polynomial operator*(const Rational& c, Polynomial a) {
    return a *= c;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial Pow(unsigned exponent) const;

  /// Quotient q with q * divisor == *this, or nullopt if divisor does not
  /// divide exactly. Throws std::domain_error for a zero divisor.
  std::optional<Polynomial> DivideExact(const Polynomial& divisor) const;

  std::string ToString() const;

 private:
  void CheckSameRing(const Polynomial& o, const char* op) const;
  Polynomial& AddScaled(const Polynomial& o, const Rational& scale);

  std::size_t nvars_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace polycert
